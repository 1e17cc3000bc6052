//! Intersection of simple linear patterns, i.e. unification computed as a
//! finite set of most general common instances.
//!
//! Flex/rigid problems distribute the strict obligations of the generalized
//! variable over the arguments of the rigid term; the enumeration of those
//! distributions ([`enumerate_splittings`]) is what keeps the problem
//! finitary.

use std::collections::BTreeSet;

use crate::algebra::PatternSet;
use crate::patterns::{generalized_var, validate_pattern, PatternError, SimpleLinearPattern};
use crate::syntax::{fresh_name, rename_var, Label, Name, Params, Phi, Signature, Term, Type};

/// `k1 ∩ k2`; `None` for `1 ∩ 0` and `0 ∩ 1`.
pub fn label_meet(k1: Label, k2: Label) -> Option<Label> {
    use Label::*;
    match (k1, k2) {
        (One, Zero) | (Zero, One) => None,
        (U, k) | (k, U) => Some(k),
        (k, _) => Some(k),
    }
}

/// Pointwise meet of two lists over the same variables in the same order.
pub fn meet_phi(phi1: &Phi, phi2: &Phi) -> Option<Phi> {
    if phi1.len() != phi2.len() {
        return None;
    }
    let entries = phi1
        .iter()
        .zip(phi2.iter())
        .map(|((x, k1), (y, k2))| {
            if x != y {
                return None;
            }
            label_meet(*k1, *k2).map(|k| (x.clone(), k))
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Phi::new(entries).expect("names taken from a valid list"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidHead {
    Const(Name),
    Param(Name),
}

/// One argument list per argument of the rigid term.
pub type Splitting = Vec<Phi>;

/// All ways of distributing the strict variables of `phi` over `n`
/// arguments. Irrelevant variables stay irrelevant and unrestricted ones
/// unrestricted everywhere; each strict variable is strict in exactly one
/// argument and unrestricted in the rest. A strict parameter head pays for
/// its own strictness and becomes unrestricted in every argument.
///
/// Strict variables are assigned left to right, argument indices ascending.
pub fn enumerate_splittings(phi: &Phi, n: usize, head: &RigidHead) -> Vec<Splitting> {
    let head_var = match head {
        RigidHead::Param(y) => Some(y.as_str()),
        RigidHead::Const(_) => None,
    };
    let strict: Vec<usize> = phi
        .iter()
        .enumerate()
        .filter(|(_, (x, k))| *k == Label::One && Some(x.as_str()) != head_var)
        .map(|(i, _)| i)
        .collect();
    if n == 0 {
        return if strict.is_empty() {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let base: Vec<(Name, Label)> = phi
        .iter()
        .map(|(x, k)| {
            let k = match k {
                Label::One => Label::U,
                k => *k,
            };
            (x.clone(), k)
        })
        .collect();
    let total = n.pow(strict.len() as u32);
    let mut out = Vec::with_capacity(total);
    let mut choice = vec![0usize; strict.len()];
    for _ in 0..total {
        let mut lists = vec![base.clone(); n];
        for (pos, &i) in strict.iter().enumerate() {
            lists[choice[pos]][i].1 = Label::One;
        }
        out.push(
            lists
                .into_iter()
                .map(|e| Phi::new(e).expect("distinct names"))
                .collect(),
        );
        for pos in (0..choice.len()).rev() {
            choice[pos] += 1;
            if choice[pos] < n {
                break;
            }
            choice[pos] = 0;
        }
    }
    out
}

/// Renames the EVars of `p` that clash with `taken`.
pub fn rename_apart(p: &SimpleLinearPattern, taken: &BTreeSet<Name>) -> SimpleLinearPattern {
    let own: BTreeSet<Name> = p.evar_names().into_iter().collect();
    let mut used: BTreeSet<Name> = taken.union(&own).cloned().collect();
    let mut term = p.term.clone();
    for e in &own {
        if taken.contains(e) {
            let fresh = fresh_name(e, |c| used.contains(c));
            used.insert(fresh.clone());
            term = term.map_evars(&mut |name, args| {
                let name = if name == e {
                    fresh.clone()
                } else {
                    name.clone()
                };
                Term::evar(name, args.clone())
            });
        }
    }
    SimpleLinearPattern::trusted(&p.psi, term, &p.ty)
}

struct Unifier<'a> {
    sig: &'a Signature,
    taken: BTreeSet<Name>,
}

impl<'a> Unifier<'a> {
    fn fresh(&mut self) -> Name {
        let taken = &self.taken;
        let h = fresh_name("H", |c| taken.contains(c));
        self.taken.insert(h.clone());
        h
    }

    fn head_type(&self, scope: &Params, h: &Term) -> Option<(RigidHead, Type)> {
        match h {
            Term::Const(c) => Some((RigidHead::Const(c.clone()), self.sig.const_type(c)?.clone())),
            Term::Var(y) => Some((RigidHead::Param(y.clone()), scope.get(y)?.clone())),
            _ => None,
        }
    }

    fn meet(
        &mut self,
        scope: &mut Params,
        m: &Term,
        n: &Term,
        ty: &Type,
    ) -> Result<Vec<Term>, PatternError> {
        match (m, n) {
            (
                Term::Lam {
                    var: x,
                    ty: a,
                    body: mb,
                    ..
                },
                Term::Lam {
                    var: y, body: nb, ..
                },
            ) => {
                let Type::Arrow(_, _, cod) = ty else {
                    return Err(PatternError::IllFormed(format!(
                        "abstraction `{m}` at base type"
                    )));
                };
                let (z, mb, nb) = if x == y && !scope.contains(x) {
                    (x.clone(), mb.as_ref().clone(), nb.as_ref().clone())
                } else {
                    let used_m = mb.all_var_names();
                    let used_n = nb.all_var_names();
                    let z = fresh_name(x, |c| {
                        scope.contains(c) || used_m.contains(c) || used_n.contains(c)
                    });
                    (z.clone(), rename_var(mb, x, &z), rename_var(nb, y, &z))
                };
                scope.push(z.clone(), a.clone());
                let res = self.meet(scope, &mb, &nb, cod);
                scope.pop();
                Ok(res?
                    .into_iter()
                    .map(|q| Term::lam(z.clone(), Label::U, a.clone(), q))
                    .collect())
            }
            (Term::EVar { name: e1, args: p1 }, Term::EVar { name: e2, args: p2 }) => {
                if e1 == e2 {
                    return Err(PatternError::IllFormed(format!(
                        "flex/flex problem with the same variable `{e1}`"
                    )));
                }
                Ok(match meet_phi(p1, p2) {
                    Some(phi) => vec![Term::evar(self.fresh(), phi)],
                    None => Vec::new(),
                })
            }
            (Term::EVar { args, .. }, _) => self.flex_rigid(scope, args, n, false),
            (_, Term::EVar { args, .. }) => self.flex_rigid(scope, args, m, true),
            _ => {
                let (mh, margs) = m.spine();
                let (nh, nargs) = n.spine();
                if mh != nh || margs.len() != nargs.len() {
                    return Ok(Vec::new());
                }
                let Some((_, hty)) = self.head_type(scope, mh) else {
                    return Err(PatternError::IllFormed(format!("`{m}` has no rigid head")));
                };
                let (doms, _) = hty.spine();
                let mut per_arg = Vec::with_capacity(margs.len());
                for (((_, ma), (_, na)), (d, _)) in margs.iter().zip(nargs.iter()).zip(doms.iter())
                {
                    let r = self.meet(scope, ma, na, d)?;
                    if r.is_empty() {
                        return Ok(Vec::new());
                    }
                    per_arg.push(r);
                }
                Ok(combine(mh, &per_arg))
            }
        }
    }

    /// `E Φ ∩ h M1 … Mn`; `flipped` keeps the rigid side on the left in
    /// the recursive problems, mirroring the symmetric rules.
    fn flex_rigid(
        &mut self,
        scope: &mut Params,
        phi: &Phi,
        rigid: &Term,
        flipped: bool,
    ) -> Result<Vec<Term>, PatternError> {
        let (h, args) = rigid.spine();
        let Some((head, hty)) = self.head_type(scope, h) else {
            return Err(PatternError::IllFormed(format!(
                "`{rigid}` has no rigid head"
            )));
        };
        if let RigidHead::Param(y) = &head {
            // the head is an occurrence of y, which E Φ forbids when Φ(y) = 0
            if phi.get(y) == Some(Label::Zero) {
                return Ok(Vec::new());
            }
        }
        let (doms, _) = hty.spine();
        let mut out = Vec::new();
        for splitting in enumerate_splittings(phi, args.len(), &head) {
            let mut per_arg = Vec::with_capacity(args.len());
            for ((phi_i, (_, m_i)), (d, _)) in splitting.iter().zip(args.iter()).zip(doms.iter()) {
                let name = self.fresh();
                let g = generalized_var(&name, phi_i, d, scope);
                let r = if flipped {
                    self.meet(scope, m_i, &g, d)?
                } else {
                    self.meet(scope, &g, m_i, d)?
                };
                if r.is_empty() {
                    per_arg.clear();
                    break;
                }
                per_arg.push(r);
            }
            if per_arg.len() == args.len() {
                out.extend(combine(h, &per_arg));
            }
        }
        Ok(out)
    }
}

/// `h Q1 … Qn` for every choice of `Qi` from the i-th list.
fn combine(h: &Term, per_arg: &[Vec<Term>]) -> Vec<Term> {
    let mut acc = vec![h.clone()];
    for options in per_arg {
        acc = acc
            .iter()
            .flat_map(|f| {
                options
                    .iter()
                    .map(move |q| Term::app(f.clone(), Label::One, q.clone()))
            })
            .collect();
    }
    acc
}

/// The set of most general common instances of `p1` and `p2`. The inputs
/// must share Ψ and type and have disjoint EVar names; an empty result means
/// they have no common ground instance.
pub fn intersect(
    sig: &Signature,
    p1: &SimpleLinearPattern,
    p2: &SimpleLinearPattern,
) -> Result<PatternSet, PatternError> {
    validate_pattern(sig, p1)?;
    validate_pattern(sig, p2)?;
    intersect_unchecked(sig, p1, p2)
}

pub(crate) fn intersect_unchecked(
    sig: &Signature,
    p1: &SimpleLinearPattern,
    p2: &SimpleLinearPattern,
) -> Result<PatternSet, PatternError> {
    if p1.psi != p2.psi || p1.ty != p2.ty {
        return Err(PatternError::IllFormed(format!(
            "`{p1}` and `{p2}` differ in context or type"
        )));
    }
    let n1: BTreeSet<Name> = p1.evar_names().into_iter().collect();
    let n2: BTreeSet<Name> = p2.evar_names().into_iter().collect();
    if let Some(e) = n1.intersection(&n2).next() {
        return Err(PatternError::IllFormed(format!(
            "both patterns use `{e}`; rename them apart first"
        )));
    }
    let mut u = Unifier {
        sig,
        taken: n1.union(&n2).cloned().collect(),
    };
    let mut scope = p1.psi.clone();
    let terms = u.meet(&mut scope, &p1.term, &p2.term, &p1.ty)?;
    Ok(PatternSet::from_terms(&p1.psi, &p1.ty, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::parse_pattern;
    use crate::syntax::{parse_params, parse_signature};

    fn phi(s: &[(&str, Label)]) -> Phi {
        Phi::new(s.iter().map(|(x, k)| (x.to_string(), *k)).collect()).unwrap()
    }

    #[test]
    fn meet_table() {
        use Label::*;
        assert_eq!(label_meet(One, One), Some(One));
        assert_eq!(label_meet(U, One), Some(One));
        assert_eq!(label_meet(One, U), Some(One));
        assert_eq!(label_meet(Zero, Zero), Some(Zero));
        assert_eq!(label_meet(U, Zero), Some(Zero));
        assert_eq!(label_meet(Zero, U), Some(Zero));
        assert_eq!(label_meet(U, U), Some(U));
        assert_eq!(label_meet(One, Zero), None);
        assert_eq!(label_meet(Zero, One), None);
    }

    #[test]
    fn meet_lists() {
        use Label::*;
        let m = meet_phi(
            &phi(&[("x", U), ("y", One)]),
            &phi(&[("x", Zero), ("y", U)]),
        )
        .unwrap();
        assert_eq!(m, phi(&[("x", Zero), ("y", One)]));
        assert_eq!(meet_phi(&phi(&[("x", One)]), &phi(&[("x", Zero)])), None);
        let p = phi(&[("x", U), ("y", One), ("z", Zero)]);
        assert_eq!(meet_phi(&p, &p), Some(p));
        assert_eq!(meet_phi(&phi(&[("x", U)]), &phi(&[("y", U)])), None);
    }

    #[test]
    fn splittings_distribute_strict_variable() {
        let s = enumerate_splittings(&phi(&[("x", Label::One)]), 2, &RigidHead::Const("c".into()));
        assert_eq!(
            s,
            vec![
                vec![phi(&[("x", Label::One)]), phi(&[("x", Label::U)])],
                vec![phi(&[("x", Label::U)]), phi(&[("x", Label::One)])],
            ]
        );
    }

    #[test]
    fn splittings_without_strict_variables() {
        let s = enumerate_splittings(
            &phi(&[("x", Label::U), ("y", Label::U)]),
            3,
            &RigidHead::Const("c".into()),
        );
        assert_eq!(s.len(), 1);
        assert!(s[0].iter().all(|p| p.iter().all(|(_, k)| *k == Label::U)));
    }

    #[test]
    fn splitting_counts() {
        let p = phi(&[("x", Label::One), ("y", Label::Zero), ("z", Label::One)]);
        assert_eq!(
            enumerate_splittings(&p, 3, &RigidHead::Const("c".into())).len(),
            9
        );
        assert_eq!(
            enumerate_splittings(&p, 0, &RigidHead::Const("c".into())).len(),
            0
        );
        assert_eq!(
            enumerate_splittings(&p, 3, &RigidHead::Param("z".into())).len(),
            3
        );
        let only_head = phi(&[("y", Label::One)]);
        assert_eq!(
            enumerate_splittings(&only_head, 0, &RigidHead::Param("y".into())),
            vec![Vec::<Phi>::new()]
        );
        let vac = phi(&[("y", Label::Zero)]);
        assert_eq!(
            enumerate_splittings(&vac, 2, &RigidHead::Param("y".into())).len(),
            1
        );
    }

    #[test]
    fn flex_rigid_constant_two_results() {
        let s = parse_signature("a : type. c : a ->1 a ->1 a.").unwrap();
        let psi = parse_params("x:a", &s).unwrap();
        let a = Type::atom("a");
        let p1 = parse_pattern("E[x^1]", &psi, &s, &a).unwrap();
        let p2 = parse_pattern("c @1 F[x^u] @1 F'[x^u]", &psi, &s, &a).unwrap();
        let r = intersect(&s, &p1, &p2).unwrap();
        let keys: BTreeSet<String> = r.members.iter().map(|p| p.key()).collect();
        let expected: BTreeSet<String> = ["c @1 H[x^1] @1 H'[x^u]", "c @1 H[x^u] @1 H'[x^1]"]
            .iter()
            .map(|t| parse_pattern(t, &psi, &s, &a).unwrap().key())
            .collect();
        assert_eq!(keys, expected);
    }

    #[test]
    fn flex_rigid_parameter_head() {
        let s = parse_signature("a : type.").unwrap();
        let psi = parse_params("y:a ->1 a ->1 a", &s).unwrap();
        let a = Type::atom("a");
        let rigid = parse_pattern("y @1 F[y^1] @1 F'[y^u]", &psi, &s, &a).unwrap();
        let vac = parse_pattern("E[y^0]", &psi, &s, &a).unwrap();
        assert!(intersect(&s, &vac, &rigid).unwrap().is_empty());
        let strict = parse_pattern("E[y^1]", &psi, &s, &a).unwrap();
        let rigid2 = parse_pattern("y @1 F[y^1] @1 F'[y^0]", &psi, &s, &a).unwrap();
        let r = intersect(&s, &strict, &rigid2).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(
            r.members[0].key(),
            parse_pattern("y @1 H[y^1] @1 H'[y^0]", &psi, &s, &a)
                .unwrap()
                .key()
        );
    }

    #[test]
    fn irrelevant_head_parameter_is_not_an_instance() {
        let s = parse_signature("a : type. b : a.").unwrap();
        let psi = parse_params("y:a ->1 a", &s).unwrap();
        let a = Type::atom("a");
        let vac = parse_pattern("E[y^0]", &psi, &s, &a).unwrap();
        let rigid = parse_pattern("y @1 F[y^u]", &psi, &s, &a).unwrap();
        assert!(intersect(&s, &vac, &rigid).unwrap().is_empty());
        assert!(intersect(&s, &rigid, &vac).unwrap().is_empty());
    }

    #[test]
    fn rigid_rigid_under_binder() {
        let s =
            parse_signature("exp : type. lam : (exp ->u exp) ->1 exp. app : exp ->1 exp ->1 exp.")
                .unwrap();
        let exp = Type::atom("exp");
        let psi = Params::empty();
        let p1 = parse_pattern("lam @1 (\\x^u:exp. app @1 E[x^0] @1 x)", &psi, &s, &exp).unwrap();
        let p2 = parse_pattern(
            "lam @1 (\\z^u:exp. app @1 F[z^u] @1 G[z^u])",
            &psi,
            &s,
            &exp,
        )
        .unwrap();
        let r = intersect(&s, &p1, &p2).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(
            r.members[0].key(),
            parse_pattern("lam @1 (\\x^u:exp. app @1 H[x^0] @1 x)", &psi, &s, &exp)
                .unwrap()
                .key()
        );
        let p3 = parse_pattern("app @1 F[] @1 G[]", &psi, &s, &exp).unwrap();
        assert!(intersect(&s, &p1, &p3).unwrap().is_empty());
    }

    #[test]
    fn flex_against_higher_order_argument() {
        let s = parse_signature("exp : type. lam : (exp ->u exp) ->1 exp.").unwrap();
        let exp = Type::atom("exp");
        let psi = parse_params("x:exp", &s).unwrap();
        let p1 = parse_pattern("E[x^1]", &psi, &s, &exp).unwrap();
        let p2 = parse_pattern("lam @1 (\\y^u:exp. F[x^u, y^1])", &psi, &s, &exp).unwrap();
        let r = intersect(&s, &p1, &p2).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(
            r.members[0].key(),
            parse_pattern("lam @1 (\\y^u:exp. H[x^1, y^1])", &psi, &s, &exp)
                .unwrap()
                .key()
        );
    }

    #[test]
    fn shared_names_rejected_and_renamed() {
        let s = parse_signature("a : type.").unwrap();
        let psi = parse_params("x:a", &s).unwrap();
        let a = Type::atom("a");
        let p = parse_pattern("E[x^1]", &psi, &s, &a).unwrap();
        assert!(intersect(&s, &p, &p).is_err());
        let taken: BTreeSet<Name> = ["E".to_string()].into();
        let q = rename_apart(&p, &taken);
        assert_eq!(q.term.to_string(), "E1[x^1]");
        assert_eq!(rename_apart(&q, &taken), q);
        let r = intersect(&s, &p, &q).unwrap();
        assert_eq!(r.len(), 1);
    }
}
