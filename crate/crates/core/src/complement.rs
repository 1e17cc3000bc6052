//! Complement of simple linear patterns.
//!
//! The complement of a generalized variable flips one determined label and
//! forgets the rest; the complement of a rigid term is every other head plus,
//! for each argument, the complement of that argument with the remaining
//! arguments left open.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{self, PatternSet};
use crate::intersect::intersect_unchecked;
use crate::patterns::{generalized_var, validate_pattern, PatternError, SimpleLinearPattern};
use crate::syntax::{fresh_name, Label, Name, Params, Phi, Signature, Term, Type};

/// The rule that produced one step of a complement derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplementRuleTag {
    /// Zero-based position of the negated argument.
    NotFlx(usize),
    NotLam,
    NotApp1(Name),
    /// Zero-based position of the complemented argument.
    NotApp2(usize),
}

impl fmt::Display for ComplementRuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplementRuleTag::NotFlx(i) => write!(f, "NotFlx^{}", i + 1),
            ComplementRuleTag::NotLam => write!(f, "NotLam"),
            ComplementRuleTag::NotApp1(g) => write!(f, "NotApp1({g})"),
            ComplementRuleTag::NotApp2(i) => write!(f, "NotApp2^{}", i + 1),
        }
    }
}

/// `Not(1) = 0`, `Not(0) = 1`; `u` has no complement.
pub fn not_label(k: Label) -> Option<Label> {
    match k {
        Label::One => Some(Label::Zero),
        Label::Zero => Some(Label::One),
        Label::U => None,
    }
}

/// Negates position `i` (zero-based) and makes every other position `u`.
pub fn not_phi_i(phi: &Phi, i: usize) -> Option<Phi> {
    let (_, k) = phi.entries().get(i)?;
    let negated = not_label(*k)?;
    let entries = phi
        .iter()
        .enumerate()
        .map(|(j, (x, _))| (x.clone(), if j == i { negated } else { Label::U }))
        .collect();
    Some(Phi::new(entries).expect("same names as a valid list"))
}

struct Complementer<'a> {
    sig: &'a Signature,
    taken: BTreeSet<Name>,
}

type Traced = (Term, Vec<ComplementRuleTag>);

impl<'a> Complementer<'a> {
    fn fresh(&mut self) -> Name {
        let taken = &self.taken;
        let z = fresh_name("Z", |c| taken.contains(c));
        self.taken.insert(z.clone());
        z
    }

    fn open(&mut self, ty: &Type, scope: &Params) -> Term {
        let name = self.fresh();
        generalized_var(&name, &Phi::uniform(scope.names(), Label::U), ty, scope)
    }

    fn not(&mut self, scope: &mut Params, m: &Term, ty: &Type) -> Vec<Traced> {
        match (m, ty) {
            (
                Term::Lam {
                    var,
                    label,
                    ty: a,
                    body,
                },
                Type::Arrow(_, _, cod),
            ) => {
                scope.push(var.clone(), a.clone());
                let inner = self.not(scope, body, cod);
                scope.pop();
                inner
                    .into_iter()
                    .map(|(n, mut tags)| {
                        tags.insert(0, ComplementRuleTag::NotLam);
                        (Term::lam(var.clone(), *label, a.clone(), n), tags)
                    })
                    .collect()
            }
            (Term::EVar { args, .. }, _) => (0..args.len())
                .filter_map(|i| not_phi_i(args, i).map(|phi| (i, phi)))
                .map(|(i, phi)| {
                    (
                        Term::evar(self.fresh(), phi),
                        vec![ComplementRuleTag::NotFlx(i)],
                    )
                })
                .collect(),
            _ => {
                let (h, args) = m.spine();
                let target = ty.target().clone();
                let mut out = Vec::new();
                let heads: Vec<(Term, Type)> = self
                    .sig
                    .consts()
                    .map(|(c, t)| (Term::cnst(c.clone()), t.clone()))
                    .chain(scope.iter().map(|(x, t)| (Term::var(x.clone()), t.clone())))
                    .collect();
                for (g, gty) in heads {
                    if &g == h || gty.target() != &target || !gty.spine_all(Label::One) {
                        continue;
                    }
                    let name = match &g {
                        Term::Const(c) | Term::Var(c) => c.clone(),
                        _ => unreachable!(),
                    };
                    let (doms, _) = gty.spine();
                    let mut t = g;
                    for (d, _) in doms {
                        let z = self.open(d, scope);
                        t = Term::app(t, Label::One, z);
                    }
                    out.push((t, vec![ComplementRuleTag::NotApp1(name)]));
                }
                let hty = match h {
                    Term::Const(c) => self.sig.const_type(c).cloned(),
                    Term::Var(x) => scope.get(x).cloned(),
                    _ => None,
                };
                let Some(hty) = hty else {
                    return out;
                };
                let doms: Vec<Type> = hty.spine().0.into_iter().map(|(d, _)| d.clone()).collect();
                for (i, (_, arg)) in args.iter().enumerate() {
                    for (n, sub) in self.not(scope, arg, &doms[i]) {
                        let mut t = h.clone();
                        for (j, d) in doms.iter().enumerate() {
                            let a = if j == i {
                                n.clone()
                            } else {
                                self.open(d, scope)
                            };
                            t = Term::app(t, Label::One, a);
                        }
                        let mut tags = vec![ComplementRuleTag::NotApp2(i)];
                        tags.extend(sub);
                        out.push((t, tags));
                    }
                }
                out
            }
        }
    }
}

/// Every member of the complement of `p` with the rules that produced it,
/// in derivation order and before deduplication.
pub fn complement_traced(
    sig: &Signature,
    p: &SimpleLinearPattern,
) -> Result<Vec<(SimpleLinearPattern, Vec<ComplementRuleTag>)>, PatternError> {
    validate_pattern(sig, p)?;
    Ok(complement_raw(sig, p)
        .into_iter()
        .map(|(t, tags)| (SimpleLinearPattern::trusted(&p.psi, t, &p.ty), tags))
        .collect())
}

fn complement_raw(sig: &Signature, p: &SimpleLinearPattern) -> Vec<Traced> {
    let mut c = Complementer {
        sig,
        taken: p.evar_names().into_iter().collect(),
    };
    let mut scope = p.psi.clone();
    c.not(&mut scope, &p.term, &p.ty)
}

/// The set of patterns whose ground instances are exactly the ground
/// canonical terms that are not instances of `p`.
pub fn complement(sig: &Signature, p: &SimpleLinearPattern) -> Result<PatternSet, PatternError> {
    validate_pattern(sig, p)?;
    Ok(complement_unchecked(sig, p))
}

pub(crate) fn complement_unchecked(sig: &Signature, p: &SimpleLinearPattern) -> PatternSet {
    let terms = complement_raw(sig, p).into_iter().map(|(t, _)| t).collect();
    PatternSet::from_terms(&p.psi, &p.ty, terms)
}

/// Replaces every `u` in every argument list by both `1` and `0`.
fn expand_undetermined(p: &SimpleLinearPattern) -> Vec<Term> {
    let mut acc = vec![p.term.clone()];
    for e in p.evar_names() {
        acc = acc
            .into_iter()
            .flat_map(|t| {
                let phi = find_phi(&t, &e).expect("EVar present");
                let undetermined: Vec<usize> = phi
                    .iter()
                    .enumerate()
                    .filter(|(_, (_, k))| *k == Label::U)
                    .map(|(i, _)| i)
                    .collect();
                (0..1usize << undetermined.len())
                    .map(|mask| {
                        let mut phi2 = phi.clone();
                        for (bit, &i) in undetermined.iter().enumerate() {
                            let k = if mask & (1 << bit) == 0 {
                                Label::One
                            } else {
                                Label::Zero
                            };
                            phi2 = phi2.with_label(i, k);
                        }
                        t.map_evars(&mut |name, args| {
                            if name == &e {
                                Term::evar(name.clone(), phi2.clone())
                            } else {
                                Term::evar(name.clone(), args.clone())
                            }
                        })
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    acc
}

fn find_phi(t: &Term, e: &str) -> Option<Phi> {
    let mut found = None;
    t.walk(&mut |s| {
        if let Term::EVar { name, args } = s {
            if name == e {
                found = Some(args.clone());
            }
        }
    });
    found
}

/// Resolves every `u` label into `1` and `0` and then removes the overlap
/// between members, so that every ground instance of the set matches
/// exactly one member. The set of ground instances is unchanged.
pub fn make_exclusive(sig: &Signature, s: &PatternSet) -> PatternSet {
    let expand = |p: &SimpleLinearPattern| -> Vec<SimpleLinearPattern> {
        PatternSet::from_terms(&s.psi, &s.ty, expand_undetermined(p)).members
    };
    let mut queue: std::collections::VecDeque<SimpleLinearPattern> =
        s.members.iter().flat_map(expand).collect();
    let mut out: Vec<SimpleLinearPattern> = Vec::new();
    let mut seen = BTreeSet::new();
    while let Some(p) = queue.pop_front() {
        if !seen.insert(p.key()) {
            continue;
        }
        let overlap = out.iter().find(|q| {
            let q = crate::intersect::rename_apart(q, &p.evar_names().into_iter().collect());
            !intersect_unchecked(sig, &p, &q)
                .map(|r| r.is_empty())
                .unwrap_or(true)
        });
        match overlap {
            None => out.push(p),
            Some(q) => {
                let rest = algebra::relative_complement_unchecked(
                    sig,
                    &PatternSet::from_members(&s.psi, &s.ty, vec![p]),
                    &PatternSet::from_members(&s.psi, &s.ty, vec![q.clone()]),
                );
                for piece in rest.members.iter().rev() {
                    for e in expand(piece).into_iter().rev() {
                        queue.push_front(e);
                    }
                }
            }
        }
    }
    PatternSet::from_members(&s.psi, &s.ty, out)
}
