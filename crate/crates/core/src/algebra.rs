//! Finite sets of simple linear patterns as a boolean algebra, with a
//! brute-force enumerator of ground canonical terms used to compare sets by
//! their ground instances.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::complement::complement_unchecked;
use crate::intersect::{intersect_unchecked, rename_apart};
use crate::patterns::{
    generalized_var, match_ground, match_ground_unchecked, validate_pattern, PatternError,
    SimpleLinearPattern,
};
use crate::syntax::{fresh_name, Label, Name, Params, Phi, Signature, Term, Type, ZonedContext};
use crate::typing;

/// A finite set of patterns over a common context Ψ and type. Members are
/// distinct up to α-equivalence and EVar renaming, and no EVar name is used
/// by two members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    pub psi: Params,
    pub ty: Type,
    pub members: Vec<SimpleLinearPattern>,
}

impl PatternSet {
    pub fn empty(psi: &Params, ty: &Type) -> PatternSet {
        PatternSet {
            psi: psi.clone(),
            ty: ty.clone(),
            members: Vec::new(),
        }
    }

    /// Validates each member against `sig`.
    pub fn new(
        psi: &Params,
        sig: &Signature,
        ty: &Type,
        members: Vec<SimpleLinearPattern>,
    ) -> Result<PatternSet, PatternError> {
        for m in &members {
            if &m.psi != psi || &m.ty != ty {
                return Err(PatternError::IllFormed(format!(
                    "`{m}` does not live in the context and type of the set"
                )));
            }
            validate_pattern(sig, m)?;
        }
        Ok(PatternSet::from_members(psi, ty, members))
    }

    pub(crate) fn from_members(
        psi: &Params,
        ty: &Type,
        members: Vec<SimpleLinearPattern>,
    ) -> PatternSet {
        let mut seen = BTreeSet::new();
        let mut taken = BTreeSet::new();
        let mut out = Vec::new();
        for m in members {
            if !seen.insert(m.key()) {
                continue;
            }
            let m = rename_apart(&m, &taken);
            taken.extend(m.evar_names());
            out.push(m);
        }
        PatternSet {
            psi: psi.clone(),
            ty: ty.clone(),
            members: out,
        }
    }

    pub(crate) fn from_terms(psi: &Params, ty: &Type, terms: Vec<Term>) -> PatternSet {
        let members = terms
            .into_iter()
            .map(|t| SimpleLinearPattern::trusted(psi, t, ty))
            .collect();
        PatternSet::from_members(psi, ty, members)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SimpleLinearPattern> {
        self.members.iter()
    }

    pub fn evar_names(&self) -> BTreeSet<Name> {
        self.members.iter().flat_map(|m| m.evar_names()).collect()
    }

    /// Printed members in lexicographic order.
    pub fn sorted_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        v.sort();
        v
    }

    /// Member keys, for comparisons up to α-equivalence and EVar renaming.
    pub fn keys(&self) -> BTreeSet<String> {
        self.members.iter().map(|m| m.key()).collect()
    }

    fn check_compatible(&self, other: &PatternSet) -> Result<(), PatternError> {
        if self.psi != other.psi || self.ty != other.ty {
            return Err(PatternError::IllFormed(
                "pattern sets differ in context or type".to_string(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.sorted_strings().join(", "))
    }
}

/// The top element: a single generalized variable that may depend on
/// everything in Ψ, η-expanded at `ty`.
pub fn one(psi: &Params, ty: &Type) -> PatternSet {
    let phi = Phi::uniform(psi.names(), Label::U);
    let term = generalized_var("E", &phi, ty, psi);
    PatternSet::from_terms(psi, ty, vec![term])
}

pub fn union(s1: &PatternSet, s2: &PatternSet) -> Result<PatternSet, PatternError> {
    s1.check_compatible(s2)?;
    let members = s1
        .members
        .iter()
        .chain(s2.members.iter())
        .cloned()
        .collect();
    Ok(PatternSet::from_members(&s1.psi, &s1.ty, members))
}

fn validate_set(sig: &Signature, s: &PatternSet) -> Result<(), PatternError> {
    s.members.iter().try_for_each(|m| validate_pattern(sig, m))
}

pub fn set_intersect(
    sig: &Signature,
    s1: &PatternSet,
    s2: &PatternSet,
) -> Result<PatternSet, PatternError> {
    s1.check_compatible(s2)?;
    validate_set(sig, s1)?;
    validate_set(sig, s2)?;
    set_intersect_unchecked(sig, s1, s2)
}

fn set_intersect_unchecked(
    sig: &Signature,
    s1: &PatternSet,
    s2: &PatternSet,
) -> Result<PatternSet, PatternError> {
    let mut members = Vec::new();
    for a in &s1.members {
        let names: BTreeSet<Name> = a.evar_names().into_iter().collect();
        for b in &s2.members {
            let b = rename_apart(b, &names);
            members.extend(intersect_unchecked(sig, a, &b)?.members);
        }
    }
    Ok(PatternSet::from_members(&s1.psi, &s1.ty, members))
}

/// `Not(∅) = 𝟏`; otherwise the intersection of the member complements.
pub fn set_complement(sig: &Signature, s: &PatternSet) -> Result<PatternSet, PatternError> {
    validate_set(sig, s)?;
    set_complement_unchecked(sig, s)
}

fn set_complement_unchecked(sig: &Signature, s: &PatternSet) -> Result<PatternSet, PatternError> {
    let mut members = s.members.iter();
    let Some(first) = members.next() else {
        return Ok(one(&s.psi, &s.ty));
    };
    let mut acc = complement_unchecked(sig, first);
    for m in members {
        if acc.is_empty() {
            break;
        }
        acc = set_intersect_unchecked(sig, &acc, &complement_unchecked(sig, m))?;
    }
    Ok(acc)
}

/// `s1 − s2 = s1 ∩ Not(s2)`.
pub fn relative_complement(
    sig: &Signature,
    s1: &PatternSet,
    s2: &PatternSet,
) -> Result<PatternSet, PatternError> {
    s1.check_compatible(s2)?;
    validate_set(sig, s1)?;
    validate_set(sig, s2)?;
    set_intersect_unchecked(sig, s1, &set_complement_unchecked(sig, s2)?)
}

pub(crate) fn relative_complement_unchecked(
    sig: &Signature,
    s1: &PatternSet,
    s2: &PatternSet,
) -> PatternSet {
    set_complement_unchecked(sig, s2)
        .and_then(|c| set_intersect_unchecked(sig, s1, &c))
        .expect("inputs produced by this crate")
}

/// Whether the ground canonical term `m` is an instance of some member.
pub fn member_set(sig: &Signature, m: &Term, s: &PatternSet) -> Result<bool, PatternError> {
    for p in &s.members {
        if match_ground(&s.psi, sig, m, p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// [`member_set`] for terms known to be ground and canonical, such as the
/// output of [`enumerate_ground`].
pub fn member_set_unchecked(sig: &Signature, m: &Term, s: &PatternSet) -> bool {
    s.members
        .iter()
        .any(|p| match_ground_unchecked(&s.psi, sig, m, p))
}

type MemoKey = (Vec<(Name, Type)>, Type, usize);

/// Enumerates ground canonical terms by size, memoizing per context, type
/// and exact size.
pub struct GroundEnumerator<'a> {
    sig: &'a Signature,
    memo: HashMap<MemoKey, Vec<Term>>,
}

impl<'a> GroundEnumerator<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        GroundEnumerator {
            sig,
            memo: HashMap::new(),
        }
    }

    /// All η-long β-normal terms of exactly `size` at `ty`, ignoring
    /// occurrence conditions.
    fn exact(&mut self, scope: &Params, ty: &Type, size: usize) -> Vec<Term> {
        if size == 0 {
            return Vec::new();
        }
        let key = (scope.iter().cloned().collect::<Vec<_>>(), ty.clone(), size);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let out = match ty {
            Type::Arrow(dom, k, cod) => {
                let x = fresh_name("x", |c| {
                    scope.contains(c) || self.sig.const_type(c).is_some()
                });
                let inner = scope.extended(x.clone(), dom.as_ref().clone());
                self.exact(&inner, cod, size - 1)
                    .into_iter()
                    .map(|b| Term::lam(x.clone(), *k, dom.as_ref().clone(), b))
                    .collect()
            }
            Type::Atom(a) => {
                let heads: Vec<(Term, Type)> = self
                    .sig
                    .consts()
                    .map(|(c, t)| (Term::cnst(c.clone()), t.clone()))
                    .chain(scope.iter().map(|(x, t)| (Term::var(x.clone()), t.clone())))
                    .filter(|(_, t)| t.target() == a)
                    .collect();
                let mut out = Vec::new();
                for (h, hty) in heads {
                    let (doms, _) = hty.spine();
                    let doms: Vec<(Type, Label)> =
                        doms.into_iter().map(|(d, k)| (d.clone(), k)).collect();
                    self.spines(scope, &h, &doms, size - 1, &mut out);
                }
                out
            }
        };
        self.memo.insert(key, out.clone());
        out
    }

    /// Applications of `head` to arguments for `doms` with sizes summing to
    /// exactly `budget`.
    fn spines(
        &mut self,
        scope: &Params,
        head: &Term,
        doms: &[(Type, Label)],
        budget: usize,
        out: &mut Vec<Term>,
    ) {
        let Some(((d, k), rest)) = doms.split_first() else {
            if budget == 0 {
                out.push(head.clone());
            }
            return;
        };
        if budget < doms.len() {
            return;
        }
        for s in 1..=budget - rest.len() {
            for arg in self.exact(scope, d, s) {
                self.spines(
                    scope,
                    &Term::app(head.clone(), *k, arg),
                    rest,
                    budget - s,
                    out,
                );
            }
        }
    }
}

/// The ground canonical terms of size at most `depth` at `ty` under Ψ;·;·,
/// ordered by size and then by printed form.
pub fn enumerate_ground(psi: &Params, sig: &Signature, ty: &Type, depth: usize) -> Vec<Term> {
    let mut en = GroundEnumerator::new(sig);
    let ctx = ZonedContext::unrestricted(psi);
    let mut out = Vec::new();
    for size in 1..=depth {
        let mut layer: Vec<Term> = en
            .exact(psi, ty, size)
            .into_iter()
            .filter(|t| typing::check(&ctx, sig, t, ty).is_ok())
            .collect();
        layer.sort_by_cached_key(|t| t.to_string());
        out.extend(layer);
    }
    out
}

/// Result of comparing two sets on the ground terms up to a size bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedEq {
    pub depth: usize,
    pub terms_checked: usize,
    /// A term in exactly one of the two sets, if any was found.
    pub witness: Option<Term>,
}

impl BoundedEq {
    pub fn equal(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for BoundedEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(
                f,
                "equal on all {} ground terms of size <= {}",
                self.terms_checked, self.depth
            ),
            Some(t) => write!(f, "differ on `{t}` (size bound {})", self.depth),
        }
    }
}

/// Compares the ground instances of two sets on every ground canonical term
/// of size at most `depth`. Agreement is evidence, not proof, of equality.
pub fn extensional_eq(
    sig: &Signature,
    s1: &PatternSet,
    s2: &PatternSet,
    depth: usize,
) -> Result<BoundedEq, PatternError> {
    s1.check_compatible(s2)?;
    validate_set(sig, s1)?;
    validate_set(sig, s2)?;
    let terms = enumerate_ground(&s1.psi, sig, &s1.ty, depth);
    let witness = terms
        .iter()
        .find(|t| member_set_unchecked(sig, t, s1) != member_set_unchecked(sig, t, s2))
        .cloned();
    Ok(BoundedEq {
        depth,
        terms_checked: terms.len(),
        witness,
    })
}

/// A program clause `name : pred head.`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: Name,
    pub pred: Name,
    pub head: SimpleLinearPattern,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} ({}).", self.name, self.pred, self.head)
    }
}

/// Clauses for `non_<pred>` whose heads are the complement of the heads of
/// the given clauses, named `nb1`, `nb2`, … in printed order.
pub fn clause_complement(sig: &Signature, program: &[Clause]) -> Result<Vec<Clause>, PatternError> {
    let Some(first) = program.first() else {
        return Err(PatternError::IllFormed("empty program".to_string()));
    };
    if let Some(c) = program.iter().find(|c| c.pred != first.pred) {
        return Err(PatternError::IllFormed(format!(
            "clauses for both `{}` and `{}`",
            first.pred, c.pred
        )));
    }
    let heads = PatternSet::new(
        &first.head.psi,
        sig,
        &first.head.ty,
        program.iter().map(|c| c.head.clone()).collect(),
    )?;
    let neg = set_complement_unchecked(sig, &heads)?;
    let mut members = neg.members;
    members.sort_by_cached_key(|m| m.to_string());
    Ok(members
        .into_iter()
        .enumerate()
        .map(|(i, head)| Clause {
            name: format!("nb{}", i + 1),
            pred: format!("non_{}", first.pred),
            head,
        })
        .collect())
}
