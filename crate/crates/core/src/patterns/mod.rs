//! Simple linear patterns: validation, the fully applied normal form and
//! ground-instance matching.
//!
//! A pattern lives in a flat parameter context Ψ and has a type. Simple
//! patterns bind only with `λx^u`, apply rigid heads only with `@1`, and
//! place EVars at base type. Linear means every EVar name occurs once; fully
//! applied means every EVar lists every variable in scope, parameters first
//! in declaration order, then binders from the outside in.

mod embed;

pub use embed::{embed_context, embed_signature, embed_term, embed_type, Polarity};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::canonicalize::classify_at;
use crate::syntax::{
    fresh_name, parse_term, rename_var, Label, Name, Params, Phi, Signature, SyntaxError, Term,
    Type, ZonedContext,
};
use crate::typing::{self, TypingError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("not canonical: {0}")]
    NotCanonical(String),
    #[error("not simple: {0}")]
    NotSimple(String),
    #[error("not linear: `{0}` occurs more than once")]
    NotLinear(Name),
    #[error("not fully applied: {0}")]
    NotFullyApplied(String),
    #[error("ill-formed input: {0}")]
    IllFormed(String),
    #[error(transparent)]
    IllTyped(#[from] TypingError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// Types that may appear where a canonical term is constructed by the
/// producer: `a` and `N ->1 P`.
pub fn is_positive(ty: &Type) -> bool {
    match ty {
        Type::Atom(_) => true,
        Type::Arrow(d, Label::One, c) => is_negative(d) && is_positive(c),
        Type::Arrow(..) => false,
    }
}

/// `a` and `P ->u N`.
pub fn is_negative(ty: &Type) -> bool {
    match ty {
        Type::Atom(_) => true,
        Type::Arrow(d, Label::U, c) => is_positive(d) && is_negative(c),
        Type::Arrow(..) => false,
    }
}

/// Every constant of a simple signature has a positive type.
pub fn check_simple_signature(sig: &Signature) -> Result<(), PatternError> {
    for (c, ty) in sig.consts() {
        if !is_positive(ty) {
            return Err(PatternError::NotSimple(format!(
                "constant `{c} : {ty}` does not have a positive type"
            )));
        }
    }
    Ok(())
}

fn check_simple_params(psi: &Params) -> Result<(), PatternError> {
    for (x, ty) in psi.iter() {
        if !is_positive(ty) {
            return Err(PatternError::NotSimple(format!(
                "parameter `{x} : {ty}` does not have a positive type"
            )));
        }
    }
    Ok(())
}

/// The type `A1 ->k1 … ->kn a` of an EVar applied to `phi` at base type `a`,
/// reading argument types from `scope`.
pub fn evar_type(phi: &Phi, scope: &Params, a: &Type) -> Option<Type> {
    let args = phi
        .iter()
        .map(|(x, k)| scope.get(x).map(|t| (t.clone(), *k)))
        .collect::<Option<Vec<_>>>()?;
    Some(Type::from_spine(args, a.clone()))
}

/// The closed instance `λx1^k1:A1. … λxn^kn:An. m` of `E Φ` witnessed by a
/// match of `m`, together with its type.
pub fn evar_witness(phi: &Phi, scope: &Params, m: &Term, a: &Type) -> Option<(Term, Type)> {
    let ty = evar_type(phi, scope, a)?;
    let term = phi.entries().iter().rev().fold(m.clone(), |body, (x, k)| {
        Term::lam(
            x.clone(),
            *k,
            scope.get(x).cloned().expect("checked by evar_type"),
            body,
        )
    });
    Some((term, ty))
}

/// A validated simple, linear, fully applied pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleLinearPattern {
    pub term: Term,
    pub psi: Params,
    pub ty: Type,
}

impl SimpleLinearPattern {
    pub fn new(psi: &Params, sig: &Signature, term: Term, ty: &Type) -> Result<Self, PatternError> {
        validate(psi, sig, &term, ty, true)?;
        Ok(SimpleLinearPattern {
            term,
            psi: psi.clone(),
            ty: ty.clone(),
        })
    }

    /// Wraps a term produced by the algorithms of this crate, skipping
    /// validation in release builds.
    pub(crate) fn trusted(psi: &Params, term: Term, ty: &Type) -> Self {
        SimpleLinearPattern {
            term,
            psi: psi.clone(),
            ty: ty.clone(),
        }
    }

    pub fn evar_names(&self) -> Vec<Name> {
        self.term.evar_names()
    }

    /// Identity up to α-equivalence and EVar renaming.
    pub fn key(&self) -> String {
        self.term.pattern_key()
    }
}

impl std::fmt::Display for SimpleLinearPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.term)
    }
}

struct Validator<'a> {
    sig: &'a Signature,
    scope: Vec<(Name, Type)>,
    evars: BTreeSet<Name>,
    require_full: bool,
}

impl<'a> Validator<'a> {
    fn get(&self, x: &str) -> Option<&Type> {
        self.scope
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, t)| t)
    }

    fn walk(&mut self, m: &Term, ty: &Type) -> Result<(), PatternError> {
        match ty {
            Type::Arrow(dom, k, cod) => {
                let Term::Lam {
                    var,
                    label,
                    ty: bty,
                    body,
                } = m
                else {
                    return Err(PatternError::NotCanonical(format!(
                        "`{m}` at function type `{ty}` is not an abstraction"
                    )));
                };
                if *label != Label::U || *k != Label::U {
                    return Err(PatternError::NotSimple(format!(
                        "abstraction `\\{var}^{label}` is not unrestricted"
                    )));
                }
                if bty != dom.as_ref() {
                    return Err(PatternError::NotCanonical(format!(
                        "binder `{var}` has type `{bty}`, expected `{dom}`"
                    )));
                }
                if self.require_full && self.get(var).is_some() {
                    return Err(PatternError::IllFormed(format!(
                        "binder `{var}` shadows a variable in scope"
                    )));
                }
                self.scope.push((var.clone(), bty.clone()));
                let r = self.walk(body, cod);
                self.scope.pop();
                r
            }
            Type::Atom(_) => match m {
                Term::Lam { .. } => Err(PatternError::NotCanonical(format!(
                    "abstraction `{m}` at base type `{ty}`"
                ))),
                Term::EVar { name, args } => {
                    if !self.evars.insert(name.clone()) {
                        return Err(PatternError::NotLinear(name.clone()));
                    }
                    if let Some(x) = args.names().find(|x| self.get(x).is_none()) {
                        return Err(PatternError::IllFormed(format!(
                            "argument `{x}` of `{name}` is not in scope"
                        )));
                    }
                    if self.require_full
                        && (args.len() != self.scope.len()
                            || args
                                .names()
                                .zip(self.scope.iter())
                                .any(|(x, (y, _))| x != y))
                    {
                        let expected: Vec<&str> =
                            self.scope.iter().map(|(x, _)| x.as_str()).collect();
                        return Err(PatternError::NotFullyApplied(format!(
                            "`{m}` should list [{}] in that order",
                            expected.join(", ")
                        )));
                    }
                    Ok(())
                }
                _ => {
                    let (head, args) = m.spine();
                    let hty = match head {
                        Term::Const(c) => self.sig.const_type(c),
                        Term::Var(x) => self.get(x),
                        _ => None,
                    };
                    let Some(hty) = hty.cloned() else {
                        return Err(PatternError::NotCanonical(format!(
                            "`{m}` has no constant or variable head"
                        )));
                    };
                    if let Some((k, _)) = args.iter().find(|(k, _)| *k != Label::One) {
                        return Err(PatternError::NotSimple(format!(
                            "rigid application `@{k}` in `{m}`"
                        )));
                    }
                    let (doms, target) = hty.spine();
                    if doms.len() != args.len() || Type::Atom(target.clone()) != *ty {
                        return Err(PatternError::NotCanonical(format!(
                            "`{m}` is not a fully applied term of type `{ty}`"
                        )));
                    }
                    for ((dom, _), (_, arg)) in doms.iter().zip(args.iter()) {
                        self.walk(arg, dom)?;
                    }
                    Ok(())
                }
            },
        }
    }
}

fn validate(
    psi: &Params,
    sig: &Signature,
    term: &Term,
    ty: &Type,
    require_full: bool,
) -> Result<(), PatternError> {
    check_simple_signature(sig)?;
    check_simple_params(psi)?;
    sig.check_type(ty)?;
    if !is_negative(ty) {
        return Err(PatternError::NotSimple(format!(
            "pattern type `{ty}` is not negative"
        )));
    }
    let mut v = Validator {
        sig,
        scope: psi.iter().cloned().collect(),
        evars: BTreeSet::new(),
        require_full,
    };
    v.walk(term, ty)?;
    if classify_at(&ZonedContext::unrestricted(psi), sig, term, ty)
        .canonical_type()
        .is_none()
    {
        let err = typing::check(&ZonedContext::unrestricted(psi), sig, term, ty).err();
        return Err(match err {
            Some(e) => PatternError::IllTyped(e),
            None => PatternError::NotCanonical(format!("`{term}` at `{ty}`")),
        });
    }
    Ok(())
}

/// Checks that `p` is simple, linear, fully applied and well-typed over `sig`.
pub fn validate_pattern(sig: &Signature, p: &SimpleLinearPattern) -> Result<(), PatternError> {
    validate(&p.psi, sig, &p.term, &p.ty, true)
}

/// The generalized variable `name Φ` η-expanded at `ty`: for
/// `ty = B1 ->u … ->u b` this is `λy1^u:B1. … λyk^u:Bk. name[Φ, y1^u, …, yk^u]`
/// with binder names chosen apart from `scope`.
pub fn generalized_var(name: &str, phi: &Phi, ty: &Type, scope: &Params) -> Term {
    let (doms, _) = ty.spine();
    let mut entries = phi.entries().to_vec();
    let mut binders = Vec::new();
    for (d, k) in doms {
        let y = fresh_name("y", |c| {
            scope.contains(c) || entries.iter().any(|(x, _)| x == c)
        });
        entries.push((y.clone(), Label::U));
        binders.push((y, k, d.clone()));
    }
    let body = Term::evar(name, Phi::new(entries).expect("binders are fresh"));
    binders
        .into_iter()
        .rev()
        .fold(body, |acc, (y, k, d)| Term::lam(y, k, d, acc))
}

/// Checks simplicity and linearity without requiring full application.
pub fn validate_simple_linear(
    psi: &Params,
    sig: &Signature,
    term: &Term,
    ty: &Type,
) -> Result<(), PatternError> {
    validate(psi, sig, term, ty, false)
}

/// Makes every EVar list every variable in scope in standard order. Added
/// arguments are irrelevant (`^0`); an EVar whose list changes gets a fresh
/// name derived from the old one.
pub fn fully_apply(
    psi: &Params,
    sig: &Signature,
    p: &Term,
    ty: &Type,
) -> Result<SimpleLinearPattern, PatternError> {
    validate(psi, sig, p, ty, false)?;
    let mut taken: BTreeSet<Name> = p.evar_names().into_iter().collect();
    let mut scope = psi.clone();
    let term = apply_all(p, &mut scope, &mut taken);
    let out = SimpleLinearPattern::trusted(psi, term, ty);
    debug_assert!(validate(psi, sig, &out.term, ty, true).is_ok());
    Ok(out)
}

fn apply_all(m: &Term, scope: &mut Params, taken: &mut BTreeSet<Name>) -> Term {
    match m {
        Term::Lam {
            var,
            label,
            ty,
            body,
        } => {
            let (var, body) = if scope.contains(var) {
                let names = body.all_var_names();
                let fresh = fresh_name(var, |c| scope.contains(c) || names.contains(c));
                let body = rename_var(body, var, &fresh);
                (fresh, body)
            } else {
                (var.clone(), body.as_ref().clone())
            };
            scope.push(var.clone(), ty.clone());
            let body = apply_all(&body, scope, taken);
            scope.pop();
            Term::lam(var, *label, ty.clone(), body)
        }
        Term::EVar { name, args } => {
            let full: Vec<(Name, Label)> = scope
                .names()
                .map(|x| (x.clone(), args.get(x).unwrap_or(Label::Zero)))
                .collect();
            if full.as_slice() == args.entries() {
                return m.clone();
            }
            let fresh = fresh_tick(name, taken);
            taken.insert(fresh.clone());
            Term::evar(fresh, Phi::new(full).expect("scope names are distinct"))
        }
        _ => {
            let (head, args) = m.spine();
            args.into_iter().fold(head.clone(), |acc, (k, arg)| {
                Term::app(acc, k, apply_all(arg, scope, taken))
            })
        }
    }
}

fn fresh_tick(name: &str, taken: &BTreeSet<Name>) -> Name {
    let ticked = format!("{name}'");
    if !taken.contains(&ticked) {
        return ticked;
    }
    fresh_name(name, |c| taken.contains(c))
}

/// Parses a pattern and brings it to fully applied form.
pub fn parse_pattern(
    text: &str,
    psi: &Params,
    sig: &Signature,
    ty: &Type,
) -> Result<SimpleLinearPattern, PatternError> {
    let term = parse_term(text, sig)?;
    fully_apply(psi, sig, &term, ty)
}

/// Decides whether the ground canonical term `m` is an instance of `p`.
pub fn match_ground(
    psi: &Params,
    sig: &Signature,
    m: &Term,
    p: &SimpleLinearPattern,
) -> Result<bool, PatternError> {
    match_ground_term(psi, sig, m, &p.term, &p.ty)
}

/// [`match_ground`] for a pattern given as a bare term at `ty`, which must be
/// linear and fully applied but need not be simple.
pub fn match_ground_term(
    psi: &Params,
    sig: &Signature,
    m: &Term,
    p: &Term,
    ty: &Type,
) -> Result<bool, PatternError> {
    if !m.is_ground() {
        return Err(PatternError::IllFormed(format!(
            "`{m}` contains existential variables"
        )));
    }
    if classify_at(&ZonedContext::unrestricted(psi), sig, m, ty)
        .canonical_type()
        .is_none()
    {
        return Err(PatternError::IllFormed(format!(
            "`{m}` is not canonical at `{ty}`"
        )));
    }
    Ok(matches(sig, &mut psi.clone(), m, p, ty))
}

/// [`match_ground`] without the precondition checks, for callers that
/// produce canonical ground terms themselves.
pub fn match_ground_unchecked(
    psi: &Params,
    sig: &Signature,
    m: &Term,
    p: &SimpleLinearPattern,
) -> bool {
    matches(sig, &mut psi.clone(), m, &p.term, &p.ty)
}

fn matches(sig: &Signature, scope: &mut Params, m: &Term, p: &Term, ty: &Type) -> bool {
    match (m, p) {
        (
            Term::Lam {
                var: y,
                ty: my,
                body: mb,
                ..
            },
            Term::Lam {
                var: x,
                ty: px,
                body: pb,
                ..
            },
        ) => {
            let Type::Arrow(_, _, cod) = ty else {
                return false;
            };
            if my != px {
                return false;
            }
            let (z, mb, pb) = if x == y && !scope.contains(x) {
                (x.clone(), mb.as_ref().clone(), pb.as_ref().clone())
            } else {
                let used_m = mb.all_var_names();
                let used_p = pb.all_var_names();
                let z = fresh_name(x, |c| {
                    scope.contains(c) || used_m.contains(c) || used_p.contains(c)
                });
                (z.clone(), rename_var(mb, y, &z), rename_var(pb, x, &z))
            };
            scope.push(z, px.clone());
            let r = matches(sig, scope, &mb, &pb, cod);
            scope.pop();
            r
        }
        (_, Term::EVar { args, .. }) => {
            let ctx = ZonedContext::from_phi(args, scope);
            typing::check(&ctx, sig, m, ty).is_ok()
        }
        _ => {
            let (mh, margs) = m.spine();
            let (ph, pargs) = p.spine();
            if mh != ph || margs.len() != pargs.len() {
                return false;
            }
            let hty = match ph {
                Term::Const(c) => sig.const_type(c),
                Term::Var(x) => scope.get(x),
                _ => None,
            };
            let Some(hty) = hty.cloned() else {
                return false;
            };
            let (doms, _) = hty.spine();
            doms.len() == pargs.len()
                && margs.iter().zip(pargs.iter()).zip(doms.iter()).all(
                    |(((mk, ma), (pk, pa)), (d, _))| mk == pk && matches(sig, scope, ma, pa, d),
                )
        }
    }
}
