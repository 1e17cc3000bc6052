//! The judgment Γ;Ω;Δ ⊢ M : A.
//!
//! [`check`] decides it in one pass by occurrence analysis: every subterm
//! reports the variables it is guaranteed to use strictly and the variables
//! it uses at all outside `@0` arguments. The nondeterministic context split
//! of strict application then reduces to a subset test,
//! `Δ ⊆ strict(M) ∪ strict(N)`.
//!
//! [`check_declarative`] is the reference oracle. It follows the inference
//! rules literally and backtracks over every split of Δ at strict
//! applications.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::{
    fresh_name, rename_var, Label, Name, Signature, Term, Type, Zone, ZonedContext,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypingErrorKind {
    TypeMismatch,
    UnknownIdent,
    StrictVarUnused,
    IrrelevantVarUsed,
    LabelMismatch,
    ZoneViolation,
}

impl fmt::Display for TypingErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{kind}: {message}")]
pub struct TypingError {
    pub kind: TypingErrorKind,
    /// The offending variable, when there is one.
    pub var: Option<Name>,
    /// Human-readable description including the subterm involved.
    pub message: String,
}

impl TypingError {
    fn new(kind: TypingErrorKind, var: Option<&str>, message: impl Into<String>) -> TypingError {
        TypingError {
            kind,
            var: var.map(str::to_string),
            message: message.into(),
        }
    }
}

/// Result of a successful check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceReport {
    /// Free variables with a guaranteed strict occurrence.
    pub strict_set: BTreeSet<Name>,
    /// Free variables occurring somewhere other than inside a `@0` argument.
    pub used_set: BTreeSet<Name>,
    pub inferred_type: Type,
}

#[derive(Default)]
struct Occ {
    strict: BTreeSet<Name>,
    used: BTreeSet<Name>,
}

impl Occ {
    fn single(x: &str) -> Occ {
        let mut o = Occ::default();
        o.strict.insert(x.to_string());
        o.used.insert(x.to_string());
        o
    }
}

struct Analyzer<'a> {
    sig: &'a Signature,
    ctx: &'a ZonedContext,
    locals: Vec<(Name, Type)>,
}

impl<'a> Analyzer<'a> {
    fn lookup(&self, x: &str) -> Option<&Type> {
        self.locals
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, t)| t)
            .or_else(|| self.ctx.lookup(x).map(|(_, t)| t))
    }

    fn synth(&mut self, m: &Term) -> Result<(Type, Occ), TypingError> {
        match m {
            Term::Const(c) => match self.sig.const_type(c) {
                Some(ty) => Ok((ty.clone(), Occ::default())),
                None => Err(TypingError::new(
                    TypingErrorKind::UnknownIdent,
                    Some(c),
                    format!("constant `{c}` is not declared"),
                )),
            },
            Term::Var(x) => match self.lookup(x) {
                Some(ty) => Ok((ty.clone(), Occ::single(x))),
                None => Err(TypingError::new(
                    TypingErrorKind::UnknownIdent,
                    Some(x),
                    format!("variable `{x}` is not in scope"),
                )),
            },
            Term::Lam {
                var,
                label,
                ty,
                body,
            } => {
                self.locals.push((var.clone(), ty.clone()));
                let res = self.synth(body);
                self.locals.pop();
                let (cod, occ) = res?;
                let occ = bind(var, *label, occ, m)?;
                Ok((Type::arrow(ty.clone(), *label, cod), occ))
            }
            Term::App { fun, arg, label } => {
                let (fty, focc) = self.synth(fun)?;
                let (dom, flabel, cod) = match fty {
                    Type::Arrow(d, k, c) => (*d, k, *c),
                    t => {
                        return Err(TypingError::new(
                            TypingErrorKind::TypeMismatch,
                            None,
                            format!("`{fun}` has non-function type `{t}` but is applied"),
                        ))
                    }
                };
                if flabel != *label {
                    return Err(TypingError::new(
                        TypingErrorKind::LabelMismatch,
                        None,
                        format!(
                            "`{fun}` expects a `@{flabel}` argument, applied with `@{label}` in `{m}`"
                        ),
                    ));
                }
                let aocc = self.check(arg, &dom)?;
                Ok((cod, combine(*label, focc, aocc)))
            }
            Term::EVar { name, .. } => Err(TypingError::new(
                TypingErrorKind::TypeMismatch,
                Some(name),
                format!("cannot infer the type of existential variable `{name}` here"),
            )),
        }
    }

    fn check(&mut self, m: &Term, expected: &Type) -> Result<Occ, TypingError> {
        match (m, expected) {
            (
                Term::Lam {
                    var,
                    label,
                    ty,
                    body,
                },
                Type::Arrow(dom, k, cod),
            ) => {
                if ty != dom.as_ref() {
                    return Err(TypingError::new(
                        TypingErrorKind::TypeMismatch,
                        Some(var),
                        format!("binder `{var}` has type `{ty}`, expected `{dom}`"),
                    ));
                }
                if label != k {
                    return Err(TypingError::new(
                        TypingErrorKind::LabelMismatch,
                        Some(var),
                        format!("abstraction `\\{var}^{label}` checked against `->{k}`"),
                    ));
                }
                self.locals.push((var.clone(), ty.clone()));
                let res = self.check(body, cod);
                self.locals.pop();
                bind(var, *label, res?, m)
            }
            (Term::EVar { name, args }, Type::Atom(_)) => {
                let mut occ = Occ::default();
                for (x, k) in args.iter() {
                    if self.lookup(x).is_none() {
                        return Err(TypingError::new(
                            TypingErrorKind::UnknownIdent,
                            Some(x),
                            format!("argument `{x}` of `{name}` is not in scope"),
                        ));
                    }
                    if *k == Label::One {
                        occ.strict.insert(x.clone());
                    }
                    if *k != Label::Zero {
                        occ.used.insert(x.clone());
                    }
                }
                Ok(occ)
            }
            (Term::EVar { name, .. }, _) => Err(TypingError::new(
                TypingErrorKind::TypeMismatch,
                Some(name),
                format!("existential variable `{name}` must have base type, expected `{expected}`"),
            )),
            _ => {
                let (ty, occ) = self.synth(m)?;
                if &ty != expected {
                    return Err(TypingError::new(
                        TypingErrorKind::TypeMismatch,
                        None,
                        format!("`{m}` has type `{ty}`, expected `{expected}`"),
                    ));
                }
                Ok(occ)
            }
        }
    }
}

/// Discharges a binder: `λx^1` needs a strict occurrence, `λx^0` none at all.
fn bind(x: &str, k: Label, mut occ: Occ, at: &Term) -> Result<Occ, TypingError> {
    match k {
        Label::One if !occ.strict.contains(x) => {
            return Err(TypingError::new(
                TypingErrorKind::StrictVarUnused,
                Some(x),
                format!("strict binder `{x}` has no strict occurrence in `{at}`"),
            ))
        }
        Label::Zero if occ.used.contains(x) => {
            return Err(TypingError::new(
                TypingErrorKind::IrrelevantVarUsed,
                Some(x),
                format!("irrelevant binder `{x}` is used in `{at}`"),
            ))
        }
        _ => {}
    }
    occ.strict.remove(x);
    occ.used.remove(x);
    Ok(occ)
}

fn combine(k: Label, mut f: Occ, a: Occ) -> Occ {
    match k {
        Label::One => {
            f.strict.extend(a.strict);
            f.used.extend(a.used);
        }
        Label::U => f.used.extend(a.used),
        Label::Zero => {}
    }
    f
}

fn check_disjoint(ctx: &ZonedContext) -> Result<(), TypingError> {
    for x in ctx.omega.keys().chain(ctx.delta.keys()) {
        let zones = [&ctx.gamma, &ctx.omega, &ctx.delta]
            .iter()
            .filter(|z| z.contains_key(x))
            .count();
        if zones > 1 {
            return Err(TypingError::new(
                TypingErrorKind::ZoneViolation,
                Some(x),
                format!("`{x}` is declared in more than one zone"),
            ));
        }
    }
    Ok(())
}

fn zone_check(
    ctx: &ZonedContext,
    occ: Occ,
    ty: Type,
    m: &Term,
) -> Result<OccurrenceReport, TypingError> {
    if let Some(x) = ctx.delta.keys().find(|x| !occ.strict.contains(*x)) {
        return Err(TypingError::new(
            TypingErrorKind::StrictVarUnused,
            Some(x),
            format!("strict hypothesis `{x}` has no strict occurrence in `{m}`"),
        ));
    }
    if let Some(x) = ctx.omega.keys().find(|x| occ.used.contains(*x)) {
        return Err(TypingError::new(
            TypingErrorKind::IrrelevantVarUsed,
            Some(x),
            format!("irrelevant hypothesis `{x}` is used in `{m}`"),
        ));
    }
    Ok(OccurrenceReport {
        strict_set: occ.strict,
        used_set: occ.used,
        inferred_type: ty,
    })
}

/// Decides Γ;Ω;Δ ⊢ M : A.
///
/// EVar occurrences `E Φ` are accepted at base type and behave like a
/// closed head applied to the variables of Φ with the labels of Φ.
pub fn check(
    ctx: &ZonedContext,
    sig: &Signature,
    m: &Term,
    a: &Type,
) -> Result<OccurrenceReport, TypingError> {
    check_disjoint(ctx)?;
    let mut an = Analyzer {
        sig,
        ctx,
        locals: Vec::new(),
    };
    let occ = an.check(m, a)?;
    zone_check(ctx, occ, a.clone(), m)
}

/// Infers the type of `m` and checks the zones.
pub fn infer(
    ctx: &ZonedContext,
    sig: &Signature,
    m: &Term,
) -> Result<OccurrenceReport, TypingError> {
    check_disjoint(ctx)?;
    let mut an = Analyzer {
        sig,
        ctx,
        locals: Vec::new(),
    };
    let (ty, occ) = an.synth(m)?;
    zone_check(ctx, occ, ty, m)
}

/// Checks an atomic term `h @1 M1 … @1 Mn` with the n-ary strict
/// application rules: every strict hypothesis other than a strict head must
/// occur strictly in some argument, irrelevant hypotheses in none, and a
/// head drawn from Δ counts as its own strict occurrence.
pub fn check_atomic_nary(
    ctx: &ZonedContext,
    sig: &Signature,
    m: &Term,
) -> Result<Type, TypingError> {
    check_disjoint(ctx)?;
    let (head, args) = m.spine();
    if let Some((k, _)) = args.iter().find(|(k, _)| *k != Label::One) {
        return Err(TypingError::new(
            TypingErrorKind::LabelMismatch,
            None,
            format!("`{m}` has a `@{k}` application; the n-ary rules cover strict spines"),
        ));
    }
    let (hty, head_var) = match head {
        Term::Const(c) => match sig.const_type(c) {
            Some(t) => (t.clone(), None),
            None => {
                return Err(TypingError::new(
                    TypingErrorKind::UnknownIdent,
                    Some(c),
                    format!("constant `{c}` is not declared"),
                ))
            }
        },
        Term::Var(x) => match ctx.lookup(x) {
            Some((Zone::Omega, _)) => {
                return Err(TypingError::new(
                    TypingErrorKind::IrrelevantVarUsed,
                    Some(x),
                    format!("irrelevant hypothesis `{x}` is the head of `{m}`"),
                ))
            }
            Some((_, t)) => (t.clone(), Some(x.as_str())),
            None => {
                return Err(TypingError::new(
                    TypingErrorKind::UnknownIdent,
                    Some(x),
                    format!("variable `{x}` is not in scope"),
                ))
            }
        },
        _ => {
            return Err(TypingError::new(
                TypingErrorKind::TypeMismatch,
                None,
                format!("`{m}` is not atomic"),
            ))
        }
    };
    let (doms, target) = hty.spine();
    if doms.len() != args.len() || doms.iter().any(|(_, k)| *k != Label::One) {
        return Err(TypingError::new(
            TypingErrorKind::LabelMismatch,
            None,
            format!(
                "head `{head}` of type `{hty}` is not an {}-ary strict function",
                args.len()
            ),
        ));
    }
    let mut an = Analyzer {
        sig,
        ctx,
        locals: Vec::new(),
    };
    let mut strict_somewhere = BTreeSet::new();
    for ((dom, _), (_, arg)) in doms.iter().zip(args.iter()) {
        let occ = an.check(arg, dom)?;
        if let Some(x) = ctx.omega.keys().find(|x| occ.used.contains(*x)) {
            return Err(TypingError::new(
                TypingErrorKind::IrrelevantVarUsed,
                Some(x),
                format!("irrelevant hypothesis `{x}` is used in `{arg}`"),
            ));
        }
        strict_somewhere.extend(occ.strict);
    }
    if let Some(x) = ctx
        .delta
        .keys()
        .find(|x| Some(x.as_str()) != head_var && !strict_somewhere.contains(*x))
    {
        return Err(TypingError::new(
            TypingErrorKind::StrictVarUnused,
            Some(x),
            format!("strict hypothesis `{x}` occurs strictly in no argument of `{m}`"),
        ));
    }
    Ok(Type::atom(target.clone()))
}

// ---------------------------------------------------------------------------
// Declarative oracle

type Zone3 = BTreeMap<Name, Type>;

/// Labelled type of `m` ignoring occurrence constraints; every variable in
/// scope is in `env`.
fn plain_type_of(sig: &Signature, env: &mut Vec<(Name, Type)>, m: &Term) -> Option<Type> {
    match m {
        Term::Const(c) => sig.const_type(c).cloned(),
        Term::Var(x) => env
            .iter()
            .rev()
            .find(|(y, _)| y == x)
            .map(|(_, t)| t.clone()),
        Term::Lam {
            var,
            label,
            ty,
            body,
        } => {
            env.push((var.clone(), ty.clone()));
            let cod = plain_type_of(sig, env, body);
            env.pop();
            Some(Type::arrow(ty.clone(), *label, cod?))
        }
        Term::App { fun, .. } => match plain_type_of(sig, env, fun)? {
            Type::Arrow(_, _, cod) => Some(*cod),
            Type::Atom(_) => None,
        },
        Term::EVar { .. } => None,
    }
}

fn union(a: &Zone3, b: &Zone3) -> Zone3 {
    let mut out = a.clone();
    out.extend(b.iter().map(|(x, t)| (x.clone(), t.clone())));
    out
}

struct Oracle<'a> {
    sig: &'a Signature,
}

impl<'a> Oracle<'a> {
    fn derivable(&self, g: &Zone3, o: &Zone3, d: &Zone3, m: &Term, a: &Type) -> bool {
        match m {
            // Con
            Term::Const(c) => d.is_empty() && self.sig.const_type(c) == Some(a),
            // Id^u and Id^1; there is no Id^0
            Term::Var(x) => {
                (d.is_empty() && g.get(x) == Some(a)) || (d.len() == 1 && d.get(x) == Some(a))
            }
            Term::Lam {
                var,
                label,
                ty,
                body,
            } => {
                let Type::Arrow(dom, k, cod) = a else {
                    return false;
                };
                if ty != dom.as_ref() || label != k {
                    return false;
                }
                let (var, body) =
                    if g.contains_key(var) || o.contains_key(var) || d.contains_key(var) {
                        let names = body.all_var_names();
                        let fresh = fresh_name(var, |c| {
                            g.contains_key(c)
                                || o.contains_key(c)
                                || d.contains_key(c)
                                || names.contains(c)
                        });
                        let body = rename_var(body, var, &fresh);
                        (fresh, body)
                    } else {
                        (var.clone(), body.as_ref().clone())
                    };
                let (mut g, mut o, mut d) = (g.clone(), o.clone(), d.clone());
                match label {
                    Label::U => g.insert(var, ty.clone()),
                    Label::Zero => o.insert(var, ty.clone()),
                    Label::One => d.insert(var, ty.clone()),
                };
                self.derivable(&g, &o, &d, &body, cod)
            }
            Term::App { fun, arg, label } => {
                let mut env: Vec<(Name, Type)> = union(&union(g, o), d).into_iter().collect();
                let Some(fty) = plain_type_of(self.sig, &mut env, fun) else {
                    return false;
                };
                let Type::Arrow(dom, k, cod) = &fty else {
                    return false;
                };
                if k != label || cod.as_ref() != a {
                    return false;
                }
                let empty = Zone3::new();
                match label {
                    Label::U => {
                        self.derivable(g, o, d, fun, &fty)
                            && self.derivable(&union(g, d), o, &empty, arg, dom)
                    }
                    Label::Zero => {
                        self.derivable(g, o, d, fun, &fty)
                            && self.derivable(&union(&union(g, o), d), &empty, &empty, arg, dom)
                    }
                    Label::One => self
                        .splits(d)
                        .iter()
                        .any(|(dm, dn)| self.strict_app(g, o, dm, dn, fun, &fty, arg, dom)),
                }
            }
            Term::EVar { .. } => false,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn strict_app(
        &self,
        g: &Zone3,
        o: &Zone3,
        dm: &Zone3,
        dn: &Zone3,
        fun: &Term,
        fty: &Type,
        arg: &Term,
        dom: &Type,
    ) -> bool {
        self.derivable(&union(g, dn), o, dm, fun, fty)
            && self.derivable(&union(g, dm), o, dn, arg, dom)
    }

    /// All (Δ_M, Δ_N) with Δ = Δ_M ⊎ Δ_N, in binary counting order.
    fn splits(&self, d: &Zone3) -> Vec<(Zone3, Zone3)> {
        let entries: Vec<_> = d.iter().collect();
        (0..1usize << entries.len())
            .map(|mask| {
                let mut dm = Zone3::new();
                let mut dn = Zone3::new();
                for (i, (x, t)) in entries.iter().enumerate() {
                    if mask & (1 << i) == 0 {
                        dm.insert((*x).clone(), (*t).clone());
                    } else {
                        dn.insert((*x).clone(), (*t).clone());
                    }
                }
                (dm, dn)
            })
            .collect()
    }
}

/// Searches for a derivation of Γ;Ω;Δ ⊢ M : A by the rules as stated,
/// trying every split of Δ at strict applications. Exponential; meant as a
/// reference for [`check`]. Terms containing EVars are rejected.
pub fn check_declarative(ctx: &ZonedContext, sig: &Signature, m: &Term, a: &Type) -> bool {
    if check_disjoint(ctx).is_err() {
        return false;
    }
    Oracle { sig }.derivable(&ctx.gamma, &ctx.omega, &ctx.delta, m, a)
}

/// For a strict application `M @1 N`, the number of splits of Δ under which
/// both premises of the strict elimination rule are derivable, and the total
/// number of splits. `None` if `m` is not a strict application of the right
/// shape.
pub fn strict_split_count(
    ctx: &ZonedContext,
    sig: &Signature,
    m: &Term,
    a: &Type,
) -> Option<(usize, usize)> {
    let Term::App {
        fun,
        arg,
        label: Label::One,
    } = m
    else {
        return None;
    };
    let oracle = Oracle { sig };
    let mut env: Vec<(Name, Type)> = ctx.flatten().iter().cloned().collect();
    let fty = plain_type_of(sig, &mut env, fun)?;
    let Type::Arrow(dom, Label::One, cod) = &fty else {
        return None;
    };
    if cod.as_ref() != a {
        return None;
    }
    let splits = oracle.splits(&ctx.delta);
    let ok = splits
        .iter()
        .filter(|(dm, dn)| oracle.strict_app(&ctx.gamma, &ctx.omega, dm, dn, fun, &fty, arg, dom))
        .count();
    Some((ok, splits.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_signature, parse_term, parse_type};

    fn sig_ab() -> Signature {
        parse_signature("A : type. B : type. a : type. b : type.").unwrap()
    }

    fn contraction_ctx(sig: &Signature) -> ZonedContext {
        ZonedContext::new()
            .with(Zone::Delta, "x", parse_type("A ->1 A ->1 B", sig).unwrap())
            .unwrap()
            .with(Zone::Delta, "y", Type::atom("A"))
            .unwrap()
    }

    #[test]
    fn contraction_example_accepted() {
        let sig = sig_ab();
        let ctx = contraction_ctx(&sig);
        let m = parse_term("(x @1 y) @1 y", &sig).unwrap();
        let rep = check(&ctx, &sig, &m, &Type::atom("B")).unwrap();
        assert_eq!(rep.inferred_type, Type::atom("B"));
        assert!(rep.strict_set.contains("x") && rep.strict_set.contains("y"));
        assert!(check_declarative(&ctx, &sig, &m, &Type::atom("B")));
    }

    #[test]
    fn contraction_example_has_two_of_four_splits() {
        let sig = sig_ab();
        let ctx = contraction_ctx(&sig);
        let m = parse_term("(x @1 y) @1 y", &sig).unwrap();
        assert_eq!(
            strict_split_count(&ctx, &sig, &m, &Type::atom("B")),
            Some((2, 4))
        );
    }

    #[test]
    fn unrestricted_function_does_not_use_strict_argument() {
        let sig = sig_ab();
        let ctx = ZonedContext::new()
            .with(Zone::Gamma, "y", parse_type("A ->u B", &sig).unwrap())
            .unwrap()
            .with(Zone::Delta, "x", Type::atom("A"))
            .unwrap();
        let m = parse_term("y @u x", &sig).unwrap();
        let err = check(&ctx, &sig, &m, &Type::atom("B")).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::StrictVarUnused);
        assert_eq!(err.var.as_deref(), Some("x"));
        assert!(!check_declarative(&ctx, &sig, &m, &Type::atom("B")));
    }

    #[test]
    fn irrelevant_variable_in_vacuous_redex() {
        let sig = parse_signature("A : type. B : type. c : B.").unwrap();
        let ctx = ZonedContext::new()
            .with(Zone::Omega, "x", Type::atom("A"))
            .unwrap();
        let m = parse_term("(\\y^0:A. c) @0 x", &sig).unwrap();
        assert!(check(&ctx, &sig, &m, &Type::atom("B")).is_ok());
        assert!(check_declarative(&ctx, &sig, &m, &Type::atom("B")));
        let err = check(&ZonedContext::new(), &sig, &m, &Type::atom("B")).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::UnknownIdent);
        assert!(!check_declarative(
            &ZonedContext::new(),
            &sig,
            &m,
            &Type::atom("B")
        ));
    }

    #[test]
    fn strict_identity() {
        let sig = sig_ab();
        let m = parse_term("\\x^1:a. x", &sig).unwrap();
        let ty = parse_type("a ->1 a", &sig).unwrap();
        assert!(check(&ZonedContext::new(), &sig, &m, &ty).is_ok());
        assert!(check_declarative(&ZonedContext::new(), &sig, &m, &ty));
    }

    #[test]
    fn vacuous_binder_must_not_be_used() {
        let sig = sig_ab();
        let m = parse_term("\\x^0:a. x", &sig).unwrap();
        let ty = parse_type("a ->0 a", &sig).unwrap();
        let err = check(&ZonedContext::new(), &sig, &m, &ty).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::IrrelevantVarUsed);
    }

    #[test]
    fn label_mismatch_on_application() {
        let sig = parse_signature("a : type. c : a ->1 a.").unwrap();
        let ctx = ZonedContext::new()
            .with(Zone::Delta, "x", Type::atom("a"))
            .unwrap();
        let ok = parse_term("c @1 x", &sig).unwrap();
        assert!(check(&ctx, &sig, &ok, &Type::atom("a")).is_ok());
        let bad = parse_term("c @u x", &sig).unwrap();
        let err = check(&ctx, &sig, &bad, &Type::atom("a")).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::LabelMismatch);
        assert_eq!(check_atomic_nary(&ctx, &sig, &ok), Ok(Type::atom("a")));
        assert_eq!(
            check_atomic_nary(&ctx, &sig, &bad).unwrap_err().kind,
            TypingErrorKind::LabelMismatch
        );
    }

    #[test]
    fn strict_head_pays_for_itself() {
        let sig = parse_signature("a : type. b : a.").unwrap();
        let ctx = ZonedContext::new()
            .with(Zone::Delta, "y", parse_type("a ->1 a ->1 a", &sig).unwrap())
            .unwrap();
        let m = parse_term("y @1 b @1 b", &sig).unwrap();
        assert_eq!(check_atomic_nary(&ctx, &sig, &m), Ok(Type::atom("a")));
        assert!(check(&ctx, &sig, &m, &Type::atom("a")).is_ok());
    }

    #[test]
    fn unknown_identifier() {
        let sig = sig_ab();
        let err = infer(&ZonedContext::new(), &sig, &Term::var("z")).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::UnknownIdent);
        assert_eq!(err.var.as_deref(), Some("z"));
    }

    #[test]
    fn evar_occurrences_follow_their_labels() {
        let sig = parse_signature("a : type.").unwrap();
        let e = parse_term("E[x^1, y^0]", &sig).unwrap();
        let a = Type::atom("a");
        let ctx = ZonedContext::new()
            .with(Zone::Delta, "x", a.clone())
            .unwrap()
            .with(Zone::Omega, "y", a.clone())
            .unwrap();
        let rep = check(&ctx, &sig, &e, &a).unwrap();
        assert_eq!(rep.strict_set.len(), 1);
        assert!(rep.used_set.contains("x") && !rep.used_set.contains("y"));
        let swapped = ctx.moved("x", Zone::Omega).unwrap();
        assert!(check(&swapped, &sig, &e, &a).is_err());
    }

    #[test]
    fn overlapping_zones_rejected() {
        let sig = sig_ab();
        let mut ctx = ZonedContext::new();
        ctx.gamma.insert("x".into(), Type::atom("a"));
        ctx.delta.insert("x".into(), Type::atom("a"));
        let err = check(&ctx, &sig, &Term::var("x"), &Type::atom("a")).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::ZoneViolation);
    }

    #[test]
    fn shadowing_binder_hides_outer_strict_variable() {
        let sig = sig_ab();
        let ctx = ZonedContext::new()
            .with(Zone::Delta, "x", Type::atom("a"))
            .unwrap();
        let m = parse_term("\\x^u:a. x", &sig).unwrap();
        let ty = parse_type("a ->u a", &sig).unwrap();
        assert!(check(&ctx, &sig, &m, &ty).is_err());
        assert!(!check_declarative(&ctx, &sig, &m, &ty));
    }
}
