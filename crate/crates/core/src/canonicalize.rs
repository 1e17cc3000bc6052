//! Weak head reduction, conversion to canonical (β-normal η-long) form and
//! recognition of canonical and atomic terms.
//!
//! EVars are treated as rigid heads of base type throughout, so patterns can
//! be canonicalized like ordinary terms.

use thiserror::Error;

use crate::syntax::{
    fresh_name, subst, Name, Params, Signature, SyntaxError, Term, Type, ZonedContext,
};
use crate::typing::{self, TypingError, TypingErrorKind};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("no canonical form within {0} reduction steps (ill-typed input?)")]
    NonTerminating(usize),
    #[error(transparent)]
    Typing(#[from] TypingError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// Outcome of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicityClass {
    Canonical(Type),
    /// A constant or variable applied to canonical arguments.
    Atomic(Type),
    Neither,
}

impl CanonicityClass {
    /// The type at which the term is canonical. Atomic terms are canonical
    /// only at base type.
    pub fn canonical_type(&self) -> Option<&Type> {
        match self {
            CanonicityClass::Canonical(t) => Some(t),
            CanonicityClass::Atomic(t) if t.is_atomic() => Some(t),
            _ => None,
        }
    }
}

fn mismatch(kind: TypingErrorKind, msg: String) -> TypingError {
    TypingError {
        kind,
        var: None,
        message: msg,
    }
}

/// One step of weak head reduction: β at the head, or ν into the function
/// position. `Ok(None)` when the head is rigid or the term is an abstraction.
pub fn whr_step(m: &Term) -> Result<Option<Term>, CanonError> {
    let Term::App { fun, arg, label } = m else {
        return Ok(None);
    };
    match fun.as_ref() {
        Term::Lam {
            var,
            label: k,
            body,
            ..
        } => {
            if k != label {
                return Err(mismatch(
                    TypingErrorKind::LabelMismatch,
                    format!("redex `{m}` pairs `\\{var}^{k}` with `@{label}`"),
                )
                .into());
            }
            Ok(Some(subst(arg, var, body)?))
        }
        _ => Ok(whr_step(fun)?.map(|f| Term::app(f, *label, arg.as_ref().clone()))),
    }
}

struct Conv<'a> {
    sig: &'a Signature,
    env: Params,
    fuel: usize,
    budget: usize,
}

impl<'a> Conv<'a> {
    fn burn(&mut self) -> Result<(), CanonError> {
        if self.fuel == 0 {
            return Err(CanonError::NonTerminating(self.budget));
        }
        self.fuel -= 1;
        Ok(())
    }

    fn canonical(&mut self, m: Term, a: &Type) -> Result<Term, CanonError> {
        match a {
            Type::Arrow(dom, k, cod) => {
                let hint = match &m {
                    Term::Lam { var, .. } => var.as_str(),
                    _ => "x",
                };
                let free = m.free_vars();
                let env = &self.env;
                let x = fresh_name(hint, |c| env.contains(c) || free.contains(c));
                self.env.push(x.clone(), dom.as_ref().clone());
                let body = self.canonical(Term::app(m, *k, Term::var(&x)), cod);
                self.env.pop();
                Ok(Term::lam(x, *k, dom.as_ref().clone(), body?))
            }
            Type::Atom(_) => {
                let mut m = m;
                while let Some(next) = whr_step(&m)? {
                    self.burn()?;
                    m = next;
                }
                if let Term::EVar { name, args } = &m {
                    if let Some(x) = args.names().find(|x| !self.env.contains(x)) {
                        return Err(mismatch(
                            TypingErrorKind::UnknownIdent,
                            format!("argument `{x}` of `{name}` is not in scope"),
                        )
                        .into());
                    }
                    return Ok(m);
                }
                let (n, ty) = self.atomic(&m)?;
                if &ty != a {
                    return Err(mismatch(
                        TypingErrorKind::TypeMismatch,
                        format!("`{m}` has type `{ty}`, expected `{a}`"),
                    )
                    .into());
                }
                Ok(n)
            }
        }
    }

    fn atomic(&mut self, m: &Term) -> Result<(Term, Type), CanonError> {
        self.burn()?;
        match m {
            Term::Const(c) => match self.sig.const_type(c) {
                Some(t) => Ok((m.clone(), t.clone())),
                None => Err(mismatch(
                    TypingErrorKind::UnknownIdent,
                    format!("constant `{c}` is not declared"),
                )
                .into()),
            },
            Term::Var(x) => match self.env.get(x) {
                Some(t) => Ok((m.clone(), t.clone())),
                None => Err(mismatch(
                    TypingErrorKind::UnknownIdent,
                    format!("variable `{x}` is not in scope"),
                )
                .into()),
            },
            Term::App { fun, arg, label } => {
                let (p, fty) = self.atomic(fun)?;
                match fty {
                    Type::Arrow(dom, k, cod) if k == *label => {
                        let q = self.canonical(arg.as_ref().clone(), &dom)?;
                        Ok((Term::app(p, k, q), *cod))
                    }
                    Type::Arrow(_, k, _) => Err(mismatch(
                        TypingErrorKind::LabelMismatch,
                        format!("`{fun}` expects `@{k}`, applied with `@{label}`"),
                    )
                    .into()),
                    t => Err(mismatch(
                        TypingErrorKind::TypeMismatch,
                        format!("`{fun}` has non-function type `{t}` but is applied"),
                    )
                    .into()),
                }
            }
            Term::Lam { .. } | Term::EVar { .. } => Err(mismatch(
                TypingErrorKind::TypeMismatch,
                format!("`{m}` cannot appear in head position of a base-type term"),
            )
            .into()),
        }
    }
}

/// Canonical form of `m` at type `a` in the flat context `psi`, with the
/// default step budget.
pub fn canonicalize(psi: &Params, sig: &Signature, m: &Term, a: &Type) -> Result<Term, CanonError> {
    canonicalize_with_budget(psi, sig, m, a, DEFAULT_BUDGET)
}

pub fn canonicalize_with_budget(
    psi: &Params,
    sig: &Signature,
    m: &Term,
    a: &Type,
    budget: usize,
) -> Result<Term, CanonError> {
    let mut conv = Conv {
        sig,
        env: psi.clone(),
        fuel: budget,
        budget,
    };
    conv.canonical(m.clone(), a)
}

/// Shape-only recognition; `env` holds the types of all variables in scope.
struct Shape<'a> {
    sig: &'a Signature,
    env: Vec<(Name, Type)>,
}

impl<'a> Shape<'a> {
    fn lookup(&self, x: &str) -> Option<&Type> {
        self.env.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    fn canonical_at(&mut self, m: &Term, a: &Type) -> bool {
        match (m, a) {
            (
                Term::Lam {
                    var,
                    label,
                    ty,
                    body,
                },
                Type::Arrow(dom, k, cod),
            ) => {
                if label != k || ty != dom.as_ref() {
                    return false;
                }
                self.env.push((var.clone(), ty.clone()));
                let ok = self.canonical_at(body, cod);
                self.env.pop();
                ok
            }
            (Term::EVar { args, .. }, Type::Atom(_)) => {
                args.names().all(|x| self.lookup(x).is_some())
            }
            (_, Type::Atom(_)) => self.atomic(m).as_ref() == Some(a),
            _ => false,
        }
    }

    fn atomic(&mut self, m: &Term) -> Option<Type> {
        match m {
            Term::Const(c) => self.sig.const_type(c).cloned(),
            Term::Var(x) => self.lookup(x).cloned(),
            Term::App { fun, arg, label } => match self.atomic(fun)? {
                Type::Arrow(dom, k, cod) if k == *label && self.canonical_at(arg, &dom) => {
                    Some(*cod)
                }
                _ => None,
            },
            _ => None,
        }
    }

    fn synth_canonical(&mut self, m: &Term) -> Option<Type> {
        match m {
            Term::Lam {
                var,
                label,
                ty,
                body,
            } => {
                self.env.push((var.clone(), ty.clone()));
                let cod = self.synth_canonical(body);
                self.env.pop();
                Some(Type::arrow(ty.clone(), *label, cod?))
            }
            _ => self.atomic(m).filter(Type::is_atomic),
        }
    }
}

fn shape<'a>(ctx: &ZonedContext, sig: &'a Signature) -> Shape<'a> {
    Shape {
        sig,
        env: ctx.flatten().iter().cloned().collect(),
    }
}

/// Decides whether `m` is canonical or atomic under the zoned context,
/// occurrence conditions included. A bare EVar has no inferable type and
/// classifies as `Neither`; use [`classify_at`] for those.
pub fn classify(ctx: &ZonedContext, sig: &Signature, m: &Term) -> CanonicityClass {
    let mut sh = shape(ctx, sig);
    let class = if matches!(m, Term::Lam { .. }) {
        match sh.synth_canonical(m) {
            Some(t) => CanonicityClass::Canonical(t),
            None => return CanonicityClass::Neither,
        }
    } else {
        match sh.atomic(m) {
            Some(t) => CanonicityClass::Atomic(t),
            None => return CanonicityClass::Neither,
        }
    };
    match typing::infer(ctx, sig, m) {
        Ok(_) => class,
        Err(_) => CanonicityClass::Neither,
    }
}

/// [`classify`] against a known type; EVars at base type count as canonical.
pub fn classify_at(ctx: &ZonedContext, sig: &Signature, m: &Term, a: &Type) -> CanonicityClass {
    let mut sh = shape(ctx, sig);
    let class = match m {
        Term::Const(_) | Term::Var(_) | Term::App { .. } => match sh.atomic(m) {
            Some(t) if &t == a => CanonicityClass::Atomic(t),
            _ => return CanonicityClass::Neither,
        },
        _ if sh.canonical_at(m, a) => CanonicityClass::Canonical(a.clone()),
        _ => return CanonicityClass::Neither,
    };
    match typing::check(ctx, sig, m, a) {
        Ok(_) => class,
        Err(_) => CanonicityClass::Neither,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{alpha_eq, parse_params, parse_signature, parse_term, parse_type, Zone};

    fn sig() -> Signature {
        parse_signature("a : type. b : a. d : a. c : a ->1 a. f : a ->u a ->1 a.").unwrap()
    }

    #[test]
    fn beta_one_step() {
        let s = sig();
        let m = parse_term("(\\x^1:a. x) @1 b", &s).unwrap();
        assert_eq!(whr_step(&m).unwrap(), Some(Term::cnst("b")));
    }

    #[test]
    fn nu_then_beta() {
        let s = parse_signature("a : type. b : a. d : a. c : a ->1 a.").unwrap();
        let m = parse_term("((\\x^u:a. c) @u b) @1 d", &s).unwrap();
        let once = whr_step(&m).unwrap().unwrap();
        assert_eq!(once, parse_term("c @1 d", &s).unwrap());
        assert_eq!(whr_step(&once).unwrap(), None);
    }

    #[test]
    fn no_step_under_binder() {
        let s = sig();
        let m = parse_term("\\x^u:a. (\\y^u:a. y) @u x", &s).unwrap();
        assert_eq!(whr_step(&m).unwrap(), None);
    }

    #[test]
    fn mismatched_redex_rejected() {
        let s = sig();
        let m = parse_term("(\\x^1:a. x) @u b", &s).unwrap();
        assert!(
            matches!(whr_step(&m), Err(CanonError::Typing(e)) if e.kind == TypingErrorKind::LabelMismatch)
        );
    }

    #[test]
    fn eta_expands_constant() {
        let s = sig();
        let ty = parse_type("a ->1 a", &s).unwrap();
        let n = canonicalize(&Params::empty(), &s, &Term::cnst("c"), &ty).unwrap();
        assert!(alpha_eq(&n, &parse_term("\\x^1:a. c @1 x", &s).unwrap()));
    }

    #[test]
    fn eta_expands_partial_application() {
        let s = sig();
        let ty = parse_type("a ->1 a", &s).unwrap();
        let n = canonicalize(
            &Params::empty(),
            &s,
            &parse_term("f @u b", &s).unwrap(),
            &ty,
        )
        .unwrap();
        assert!(alpha_eq(
            &n,
            &parse_term("\\x^1:a. f @u b @1 x", &s).unwrap()
        ));
    }

    #[test]
    fn reduces_nested_redexes() {
        let s = sig();
        let m = parse_term("c @1 ((\\x^1:a. c @1 x) @1 b)", &s).unwrap();
        let n = canonicalize(&Params::empty(), &s, &m, &Type::atom("a")).unwrap();
        assert_eq!(n, parse_term("c @1 (c @1 b)", &s).unwrap());
    }

    #[test]
    fn binder_names_avoid_context() {
        let s = sig();
        let psi = parse_params("x:a", &s).unwrap();
        let ty = parse_type("a ->1 a", &s).unwrap();
        let n = canonicalize(&psi, &s, &Term::cnst("c"), &ty).unwrap();
        match &n {
            Term::Lam { var, .. } => assert_ne!(var, "x"),
            _ => panic!("expected abstraction"),
        }
    }

    #[test]
    fn evar_is_rigid() {
        let s = sig();
        let psi = parse_params("x:a", &s).unwrap();
        let m = parse_term("(\\y^u:a. E[y^u]) @u x", &s).unwrap();
        let n = canonicalize(&psi, &s, &m, &Type::atom("a")).unwrap();
        assert_eq!(n.to_string(), "E[x^u]");
    }

    #[test]
    fn budget_exhaustion_reported() {
        let s = sig();
        let m = parse_term("c @1 ((\\x^1:a. c @1 x) @1 b)", &s).unwrap();
        assert_eq!(
            canonicalize_with_budget(&Params::empty(), &s, &m, &Type::atom("a"), 2),
            Err(CanonError::NonTerminating(2))
        );
    }

    #[test]
    fn classify_fully_applied_eta_redex() {
        let s =
            parse_signature("exp : type. lam : (exp ->u exp) ->1 exp. app : exp ->1 exp ->1 exp.")
                .unwrap();
        let m = parse_term("\\x^u:exp. app @1 E[x^0] @1 x", &s).unwrap();
        let ty = parse_type("exp ->u exp", &s).unwrap();
        assert_eq!(
            classify(&ZonedContext::new(), &s, &m),
            CanonicityClass::Canonical(ty)
        );
    }

    #[test]
    fn classify_redex_is_neither() {
        let s = sig();
        let m = parse_term("(\\x^1:a. x) @1 b", &s).unwrap();
        assert_eq!(
            classify(&ZonedContext::new(), &s, &m),
            CanonicityClass::Neither
        );
    }

    #[test]
    fn classify_strict_head_with_abstraction_argument() {
        let s = parse_signature("a : type. b : type.").unwrap();
        let ctx = ZonedContext::new()
            .with(Zone::Delta, "x", parse_type("(a ->u a) ->1 b", &s).unwrap())
            .unwrap();
        let m = parse_term("x @1 (\\y^u:a. y)", &s).unwrap();
        assert_eq!(
            classify(&ctx, &s, &m),
            CanonicityClass::Atomic(Type::atom("b"))
        );
        let wrong = ctx.moved("x", Zone::Omega).unwrap();
        assert_eq!(classify(&wrong, &s, &m), CanonicityClass::Neither);
    }

    #[test]
    fn eta_short_is_not_canonical() {
        let s = sig();
        let ty = parse_type("a ->1 a", &s).unwrap();
        assert_eq!(
            classify(&ZonedContext::new(), &s, &Term::cnst("c")),
            CanonicityClass::Atomic(ty.clone())
        );
        assert_eq!(CanonicityClass::Atomic(ty.clone()).canonical_type(), None);
        assert_eq!(
            classify_at(&ZonedContext::new(), &s, &Term::cnst("c"), &ty).canonical_type(),
            None
        );
    }

    #[test]
    fn classify_at_accepts_evar() {
        let s = sig();
        let ctx = ZonedContext::new()
            .with(Zone::Omega, "x", Type::atom("a"))
            .unwrap();
        let e = parse_term("E[x^0]", &s).unwrap();
        assert_eq!(
            classify_at(&ctx, &s, &e, &Type::atom("a")),
            CanonicityClass::Canonical(Type::atom("a"))
        );
        assert_eq!(classify(&ctx, &s, &e), CanonicityClass::Neither);
    }
}
