//! The embedding of simply-typed canonical terms into simple terms.
//!
//! Positive function types become strict, negative ones unrestricted:
//! `(A -> B)+ = A- ->1 B+` and `(A -> B)- = A+ ->u B-`.

use crate::syntax::plain::{PlainSignature, PlainTerm, PlainType};
use crate::syntax::{Label, Name, Params, Phi, Signature, Term, Type};

use super::PatternError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Pos,
    Neg,
}

pub fn embed_type(t: &PlainType, pol: Polarity) -> Type {
    match t {
        PlainType::Atom(a) => Type::atom(a.clone()),
        PlainType::Arrow(d, c) => match pol {
            Polarity::Pos => Type::arrow(
                embed_type(d, Polarity::Neg),
                Label::One,
                embed_type(c, Polarity::Pos),
            ),
            Polarity::Neg => Type::arrow(
                embed_type(d, Polarity::Pos),
                Label::U,
                embed_type(c, Polarity::Neg),
            ),
        },
    }
}

/// Types are kept, constants get their positive translation.
pub fn embed_signature(sig: &PlainSignature) -> Result<Signature, PatternError> {
    let mut out = Signature::new();
    for (name, decl) in &sig.decls {
        match decl {
            None => out.declare_type(name.clone())?,
            Some(t) => out.declare_const(name.clone(), embed_type(t, Polarity::Pos))?,
        }
    }
    Ok(out)
}

pub fn embed_context(ctx: &[(Name, PlainType)]) -> Result<Params, PatternError> {
    Ok(Params::new(
        ctx.iter()
            .map(|(x, t)| (x.clone(), embed_type(t, Polarity::Pos)))
            .collect(),
    )?)
}

/// Embeds a term that is canonical at `ty` in the simply-typed calculus.
/// Abstractions become `λ^u`, applications `@1`, and EVar arguments `^u`.
pub fn embed_term(
    sig: &PlainSignature,
    ctx: &[(Name, PlainType)],
    m: &PlainTerm,
    ty: &PlainType,
) -> Result<Term, PatternError> {
    let mut env: Vec<(Name, PlainType)> = ctx.to_vec();
    negative(sig, &mut env, m, ty)
}

fn lookup<'a>(env: &'a [(Name, PlainType)], x: &str) -> Option<&'a PlainType> {
    env.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
}

fn negative(
    sig: &PlainSignature,
    env: &mut Vec<(Name, PlainType)>,
    m: &PlainTerm,
    ty: &PlainType,
) -> Result<Term, PatternError> {
    match (m, ty) {
        (PlainTerm::Lam(x, a, body), PlainType::Arrow(d, c)) => {
            if a != d.as_ref() {
                return Err(PatternError::NotCanonical(format!(
                    "binder `{x}` has type `{a}`, expected `{d}`"
                )));
            }
            env.push((x.clone(), a.clone()));
            let body = negative(sig, env, body, c);
            env.pop();
            Ok(Term::lam(
                x.clone(),
                Label::U,
                embed_type(a, Polarity::Pos),
                body?,
            ))
        }
        (_, PlainType::Arrow(..)) => Err(PatternError::NotCanonical(format!(
            "`{m}` at function type `{ty}` is not an abstraction"
        ))),
        (PlainTerm::EVar(e, args), PlainType::Atom(_)) => {
            if let Some(x) = args.iter().find(|x| lookup(env, x).is_none()) {
                return Err(PatternError::IllFormed(format!(
                    "argument `{x}` of `{e}` is not in scope"
                )));
            }
            let phi = Phi::new(args.iter().map(|x| (x.clone(), Label::U)).collect())?;
            Ok(Term::evar(e.clone(), phi))
        }
        (_, PlainType::Atom(_)) => {
            let (n, t) = positive(sig, env, m)?;
            if &t != ty {
                return Err(PatternError::NotCanonical(format!(
                    "`{m}` has type `{t}`, expected `{ty}`"
                )));
            }
            Ok(n)
        }
    }
}

fn positive(
    sig: &PlainSignature,
    env: &mut Vec<(Name, PlainType)>,
    m: &PlainTerm,
) -> Result<(Term, PlainType), PatternError> {
    match m {
        PlainTerm::Const(c) => match sig.const_type(c) {
            Some(t) => Ok((Term::cnst(c.clone()), t.clone())),
            None => Err(PatternError::IllFormed(format!(
                "`{c}` is not a declared constant"
            ))),
        },
        PlainTerm::Var(x) => match lookup(env, x) {
            Some(t) => Ok((Term::var(x.clone()), t.clone())),
            None => Err(PatternError::IllFormed(format!("`{x}` is not in scope"))),
        },
        PlainTerm::App(f, n) => {
            let (f, fty) = positive(sig, env, f)?;
            let PlainType::Arrow(d, c) = fty else {
                return Err(PatternError::NotCanonical(format!(
                    "`{f}` is applied but has base type"
                )));
            };
            let n = negative(sig, env, n, &d)?;
            Ok((Term::app(f, Label::One, n), *c))
        }
        PlainTerm::Lam(..) | PlainTerm::EVar(..) => Err(PatternError::NotCanonical(format!(
            "`{m}` in head position"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::plain::{parse_plain_signature, parse_plain_term, parse_plain_type};

    fn lam_sig() -> PlainSignature {
        parse_plain_signature("exp : type. lam : (exp -> exp) -> exp. app : exp -> exp -> exp.")
            .unwrap()
    }

    #[test]
    fn higher_order_constant_type() {
        let t = parse_plain_type("(exp -> exp) -> exp").unwrap();
        assert_eq!(
            embed_type(&t, Polarity::Pos).to_string(),
            "(exp ->u exp) ->1 exp"
        );
    }

    #[test]
    fn atoms_fixed() {
        let a = PlainType::Atom("a".into());
        assert_eq!(embed_type(&a, Polarity::Pos), Type::atom("a"));
        assert_eq!(embed_type(&a, Polarity::Neg), Type::atom("a"));
    }

    #[test]
    fn nested_polarity() {
        let t = parse_plain_type("(a -> a) -> a -> a").unwrap();
        assert_eq!(
            embed_type(&t, Polarity::Pos).to_string(),
            "(a ->u a) ->1 a ->1 a"
        );
        assert_eq!(
            embed_type(&t, Polarity::Neg).to_string(),
            "(a ->1 a) ->u a ->u a"
        );
    }

    #[test]
    fn k_combinator() {
        let sig = lam_sig();
        let m = parse_plain_term("lam (\\x:exp. lam (\\y:exp. x))", &sig).unwrap();
        let e = embed_term(&sig, &[], &m, &PlainType::Atom("exp".into())).unwrap();
        assert_eq!(e.to_string(), "lam @1 (\\x^u:exp. lam @1 (\\y^u:exp. x))");
    }

    #[test]
    fn evar_arguments_unrestricted() {
        let sig = lam_sig();
        let ctx = vec![
            ("x".to_string(), PlainType::Atom("exp".into())),
            ("y".to_string(), PlainType::Atom("exp".into())),
        ];
        let m = parse_plain_term("E[x, y]", &sig).unwrap();
        let e = embed_term(&sig, &ctx, &m, &PlainType::Atom("exp".into())).unwrap();
        assert_eq!(e.to_string(), "E[x^u, y^u]");
    }

    #[test]
    fn eta_short_rejected() {
        let sig = parse_plain_signature("a : type. f : (a -> a) -> a. g : a -> a.").unwrap();
        let m = parse_plain_term("f g", &sig).unwrap();
        assert!(matches!(
            embed_term(&sig, &[], &m, &PlainType::Atom("a".into())),
            Err(PatternError::NotCanonical(_))
        ));
    }
}
