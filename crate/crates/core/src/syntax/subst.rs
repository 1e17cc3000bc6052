use std::collections::BTreeSet;

use super::{Name, Phi, SyntaxError, Term};

/// First name in `stem, stem1, stem2, …` not rejected by `taken`, where the
/// stem is `base` with trailing digits and primes removed.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> Name {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'');
    let stem = if stem.is_empty() { "x" } else { stem };
    if !taken(stem) {
        return stem.to_string();
    }
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|c| !taken(c))
        .expect("unbounded supply of names")
}

/// `[n/x]m`, renaming bound variables of `m` where they would capture a free
/// variable of `n`. An EVar argument `x` can only be replaced by a variable
/// not already in the list; anything else is [`SyntaxError::EVarArgHit`].
pub fn subst(n: &Term, x: &str, m: &Term) -> Result<Term, SyntaxError> {
    let fv_n = n.free_vars();
    subst_inner(n, &fv_n, x, m)
}

fn subst_inner(n: &Term, fv_n: &BTreeSet<Name>, x: &str, m: &Term) -> Result<Term, SyntaxError> {
    Ok(match m {
        Term::Var(y) if y == x => n.clone(),
        Term::Var(_) | Term::Const(_) => m.clone(),
        Term::App { fun, arg, label } => Term::app(
            subst_inner(n, fv_n, x, fun)?,
            *label,
            subst_inner(n, fv_n, x, arg)?,
        ),
        Term::EVar { name, args } => {
            if args.get(x).is_none() {
                return Ok(m.clone());
            }
            if let Term::Var(y) = n {
                if args.get(y).is_none() {
                    return Ok(rename_var(m, x, y));
                }
            }
            if args.get(x).is_some() {
                return Err(SyntaxError::EVarArgHit {
                    evar: name.clone(),
                    var: x.to_string(),
                });
            }
            m.clone()
        }
        Term::Lam { var, .. } if var == x => m.clone(),
        Term::Lam {
            var,
            label,
            ty,
            body,
        } => {
            if fv_n.contains(var) && body.free_vars().contains(x) {
                let names = body.all_var_names();
                let fresh = fresh_name(var, |c| fv_n.contains(c) || names.contains(c) || c == x);
                let body = rename_var(body, var, &fresh);
                Term::lam(fresh, *label, ty.clone(), subst_inner(n, fv_n, x, &body)?)
            } else {
                Term::lam(
                    var.clone(),
                    *label,
                    ty.clone(),
                    subst_inner(n, fv_n, x, body)?,
                )
            }
        }
    })
}

/// Renames free occurrences of `from` to `to`, including inside EVar
/// argument lists. `to` must not be bound anywhere inside `m`.
pub fn rename_var(m: &Term, from: &str, to: &str) -> Term {
    match m {
        Term::Var(y) if y == from => Term::Var(to.to_string()),
        Term::Var(_) | Term::Const(_) => m.clone(),
        Term::App { fun, arg, label } => {
            Term::app(rename_var(fun, from, to), *label, rename_var(arg, from, to))
        }
        Term::EVar { name, args } => {
            let mut args: Phi = args.clone();
            for (y, _) in args.entries_mut() {
                if y == from {
                    *y = to.to_string();
                }
            }
            Term::EVar {
                name: name.clone(),
                args,
            }
        }
        Term::Lam { var, .. } if var == from => m.clone(),
        Term::Lam {
            var,
            label,
            ty,
            body,
        } => Term::lam(var.clone(), *label, ty.clone(), rename_var(body, from, to)),
    }
}

/// Equality up to consistent renaming of bound variables. EVars are equal
/// when their names agree and their argument lists agree entry by entry.
pub fn alpha_eq(t1: &Term, t2: &Term) -> bool {
    aeq(t1, t2, &mut Vec::new(), &mut Vec::new())
}

fn same_var(x: &Name, y: &Name, env1: &[Name], env2: &[Name]) -> bool {
    match (
        env1.iter().rposition(|b| b == x),
        env2.iter().rposition(|b| b == y),
    ) {
        (Some(i), Some(j)) => i == j,
        (None, None) => x == y,
        _ => false,
    }
}

fn aeq(t1: &Term, t2: &Term, env1: &mut Vec<Name>, env2: &mut Vec<Name>) -> bool {
    match (t1, t2) {
        (Term::Const(a), Term::Const(b)) => a == b,
        (Term::Var(x), Term::Var(y)) => same_var(x, y, env1, env2),
        (
            Term::Lam {
                var: x,
                label: k1,
                ty: a1,
                body: b1,
            },
            Term::Lam {
                var: y,
                label: k2,
                ty: a2,
                body: b2,
            },
        ) => {
            if k1 != k2 || a1 != a2 {
                return false;
            }
            env1.push(x.clone());
            env2.push(y.clone());
            let r = aeq(b1, b2, env1, env2);
            env1.pop();
            env2.pop();
            r
        }
        (
            Term::App {
                fun: f1,
                arg: a1,
                label: k1,
            },
            Term::App {
                fun: f2,
                arg: a2,
                label: k2,
            },
        ) => k1 == k2 && aeq(f1, f2, env1, env2) && aeq(a1, a2, env1, env2),
        (Term::EVar { name: e1, args: p1 }, Term::EVar { name: e2, args: p2 }) => {
            e1 == e2
                && p1.len() == p2.len()
                && p1
                    .iter()
                    .zip(p2.iter())
                    .all(|((x, k1), (y, k2))| k1 == k2 && same_var(x, y, env1, env2))
        }
        _ => false,
    }
}
