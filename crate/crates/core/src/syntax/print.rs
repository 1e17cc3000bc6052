use std::fmt;

use super::{Params, Phi, Term, Type};

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Atom(a) => write!(f, "{a}"),
            Type::Arrow(dom, k, cod) => {
                if dom.is_atomic() {
                    write!(f, "{dom} ->{k} {cod}")
                } else {
                    write!(f, "({dom}) ->{k} {cod}")
                }
            }
        }
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, k)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}^{k}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, ty)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{ty}")?;
        }
        Ok(())
    }
}

impl Term {
    fn fmt_arg(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::App { .. } | Term::Lam { .. } => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => write!(f, "{c}"),
            Term::Var(x) => write!(f, "{x}"),
            Term::EVar { name, args } => write!(f, "{name}{args}"),
            Term::Lam {
                var,
                label,
                ty,
                body,
            } => write!(f, "\\{var}^{label}:{ty}. {body}"),
            Term::App { fun, arg, label } => {
                match fun.as_ref() {
                    Term::Lam { .. } => write!(f, "({fun})")?,
                    _ => write!(f, "{fun}")?,
                }
                write!(f, " @{label} ")?;
                arg.fmt_arg(f)
            }
        }
    }
}

/// Printed form of a term; parseable by [`super::parse_term`].
pub fn print_term(t: &Term) -> String {
    t.to_string()
}
