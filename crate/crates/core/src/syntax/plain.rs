//! Label-free simply-typed syntax, the input language of the embedding.
//!
//! Types use plain `->`, abstractions are `\x:A. M`, application is
//! juxtaposition and existential variables are written `E[x, y]`.

use indexmap::IndexMap;

use super::parse::{error_at, Cursor, Tok};
use super::{Name, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlainType {
    Atom(Name),
    Arrow(Box<PlainType>, Box<PlainType>),
}

impl PlainType {
    pub fn arrow(a: PlainType, b: PlainType) -> PlainType {
        PlainType::Arrow(Box::new(a), Box::new(b))
    }
}

impl std::fmt::Display for PlainType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlainType::Atom(a) => write!(f, "{a}"),
            PlainType::Arrow(d, c) => match d.as_ref() {
                PlainType::Atom(_) => write!(f, "{d} -> {c}"),
                _ => write!(f, "({d}) -> {c}"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlainTerm {
    Const(Name),
    Var(Name),
    Lam(Name, PlainType, Box<PlainTerm>),
    App(Box<PlainTerm>, Box<PlainTerm>),
    EVar(Name, Vec<Name>),
}

impl std::fmt::Display for PlainTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlainTerm::Const(c) | PlainTerm::Var(c) => write!(f, "{c}"),
            PlainTerm::Lam(x, ty, body) => write!(f, "\\{x}:{ty}. {body}"),
            PlainTerm::App(m, n) => {
                match m.as_ref() {
                    PlainTerm::Lam(..) => write!(f, "({m})")?,
                    _ => write!(f, "{m}")?,
                }
                match n.as_ref() {
                    PlainTerm::App(..) | PlainTerm::Lam(..) => write!(f, " ({n})"),
                    _ => write!(f, " {n}"),
                }
            }
            PlainTerm::EVar(e, args) => write!(f, "{e}[{}]", args.join(", ")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlainSignature {
    /// `None` declares a type, `Some(A)` a constant of type `A`.
    pub decls: IndexMap<Name, Option<PlainType>>,
}

impl PlainSignature {
    pub fn const_type(&self, c: &str) -> Option<&PlainType> {
        self.decls.get(c).and_then(|d| d.as_ref())
    }

    pub fn is_type(&self, a: &str) -> bool {
        matches!(self.decls.get(a), Some(None))
    }
}

impl<'a> Cursor<'a> {
    fn plain_type(&mut self) -> Result<PlainType, SyntaxError> {
        let dom = match self.peek().clone() {
            Tok::Ident(a) => {
                self.next();
                PlainType::Atom(a)
            }
            Tok::LParen => {
                self.next();
                let t = self.plain_type()?;
                self.expect(Tok::RParen)?;
                t
            }
            t => return Err(self.error(format!("expected a type, found {t}"))),
        };
        match self.peek() {
            Tok::Arrow(None) => {
                self.next();
                Ok(PlainType::arrow(dom, self.plain_type()?))
            }
            Tok::Arrow(Some(_)) => Err(self.error("labelled arrow in label-free syntax")),
            _ => Ok(dom),
        }
    }

    fn plain_term(
        &mut self,
        sig: &PlainSignature,
        bound: &mut Vec<Name>,
    ) -> Result<PlainTerm, SyntaxError> {
        if *self.peek() == Tok::Backslash {
            self.next();
            let x = self.ident()?;
            self.expect(Tok::Colon)?;
            let ty = self.plain_type()?;
            self.expect(Tok::Dot)?;
            bound.push(x.clone());
            let body = self.plain_term(sig, bound);
            bound.pop();
            return Ok(PlainTerm::Lam(x, ty, Box::new(body?)));
        }
        let mut t = self.plain_atom(sig, bound)?;
        loop {
            match self.peek() {
                Tok::Ident(_) | Tok::LParen => {
                    let a = self.plain_atom(sig, bound)?;
                    t = PlainTerm::App(Box::new(t), Box::new(a));
                }
                Tok::Backslash => {
                    let a = self.plain_term(sig, bound)?;
                    t = PlainTerm::App(Box::new(t), Box::new(a));
                }
                _ => return Ok(t),
            }
        }
    }

    fn plain_atom(
        &mut self,
        sig: &PlainSignature,
        bound: &mut Vec<Name>,
    ) -> Result<PlainTerm, SyntaxError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let t = self.plain_term(sig, bound)?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(x) => {
                self.next();
                if *self.peek() == Tok::LBracket {
                    self.next();
                    let mut args = Vec::new();
                    if *self.peek() != Tok::RBracket {
                        loop {
                            args.push(self.ident()?);
                            if *self.peek() == Tok::Comma {
                                self.next();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::RBracket)?;
                    Ok(PlainTerm::EVar(x, args))
                } else if bound.contains(&x) || sig.const_type(&x).is_none() {
                    Ok(PlainTerm::Var(x))
                } else {
                    Ok(PlainTerm::Const(x))
                }
            }
            t => Err(self.error(format!("expected a term, found {t}"))),
        }
    }
}

pub fn parse_plain_type(text: &str) -> Result<PlainType, SyntaxError> {
    let mut cur = Cursor::new(text)?;
    let t = cur.plain_type()?;
    cur.finish()?;
    Ok(t)
}

pub fn parse_plain_term(text: &str, sig: &PlainSignature) -> Result<PlainTerm, SyntaxError> {
    let mut cur = Cursor::new(text)?;
    let t = cur.plain_term(sig, &mut Vec::new())?;
    cur.finish()?;
    Ok(t)
}

/// Parses `x:A, y:B` with plain types.
pub fn parse_plain_params(text: &str) -> Result<Vec<(Name, PlainType)>, SyntaxError> {
    let mut cur = Cursor::new(text)?;
    let mut out: Vec<(Name, PlainType)> = Vec::new();
    while !cur.at_eof() {
        let off = cur.offset();
        let x = cur.ident()?;
        cur.expect(Tok::Colon)?;
        let ty = cur.plain_type()?;
        if out.iter().any(|(y, _)| *y == x) {
            return Err(error_at(text, off, format!("`{x}` declared twice")));
        }
        out.push((x, ty));
        if *cur.peek() == Tok::Comma {
            cur.next();
        } else {
            break;
        }
    }
    cur.finish()?;
    Ok(out)
}

pub fn parse_plain_signature(text: &str) -> Result<PlainSignature, SyntaxError> {
    let mut cur = Cursor::new(text)?;
    let mut sig = PlainSignature::default();
    while !cur.at_eof() {
        let off = cur.offset();
        let name = cur.ident()?;
        cur.expect(Tok::Colon)?;
        let decl = if *cur.peek() == Tok::Ident("type".into()) && *cur.peek_at(1) == Tok::Dot {
            cur.next();
            None
        } else {
            Some(cur.plain_type()?)
        };
        if sig.decls.contains_key(&name) {
            return Err(error_at(
                text,
                off,
                format!("`{name}` is declared more than once"),
            ));
        }
        sig.decls.insert(name, decl);
        cur.expect(Tok::Dot)?;
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_lambda_terms() {
        let sig = parse_plain_signature(
            "exp : type. lam : (exp -> exp) -> exp. app : exp -> exp -> exp.",
        )
        .unwrap();
        let t = parse_plain_term("lam (\\x:exp. lam (\\y:exp. x))", &sig).unwrap();
        assert_eq!(t.to_string(), "lam (\\x:exp. lam (\\y:exp. x))");
        let e = parse_plain_term("app E[x, y] x", &sig).unwrap();
        assert_eq!(
            e,
            PlainTerm::App(
                Box::new(PlainTerm::App(
                    Box::new(PlainTerm::Const("app".into())),
                    Box::new(PlainTerm::EVar("E".into(), vec!["x".into(), "y".into()]))
                )),
                Box::new(PlainTerm::Var("x".into()))
            )
        );
    }

    #[test]
    fn plain_types_are_right_associative() {
        let t = parse_plain_type("(a -> a) -> a -> a").unwrap();
        assert_eq!(t.to_string(), "(a -> a) -> a -> a");
    }

    #[test]
    fn labelled_arrows_rejected() {
        assert!(parse_plain_type("a ->1 a").is_err());
    }
}
