//! Lexer and recursive-descent parsers for the concrete syntax.
//!
//! ```text
//! sig   ::= (ident ':' ('type' | type) '.')*
//! type  ::= base ('->k' type)?            k ∈ {1, 0, u}
//! term  ::= '\' ident '^k' ':' type '.' term
//!         | atom ('@k' atom)*
//! atom  ::= ident | ident '[' (ident '^k' (',' ident '^k')*)? ']' | '(' term ')'
//! ```
//! Comments run from `%` to end of line.

use super::{Label, Name, Params, Phi, Signature, SyntaxError, Term, Type, Zone, ZonedContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(Name),
    /// `->`, `->1`, `->0`, `->u`
    Arrow(Option<Label>),
    /// `@1`, `@0`, `@u`
    At(Label),
    /// `^1`, `^0`, `^u`
    Sup(Label),
    Backslash,
    Colon,
    Dot,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(x) => write!(f, "`{x}`"),
            Tok::Arrow(None) => write!(f, "`->`"),
            Tok::Arrow(Some(k)) => write!(f, "`->{k}`"),
            Tok::At(k) => write!(f, "`@{k}`"),
            Tok::Sup(k) => write!(f, "`^{k}`"),
            Tok::Backslash => write!(f, "`\\`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

pub(crate) fn error_at(text: &str, offset: usize, msg: impl Into<String>) -> SyntaxError {
    let (line, col) = position(text, offset);
    SyntaxError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

pub(crate) fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    // A label character directly after `->`, `@` or `^`, not continuing an identifier.
    let label_at = |i: usize| -> Option<Label> {
        let (_, c) = *chars.get(i)?;
        let k = Label::from_char(c)?;
        match chars.get(i + 1) {
            Some((_, n)) if is_ident_char(*n) => None,
            _ => Some(k),
        }
    };
    while i < chars.len() {
        let (off, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '%' => {
                while i < chars.len() && chars[i].1 != '\n' {
                    i += 1;
                }
            }
            c if is_ident_start(c) => {
                let start = off;
                while i < chars.len() && is_ident_char(chars[i].1) {
                    i += 1;
                }
                let end = chars.get(i).map_or(text.len(), |(o, _)| *o);
                toks.push((Tok::Ident(text[start..end].to_string()), start));
            }
            '-' if chars.get(i + 1).map(|p| p.1) == Some('>') => {
                let k = label_at(i + 2);
                toks.push((Tok::Arrow(k), off));
                i += if k.is_some() { 3 } else { 2 };
            }
            '@' => {
                let k = label_at(i + 1)
                    .ok_or_else(|| error_at(text, off, "expected label 1, 0 or u after `@`"))?;
                toks.push((Tok::At(k), off));
                i += 2;
            }
            '^' => {
                let k = label_at(i + 1)
                    .ok_or_else(|| error_at(text, off, "expected label 1, 0 or u after `^`"))?;
                toks.push((Tok::Sup(k), off));
                i += 2;
            }
            _ => {
                let t = match c {
                    '\\' => Tok::Backslash,
                    ':' => Tok::Colon,
                    '.' => Tok::Dot,
                    ',' => Tok::Comma,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    _ => return Err(error_at(text, off, format!("unexpected character `{c}`"))),
                };
                toks.push((t, off));
                i += 1;
            }
        }
    }
    toks.push((Tok::Eof, text.len()));
    Ok(toks)
}

pub(crate) struct Cursor<'a> {
    pub text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Result<Cursor<'a>, SyntaxError> {
        Ok(Cursor {
            text,
            toks: lex(text)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub fn peek_at(&self, n: usize) -> &Tok {
        &self.toks[(self.pos + n).min(self.toks.len() - 1)].0
    }

    pub fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    pub fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, msg: impl Into<String>) -> SyntaxError {
        error_at(self.text, self.offset(), msg)
    }

    pub fn expect(&mut self, t: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == t {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected {t}, found {}", self.peek())))
        }
    }

    pub fn ident(&mut self) -> Result<Name, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.next();
                Ok(x)
            }
            t => Err(self.error(format!("expected identifier, found {t}"))),
        }
    }

    pub fn sup(&mut self) -> Result<Label, SyntaxError> {
        match self.peek().clone() {
            Tok::Sup(k) => {
                self.next();
                Ok(k)
            }
            t => Err(self.error(format!("expected label `^1`, `^0` or `^u`, found {t}"))),
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn finish(&self) -> Result<(), SyntaxError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", self.peek())))
        }
    }

    fn ty(&mut self) -> Result<Type, SyntaxError> {
        let dom = match self.peek().clone() {
            Tok::Ident(a) => {
                self.next();
                Type::Atom(a)
            }
            Tok::LParen => {
                self.next();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                t
            }
            t => return Err(self.error(format!("expected a type, found {t}"))),
        };
        match self.peek().clone() {
            Tok::Arrow(Some(k)) => {
                self.next();
                Ok(Type::arrow(dom, k, self.ty()?))
            }
            Tok::Arrow(None) => Err(self.error("arrow needs a label: `->1`, `->0` or `->u`")),
            _ => Ok(dom),
        }
    }

    fn term(&mut self, sig: &Signature, bound: &mut Vec<Name>) -> Result<Term, SyntaxError> {
        if *self.peek() == Tok::Backslash {
            return self.lambda(sig, bound);
        }
        let mut t = self.atom(sig, bound)?;
        while let Tok::At(k) = *self.peek() {
            self.next();
            let arg = if *self.peek() == Tok::Backslash {
                self.lambda(sig, bound)?
            } else {
                self.atom(sig, bound)?
            };
            t = Term::app(t, k, arg);
        }
        Ok(t)
    }

    fn lambda(&mut self, sig: &Signature, bound: &mut Vec<Name>) -> Result<Term, SyntaxError> {
        self.expect(Tok::Backslash)?;
        let x = self.ident()?;
        let k = self.sup()?;
        self.expect(Tok::Colon)?;
        let off = self.offset();
        let ty = self.ty()?;
        sig.check_type(&ty)
            .map_err(|e| error_at(self.text, off, e.to_string()))?;
        self.expect(Tok::Dot)?;
        bound.push(x.clone());
        let body = self.term(sig, bound);
        bound.pop();
        Ok(Term::lam(x, k, ty, body?))
    }

    fn atom(&mut self, sig: &Signature, bound: &mut Vec<Name>) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let t = self.term(sig, bound)?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(x) => {
                let off = self.offset();
                self.next();
                if *self.peek() == Tok::LBracket {
                    self.next();
                    let mut args = Vec::new();
                    if *self.peek() != Tok::RBracket {
                        loop {
                            let y = self.ident()?;
                            let k = self.sup()?;
                            args.push((y, k));
                            if *self.peek() == Tok::Comma {
                                self.next();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::RBracket)?;
                    let phi =
                        Phi::new(args).map_err(|e| error_at(self.text, off, e.to_string()))?;
                    Ok(Term::evar(x, phi))
                } else if bound.contains(&x) || sig.const_type(&x).is_none() {
                    if sig.is_type(&x) {
                        return Err(error_at(
                            self.text,
                            off,
                            format!("`{x}` is a type, not a term"),
                        ));
                    }
                    Ok(Term::Var(x))
                } else {
                    Ok(Term::Const(x))
                }
            }
            t => Err(self.error(format!("expected a term, found {t}"))),
        }
    }

    fn params(&mut self, sig: &Signature) -> Result<Vec<(Name, Type)>, SyntaxError> {
        let mut out = Vec::new();
        if self.at_eof() {
            return Ok(out);
        }
        loop {
            let x = self.ident()?;
            self.expect(Tok::Colon)?;
            let off = self.offset();
            let ty = self.ty()?;
            sig.check_type(&ty)
                .map_err(|e| error_at(self.text, off, e.to_string()))?;
            out.push((x, ty));
            if *self.peek() == Tok::Comma {
                self.next();
            } else {
                break;
            }
        }
        Ok(out)
    }
}

/// Parses a labelled term. Identifiers bound by an enclosing `\` are
/// variables; otherwise declared constants are constants and anything else
/// is a (free) variable.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, SyntaxError> {
    let mut cur = Cursor::new(text)?;
    let t = cur.term(sig, &mut Vec::new())?;
    cur.finish()?;
    Ok(t)
}

/// Parses a labelled type whose atoms are declared in `sig`.
pub fn parse_type(text: &str, sig: &Signature) -> Result<Type, SyntaxError> {
    let mut cur = Cursor::new(text)?;
    let ty = cur.ty()?;
    cur.finish()?;
    sig.check_type(&ty)?;
    Ok(ty)
}

/// Parses a flat context `x:A, y:B, …` (possibly empty).
pub fn parse_params(text: &str, sig: &Signature) -> Result<Params, SyntaxError> {
    let mut cur = Cursor::new(text)?;
    let ps = cur.params(sig)?;
    cur.finish()?;
    Params::new(ps)
}

/// Parses the three zones of Γ;Ω;Δ from separate `x:A, …` lists.
pub fn parse_context(
    gamma: &str,
    omega: &str,
    delta: &str,
    sig: &Signature,
) -> Result<ZonedContext, SyntaxError> {
    let mut ctx = ZonedContext::new();
    for (zone, text) in [
        (Zone::Gamma, gamma),
        (Zone::Omega, omega),
        (Zone::Delta, delta),
    ] {
        for (x, ty) in parse_params(text, sig)?.iter() {
            ctx.insert(zone, x.clone(), ty.clone())?;
        }
    }
    Ok(ctx)
}

/// Parses a signature file: `a : type.` and `c : A.` declarations.
pub fn parse_signature(text: &str) -> Result<Signature, SyntaxError> {
    let mut cur = Cursor::new(text)?;
    let mut sig = Signature::new();
    while !cur.at_eof() {
        let off = cur.offset();
        let name = cur.ident()?;
        cur.expect(Tok::Colon)?;
        let res = if *cur.peek() == Tok::Ident("type".into()) && *cur.peek_at(1) == Tok::Dot {
            cur.next();
            sig.declare_type(name)
        } else {
            let ty = cur.ty()?;
            sig.declare_const(name, ty)
        };
        res.map_err(|e| error_at(text, off, e.to_string()))?;
        cur.expect(Tok::Dot)?;
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::alpha_eq;

    fn exp_sig() -> Signature {
        parse_signature(
            "exp : type.\n\
             lam : (exp ->u exp) ->1 exp.  % abstraction\n\
             app : exp ->1 exp ->1 exp.",
        )
        .unwrap()
    }

    #[test]
    fn signature_declarations() {
        let sig = exp_sig();
        assert!(sig.is_type("exp"));
        assert_eq!(
            sig.const_type("lam").unwrap().to_string(),
            "(exp ->u exp) ->1 exp"
        );
        assert_eq!(sig.consts().count(), 2);
    }

    #[test]
    fn duplicate_declaration_rejected() {
        let err = parse_signature("a : type. a : type.").unwrap_err();
        assert!(err.to_string().contains("more than once"), "{err}");
    }

    #[test]
    fn undeclared_atom_rejected() {
        assert!(parse_signature("c : a.").is_err());
    }

    #[test]
    fn lambda_under_application() {
        let sig = exp_sig();
        let t = parse_term("lam @1 (\\x^u:exp. x)", &sig).unwrap();
        let exp = Type::atom("exp");
        assert_eq!(
            t,
            Term::app(
                Term::cnst("lam"),
                Label::One,
                Term::lam("x", Label::U, exp, Term::var("x"))
            )
        );
    }

    #[test]
    fn evar_with_labels() {
        let t = parse_term("E[x^0, y^1]", &exp_sig()).unwrap();
        let phi = Phi::new(vec![("x".into(), Label::Zero), ("y".into(), Label::One)]).unwrap();
        assert_eq!(t, Term::evar("E", phi));
    }

    #[test]
    fn beta_redex_pattern() {
        let sig = exp_sig();
        let t = parse_term("app @1 (lam @1 (\\x^u:exp. E[x^u])) @1 F[]", &sig).unwrap();
        let (head, args) = t.spine();
        assert_eq!(*head, Term::cnst("app"));
        assert_eq!(args.len(), 2);
        assert_eq!(*args[1].1, Term::evar("F", Phi::default()));
    }

    #[test]
    fn application_is_left_associative() {
        let sig = exp_sig();
        let t = parse_term("app @1 x @1 y", &sig).unwrap();
        let expected = Term::app(
            Term::app(Term::cnst("app"), Label::One, Term::var("x")),
            Label::One,
            Term::var("y"),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn bound_names_shadow_constants() {
        let sig = exp_sig();
        let t = parse_term("\\app^u:exp. app", &sig).unwrap();
        assert!(alpha_eq(
            &t,
            &Term::lam("z", Label::U, Type::atom("exp"), Term::var("z"))
        ));
    }

    #[test]
    fn repeated_evar_argument_rejected() {
        assert!(parse_term("E[x^0, x^1]", &exp_sig()).is_err());
    }

    #[test]
    fn error_reports_position() {
        let err = parse_term("app @1\n  )", &exp_sig()).unwrap_err();
        match err {
            SyntaxError::Parse { line, col, .. } => assert_eq!((line, col), (2, 3)),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn unlabelled_arrow_rejected() {
        assert!(parse_type("exp -> exp", &exp_sig()).is_err());
    }

    #[test]
    fn contexts() {
        let sig = exp_sig();
        let psi = parse_params("x:exp, f:exp ->1 exp", &sig).unwrap();
        assert_eq!(psi.len(), 2);
        assert!(parse_params("", &sig).unwrap().is_empty());
        assert!(parse_params("x:exp, x:exp", &sig).is_err());
        let ctx = parse_context("x:exp", "", "y:exp", &sig).unwrap();
        assert_eq!(ctx.lookup("y").map(|(z, _)| z), Some(Zone::Delta));
        assert!(parse_context("x:exp", "x:exp", "", &sig).is_err());
    }
}
