//! Terms, types, signatures and contexts of the strict λ-calculus.
//!
//! Terms use a named representation. Bound variable names are significant
//! only up to α-equivalence (see [`alpha_eq`]); fresh names are produced by
//! [`fresh_name`] with a numeric suffix scheme (`x`, `x1`, `x2`, …).

mod parse;
pub mod plain;
mod print;
mod subst;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

pub use parse::{parse_context, parse_params, parse_signature, parse_term, parse_type};
pub use print::print_term;
pub use subst::{alpha_eq, fresh_name, rename_var, subst};

pub type Name = String;

/// Occurrence annotation on arrows, abstractions, applications and Φ entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Strict: the argument is guaranteed to occur.
    One,
    /// Irrelevant: the argument is guaranteed not to occur.
    Zero,
    /// Undetermined.
    U,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::One, Label::Zero, Label::U];

    pub fn is_determined(self) -> bool {
        self != Label::U
    }

    pub fn as_char(self) -> char {
        match self {
            Label::One => '1',
            Label::Zero => '0',
            Label::U => 'u',
        }
    }

    pub fn from_char(c: char) -> Option<Label> {
        match c {
            '1' => Some(Label::One),
            '0' => Some(Label::Zero),
            'u' => Some(Label::U),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Atom(Name),
    Arrow(Box<Type>, Label, Box<Type>),
}

impl Type {
    pub fn atom(name: impl Into<Name>) -> Type {
        Type::Atom(name.into())
    }

    pub fn arrow(dom: Type, label: Label, cod: Type) -> Type {
        Type::Arrow(Box::new(dom), label, Box::new(cod))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Type::Atom(_))
    }

    /// Splits `A1 ->k1 … ->kn a` into its argument list and target atom.
    pub fn spine(&self) -> (Vec<(&Type, Label)>, &Name) {
        let mut args = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Type::Atom(a) => return (args, a),
                Type::Arrow(dom, k, cod) => {
                    args.push((dom.as_ref(), *k));
                    cur = cod;
                }
            }
        }
    }

    /// The atom at the end of the arrow spine.
    pub fn target(&self) -> &Name {
        self.spine().1
    }

    pub fn arity(&self) -> usize {
        self.spine().0.len()
    }

    /// Rebuilds `A1 ->k1 … ->kn target` from a spine.
    pub fn from_spine(args: Vec<(Type, Label)>, target: Type) -> Type {
        args.into_iter()
            .rev()
            .fold(target, |acc, (dom, k)| Type::arrow(dom, k, acc))
    }

    /// Every arrow in the spine carries `label`.
    pub fn spine_all(&self, label: Label) -> bool {
        self.spine().0.iter().all(|(_, k)| *k == label)
    }

    pub fn atoms(&self, out: &mut BTreeSet<Name>) {
        match self {
            Type::Atom(a) => {
                out.insert(a.clone());
            }
            Type::Arrow(d, _, c) => {
                d.atoms(out);
                c.atoms(out);
            }
        }
    }
}

/// Labelled argument list of a generalized variable, written Φ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phi(Vec<(Name, Label)>);

impl Phi {
    /// Builds a Φ, rejecting repeated variables.
    pub fn new(entries: Vec<(Name, Label)>) -> Result<Phi, SyntaxError> {
        let mut seen = BTreeSet::new();
        for (x, _) in &entries {
            if !seen.insert(x.as_str()) {
                return Err(SyntaxError::DuplicateEVarArg(x.clone()));
            }
        }
        Ok(Phi(entries))
    }

    /// All variables of `names` with the same label.
    pub fn uniform<'a>(names: impl IntoIterator<Item = &'a Name>, label: Label) -> Phi {
        Phi(names.into_iter().map(|n| (n.clone(), label)).collect())
    }

    pub fn get(&self, x: &str) -> Option<Label> {
        self.0.iter().find(|(y, _)| y == x).map(|(_, k)| *k)
    }

    pub fn position(&self, x: &str) -> Option<usize> {
        self.0.iter().position(|(y, _)| y == x)
    }

    pub fn entries(&self) -> &[(Name, Label)] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<(Name, Label)> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Name, Label)> {
        self.0.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.0.iter().map(|(x, _)| x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn with_label(&self, i: usize, label: Label) -> Phi {
        let mut out = self.clone();
        out.0[i].1 = label;
        out
    }

    pub(crate) fn entries_mut(&mut self) -> &mut Vec<(Name, Label)> {
        &mut self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Const(Name),
    Var(Name),
    Lam {
        var: Name,
        label: Label,
        ty: Type,
        body: Box<Term>,
    },
    App {
        fun: Box<Term>,
        arg: Box<Term>,
        label: Label,
    },
    /// Existential variable applied to its labelled arguments.
    EVar {
        name: Name,
        args: Phi,
    },
}

impl Term {
    pub fn cnst(name: impl Into<Name>) -> Term {
        Term::Const(name.into())
    }

    pub fn var(name: impl Into<Name>) -> Term {
        Term::Var(name.into())
    }

    pub fn lam(var: impl Into<Name>, label: Label, ty: Type, body: Term) -> Term {
        Term::Lam {
            var: var.into(),
            label,
            ty,
            body: Box::new(body),
        }
    }

    pub fn app(fun: Term, label: Label, arg: Term) -> Term {
        Term::App {
            fun: Box::new(fun),
            arg: Box::new(arg),
            label,
        }
    }

    pub fn evar(name: impl Into<Name>, args: Phi) -> Term {
        Term::EVar {
            name: name.into(),
            args,
        }
    }

    /// `head @k1 M1 … @kn Mn`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = (Label, Term)>) -> Term {
        args.into_iter()
            .fold(head, |acc, (k, m)| Term::app(acc, k, m))
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<(Label, &Term)>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App { fun, arg, label } = cur {
            args.push((*label, arg.as_ref()));
            cur = fun;
        }
        args.reverse();
        (cur, args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Const(_) | Term::Var(_) => true,
            Term::Lam { body, .. } => body.is_ground(),
            Term::App { fun, arg, .. } => fun.is_ground() && arg.is_ground(),
            Term::EVar { .. } => false,
        }
    }

    /// Free variables, including those listed in EVar argument lists.
    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Term::Const(_) => {}
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Lam { var, body, .. } => {
                bound.push(var.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Term::App { fun, arg, .. } => {
                fun.collect_free(bound, out);
                arg.collect_free(bound, out);
            }
            Term::EVar { args, .. } => {
                for x in args.names() {
                    if !bound.contains(x) {
                        out.insert(x.clone());
                    }
                }
            }
        }
    }

    /// Every variable name appearing anywhere, bound or free.
    pub fn all_var_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.walk(&mut |t| match t {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Lam { var, .. } => {
                out.insert(var.clone());
            }
            Term::EVar { args, .. } => out.extend(args.names().cloned()),
            _ => {}
        });
        out
    }

    /// EVar names in left-to-right occurrence order (with repetitions).
    pub fn evar_names(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let Term::EVar { name, .. } = t {
                out.push(name.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        match self {
            Term::Lam { body, .. } => body.walk(f),
            Term::App { fun, arg, .. } => {
                fun.walk(f);
                arg.walk(f);
            }
            _ => {}
        }
    }

    /// Rewrites every EVar occurrence bottom-up.
    pub fn map_evars(&self, f: &mut impl FnMut(&Name, &Phi) -> Term) -> Term {
        match self {
            Term::Const(_) | Term::Var(_) => self.clone(),
            Term::Lam {
                var,
                label,
                ty,
                body,
            } => Term::lam(var.clone(), *label, ty.clone(), body.map_evars(f)),
            Term::App { fun, arg, label } => Term::app(fun.map_evars(f), *label, arg.map_evars(f)),
            Term::EVar { name, args } => f(name, args),
        }
    }

    /// Size used by the enumeration bounds: atoms plus abstractions.
    /// Applications are not counted, so `c @u b` has size 2.
    pub fn size(&self) -> usize {
        match self {
            Term::Const(_) | Term::Var(_) | Term::EVar { .. } => 1,
            Term::Lam { body, .. } => 1 + body.size(),
            Term::App { fun, arg, .. } => fun.size() + arg.size(),
        }
    }

    /// A string identifying the term up to α-equivalence and consistent
    /// renaming of EVars (by order of first occurrence).
    pub fn pattern_key(&self) -> String {
        let mut out = String::new();
        let mut evars: Vec<Name> = Vec::new();
        self.key_into(&mut Vec::new(), &mut evars, &mut out);
        out
    }

    fn key_into(&self, bound: &mut Vec<Name>, evars: &mut Vec<Name>, out: &mut String) {
        use std::fmt::Write;
        let var_key = |x: &Name, bound: &Vec<Name>| match bound.iter().rposition(|b| b == x) {
            Some(i) => format!("#{i}"),
            None => format!("${x}"),
        };
        match self {
            Term::Const(c) => {
                let _ = write!(out, "c:{c}");
            }
            Term::Var(x) => out.push_str(&var_key(x, bound)),
            Term::Lam {
                var,
                label,
                ty,
                body,
            } => {
                let _ = write!(out, "(\\{label}:{ty}.");
                bound.push(var.clone());
                body.key_into(bound, evars, out);
                bound.pop();
                out.push(')');
            }
            Term::App { fun, arg, label } => {
                out.push('(');
                fun.key_into(bound, evars, out);
                let _ = write!(out, " @{label} ");
                arg.key_into(bound, evars, out);
                out.push(')');
            }
            Term::EVar { name, args } => {
                let idx = match evars.iter().position(|e| e == name) {
                    Some(i) => i,
                    None => {
                        evars.push(name.clone());
                        evars.len() - 1
                    }
                };
                let _ = write!(out, "?{idx}[");
                for (x, k) in args.iter() {
                    let _ = write!(out, "{}^{k},", var_key(x, bound));
                }
                out.push(']');
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Type,
    Const(Type),
}

/// Ordered declarations `a : type.` and `c : A.`, each name at most once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    decls: IndexMap<Name, Decl>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn declare_type(&mut self, name: impl Into<Name>) -> Result<(), SyntaxError> {
        let name = name.into();
        if self.decls.contains_key(&name) {
            return Err(SyntaxError::DuplicateDecl(name));
        }
        self.decls.insert(name, Decl::Type);
        Ok(())
    }

    pub fn declare_const(&mut self, name: impl Into<Name>, ty: Type) -> Result<(), SyntaxError> {
        let name = name.into();
        if self.decls.contains_key(&name) {
            return Err(SyntaxError::DuplicateDecl(name));
        }
        self.check_type(&ty)?;
        self.decls.insert(name, Decl::Const(ty));
        Ok(())
    }

    /// Every atom of `ty` is a declared type.
    pub fn check_type(&self, ty: &Type) -> Result<(), SyntaxError> {
        let mut atoms = BTreeSet::new();
        ty.atoms(&mut atoms);
        for a in atoms {
            if !self.is_type(&a) {
                return Err(SyntaxError::UndeclaredType(a));
            }
        }
        Ok(())
    }

    pub fn is_type(&self, name: &str) -> bool {
        matches!(self.decls.get(name), Some(Decl::Type))
    }

    pub fn const_type(&self, name: &str) -> Option<&Type> {
        match self.decls.get(name) {
            Some(Decl::Const(ty)) => Some(ty),
            _ => None,
        }
    }

    pub fn consts(&self) -> impl Iterator<Item = (&Name, &Type)> {
        self.decls.iter().filter_map(|(n, d)| match d {
            Decl::Const(ty) => Some((n, ty)),
            Decl::Type => None,
        })
    }

    pub fn types(&self) -> impl Iterator<Item = &Name> {
        self.decls.iter().filter_map(|(n, d)| match d {
            Decl::Type => Some(n),
            Decl::Const(_) => None,
        })
    }

    pub fn decls(&self) -> impl Iterator<Item = (&Name, &Decl)> {
        self.decls.iter()
    }
}

/// Ordered flat context Ψ of distinct variable declarations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Params(Vec<(Name, Type)>);

impl Params {
    pub fn new(entries: Vec<(Name, Type)>) -> Result<Params, SyntaxError> {
        let mut seen = BTreeSet::new();
        for (x, _) in &entries {
            if !seen.insert(x.as_str()) {
                return Err(SyntaxError::DuplicateVar(x.clone()));
            }
        }
        Ok(Params(entries))
    }

    pub fn empty() -> Params {
        Params(Vec::new())
    }

    pub fn get(&self, x: &str) -> Option<&Type> {
        self.0.iter().rev().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.0.iter().any(|(y, _)| y == x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Name, Type)> {
        self.0.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.0.iter().map(|(x, _)| x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a declaration. Callers keep names distinct.
    pub fn push(&mut self, x: Name, ty: Type) {
        debug_assert!(!self.contains(&x), "duplicate parameter {x}");
        self.0.push((x, ty));
    }

    pub fn pop(&mut self) -> Option<(Name, Type)> {
        self.0.pop()
    }

    pub fn extended(&self, x: Name, ty: Type) -> Params {
        let mut out = self.clone();
        out.push(x, ty);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Zone {
    Gamma,
    Omega,
    Delta,
}

impl Zone {
    pub fn for_label(k: Label) -> Zone {
        match k {
            Label::U => Zone::Gamma,
            Label::Zero => Zone::Omega,
            Label::One => Zone::Delta,
        }
    }
}

/// Γ;Ω;Δ: unrestricted, irrelevant and strict hypotheses, pairwise disjoint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZonedContext {
    pub gamma: BTreeMap<Name, Type>,
    pub omega: BTreeMap<Name, Type>,
    pub delta: BTreeMap<Name, Type>,
}

impl ZonedContext {
    pub fn new() -> ZonedContext {
        ZonedContext::default()
    }

    /// Ψ;·;·
    pub fn unrestricted(psi: &Params) -> ZonedContext {
        ZonedContext {
            gamma: psi.iter().cloned().collect(),
            ..Default::default()
        }
    }

    /// The zoning determined by Φ: u ↦ Γ, 0 ↦ Ω, 1 ↦ Δ. Variables of Φ
    /// without a type in `types` are skipped.
    pub fn from_phi(phi: &Phi, types: &Params) -> ZonedContext {
        let mut ctx = ZonedContext::new();
        for (x, k) in phi.iter() {
            if let Some(ty) = types.get(x) {
                ctx.zone_mut(Zone::for_label(*k))
                    .insert(x.clone(), ty.clone());
            }
        }
        ctx
    }

    pub fn zone(&self, z: Zone) -> &BTreeMap<Name, Type> {
        match z {
            Zone::Gamma => &self.gamma,
            Zone::Omega => &self.omega,
            Zone::Delta => &self.delta,
        }
    }

    pub fn zone_mut(&mut self, z: Zone) -> &mut BTreeMap<Name, Type> {
        match z {
            Zone::Gamma => &mut self.gamma,
            Zone::Omega => &mut self.omega,
            Zone::Delta => &mut self.delta,
        }
    }

    /// Adds `x:ty` to zone `z`; fails if `x` is already declared anywhere.
    pub fn insert(&mut self, z: Zone, x: impl Into<Name>, ty: Type) -> Result<(), SyntaxError> {
        let x = x.into();
        if self.lookup(&x).is_some() {
            return Err(SyntaxError::DuplicateVar(x));
        }
        self.zone_mut(z).insert(x, ty);
        Ok(())
    }

    pub fn with(mut self, z: Zone, x: impl Into<Name>, ty: Type) -> Result<Self, SyntaxError> {
        self.insert(z, x, ty)?;
        Ok(self)
    }

    pub fn lookup(&self, x: &str) -> Option<(Zone, &Type)> {
        if let Some(t) = self.gamma.get(x) {
            return Some((Zone::Gamma, t));
        }
        if let Some(t) = self.omega.get(x) {
            return Some((Zone::Omega, t));
        }
        self.delta.get(x).map(|t| (Zone::Delta, t))
    }

    pub fn remove(&mut self, x: &str) -> Option<(Zone, Type)> {
        for z in [Zone::Gamma, Zone::Omega, Zone::Delta] {
            if let Some(t) = self.zone_mut(z).remove(x) {
                return Some((z, t));
            }
        }
        None
    }

    /// Moves `x` into zone `z`, keeping its type.
    pub fn moved(&self, x: &str, z: Zone) -> Option<ZonedContext> {
        let mut out = self.clone();
        let (_, ty) = out.remove(x)?;
        out.zone_mut(z).insert(x.to_string(), ty);
        Some(out)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.lookup(x).is_some()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.gamma
            .keys()
            .chain(self.omega.keys())
            .chain(self.delta.keys())
    }

    /// Γ ∪ Ω ∪ Δ as a flat context (zone order, then name order).
    pub fn flatten(&self) -> Params {
        Params(
            self.gamma
                .iter()
                .chain(self.omega.iter())
                .chain(self.delta.iter())
                .map(|(x, t)| (x.clone(), t.clone()))
                .collect(),
        )
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("`{0}` is declared more than once")]
    DuplicateDecl(Name),
    #[error("type `{0}` is not declared")]
    UndeclaredType(Name),
    #[error("variable `{0}` is declared more than once")]
    DuplicateVar(Name),
    #[error("existential variable argument `{0}` is repeated")]
    DuplicateEVarArg(Name),
    #[error("substitution for `{var}` hits the argument list of `{evar}`")]
    EVarArgHit { evar: Name, var: Name },
}
