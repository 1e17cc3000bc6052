#![allow(dead_code)]

use std::collections::BTreeSet;

use strictpat::algebra::PatternSet;
use strictpat::patterns::{parse_pattern, SimpleLinearPattern};
use strictpat::syntax::plain::{PlainSignature, PlainTerm, PlainType};
use strictpat::syntax::{
    parse_params, parse_signature, parse_type, subst, Label, Name, Params, Signature, Term, Type,
    Zone, ZonedContext,
};

pub const LAM_SIG: &str = "exp : type. lam : (exp ->u exp) ->1 exp. app : exp ->1 exp ->1 exp.";
pub const AB_SIG: &str = "a : type. b : a. c : a ->1 a.";
pub const AB_U_SIG: &str = "a : type. b : a. c : a ->u a.";

pub fn sig(text: &str) -> Signature {
    parse_signature(text).unwrap()
}

pub fn pat(text: &str, psi: &Params, sig: &Signature, ty: &Type) -> SimpleLinearPattern {
    parse_pattern(text, psi, sig, ty).unwrap_or_else(|e| panic!("`{text}`: {e}"))
}

pub fn keys(s: &PatternSet) -> BTreeSet<String> {
    s.keys()
}

pub fn expected_keys(texts: &[&str], psi: &Params, sig: &Signature, ty: &Type) -> BTreeSet<String> {
    texts.iter().map(|t| pat(t, psi, sig, ty).key()).collect()
}

/// Patterns sharing a signature, context and type.
pub struct Group {
    pub name: &'static str,
    pub sig: Signature,
    pub psi: Params,
    pub ty: Type,
    pub patterns: Vec<SimpleLinearPattern>,
}

impl Group {
    fn new(name: &'static str, sig_text: &str, psi: &str, ty: &str, texts: &[&str]) -> Group {
        let sig = sig(sig_text);
        let psi = parse_params(psi, &sig).unwrap();
        let ty = parse_type(ty, &sig).unwrap();
        let patterns = texts.iter().map(|t| pat(t, &psi, &sig, &ty)).collect();
        Group {
            name,
            sig,
            psi,
            ty,
            patterns,
        }
    }

    pub fn set(&self, idx: &[usize]) -> PatternSet {
        let members = idx.iter().map(|&i| self.patterns[i].clone()).collect();
        PatternSet::new(&self.psi, &self.sig, &self.ty, members).unwrap()
    }
}

pub fn corpus() -> Vec<Group> {
    vec![
        Group::new(
            "lam",
            LAM_SIG,
            "",
            "exp",
            &[
                "app @1 (lam @1 (\\x^u:exp. E[x^u])) @1 F[]",
                "lam @1 (\\x^u:exp. app @1 E[x^0] @1 x)",
                "E[]",
                "lam @1 (\\x^u:exp. E[x^u])",
                "lam @1 (\\x^u:exp. E[x^1])",
                "lam @1 (\\x^u:exp. E[x^0])",
                "lam @1 (\\x^u:exp. x)",
                "app @1 E[] @1 F[]",
                "app @1 (app @1 E[] @1 F[]) @1 G[]",
                "lam @1 (\\x^u:exp. lam @1 (\\y^u:exp. x))",
                "lam @1 (\\x^u:exp. lam @1 (\\y^u:exp. E[x^1, y^0]))",
                "lam @1 (\\x^u:exp. app @1 x @1 E[x^u])",
                "app @1 (lam @1 (\\x^u:exp. E[x^0])) @1 F[]",
            ],
        ),
        Group::new(
            "lam-open",
            LAM_SIG,
            "z:exp",
            "exp",
            &[
                "E[z^1]",
                "E[z^0]",
                "app @1 z @1 E[z^0]",
                "lam @1 (\\x^u:exp. app @1 E[z^u, x^1] @1 F[z^0, x^u])",
                "lam @1 (\\x^u:exp. z)",
            ],
        ),
        Group::new(
            "ab",
            AB_SIG,
            "x:a, y:a",
            "a",
            &[
                "E[x^u, y^1]",
                "E[x^0, y^1]",
                "c @1 E[x^1, y^0]",
                "b",
                "c @1 (c @1 E[x^u, y^u])",
                "x",
                "E[x^1, y^1]",
                "E[x^0, y^0]",
            ],
        ),
        Group::new(
            "ab-param",
            AB_SIG,
            "f:a ->1 a, x:a",
            "a",
            &["f @1 E[f^u, x^1]", "E[f^1, x^0]", "c @1 E[f^0, x^u]"],
        ),
        Group::new(
            "ab-arrow",
            AB_SIG,
            "x:a",
            "a ->u a",
            &["\\z^u:a. E[x^u, z^1]", "\\z^u:a. c @1 E[x^0, z^u]"],
        ),
    ]
}

/// Every pair of corpus patterns within a group, EVars renamed apart.
pub fn corpus_pairs() -> Vec<(usize, SimpleLinearPattern, SimpleLinearPattern)> {
    let groups = corpus();
    let mut out = Vec::new();
    for (g, group) in groups.iter().enumerate() {
        for p in &group.patterns {
            for q in &group.patterns {
                let taken: BTreeSet<Name> = p.evar_names().into_iter().collect();
                out.push((g, p.clone(), strictpat::intersect::rename_apart(q, &taken)));
            }
        }
    }
    out
}

/// Type-directed generator of EVar-free terms, β-redexes included, with
/// exact node counts. Abstraction labels follow the expected type.
pub struct TermGen {
    pub consts: Vec<(Name, Type)>,
    pub arg_types: Vec<Type>,
}

impl TermGen {
    pub fn new(sig: &Signature, arg_types: Vec<Type>) -> TermGen {
        TermGen {
            consts: sig.consts().map(|(c, t)| (c.clone(), t.clone())).collect(),
            arg_types,
        }
    }

    pub fn gen(&self, scope: &mut Vec<(Name, Type)>, ty: &Type, n: usize, out: &mut Vec<Term>) {
        if n == 1 {
            for (c, t) in &self.consts {
                if t == ty {
                    out.push(Term::cnst(c.clone()));
                }
            }
            for (x, t) in scope.iter() {
                if t == ty {
                    out.push(Term::var(x.clone()));
                }
            }
            return;
        }
        if let Type::Arrow(d, k, c) = ty {
            let x = format!("v{}", scope.len());
            scope.push((x.clone(), d.as_ref().clone()));
            let mut bodies = Vec::new();
            self.gen(scope, c, n - 1, &mut bodies);
            scope.pop();
            out.extend(
                bodies
                    .into_iter()
                    .map(|b| Term::lam(x.clone(), *k, d.as_ref().clone(), b)),
            );
        }
        if n < 3 {
            return;
        }
        for b in &self.arg_types {
            for k in [Label::One, Label::Zero, Label::U] {
                let fty = Type::arrow(b.clone(), k, ty.clone());
                for i in 1..n - 1 {
                    let mut funs = Vec::new();
                    self.gen(scope, &fty, i, &mut funs);
                    if funs.is_empty() {
                        continue;
                    }
                    let mut args = Vec::new();
                    self.gen(scope, b, n - 1 - i, &mut args);
                    for f in &funs {
                        for a in &args {
                            out.push(Term::app(f.clone(), k, a.clone()));
                        }
                    }
                }
            }
        }
    }

    pub fn up_to(&self, scope: &[(Name, Type)], ty: &Type, max: usize) -> Vec<Term> {
        let mut scope = scope.to_vec();
        let mut out = Vec::new();
        for n in 1..=max {
            self.gen(&mut scope, ty, n, &mut out);
        }
        out
    }
}

/// Small signature with one constant of each label.
pub const ORACLE_SIG: &str = "a : type. b : a. f : a ->1 a. g : a ->0 a. h : a ->u a.";

pub fn oracle_free_vars() -> Vec<(Name, Type)> {
    vec![("x".into(), Type::atom("a")), ("y".into(), Type::atom("a"))]
}

pub fn oracle_types() -> Vec<Type> {
    let a = Type::atom("a");
    vec![
        a.clone(),
        Type::arrow(a.clone(), Label::One, a.clone()),
        Type::arrow(a.clone(), Label::Zero, a.clone()),
        Type::arrow(a.clone(), Label::U, a),
    ]
}

pub fn oracle_gen(sig: &Signature) -> TermGen {
    let a = Type::atom("a");
    TermGen::new(sig, vec![a.clone(), Type::arrow(a.clone(), Label::One, a)])
}

/// Every assignment of the given variables to the three zones.
pub fn zonings(vars: &[(Name, Type)]) -> Vec<ZonedContext> {
    let mut out = vec![ZonedContext::new()];
    for (x, t) in vars {
        out = out
            .into_iter()
            .flat_map(|ctx| {
                [Zone::Gamma, Zone::Omega, Zone::Delta]
                    .map(|z| ctx.clone().with(z, x.clone(), t.clone()).unwrap())
            })
            .collect();
    }
    out
}

/// Every term obtained from `m` by contracting one β-redex.
pub fn beta_reducts(m: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    match m {
        Term::App { fun, label, arg } => {
            if let Term::Lam { var, body, .. } = fun.as_ref() {
                out.push(subst(arg, var, body).unwrap());
            }
            for f in beta_reducts(fun) {
                out.push(Term::app(f, *label, arg.as_ref().clone()));
            }
            for a in beta_reducts(arg) {
                out.push(Term::app(fun.as_ref().clone(), *label, a));
            }
        }
        Term::Lam {
            var,
            label,
            ty,
            body,
        } => {
            for b in beta_reducts(body) {
                out.push(Term::lam(var.clone(), *label, ty.clone(), b));
            }
        }
        _ => {}
    }
    out
}

/// Canonical terms of the simply-typed calculus, by exact node count.
pub fn plain_canonical(
    sig: &PlainSignature,
    env: &mut Vec<(Name, PlainType)>,
    ty: &PlainType,
    n: usize,
) -> Vec<PlainTerm> {
    if n == 0 {
        return Vec::new();
    }
    match ty {
        PlainType::Arrow(d, c) => {
            let x = format!("v{}", env.len());
            env.push((x.clone(), d.as_ref().clone()));
            let bodies = plain_canonical(sig, env, c, n - 1);
            env.pop();
            bodies
                .into_iter()
                .map(|b| PlainTerm::Lam(x.clone(), d.as_ref().clone(), Box::new(b)))
                .collect()
        }
        PlainType::Atom(a) => {
            let heads: Vec<(PlainTerm, PlainType)> = sig
                .decls
                .iter()
                .filter_map(|(c, t)| t.clone().map(|t| (PlainTerm::Const(c.clone()), t)))
                .chain(
                    env.iter()
                        .map(|(x, t)| (PlainTerm::Var(x.clone()), t.clone())),
                )
                .collect();
            let mut out = Vec::new();
            for (h, t) in heads {
                let mut doms = Vec::new();
                let mut cur = &t;
                while let PlainType::Arrow(d, c) = cur {
                    doms.push(d.as_ref().clone());
                    cur = c;
                }
                if cur != &PlainType::Atom(a.clone()) {
                    continue;
                }
                plain_spines(sig, env, h, &doms, n - 1, &mut out);
            }
            out
        }
    }
}

fn plain_spines(
    sig: &PlainSignature,
    env: &mut Vec<(Name, PlainType)>,
    head: PlainTerm,
    doms: &[PlainType],
    budget: usize,
    out: &mut Vec<PlainTerm>,
) {
    let Some((d, rest)) = doms.split_first() else {
        if budget == 0 {
            out.push(head);
        }
        return;
    };
    for s in 1..=budget {
        for arg in plain_canonical(sig, env, d, s) {
            plain_spines(
                sig,
                env,
                PlainTerm::App(Box::new(head.clone()), Box::new(arg)),
                rest,
                budget - s,
                out,
            );
        }
    }
}
