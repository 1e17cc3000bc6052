//! Worked examples with known answers, run by `strictpat selftest`.

use std::collections::BTreeSet;

use strictpat::algebra::{
    clause_complement, enumerate_ground, extensional_eq, one, relative_complement, set_complement,
    Clause, PatternSet,
};
use strictpat::canonicalize::classify_at;
use strictpat::complement::{complement, make_exclusive, not_label, not_phi_i};
use strictpat::intersect::{enumerate_splittings, intersect, label_meet, RigidHead};
use strictpat::patterns::{
    embed_signature, embed_term, embed_type, fully_apply, match_ground_term, parse_pattern,
    PatternError, Polarity, SimpleLinearPattern,
};
use strictpat::syntax::plain::{parse_plain_signature, parse_plain_term, parse_plain_type};
use strictpat::syntax::{
    parse_params, parse_signature, parse_term, parse_type, Label, Params, Phi, Signature, Type,
    Zone, ZonedContext,
};
use strictpat::typing::{check, strict_split_count, TypingErrorKind};

use crate::Output;

const LAM: &str = "exp : type. lam : (exp ->u exp) ->1 exp. app : exp ->1 exp ->1 exp.";
const LAM_PLAIN: &str = "exp : type. lam : (exp -> exp) -> exp. app : exp -> exp -> exp.";
const AB_U: &str = "a : type. b : a. c : a ->u a.";
const AB: &str = "a : type. b : a. c : a ->1 a.";
const AC2: &str = "a : type. c : a ->1 a ->1 a.";
const BETA: &str = "app @1 (lam @1 (\\x^u:exp. E[x^u])) @1 F[]";
const ETA: &str = "lam @1 (\\x^u:exp. app @1 E[x^0] @1 x)";

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sig(text: &str) -> Signature {
    parse_signature(text).expect("bundled signature")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

struct Setting {
    sig: Signature,
    psi: Params,
    ty: Type,
}

impl Setting {
    fn new(sig_text: &str, ctx: &str, ty: &str) -> Setting {
        let sig = sig(sig_text);
        let psi = parse_params(ctx, &sig).expect("bundled context");
        let ty = parse_type(ty, &sig).expect("bundled type");
        Setting { sig, psi, ty }
    }

    fn pat(&self, text: &str) -> Result<SimpleLinearPattern, String> {
        parse_pattern(text, &self.psi, &self.sig, &self.ty).map_err(|e| format!("`{text}`: {e}"))
    }

    fn set(&self, texts: &[&str]) -> Result<PatternSet, String> {
        let ms = texts
            .iter()
            .map(|t| self.pat(t))
            .collect::<Result<Vec<_>, _>>()?;
        PatternSet::new(&self.psi, &self.sig, &self.ty, ms).map_err(err)
    }

    fn expect(&self, got: &PatternSet, want: &[&str]) -> Check {
        let want_keys: BTreeSet<String> = texts_keys(self, want)?;
        ensure(got.keys() == want_keys, || {
            format!("got {got}, expected {{{}}}", want.join(", "))
        })
    }
}

fn texts_keys(s: &Setting, texts: &[&str]) -> Result<BTreeSet<String>, String> {
    texts.iter().map(|t| s.pat(t).map(|p| p.key())).collect()
}

fn phi(entries: &[(&str, Label)]) -> Phi {
    Phi::new(entries.iter().map(|(x, k)| (x.to_string(), *k)).collect()).expect("distinct names")
}

fn complement_of_generalized_variables() -> Check {
    let s = Setting::new("a : type.", "x:a, y:a", "a");
    s.expect(
        &complement(&s.sig, &s.pat("E[x^0, y^1]")?).map_err(err)?,
        &["F[x^1, y^u]", "G[x^u, y^0]"],
    )?;
    s.expect(
        &complement(&s.sig, &s.pat("E[x^u, y^1]")?).map_err(err)?,
        &["F[x^u, y^0]"],
    )
}

fn exclusive_complement() -> Check {
    let s = Setting::new("a : type.", "x:a, y:a", "a");
    let not = complement(&s.sig, &s.pat("E[x^0, y^1]")?).map_err(err)?;
    s.expect(
        &make_exclusive(&s.sig, &not),
        &["F[x^1, y^1]", "G[x^1, y^0]", "H[x^0, y^0]"],
    )
}

fn label_negation() -> Check {
    use Label::*;
    ensure(
        not_label(One) == Some(Zero) && not_label(Zero) == Some(One) && not_label(U).is_none(),
        || "label negation table".into(),
    )?;
    ensure(
        not_phi_i(&phi(&[("x", U), ("y", One)]), 1) == Some(phi(&[("x", U), ("y", Zero)])),
        || "negating y in (x^u, y^1)".into(),
    )?;
    ensure(
        not_phi_i(&phi(&[("x", Zero), ("y", One)]), 0) == Some(phi(&[("x", One), ("y", U)])),
        || "negating x in (x^0, y^1)".into(),
    )
}

fn complement_of_beta_redex() -> Check {
    let s = Setting::new(LAM, "", "exp");
    s.expect(
        &complement(&s.sig, &s.pat(BETA)?).map_err(err)?,
        &[
            "lam @1 (\\x^u:exp. H[x^u])",
            "app @1 (app @1 H1[] @1 H2[]) @1 H3[]",
        ],
    )
}

fn complement_of_eta_redex() -> Check {
    let s = Setting::new(LAM, "", "exp");
    s.expect(
        &complement(&s.sig, &s.pat(ETA)?).map_err(err)?,
        &[
            "lam @1 (\\x^u:exp. app @1 Z[x^1] @1 Z'[x^u])",
            "lam @1 (\\x^u:exp. app @1 Z[x^u] @1 (app @1 Z'[x^u] @1 Z''[x^u]))",
            "lam @1 (\\x^u:exp. app @1 Z[x^u] @1 (lam @1 (\\y^u:exp. Z'[x^u, y^u])))",
            "lam @1 (\\x^u:exp. lam @1 (\\y^u:exp. Z[x^u, y^u]))",
            "lam @1 (\\x^u:exp. x)",
            "app @1 Z[] @1 Z'[]",
        ],
    )
}

fn full_application_of_eta_redex() -> Check {
    let s = Setting::new(LAM, "", "exp");
    let raw = parse_term("lam @1 (\\x^u:exp. app @1 E[] @1 x)", &s.sig).map_err(err)?;
    let full = fully_apply(&s.psi, &s.sig, &raw, &s.ty).map_err(err)?;
    let printed = full.term.to_string();
    ensure(printed == "lam @1 (\\x^u:exp. app @1 E'[x^0] @1 x)", || {
        format!("got {printed}")
    })
}

fn eta_redex_body_is_canonical() -> Check {
    let s = sig(LAM);
    let m = parse_term("\\x^u:exp. app @1 E[x^0] @1 x", &s).map_err(err)?;
    let ty = parse_type("exp ->u exp", &s).map_err(err)?;
    let class = classify_at(&ZonedContext::new(), &s, &m, &ty);
    ensure(class.canonical_type() == Some(&ty), || {
        format!("classified {class:?}")
    })
}

fn meet_table() -> Check {
    use Label::*;
    let table = [
        (One, One, Some(One)),
        (One, U, Some(One)),
        (Zero, Zero, Some(Zero)),
        (Zero, U, Some(Zero)),
        (U, U, Some(U)),
        (One, Zero, None),
    ];
    for (a, b, want) in table {
        ensure(label_meet(a, b) == want && label_meet(b, a) == want, || {
            format!("{a:?} meet {b:?}")
        })?;
    }
    Ok(())
}

fn strict_variable_split_two_ways() -> Check {
    let splits = enumerate_splittings(&phi(&[("x", Label::One)]), 2, &RigidHead::Const("c".into()));
    let want = vec![
        vec![phi(&[("x", Label::One)]), phi(&[("x", Label::U)])],
        vec![phi(&[("x", Label::U)]), phi(&[("x", Label::One)])],
    ];
    ensure(splits == want, || format!("got {splits:?}"))
}

fn intersection_with_constant_head() -> Check {
    let s = Setting::new(AC2, "x:a", "a");
    let r = intersect(&s.sig, &s.pat("E[x^1]")?, &s.pat("c @1 F[x^u] @1 F'[x^u]")?).map_err(err)?;
    s.expect(&r, &["c @1 H[x^1] @1 H'[x^u]", "c @1 H[x^u] @1 H'[x^1]"])
}

fn intersection_with_parameter_head() -> Check {
    let s = Setting::new("a : type.", "y:a ->1 a ->1 a", "a");
    let none =
        intersect(&s.sig, &s.pat("E[y^0]")?, &s.pat("y @1 F[y^1] @1 F'[y^u]")?).map_err(err)?;
    ensure(none.is_empty(), || {
        format!("expected no solution, got {none}")
    })?;
    let r = intersect(&s.sig, &s.pat("E[y^1]")?, &s.pat("y @1 F[y^1] @1 F'[y^0]")?).map_err(err)?;
    s.expect(&r, &["y @1 H[y^1] @1 H'[y^0]"])
}

fn isredx_program() -> Vec<Clause> {
    let s = Setting::new(LAM, "", "exp");
    let clause = |name: &str, text: &str| Clause {
        name: name.into(),
        pred: "isredx".into(),
        head: s.pat(text).expect("bundled pattern"),
    };
    vec![clause("betardx", BETA), clause("etardx", ETA)]
}

fn negated_redex_program() -> Check {
    let s = Setting::new(LAM, "", "exp");
    let negated = clause_complement(&s.sig, &isredx_program()).map_err(err)?;
    ensure(negated.iter().all(|c| c.pred == "non_isredx"), || {
        "predicate name".into()
    })?;
    let names: Vec<&str> = negated.iter().map(|c| c.name.as_str()).collect();
    ensure(names == ["nb1", "nb2", "nb3", "nb4", "nb5", "nb6"], || {
        format!("clause names {names:?}")
    })?;
    let heads = PatternSet::new(
        &s.psi,
        &s.sig,
        &s.ty,
        negated.into_iter().map(|c| c.head).collect(),
    )
    .map_err(err)?;
    s.expect(
        &heads,
        &[
            "lam @1 (\\x^u:exp. app @1 H[x^1] @1 H'[x^u])",
            "lam @1 (\\x^u:exp. app @1 H[x^u] @1 (app @1 H'[x^u] @1 H''[x^u]))",
            "lam @1 (\\x^u:exp. app @1 H[x^u] @1 (lam @1 (\\y^u:exp. H'[x^u, y^u])))",
            "lam @1 (\\x^u:exp. lam @1 (\\y^u:exp. H[x^u, y^u]))",
            "lam @1 (\\x^u:exp. x)",
            "app @1 (app @1 H[] @1 H'[]) @1 H''[]",
        ],
    )
}

fn top_and_bottom() -> Check {
    let s = Setting::new(AB, "x:a", "a");
    let top = one(&s.psi, &s.ty);
    let bottom = PatternSet::empty(&s.psi, &s.ty);
    ensure(
        set_complement(&s.sig, &top).map_err(err)?.is_empty(),
        || "Not(1) is not empty".into(),
    )?;
    ensure(
        set_complement(&s.sig, &bottom).map_err(err)?.keys() == top.keys(),
        || "Not(0) is not 1".into(),
    )
}

fn relative_complement_of_top() -> Check {
    let s = Setting::new(AB, "x:a, y:a", "a");
    let diff =
        relative_complement(&s.sig, &one(&s.psi, &s.ty), &s.set(&["E[x^u, y^1]"])?).map_err(err)?;
    let report = extensional_eq(&s.sig, &diff, &s.set(&["F[x^u, y^0]"])?, 6).map_err(err)?;
    ensure(report.equal(), || report.to_string())
}

fn irrelevant_instances_outside_simple_fragment() -> Check {
    let s = Setting::new(AB_U, "x:a", "a");
    let p = parse_term("E[x^0]", &s.sig).map_err(err)?;
    let hit = |t: &str| -> Result<bool, String> {
        let m = parse_term(t, &s.sig).map_err(err)?;
        match_ground_term(&s.psi, &s.sig, &m, &p, &s.ty).map_err(err)
    };
    ensure(hit("b")? && hit("c @u b")?, || {
        "b and c b should be instances".into()
    })?;
    ensure(!hit("x")? && !hit("c @u x")?, || {
        "x and c x should not be instances".into()
    })
}

fn non_simple_complement_rejected() -> Check {
    let s = Setting::new(AB_U, "x:a", "a");
    match s.pat("E[x^0]") {
        Err(e) if e.contains("not simple") => Ok(()),
        Err(e) => Err(format!("rejected for the wrong reason: {e}")),
        Ok(p) => match complement(&s.sig, &p) {
            Err(PatternError::NotSimple(_)) => Ok(()),
            other => Err(format!("accepted: {other:?}")),
        },
    }
}

fn enumeration_prefix() -> Check {
    let s = Setting::new(AB_U, "x:a", "a");
    let got: BTreeSet<String> = enumerate_ground(&s.psi, &s.sig, &s.ty, 2)
        .iter()
        .map(|t| t.to_string())
        .collect();
    let want: BTreeSet<String> = ["b", "x", "c @u b", "c @u x"]
        .iter()
        .map(|t| t.to_string())
        .collect();
    ensure(got == want, || format!("got {got:?}"))
}

fn contraction() -> Check {
    let s = sig("A : type. B : type.");
    let ctx = ZonedContext::new()
        .with(
            Zone::Delta,
            "x",
            parse_type("A ->1 A ->1 B", &s).map_err(err)?,
        )
        .map_err(err)?
        .with(Zone::Delta, "y", Type::atom("A"))
        .map_err(err)?;
    let m = parse_term("(x @1 y) @1 y", &s).map_err(err)?;
    let b = Type::atom("B");
    check(&ctx, &s, &m, &b).map_err(err)?;
    let splits = strict_split_count(&ctx, &s, &m, &b);
    ensure(splits == Some((2, 4)), || format!("splits {splits:?}"))
}

fn unrestricted_argument_is_neither_strict_nor_irrelevant() -> Check {
    let s = sig("A : type. B : type.");
    let m = parse_term("y @u x", &s).map_err(err)?;
    let y = parse_type("A ->u B", &s).map_err(err)?;
    let b = Type::atom("B");
    let with_x = |z| {
        ZonedContext::new()
            .with(Zone::Gamma, "y", y.clone())
            .and_then(|c| c.with(z, "x", Type::atom("A")))
            .map_err(err)
    };
    check(&with_x(Zone::Gamma)?, &s, &m, &b).map_err(err)?;
    let strict = check(&with_x(Zone::Delta)?, &s, &m, &b);
    ensure(
        matches!(&strict, Err(e) if e.kind == TypingErrorKind::StrictVarUnused),
        || format!("x strict: {strict:?}"),
    )?;
    ensure(check(&with_x(Zone::Omega)?, &s, &m, &b).is_err(), || {
        "x irrelevant accepted".into()
    })
}

fn irrelevance_fails_for_redices() -> Check {
    let s = sig("A : type. B : type. c : B.");
    let m = parse_term("(\\y^0:A. c) @0 x", &s).map_err(err)?;
    let b = Type::atom("B");
    let ctx = ZonedContext::new()
        .with(Zone::Omega, "x", Type::atom("A"))
        .map_err(err)?;
    check(&ctx, &s, &m, &b).map_err(err)?;
    let dropped = check(&ZonedContext::new(), &s, &m, &b);
    ensure(
        matches!(&dropped, Err(e) if e.kind == TypingErrorKind::UnknownIdent),
        || format!("without x: {dropped:?}"),
    )
}

fn embedded_lam_type() -> Check {
    let ty = parse_plain_type("(exp -> exp) -> exp").map_err(err)?;
    let got = embed_type(&ty, Polarity::Pos).to_string();
    ensure(got == "(exp ->u exp) ->1 exp", || format!("got {got}"))?;
    let a = parse_plain_type("a").map_err(err)?;
    ensure(
        embed_type(&a, Polarity::Pos) == embed_type(&a, Polarity::Neg),
        || "atoms differ".into(),
    )
}

fn embedded_k_combinator() -> Check {
    let psig = parse_plain_signature(LAM_PLAIN).map_err(err)?;
    let m = parse_plain_term("lam (\\x:exp. lam (\\y:exp. x))", &psig).map_err(err)?;
    let ty = parse_plain_type("exp").map_err(err)?;
    let e = embed_term(&psig, &[], &m, &ty).map_err(err)?;
    let printed = e.to_string();
    ensure(
        printed == "lam @1 (\\x^u:exp. lam @1 (\\y^u:exp. x))",
        || format!("got {printed}"),
    )?;
    let esig = embed_signature(&psig).map_err(err)?;
    check(&ZonedContext::new(), &esig, &e, &Type::atom("exp")).map_err(err)?;
    Ok(())
}

type Case = (&'static str, fn() -> Check);

const CASES: &[Case] = &[
    (
        "complement of generalized variables",
        complement_of_generalized_variables,
    ),
    ("exclusive form of a complement", exclusive_complement),
    ("label negation", label_negation),
    (
        "complement of the beta-redex pattern",
        complement_of_beta_redex,
    ),
    (
        "complement of the eta-redex pattern",
        complement_of_eta_redex,
    ),
    (
        "full application of the eta-redex pattern",
        full_application_of_eta_redex,
    ),
    ("eta-redex body is canonical", eta_redex_body_is_canonical),
    ("label meet table", meet_table),
    (
        "strict variable split over two arguments",
        strict_variable_split_two_ways,
    ),
    (
        "intersection with a constant head",
        intersection_with_constant_head,
    ),
    (
        "intersection with a parameter head",
        intersection_with_parameter_head,
    ),
    ("negation of the redex program", negated_redex_program),
    ("complements of top and bottom", top_and_bottom),
    ("relative complement of top", relative_complement_of_top),
    (
        "instances of E[x^0] with c : a ->u a",
        irrelevant_instances_outside_simple_fragment,
    ),
    (
        "non-simple complement rejected",
        non_simple_complement_rejected,
    ),
    ("ground terms up to size 2", enumeration_prefix),
    ("contraction and strict splits", contraction),
    (
        "unrestricted argument is neither strict nor irrelevant",
        unrestricted_argument_is_neither_strict_nor_irrelevant,
    ),
    (
        "irrelevance fails for redices",
        irrelevance_fails_for_redices,
    ),
    ("embedded type of lam", embedded_lam_type),
    ("embedded K combinator", embedded_k_combinator),
];

pub fn run() -> Output {
    let mut lines = Vec::new();
    let mut failed = 0;
    for (name, case) in CASES {
        match case() {
            Ok(()) => lines.push(format!("PASS {name}")),
            Err(why) => {
                failed += 1;
                lines.push(format!("FAIL {name}: {why}"));
            }
        }
    }
    lines.push(format!("{} passed, {failed} failed", CASES.len() - failed));
    Output {
        lines,
        code: if failed == 0 { 0 } else { 1 },
    }
}
