//! Command-line front end: pattern complement, intersection and the related
//! set operations over a signature file.

mod files;
mod selftest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use strictpat::algebra::{enumerate_ground, extensional_eq, relative_complement, PatternSet};
use strictpat::canonicalize::{canonicalize, CanonError};
use strictpat::complement::{complement, make_exclusive};
use strictpat::intersect::{intersect, rename_apart};
use strictpat::patterns::{
    embed_context, embed_signature, embed_term, embed_type, match_ground, match_ground_term,
    parse_pattern, PatternError, Polarity, SimpleLinearPattern,
};
use strictpat::syntax::plain::{
    parse_plain_params, parse_plain_signature, parse_plain_term, parse_plain_type,
};
use strictpat::syntax::{
    parse_context, parse_params, parse_signature, parse_term, parse_type, Params, Signature,
    SyntaxError, Type,
};
use strictpat::typing;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        source: Box<CliError>,
    },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error("{0}")]
    Input(String),
}

#[derive(Parser)]
#[command(
    name = "strictpat",
    version,
    about = "Complement and intersection of simple linear higher-order patterns"
)]
struct Cli {
    /// Output as plain lines or as a JSON array of strings.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct PatternArgs {
    /// Signature file.
    #[arg(long)]
    sig: PathBuf,
    /// Parameter context, e.g. "x:a, y:a".
    #[arg(long, default_value = "")]
    ctx: String,
    /// Type of the patterns.
    #[arg(long = "type")]
    ty: String,
}

#[derive(Subcommand)]
enum Command {
    /// Type-check a term in a three-zone context.
    Check {
        #[arg(long)]
        sig: PathBuf,
        /// Unrestricted variables.
        #[arg(long, default_value = "")]
        gamma: String,
        /// Irrelevant variables.
        #[arg(long, default_value = "")]
        omega: String,
        /// Strict variables.
        #[arg(long, default_value = "")]
        delta: String,
        #[arg(long = "type")]
        ty: String,
        term: String,
    },
    /// Print the canonical form of a well-typed term.
    Canon {
        #[command(flatten)]
        p: PatternArgs,
        term: String,
    },
    /// Complement of a pattern.
    Not {
        #[command(flatten)]
        p: PatternArgs,
        /// Resolve undetermined labels so that members do not overlap.
        #[arg(long)]
        exclusive: bool,
        pattern: String,
    },
    /// Intersection of two patterns.
    Meet {
        #[command(flatten)]
        p: PatternArgs,
        left: String,
        right: String,
    },
    /// Instances of the first pattern that are not instances of the second.
    Diff {
        #[command(flatten)]
        p: PatternArgs,
        left: String,
        right: String,
    },
    /// Exit 0 if the ground term is an instance of the pattern, 1 if not.
    Member {
        #[command(flatten)]
        p: PatternArgs,
        term: String,
        pattern: String,
    },
    /// List the ground canonical terms up to a size.
    Enum {
        #[command(flatten)]
        p: PatternArgs,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
    },
    /// Embed a simply-typed canonical term into the strict calculus.
    Embed {
        /// Signature file with plain `->` arrows.
        #[arg(long)]
        sig: PathBuf,
        #[arg(long, default_value = "")]
        ctx: String,
        #[arg(long = "type")]
        ty: String,
        term: String,
    },
    /// Clauses for the negation of a predicate defined by pattern heads.
    Negate {
        #[command(flatten)]
        p: PatternArgs,
        /// Program file with lines `name : pred PATTERN.`
        #[arg(long)]
        program: PathBuf,
    },
    /// Compare two pattern set files on all ground terms up to a size.
    Eq {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        left: PathBuf,
        right: PathBuf,
    },
    /// Run the bundled worked examples.
    Selftest,
}

pub struct Output {
    pub lines: Vec<String>,
    pub code: u8,
}

impl Output {
    fn ok(lines: Vec<String>) -> Output {
        Output { lines, code: 0 }
    }

    fn verdict(holds: bool, lines: Vec<String>) -> Output {
        Output {
            lines,
            code: if holds { 0 } else { 1 },
        }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_sig(path: &Path) -> Result<Signature, CliError> {
    let text = read(path)?;
    parse_signature(&text).map_err(|e| CliError::InFile {
        path: path.to_path_buf(),
        source: Box::new(e.into()),
    })
}

struct Setting {
    sig: Signature,
    psi: Params,
    ty: Type,
}

impl Setting {
    fn load(p: &PatternArgs) -> Result<Setting, CliError> {
        let sig = load_sig(&p.sig)?;
        let psi = parse_params(&p.ctx, &sig)?;
        let ty = parse_type(&p.ty, &sig)?;
        Ok(Setting { sig, psi, ty })
    }

    fn pattern(&self, text: &str) -> Result<SimpleLinearPattern, CliError> {
        Ok(parse_pattern(text, &self.psi, &self.sig, &self.ty)?)
    }
}

fn sorted(s: &PatternSet) -> Vec<String> {
    s.sorted_strings()
}

fn run(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Check {
            sig,
            gamma,
            omega,
            delta,
            ty,
            term,
        } => {
            let sig = load_sig(sig)?;
            let ctx = parse_context(gamma, omega, delta, &sig)?;
            let ty = parse_type(ty, &sig)?;
            let m = parse_term(term, &sig)?;
            Ok(match typing::check(&ctx, &sig, &m, &ty) {
                Ok(_) => Output::ok(vec![format!("ok: {m} : {ty}")]),
                Err(e) => {
                    let var = e
                        .var
                        .as_deref()
                        .map(|x| format!(" `{x}`"))
                        .unwrap_or_default();
                    Output::verdict(false, vec![format!("{}{var}: {}", e.kind, e.message)])
                }
            })
        }
        Command::Canon { p, term } => {
            let s = Setting::load(p)?;
            let m = parse_term(term, &s.sig)?;
            Ok(Output::ok(vec![
                canonicalize(&s.psi, &s.sig, &m, &s.ty)?.to_string()
            ]))
        }
        Command::Not {
            p,
            exclusive,
            pattern,
        } => {
            let s = Setting::load(p)?;
            let mut out = complement(&s.sig, &s.pattern(pattern)?)?;
            if *exclusive {
                out = make_exclusive(&s.sig, &out);
            }
            Ok(Output::ok(sorted(&out)))
        }
        Command::Meet { p, left, right } => {
            let s = Setting::load(p)?;
            let (l, r) = apart(&s, left, right)?;
            Ok(Output::ok(sorted(&intersect(&s.sig, &l, &r)?)))
        }
        Command::Diff { p, left, right } => {
            let s = Setting::load(p)?;
            let (l, r) = apart(&s, left, right)?;
            let one = |q| PatternSet::new(&s.psi, &s.sig, &s.ty, vec![q]);
            Ok(Output::ok(sorted(&relative_complement(
                &s.sig,
                &one(l)?,
                &one(r)?,
            )?)))
        }
        Command::Member { p, term, pattern } => {
            let s = Setting::load(p)?;
            let m = parse_term(term, &s.sig)?;
            let hit = match s.pattern(pattern) {
                Ok(q) => match_ground(&s.psi, &s.sig, &m, &q)?,
                // Matching does not need the simple fragment; the pattern
                // must then be given fully applied.
                Err(CliError::Pattern(PatternError::NotSimple(_))) => {
                    match_ground_term(&s.psi, &s.sig, &m, &parse_term(pattern, &s.sig)?, &s.ty)?
                }
                Err(e) => return Err(e),
            };
            Ok(Output::verdict(hit, vec![hit.to_string()]))
        }
        Command::Enum { p, depth } => {
            let s = Setting::load(p)?;
            let terms = enumerate_ground(&s.psi, &s.sig, &s.ty, *depth as usize);
            Ok(Output::ok(terms.iter().map(|t| t.to_string()).collect()))
        }
        Command::Embed { sig, ctx, ty, term } => {
            let text = read(sig)?;
            let psig = parse_plain_signature(&text)?;
            let ctx = parse_plain_params(ctx)?;
            let ty = parse_plain_type(ty)?;
            let m = parse_plain_term(term, &psig)?;
            // Reject ill-formed declarations before embedding terms.
            embed_signature(&psig)?;
            embed_context(&ctx)?;
            let e = embed_term(&psig, &ctx, &m, &ty)?;
            Ok(Output::ok(vec![format!(
                "{e} : {}",
                embed_type(&ty, Polarity::Neg)
            )]))
        }
        Command::Negate { p, program } => {
            let s = Setting::load(p)?;
            let clauses = files::load_program(program, &s.sig, &s.psi, &s.ty)?;
            let negated = strictpat::algebra::clause_complement(&s.sig, &clauses)?;
            Ok(Output::ok(negated.iter().map(|c| c.to_string()).collect()))
        }
        Command::Eq {
            sig,
            depth,
            left,
            right,
        } => {
            let sig = load_sig(sig)?;
            let l = files::load_set(left, &sig)?;
            let r = files::load_set(right, &sig)?;
            let report = extensional_eq(&sig, &l, &r, *depth as usize)?;
            Ok(Output::verdict(report.equal(), vec![report.to_string()]))
        }
        Command::Selftest => Ok(selftest::run()),
    }
}

/// Parses two patterns and renames the EVars of the second away from the
/// first.
fn apart(
    s: &Setting,
    left: &str,
    right: &str,
) -> Result<(SimpleLinearPattern, SimpleLinearPattern), CliError> {
    let l = s.pattern(left)?;
    let r = s.pattern(right)?;
    let r = rename_apart(&r, &l.evar_names().into_iter().collect());
    Ok((l, r))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => out.lines.iter().for_each(|l| println!("{l}")),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&out.lines).expect("strings serialize")
                ),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
