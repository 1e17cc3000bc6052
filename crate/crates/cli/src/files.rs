//! Program files (`name : pred PATTERN.` per line) and pattern set files
//! (`ctx:` and `type:` header lines, then one pattern per line).

use std::path::Path;

use strictpat::algebra::{Clause, PatternSet};
use strictpat::patterns::parse_pattern;
use strictpat::syntax::{parse_params, parse_type, Params, Signature, Type};

use crate::{read, CliError};

fn in_file(path: &Path, lineno: usize, e: CliError) -> CliError {
    CliError::InFile {
        path: path.to_path_buf(),
        source: Box::new(CliError::Input(format!("line {lineno}: {e}"))),
    }
}

/// Non-empty lines with `%` comments removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('%').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_clause(line: &str, sig: &Signature, psi: &Params, ty: &Type) -> Result<Clause, CliError> {
    let (name, rest) = line
        .split_once(':')
        .ok_or_else(|| CliError::Input("expected `name : pred PATTERN.`".into()))?;
    let rest = rest.trim();
    let body = rest
        .strip_suffix('.')
        .ok_or_else(|| CliError::Input("clause must end with `.`".into()))?;
    let (pred, pattern) = body
        .split_once(char::is_whitespace)
        .ok_or_else(|| CliError::Input("missing pattern".into()))?;
    Ok(Clause {
        name: name.trim().to_string(),
        pred: pred.to_string(),
        head: parse_pattern(pattern.trim(), psi, sig, ty)?,
    })
}

pub fn load_program(
    path: &Path,
    sig: &Signature,
    psi: &Params,
    ty: &Type,
) -> Result<Vec<Clause>, CliError> {
    let text = read(path)?;
    lines(&text)
        .map(|(n, l)| parse_clause(l, sig, psi, ty).map_err(|e| in_file(path, n, e)))
        .collect()
}

pub fn load_set(path: &Path, sig: &Signature) -> Result<PatternSet, CliError> {
    let text = read(path)?;
    let mut ctx = String::new();
    let mut ty = None;
    let mut patterns = Vec::new();
    for (n, l) in lines(&text) {
        if let Some(c) = l.strip_prefix("ctx:") {
            ctx = c.trim().to_string();
        } else if let Some(t) = l.strip_prefix("type:") {
            ty = Some(parse_type(t.trim(), sig).map_err(|e| in_file(path, n, e.into()))?);
        } else {
            patterns.push((n, l));
        }
    }
    let ty =
        ty.ok_or_else(|| in_file(path, 1, CliError::Input("missing `type:` header".into())))?;
    let psi = parse_params(&ctx, sig).map_err(|e| in_file(path, 1, e.into()))?;
    let members = patterns
        .into_iter()
        .map(|(n, l)| parse_pattern(l, &psi, sig, &ty).map_err(|e| in_file(path, n, e.into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PatternSet::new(&psi, sig, &ty, members)?)
}
