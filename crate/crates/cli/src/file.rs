//! The algebra file format.
//!
//! ```text
//! # K[x]/(x^2)
//! group Z/1
//! basis 1 0
//! basis x 0
//! unit 1 0
//! const 0 0 0 1
//! const 0 1 1 1
//! const 1 0 1 1
//! ```
//!
//! `group` takes the rest of the line; `basis <name> <degree>` lines fix the
//! index order (0-based); `const i j l c` means `e_i e_j` has coefficient `c`
//! at `e_l`. Blank lines and `#` comments are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use gradfrob::algebra::{GradedAlgebra, StructureConstants, ValidationReport};
use gradfrob::exactmath::{format_rational, parse_rational, Rational};
use gradfrob::group::{GroupModel, GroupValue};
use num_traits::Zero;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FileError {
    /// `line` is 1-based; `None` means end of input.
    Parse { line: Option<usize>, message: String },
    Validation(ValidationReport),
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FileError::Parse { line: Some(n), message } => write!(f, "line {n}: {message}"),
            FileError::Parse { line: None, message } => write!(f, "end of input: {message}"),
            FileError::Validation(report) => write!(f, "algebra fails validation: {report}"),
        }
    }
}

impl std::error::Error for FileError {}

fn err(line: usize, message: impl Into<String>) -> FileError {
    FileError::Parse { line: Some(line), message: message.into() }
}

struct Pending {
    line: usize,
    i: usize,
    j: usize,
    l: usize,
    c: Rational,
}

/// Parses and validates an algebra file.
pub fn parse_algebra_file(text: &str) -> Result<GradedAlgebra, FileError> {
    let mut group: Option<GroupModel> = None;
    let mut names: Vec<String> = Vec::new();
    let mut degrees: Vec<GroupValue> = Vec::new();
    let mut unit: Option<(usize, Vec<Rational>)> = None;
    let mut consts: Vec<Pending> = Vec::new();
    let mut seen = BTreeMap::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match key {
            "group" => {
                if group.is_some() {
                    return Err(err(line, "group given twice"));
                }
                group = Some(rest.parse().map_err(|e| err(line, format!("bad group: {e}")))?);
            }
            "basis" => {
                let g = group.as_ref().ok_or_else(|| err(line, "basis before group"))?;
                let (name, degree) = rest.split_once(char::is_whitespace).ok_or_else(|| err(line, "expected `basis <name> <degree>`"))?;
                if names.iter().any(|n| n == name) {
                    return Err(err(line, format!("duplicate basis name {name}")));
                }
                let d = g.parse_element(degree.trim()).map_err(|e| err(line, format!("bad degree: {e}")))?;
                names.push(name.to_string());
                degrees.push(d);
            }
            "unit" => {
                if unit.is_some() {
                    return Err(err(line, "unit given twice"));
                }
                let coeffs = rest
                    .split_whitespace()
                    .map(|t| parse_rational(t).map_err(|e| err(line, e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                unit = Some((line, coeffs));
            }
            "const" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 4 {
                    return Err(err(line, "expected `const i j l value`"));
                }
                let idx = |t: &str| t.parse::<usize>().map_err(|_| err(line, format!("bad index {t:?}")));
                let (i, j, l) = (idx(parts[0])?, idx(parts[1])?, idx(parts[2])?);
                let c = parse_rational(parts[3]).map_err(|e| err(line, e.to_string()))?;
                if let Some(first) = seen.insert((i, j, l), line) {
                    return Err(err(line, format!("duplicate constant ({i},{j},{l}), first on line {first}")));
                }
                consts.push(Pending { line, i, j, l, c });
            }
            other => return Err(err(line, format!("unknown keyword {other:?}"))),
        }
    }

    let eof = |m: &str| FileError::Parse { line: None, message: m.into() };
    let group = group.ok_or_else(|| eof("missing group"))?;
    if names.is_empty() {
        return Err(eof("no basis elements"));
    }
    let m = names.len();
    let (unit_line, unit) = unit.ok_or_else(|| eof("missing unit"))?;
    if unit.len() != m {
        return Err(err(unit_line, format!("unit has {} coefficients, basis has {m}", unit.len())));
    }
    for p in &consts {
        if p.i >= m || p.j >= m || p.l >= m {
            return Err(err(p.line, format!("index out of range for dimension {m}")));
        }
    }
    let entries: Vec<_> = consts.into_iter().map(|p| (p.i, p.j, p.l, p.c)).collect();
    let table = StructureConstants::new(m, entries, unit).map_err(|e| eof(&e.to_string()))?;
    let a = GradedAlgebra::new(group, names, degrees, table).map_err(|e| eof(&e.to_string()))?;
    let report = a.validate();
    if report.passed() {
        Ok(a)
    } else {
        Err(FileError::Validation(report))
    }
}

/// Canonical text of an algebra; [`parse_algebra_file`] reads it back exactly.
pub fn serialize_algebra(a: &GradedAlgebra) -> String {
    let mut out = String::new();
    let group = a.group();
    writeln!(out, "group {group}").unwrap();
    for (name, d) in a.names().iter().zip(a.degrees()) {
        writeln!(out, "basis {name} {}", group.format_element(d)).unwrap();
    }
    let unit: Vec<String> = a.unit().iter().map(format_rational).collect();
    writeln!(out, "unit {}", unit.join(" ")).unwrap();
    for (i, j, l, c) in a.table().entries() {
        if !c.is_zero() {
            writeln!(out, "const {i} {j} {l} {}", format_rational(c)).unwrap();
        }
    }
    out
}

/// SHA-256 of the canonical serialization, hex encoded.
pub fn algebra_hash(a: &GradedAlgebra) -> String {
    hex::encode(Sha256::digest(serialize_algebra(a).as_bytes()))
}

/// Basis names must be single tokens for the file to round-trip.
pub fn check_names(a: &GradedAlgebra) -> Result<(), String> {
    let mut seen = BTreeSet::new();
    for n in a.names() {
        if n.is_empty() || n.contains(char::is_whitespace) || n.contains('#') || !seen.insert(n) {
            return Err(format!("basis name {n:?} cannot be written to a file"));
        }
    }
    Ok(())
}
