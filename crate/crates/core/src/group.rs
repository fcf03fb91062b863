//! Grading groups.
//!
//! A [`GroupModel`] describes the group `G` an algebra is graded by; a
//! [`GroupValue`] is a plain, model-free encoding of one of its elements.
//! All arithmetic goes through the model, so values can be used as map keys
//! without carrying a reference to their group.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element {0} does not belong to the group model")]
    ElementOutOfModel(String),
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error("Cayley table is not a Latin square: row {row}, column {col}")]
    NotLatinSquare { row: usize, col: usize },
    #[error("Cayley table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse in the Cayley table")]
    NoInverse(String),
    #[error("Cayley table is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("integer overflow while composing group elements")]
    Overflow,
    #[error("cannot parse group description: {0}")]
    Parse(String),
}

/// Canonical encoding of a group element.
///
/// Residues live in `[0, n)`, bit vectors have the width of their model and
/// tuples are componentwise canonical, so structural equality is group
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupValue {
    Int(i64),
    Residue(u64),
    Bits(Vec<bool>),
    Tuple(Vec<GroupValue>),
    Element(usize),
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl CayleyTable {
    /// Validates `table[a][b] = a·b` and precomputes identity and inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::InvalidParameter("empty Cayley table".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || !is_name(name) {
                return Err(GroupError::InvalidParameter(format!("bad element name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(GroupError::InvalidParameter(format!("duplicate element name {name}")));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::InvalidParameter(format!("Cayley table must be {n}x{n}")));
        }
        for (r, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for (c, &x) in row.iter().enumerate() {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::NotLatinSquare { row: r, col: c });
                }
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in 0..n {
                if std::mem::replace(&mut seen[table[r][c]], true) {
                    return Err(GroupError::NotLatinSquare { row: r, col: c });
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| GroupError::NoInverse(names[a].clone()))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(CayleyTable { names, table, identity, inverses })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// The grading group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupModel {
    /// The integers under addition.
    Integers,
    /// `Z/n` with `n >= 1`; `Cyclic(1)` is the trivial group.
    Cyclic(u64),
    /// `Z_2^n`, elements are bit vectors of width `n`.
    BooleanVectors(usize),
    Product(Vec<GroupModel>),
    Table(CayleyTable),
}

impl GroupModel {
    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter("Z/n needs n >= 1".into()));
        }
        Ok(GroupModel::Cyclic(n))
    }

    pub fn boolean_vectors(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter("Z2^n needs n >= 1".into()));
        }
        Ok(GroupModel::BooleanVectors(n))
    }

    pub fn product(factors: Vec<GroupModel>) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::InvalidParameter("product of no groups".into()));
        }
        Ok(GroupModel::Product(factors))
    }

    pub fn table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Ok(GroupModel::Table(CayleyTable::new(names, table)?))
    }

    /// The one-element group, used for trivial gradings.
    pub fn trivial() -> Self {
        GroupModel::Cyclic(1)
    }

    pub fn identity(&self) -> GroupValue {
        match self {
            GroupModel::Integers => GroupValue::Int(0),
            GroupModel::Cyclic(_) => GroupValue::Residue(0),
            GroupModel::BooleanVectors(n) => GroupValue::Bits(vec![false; *n]),
            GroupModel::Product(fs) => GroupValue::Tuple(fs.iter().map(|f| f.identity()).collect()),
            GroupModel::Table(t) => GroupValue::Element(t.identity),
        }
    }

    pub fn contains(&self, a: &GroupValue) -> bool {
        match (self, a) {
            (GroupModel::Integers, GroupValue::Int(_)) => true,
            (GroupModel::Cyclic(n), GroupValue::Residue(r)) => r < n,
            (GroupModel::BooleanVectors(n), GroupValue::Bits(b)) => b.len() == *n,
            (GroupModel::Product(fs), GroupValue::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            (GroupModel::Table(t), GroupValue::Element(i)) => *i < t.order(),
            _ => false,
        }
    }

    fn check(&self, a: &GroupValue) -> Result<(), GroupError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfModel(format!("{a:?}")))
        }
    }

    pub fn compose(&self, a: &GroupValue, b: &GroupValue) -> Result<GroupValue, GroupError> {
        self.check(a)?;
        self.check(b)?;
        self.compose_unchecked(a, b)
    }

    fn compose_unchecked(&self, a: &GroupValue, b: &GroupValue) -> Result<GroupValue, GroupError> {
        Ok(match (self, a, b) {
            (GroupModel::Integers, GroupValue::Int(x), GroupValue::Int(y)) => {
                GroupValue::Int(x.checked_add(*y).ok_or(GroupError::Overflow)?)
            }
            (GroupModel::Cyclic(n), GroupValue::Residue(x), GroupValue::Residue(y)) => {
                GroupValue::Residue(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (GroupModel::BooleanVectors(_), GroupValue::Bits(x), GroupValue::Bits(y)) => {
                GroupValue::Bits(x.iter().zip(y).map(|(p, q)| p ^ q).collect())
            }
            (GroupModel::Product(fs), GroupValue::Tuple(xs), GroupValue::Tuple(ys)) => GroupValue::Tuple(
                fs.iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(f, (x, y))| f.compose_unchecked(x, y))
                    .collect::<Result<_, _>>()?,
            ),
            (GroupModel::Table(t), GroupValue::Element(x), GroupValue::Element(y)) => {
                GroupValue::Element(t.table[*x][*y])
            }
            _ => return Err(GroupError::ElementOutOfModel(format!("{a:?}"))),
        })
    }

    pub fn invert(&self, a: &GroupValue) -> Result<GroupValue, GroupError> {
        self.check(a)?;
        Ok(self.invert_unchecked(a))
    }

    fn invert_unchecked(&self, a: &GroupValue) -> GroupValue {
        match (self, a) {
            (GroupModel::Integers, GroupValue::Int(x)) => GroupValue::Int(x.wrapping_neg()),
            (GroupModel::Cyclic(n), GroupValue::Residue(x)) => GroupValue::Residue((n - x) % n),
            (GroupModel::BooleanVectors(_), GroupValue::Bits(_)) => a.clone(),
            (GroupModel::Product(fs), GroupValue::Tuple(xs)) => {
                GroupValue::Tuple(fs.iter().zip(xs).map(|(f, x)| f.invert_unchecked(x)).collect())
            }
            (GroupModel::Table(t), GroupValue::Element(x)) => GroupValue::Element(t.inverses[*x]),
            _ => unreachable!("checked by caller"),
        }
    }

    /// Number of elements, or `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupModel::Integers => None,
            GroupModel::Cyclic(n) => Some(*n),
            GroupModel::BooleanVectors(n) => 1u64.checked_shl(*n as u32),
            GroupModel::Product(fs) => fs.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.order()?)),
            GroupModel::Table(t) => Some(t.order() as u64),
        }
    }

    /// All elements in canonical order, for finite groups.
    pub fn elements(&self) -> Option<Vec<GroupValue>> {
        match self {
            GroupModel::Integers => None,
            GroupModel::Cyclic(n) => Some((0..*n).map(GroupValue::Residue).collect()),
            GroupModel::BooleanVectors(n) => {
                let n = *n;
                if n >= 32 {
                    return None;
                }
                Some(
                    (0u64..1 << n)
                        .map(|k| GroupValue::Bits((0..n).map(|i| (k >> (n - 1 - i)) & 1 == 1).collect()))
                        .collect(),
                )
            }
            GroupModel::Product(fs) => {
                let mut acc: Vec<Vec<GroupValue>> = vec![Vec::new()];
                for f in fs {
                    let elems = f.elements()?;
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            elems.iter().map(move |e| {
                                let mut p = prefix.clone();
                                p.push(e.clone());
                                p
                            })
                        })
                        .collect();
                }
                Some(acc.into_iter().map(GroupValue::Tuple).collect())
            }
            GroupModel::Table(t) => Some((0..t.order()).map(GroupValue::Element).collect()),
        }
    }

    /// Renders an element in the same grammar accepted by [`GroupModel::parse_element`].
    pub fn format_element(&self, a: &GroupValue) -> String {
        match (self, a) {
            (GroupModel::Table(t), GroupValue::Element(i)) if *i < t.order() => t.names[*i].clone(),
            (GroupModel::Product(fs), GroupValue::Tuple(xs)) if fs.len() == xs.len() => {
                let parts: Vec<String> = fs.iter().zip(xs).map(|(f, x)| f.format_element(x)).collect();
                format!("({})", parts.join(","))
            }
            (_, GroupValue::Int(x)) => x.to_string(),
            (_, GroupValue::Residue(x)) => x.to_string(),
            (_, GroupValue::Bits(b)) => {
                let parts: Vec<&str> = b.iter().map(|&x| if x { "1" } else { "0" }).collect();
                format!("({})", parts.join(","))
            }
            (_, other) => format!("{other:?}"),
        }
    }

    /// Parses an element: `3`, `-1`, `(1,0,1)`, `(2,(1,0))` or a table name.
    pub fn parse_element(&self, text: &str) -> Result<GroupValue, GroupError> {
        let tree = ElementTree::parse(text)?;
        self.interpret(&tree, text)
    }

    fn interpret(&self, tree: &ElementTree, text: &str) -> Result<GroupValue, GroupError> {
        let bad = || GroupError::ElementOutOfModel(text.trim().to_string());
        match (self, tree) {
            (GroupModel::Integers, ElementTree::Atom(s)) => s.parse().map(GroupValue::Int).map_err(|_| bad()),
            (GroupModel::Cyclic(n), ElementTree::Atom(s)) => {
                let x: i128 = s.parse().map_err(|_| bad())?;
                Ok(GroupValue::Residue(x.rem_euclid(*n as i128) as u64))
            }
            (GroupModel::BooleanVectors(n), ElementTree::Tuple(items)) if items.len() == *n => items
                .iter()
                .map(|item| match item {
                    ElementTree::Atom(s) => match s.as_str() {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        _ => Err(bad()),
                    },
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(GroupValue::Bits),
            // A width-one bit vector may be written without parentheses.
            (GroupModel::BooleanVectors(1), ElementTree::Atom(s)) => match s.as_str() {
                "0" => Ok(GroupValue::Bits(vec![false])),
                "1" => Ok(GroupValue::Bits(vec![true])),
                _ => Err(bad()),
            },
            (GroupModel::Product(fs), ElementTree::Tuple(items)) if items.len() == fs.len() => fs
                .iter()
                .zip(items)
                .map(|(f, item)| f.interpret(item, text))
                .collect::<Result<Vec<_>, _>>()
                .map(GroupValue::Tuple),
            (GroupModel::Table(t), ElementTree::Atom(s)) => t.index_of(s).map(GroupValue::Element).ok_or_else(bad),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupModel::Integers => write!(f, "Z"),
            GroupModel::Cyclic(n) => write!(f, "Z/{n}"),
            GroupModel::BooleanVectors(n) => write!(f, "Z2^{n}"),
            GroupModel::Product(fs) => {
                write!(f, "product(")?;
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
            GroupModel::Table(t) => {
                write!(f, "table{{{} |", t.names.join(","))?;
                for (r, row) in t.table.iter().enumerate() {
                    if r > 0 {
                        write!(f, ";")?;
                    }
                    for &x in row {
                        write!(f, " {}", t.names[x])?;
                    }
                }
                write!(f, "}}")
            }
        }
    }
}

impl FromStr for GroupModel {
    type Err = GroupError;

    /// Grammar: `Z`, `Z/n`, `Z2^n`, `product(G,H,...)` and
    /// `table{a,b,c | a b c; b c a; c a b}` (row `x` lists `x·y` for each `y`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || GroupError::Parse(s.to_string());
        if s == "Z" {
            return Ok(GroupModel::Integers);
        }
        if let Some(rest) = s.strip_prefix("Z2^") {
            return GroupModel::boolean_vectors(rest.trim().parse().map_err(|_| err())?);
        }
        if let Some(rest) = s.strip_prefix("Z/") {
            return GroupModel::cyclic(rest.trim().parse().map_err(|_| err())?);
        }
        if let Some(rest) = s.strip_prefix("product(") {
            let inner = rest.strip_suffix(')').ok_or_else(err)?;
            let factors = split_top_level(inner, ',')
                .into_iter()
                .map(|part| part.parse())
                .collect::<Result<Vec<_>, _>>()?;
            return GroupModel::product(factors);
        }
        if let Some(rest) = s.strip_prefix("table{") {
            let inner = rest.strip_suffix('}').ok_or_else(err)?;
            let (names, rows) = inner.split_once('|').ok_or_else(err)?;
            let names: Vec<String> = names.split(',').map(|n| n.trim().to_string()).collect();
            let lookup = |name: &str| names.iter().position(|n| n == name).ok_or_else(err);
            let table = rows
                .split(';')
                .map(|row| row.split_whitespace().map(lookup).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            return GroupModel::table(names.clone(), table);
        }
        Err(err())
    }
}

fn is_name(s: &str) -> bool {
    s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Splits on `sep` at nesting depth zero with respect to `()` and `{}`.
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum ElementTree {
    Atom(String),
    Tuple(Vec<ElementTree>),
}

impl ElementTree {
    fn parse(text: &str) -> Result<Self, GroupError> {
        let s = text.trim();
        if s.is_empty() {
            return Err(GroupError::ElementOutOfModel(String::new()));
        }
        if let Some(inner) = s.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| GroupError::ElementOutOfModel(s.to_string()))?;
            let items = split_top_level(inner, ',')
                .into_iter()
                .map(ElementTree::parse)
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(ElementTree::Tuple(items));
        }
        if s.contains(['(', ')', ',']) || s.contains(char::is_whitespace) {
            return Err(GroupError::ElementOutOfModel(s.to_string()));
        }
        Ok(ElementTree::Atom(s.to_string()))
    }
}
