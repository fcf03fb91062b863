//! Finite-dimensional graded algebras given by homogeneous structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactmath::Rational;
use crate::group::{GroupError, GroupModel, GroupValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the zero algebra is not supported")]
    ZeroDimension,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("structure constant index out of range: ({i}, {j}, {l}) for dimension {dim}")]
    IndexOutOfRange { i: usize, j: usize, l: usize, dim: usize },
    #[error("structure constant ({i}, {j}, {l}) given twice")]
    DuplicateConstant { i: usize, j: usize, l: usize },
    #[error("algebra fails validation: {0}")]
    Invalid(ValidationReport),
}

/// Multiplication table `e_i e_j = sum_l c_{ijl} e_l` plus the unit, without a grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    products: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
    unit: Vec<Rational>,
}

impl StructureConstants {
    /// Collects `(i, j, l, c_{ijl})` entries; zeros are dropped, repeats rejected.
    pub fn new(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
        unit: Vec<Rational>,
    ) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        if unit.len() != dim {
            return Err(AlgebraError::DimensionMismatch(format!("unit has {} coordinates, dimension is {dim}", unit.len())));
        }
        let mut products: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
        let mut seen = std::collections::HashSet::new();
        for (i, j, l, c) in entries {
            if i >= dim || j >= dim || l >= dim {
                return Err(AlgebraError::IndexOutOfRange { i, j, l, dim });
            }
            if !seen.insert((i, j, l)) {
                return Err(AlgebraError::DuplicateConstant { i, j, l });
            }
            if !c.is_zero() {
                products.entry((i, j)).or_default().insert(l, c);
            }
        }
        Ok(StructureConstants { dim, products, unit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    /// Nonzero coefficients of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> Option<&BTreeMap<usize, Rational>> {
        self.products.get(&(i, j))
    }

    pub fn constant(&self, i: usize, j: usize, l: usize) -> Rational {
        self.product(i, j).and_then(|p| p.get(&l)).cloned().unwrap_or_else(Rational::zero)
    }

    /// All nonzero constants as `(i, j, l, c)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.products.iter().flat_map(|(&(i, j), p)| p.iter().map(move |(&l, c)| (i, j, l, c)))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch(format!(
                "vectors of length {} and {} in dimension {}",
                u.len(),
                v.len(),
                self.dim
            )));
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), p) in &self.products {
            if u[i].is_zero() || v[j].is_zero() {
                continue;
            }
            let uv = &u[i] * &v[j];
            for (&l, c) in p {
                out[l] += &uv * c;
            }
        }
        Ok(out)
    }

    fn mul_sparse(&self, x: &BTreeMap<usize, Rational>, p: usize) -> BTreeMap<usize, Rational> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&l, a) in x {
            if let Some(prod) = self.product(l, p) {
                for (&r, c) in prod {
                    *out.entry(r).or_insert_with(Rational::zero) += a * c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn left_mul_sparse(&self, i: usize, x: &BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&k, a) in x {
            if let Some(prod) = self.product(i, k) {
                for (&r, c) in prod {
                    *out.entry(r).or_insert_with(Rational::zero) += a * c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Associativity on all basis triples and the two-sided unit axiom.
    pub fn check_axioms(&self) -> Vec<Violation> {
        let mut found = Vec::new();
        let empty = BTreeMap::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.product(i, j).unwrap_or(&empty);
                for p in 0..self.dim {
                    let left = self.mul_sparse(ij, p);
                    let jp = self.product(j, p).unwrap_or(&empty);
                    let right = self.left_mul_sparse(i, jp);
                    if left != right {
                        let r = left
                            .keys()
                            .chain(right.keys())
                            .copied()
                            .find(|r| left.get(r) != right.get(r))
                            .expect("maps differ");
                        found.push(Violation::Associativity { i, j, p, r });
                    }
                }
            }
        }
        for j in 0..self.dim {
            let e = self.basis_vector(j);
            if self.multiply(&self.unit, &e).expect("dimensions match") != e {
                found.push(Violation::UnitLeft { j });
            }
            if self.multiply(&e, &self.unit).expect("dimensions match") != e {
                found.push(Violation::UnitRight { j });
            }
        }
        found
    }
}

/// One failed axiom, with the basis indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    /// `c_{ijl} != 0` although `deg(l) != deg(i) deg(j)`.
    Grading { i: usize, j: usize, l: usize },
    /// The coefficient of `e_r` differs in `(e_i e_j) e_p` and `e_i (e_j e_p)`.
    Associativity { i: usize, j: usize, p: usize, r: usize },
    UnitLeft { j: usize },
    UnitRight { j: usize },
    /// The unit has a nonzero coordinate on `e_l` outside the neutral component.
    UnitNotHomogeneous { l: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Grading { i, j, l } => write!(f, "grading: c({i},{j},{l}) != 0 but deg({l}) != deg({i})deg({j})"),
            Violation::Associativity { i, j, p, r } => {
                write!(f, "associativity: (e{i} e{j}) e{p} and e{i} (e{j} e{p}) differ at e{r}")
            }
            Violation::UnitLeft { j } => write!(f, "unit: 1 * e{j} != e{j}"),
            Violation::UnitRight { j } => write!(f, "unit: e{j} * 1 != e{j}"),
            Violation::UnitNotHomogeneous { l } => write!(f, "unit: coordinate {l} lies outside the neutral component"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "passed");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        if let Some(first) = self.violations.first() {
            write!(f, "; first: {first}")?;
        }
        Ok(())
    }
}

/// A `G`-graded algebra with a homogeneous basis `e_0, ..., e_{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    group: GroupModel,
    names: Vec<String>,
    degrees: Vec<GroupValue>,
    table: StructureConstants,
    components: BTreeMap<GroupValue, Vec<usize>>,
}

impl GradedAlgebra {
    /// Assembles an algebra without checking the axioms; see [`GradedAlgebra::validate`].
    pub fn new(
        group: GroupModel,
        names: Vec<String>,
        degrees: Vec<GroupValue>,
        table: StructureConstants,
    ) -> Result<Self, AlgebraError> {
        let m = table.dim();
        if names.len() != m || degrees.len() != m {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} names and {} degrees for dimension {m}",
                names.len(),
                degrees.len()
            )));
        }
        let mut components: BTreeMap<GroupValue, Vec<usize>> = BTreeMap::new();
        for (i, d) in degrees.iter().enumerate() {
            if !group.contains(d) {
                return Err(GroupError::ElementOutOfModel(format!("{d:?}")).into());
            }
            components.entry(d.clone()).or_default().push(i);
        }
        Ok(GradedAlgebra { group, names, degrees, table, components })
    }

    /// [`GradedAlgebra::new`] followed by validation; findings become an error.
    pub fn new_validated(
        group: GroupModel,
        names: Vec<String>,
        degrees: Vec<GroupValue>,
        table: StructureConstants,
    ) -> Result<Self, AlgebraError> {
        let a = GradedAlgebra::new(group, names, degrees, table)?;
        let report = a.validate();
        if report.passed() {
            Ok(a)
        } else {
            Err(AlgebraError::Invalid(report))
        }
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[GroupValue] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupValue {
        &self.degrees[i]
    }

    pub fn table(&self) -> &StructureConstants {
        &self.table
    }

    pub fn unit(&self) -> &[Rational] {
        self.table.unit()
    }

    pub fn constant(&self, i: usize, j: usize, l: usize) -> Rational {
        self.table.constant(i, j, l)
    }

    pub fn multiply(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        self.table.multiply(u, v)
    }

    /// Basis indices of degree `g` in ascending order; empty when `A_g = 0`.
    pub fn component(&self, g: &GroupValue) -> Result<&[usize], AlgebraError> {
        if !self.group.contains(g) {
            return Err(GroupError::ElementOutOfModel(format!("{g:?}")).into());
        }
        Ok(self.components.get(g).map_or(&[][..], |v| v.as_slice()))
    }

    /// Degrees with a nonzero homogeneous component, in canonical order.
    pub fn support(&self) -> Vec<GroupValue> {
        self.components.keys().cloned().collect()
    }

    /// The finite set of `g` for which `J_g` or `J_{σg⁻¹}` is non-empty.
    ///
    /// `J_{σg⁻¹}` is non-empty exactly when `g = s⁻¹σ` for some `s` in the
    /// support; every other `g` makes all block conditions vacuous.
    pub fn relevant_degrees(&self, sigma: &GroupValue) -> Result<Vec<GroupValue>, AlgebraError> {
        let mut set: std::collections::BTreeSet<GroupValue> = self.components.keys().cloned().collect();
        for s in self.components.keys() {
            set.insert(self.group.compose(&self.group.invert(s)?, sigma)?);
        }
        Ok(set.into_iter().collect())
    }

    /// `σ g⁻¹`, the row degree paired with column degree `g`.
    pub fn partner(&self, sigma: &GroupValue, g: &GroupValue) -> Result<GroupValue, AlgebraError> {
        Ok(self.group.compose(sigma, &self.group.invert(g)?)?)
    }

    /// Checks grading compatibility, associativity and the unit axiom exhaustively.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (i, j, l, _) in self.table.entries() {
            let expected = self
                .group
                .compose(&self.degrees[i], &self.degrees[j])
                .expect("degrees belong to the model");
            if self.degrees[l] != expected {
                violations.push(Violation::Grading { i, j, l });
            }
        }
        let eps = self.group.identity();
        for (l, c) in self.unit().iter().enumerate() {
            if !c.is_zero() && self.degrees[l] != eps {
                violations.push(Violation::UnitNotHomogeneous { l });
            }
        }
        violations.extend(self.table.check_axioms());
        ValidationReport { violations }
    }
}
