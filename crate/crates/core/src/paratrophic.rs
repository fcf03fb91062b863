//! σ-paratrophic matrices `P(σ, α)` and the scalar matrices `C_g`.
//!
//! The `(i, j)` entry of `P(σ, α)` is `sum_{l in J_σ} c_{ijl} α_l`. Variable
//! `k` of every linear form is `α_l` for the `k`-th index `l` of `J_σ`.

use crate::algebra::{AlgebraError, GradedAlgebra};
use crate::exactmath::{LinearForm, LinearFormMatrix, Matrix, Rational};
use crate::group::GroupValue;

/// Lazy view of `P(σ, α)`: blocks are built on demand, the full matrix only
/// when asked for.
#[derive(Debug, Clone)]
pub struct ParatrophicMatrix<'a> {
    algebra: &'a GradedAlgebra,
    sigma: GroupValue,
    variables: Vec<usize>,
}

impl<'a> ParatrophicMatrix<'a> {
    pub fn new(algebra: &'a GradedAlgebra, sigma: &GroupValue) -> Result<Self, AlgebraError> {
        let variables = algebra.component(sigma)?.to_vec();
        Ok(ParatrophicMatrix { algebra, sigma: sigma.clone(), variables })
    }

    pub fn algebra(&self) -> &'a GradedAlgebra {
        self.algebra
    }

    pub fn sigma(&self) -> &GroupValue {
        &self.sigma
    }

    /// The basis indices `J_σ` labelling the variables, in variable order.
    pub fn variables(&self) -> &[usize] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> LinearForm {
        let mut form = LinearForm::zero();
        if let Some(prod) = self.algebra.table().product(i, j) {
            for (k, l) in self.variables.iter().enumerate() {
                if let Some(c) = prod.get(l) {
                    form.add_term(k, c.clone());
                }
            }
        }
        form
    }

    /// Submatrix on arbitrary row and column index lists.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> LinearFormMatrix {
        let mut m = LinearFormMatrix::new(rows.to_vec(), cols.to_vec(), self.nvars());
        for (r, &i) in rows.iter().enumerate() {
            for (c, &j) in cols.iter().enumerate() {
                let form = self.entry(i, j);
                if !form.is_zero() {
                    m.set(r, c, form).expect("in range");
                }
            }
        }
        m
    }

    /// The full `m x m` matrix over all basis indices.
    pub fn full(&self) -> LinearFormMatrix {
        let all: Vec<usize> = (0..self.algebra.dim()).collect();
        self.restrict(&all, &all)
    }

    /// The block with rows `J_{σg⁻¹}` and columns `J_g`; possibly empty or non-square.
    pub fn block(&self, g: &GroupValue) -> Result<LinearFormMatrix, AlgebraError> {
        let rows = self.algebra.component(&self.algebra.partner(&self.sigma, g)?)?;
        let cols = self.algebra.component(g)?;
        Ok(self.restrict(rows, cols))
    }

    /// `P(σ, α)` at a concrete point.
    pub fn eval_full(&self, alpha: &[Rational]) -> Result<Matrix, crate::exactmath::MathError> {
        self.full().eval_at(alpha)
    }
}

/// `build_p`: the σ-paratrophic matrix of `a`.
pub fn build_p<'a>(a: &'a GradedAlgebra, sigma: &GroupValue) -> Result<ParatrophicMatrix<'a>, AlgebraError> {
    ParatrophicMatrix::new(a, sigma)
}

/// `C_g`: rows `(r, l)` in `J_{σg⁻¹} x J_σ` (r outer), columns `J_g`, entry `c_{rjl}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CgMatrix {
    pub g: GroupValue,
    pub row_labels: Vec<(usize, usize)>,
    pub col_labels: Vec<usize>,
    pub matrix: Matrix,
}

impl CgMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Whether `rank C_g = |J_g|`.
    pub fn has_full_column_rank(&self) -> bool {
        self.rank() == self.col_labels.len()
    }
}

pub fn build_cg(a: &GradedAlgebra, sigma: &GroupValue, g: &GroupValue) -> Result<CgMatrix, AlgebraError> {
    let rows_deg = a.partner(sigma, g)?;
    let r_idx = a.component(&rows_deg)?;
    let l_idx = a.component(sigma)?;
    let cols = a.component(g)?.to_vec();
    let row_labels: Vec<(usize, usize)> = r_idx.iter().flat_map(|&r| l_idx.iter().map(move |&l| (r, l))).collect();
    let data = row_labels
        .iter()
        .map(|&(r, l)| cols.iter().map(|&j| a.constant(r, j, l)).collect())
        .collect();
    let matrix = Matrix::from_rows(data, cols.len()).expect("rows have one entry per column");
    Ok(CgMatrix { g: g.clone(), row_labels, col_labels: cols, matrix })
}
