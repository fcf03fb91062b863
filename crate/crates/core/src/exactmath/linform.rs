use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use super::{MathError, Matrix, MultiPoly, Rational};

/// Homogeneous linear form `sum_k c_k * a_k` with no constant term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<usize, Rational>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn var(i: usize) -> Self {
        LinearForm::zero().with_term(i, super::int(1))
    }

    pub fn with_term(mut self, var: usize, c: Rational) -> Self {
        self.add_term(var, c);
        self
    }

    pub fn add_term(&mut self, var: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(var).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&var);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn coeff(&self, var: usize) -> Rational {
        self.coeffs.get(&var).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, (&k, c)| acc + c * &point[k])
    }

    pub fn to_poly(&self, nvars: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for (&k, c) in &self.coeffs {
            p = p.add(&MultiPoly::var(nvars, k).scale(c));
        }
        p
    }

    /// Rewrites in new variables `t` via `a = sum_k t_k * basis[k]`.
    pub fn substitute(&self, basis: &[Vec<Rational>]) -> LinearForm {
        let mut out = LinearForm::zero();
        for (k, b) in basis.iter().enumerate() {
            let c = self.coeffs.iter().fold(Rational::zero(), |acc, (&v, c)| acc + c * &b[v]);
            out.add_term(k, c);
        }
        out
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (v, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *c == super::int(1) {
                write!(f, "a{v}")?;
            } else {
                write!(f, "{c}*a{v}")?;
            }
        }
        Ok(())
    }
}

/// Sparse matrix whose entries are linear forms in `nvars` variables.
///
/// Rows and columns carry labels (basis indices of the owning algebra) so
/// blocks can be reported in terms of the original indexing; absent entries
/// are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormMatrix {
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
    nvars: usize,
    entries: BTreeMap<(usize, usize), LinearForm>,
}

impl LinearFormMatrix {
    pub fn new(row_labels: Vec<usize>, col_labels: Vec<usize>, nvars: usize) -> Self {
        LinearFormMatrix { row_labels, col_labels, nvars, entries: BTreeMap::new() }
    }

    /// Unlabelled matrix from a dense grid of forms; labels are positions.
    pub fn from_grid(grid: Vec<Vec<LinearForm>>, nvars: usize) -> Result<Self, MathError> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        let mut m = LinearFormMatrix::new((0..rows).collect(), (0..cols).collect(), nvars);
        for (r, row) in grid.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MathError::DimensionMismatch("ragged grid".into()));
            }
            for (c, form) in row.into_iter().enumerate() {
                m.set(r, c, form)?;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn set(&mut self, r: usize, c: usize, form: LinearForm) -> Result<(), MathError> {
        if r >= self.rows() || c >= self.cols() {
            return Err(MathError::DimensionMismatch(format!("entry ({r},{c}) outside {}x{}", self.rows(), self.cols())));
        }
        if form.max_var().is_some_and(|v| v >= self.nvars) {
            return Err(MathError::VariableMismatch { expected: self.nvars, got: form.max_var().unwrap() + 1 });
        }
        if form.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), form);
        }
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&LinearForm> {
        self.entries.get(&(r, c))
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LinearForm)> {
        self.entries.iter().map(|(&(r, c), f)| (r, c, f))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    /// Submatrix on the given row and column positions (in that order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> LinearFormMatrix {
        let mut out = LinearFormMatrix::new(
            rows.iter().map(|&r| self.row_labels[r]).collect(),
            cols.iter().map(|&c| self.col_labels[c]).collect(),
            self.nvars,
        );
        let col_pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        for (i, &r) in rows.iter().enumerate() {
            for ((_, c), f) in self.entries.range((r, 0)..(r + 1, 0)) {
                if let Some(&j) = col_pos.get(c) {
                    out.entries.insert((i, j), f.clone());
                }
            }
        }
        out
    }

    /// Re-expresses the matrix in new variables `t` via `a = sum_k t_k * basis[k]`.
    pub fn substitute(&self, basis: &[Vec<Rational>]) -> Result<LinearFormMatrix, MathError> {
        if let Some(b) = basis.iter().find(|b| b.len() != self.nvars) {
            return Err(MathError::VariableMismatch { expected: self.nvars, got: b.len() });
        }
        let mut out = LinearFormMatrix::new(self.row_labels.clone(), self.col_labels.clone(), basis.len());
        for (&(r, c), f) in &self.entries {
            let g = f.substitute(basis);
            if !g.is_zero() {
                out.entries.insert((r, c), g);
            }
        }
        Ok(out)
    }

    /// Entrywise substitution of a point for the variables.
    pub fn eval_at(&self, alpha: &[Rational]) -> Result<Matrix, MathError> {
        if alpha.len() != self.nvars {
            return Err(MathError::VariableMismatch { expected: self.nvars, got: alpha.len() });
        }
        let mut m = Matrix::zeros(self.rows(), self.cols());
        for (&(r, c), f) in &self.entries {
            m.set(r, c, f.eval(alpha));
        }
        Ok(m)
    }

    /// Exact determinant as a polynomial in the variables.
    ///
    /// Sparse matrices (at most a quarter of the entries nonzero) use
    /// memoised minor expansion along the sparsest row; denser ones use
    /// fraction-free Bareiss elimination over the polynomial ring. The
    /// `0 x 0` determinant is 1.
    pub fn symbolic_det(&self) -> Result<MultiPoly, MathError> {
        if !self.is_square() {
            return Err(MathError::NotSquare { rows: self.rows(), cols: self.cols() });
        }
        let n = self.rows();
        if n == 0 {
            return Ok(MultiPoly::one(self.nvars));
        }
        if (0..n).any(|r| self.entries.range((r, 0)..(r + 1, 0)).next().is_none()) {
            return Ok(MultiPoly::zero(self.nvars));
        }
        if 4 * self.entries.len() <= n * n && n <= 64 {
            Ok(self.det_by_expansion())
        } else {
            Ok(self.det_by_bareiss())
        }
    }

    fn det_by_expansion(&self) -> MultiPoly {
        let n = self.rows();
        let mut rows: Vec<Vec<(usize, MultiPoly)>> = vec![Vec::new(); n];
        for (&(r, c), f) in &self.entries {
            rows[r].push((c, f.to_poly(self.nvars)));
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut memo = HashMap::new();
        expand(&rows, full, full, self.nvars, &mut memo)
    }

    fn det_by_bareiss(&self) -> MultiPoly {
        let n = self.rows();
        let mut m: Vec<Vec<MultiPoly>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| self.get(r, c).map_or_else(|| MultiPoly::zero(self.nvars), |f| f.to_poly(self.nvars)))
                    .collect()
            })
            .collect();
        let mut sign = false;
        let mut prev = MultiPoly::one(self.nvars);
        for k in 0..n {
            // Fewest terms makes the later exact divisions cheaper.
            let pivot = (k..n).filter(|&r| !m[r][k].is_zero()).min_by_key(|&r| m[r][k].num_terms());
            let Some(p) = pivot else {
                return MultiPoly::zero(self.nvars);
            };
            if p != k {
                m.swap(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = MultiPoly::zero(self.nvars);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign {
            det.neg()
        } else {
            det
        }
    }
}

fn expand(
    rows: &[Vec<(usize, MultiPoly)>],
    row_mask: u64,
    col_mask: u64,
    nvars: usize,
    memo: &mut HashMap<(u64, u64), MultiPoly>,
) -> MultiPoly {
    if row_mask == 0 {
        return MultiPoly::one(nvars);
    }
    if let Some(p) = memo.get(&(row_mask, col_mask)) {
        return p.clone();
    }
    let live = |r: usize| rows[r].iter().filter(|(c, _)| col_mask >> c & 1 == 1).count();
    let row = (0..rows.len())
        .filter(|&r| row_mask >> r & 1 == 1)
        .min_by_key(|&r| live(r))
        .expect("row mask is non-empty");
    let row_pos = (row_mask & ((1u64 << row) - 1)).count_ones();
    let mut det = MultiPoly::zero(nvars);
    for (c, entry) in &rows[row] {
        if col_mask >> c & 1 == 0 {
            continue;
        }
        let col_pos = (col_mask & ((1u64 << c) - 1)).count_ones();
        let minor = expand(rows, row_mask & !(1u64 << row), col_mask & !(1u64 << c), nvars, memo);
        if minor.is_zero() {
            continue;
        }
        let term = entry.mul(&minor);
        det = if (row_pos + col_pos) % 2 == 0 { det.add(&term) } else { det.sub(&term) };
    }
    memo.insert((row_mask, col_mask), det.clone());
    det
}

impl fmt::Display for LinearFormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows() {
            let cells: Vec<String> = (0..self.cols())
                .map(|c| self.get(r, c).map_or_else(|| "0".to_string(), |x| x.to_string()))
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
