//! Builders for the algebra families used throughout the crate: the
//! quantum exterior algebras `A(q)`, exterior algebras, full matrix
//! algebras with good gradings, twisted group algebras and a few classical
//! ungraded examples.
//!
//! Twisted group algebras are not one of the classical families above; they
//! are here to widen the test corpus with gradings by non-abelian groups.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, GradedAlgebra, StructureConstants};
use crate::exactmath::Rational;
use crate::group::{GroupError, GroupModel, GroupValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructorError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid parameter matrix: {0}")]
    InvalidQ(String),
    #[error("invalid grading: {0}")]
    InvalidSpec(String),
    #[error("2-cocycle identity fails on ({g}, {h}, {k})")]
    CocycleViolation { g: String, h: String, k: String },
}

/// Nonzero scalars `q_{ij}` for `1 <= i < j <= n`, defining `X_j X_i = q_{ij} X_i X_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl QMatrix {
    /// `entries` must contain every pair `1 <= i < j <= n` exactly once, all nonzero.
    pub fn new(n: usize, entries: BTreeMap<(usize, usize), Rational>) -> Result<Self, ConstructorError> {
        if n < 2 {
            return Err(ConstructorError::InvalidQ(format!("need n >= 2, got {n}")));
        }
        for (&(i, j), q) in &entries {
            if !(1 <= i && i < j && j <= n) {
                return Err(ConstructorError::InvalidQ(format!("pair ({i},{j}) is not 1 <= i < j <= {n}")));
            }
            if q.is_zero() {
                return Err(ConstructorError::InvalidQ(format!("q({i},{j}) is zero")));
            }
        }
        if entries.len() != n * (n - 1) / 2 {
            return Err(ConstructorError::InvalidQ(format!("expected {} entries, got {}", n * (n - 1) / 2, entries.len())));
        }
        Ok(QMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self, ConstructorError> {
        let mut entries = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                entries.insert((i, j), f(i, j));
            }
        }
        QMatrix::new(n, entries)
    }

    pub fn constant(n: usize, q: Rational) -> Result<Self, ConstructorError> {
        QMatrix::from_fn(n, |_, _| q.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q_{ij}` for `1 <= i < j <= n`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[&(i, j)]
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// Parameters of the Koszul dual: `q'_{ij} = -1 / q_{ij}`.
    pub fn koszul_dual(&self) -> QMatrix {
        QMatrix { n: self.n, entries: self.entries.iter().map(|(&k, q)| (k, -q.recip())).collect() }
    }
}

impl fmt::Display for QMatrix {
    /// Same syntax the command line accepts: `1,2=3;1,3=-1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|((i, j), q)| format!("{i},{j}={q}")).collect();
        f.write_str(&parts.join(";"))
    }
}

pub fn koszul_dual_q(q: &QMatrix) -> QMatrix {
    q.koszul_dual()
}

/// Which grading to put on `A(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AqGrading {
    /// `Z_2^n`: `x_1^{e_1}...x_n^{e_n}` has degree `(e_1, ..., e_n)`.
    BooleanVectors,
    /// `Z`: degree is the number of letters.
    Integer,
    Trivial,
}

/// Exponent vector of basis index `k`: `x_i` occurs iff bit `n - i` of `k` is set,
/// so index order is lexicographic order of `(e_1, ..., e_n)`.
pub fn aq_exponents(n: usize, k: usize) -> Vec<bool> {
    (1..=n).map(|i| (k >> (n - i)) & 1 == 1).collect()
}

fn aq_name(exps: &[bool]) -> String {
    let s: String = exps.iter().enumerate().filter(|(_, &e)| e).map(|(i, _)| format!("x{}", i + 1)).collect();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Coefficient of `e_{g+h}` in `e_g e_h` for disjoint supports: `prod_{i<j} q_{ij}^{μ_i ε_j}`
/// where `ε` are the exponents of `g` and `μ` those of `h`.
pub fn aq_coefficient(q: &QMatrix, g: &[bool], h: &[bool]) -> Rational {
    let n = q.n();
    let mut c = Rational::one();
    for i in 1..=n {
        for j in i + 1..=n {
            if h[i - 1] && g[j - 1] {
                c *= q.get(i, j);
            }
        }
    }
    c
}

/// `A(q) = K_q[X_1..X_n] / (X_1^2, ..., X_n^2)` on the basis `e_g`, `g` in `Z_2^n`.
pub fn make_aq(q: &QMatrix, grading: AqGrading) -> GradedAlgebra {
    let n = q.n();
    let dim = 1usize << n;
    let exps: Vec<Vec<bool>> = (0..dim).map(|k| aq_exponents(n, k)).collect();
    let mut entries = Vec::new();
    for g in 0..dim {
        for h in 0..dim {
            if g & h == 0 {
                entries.push((g, h, g | h, aq_coefficient(q, &exps[g], &exps[h])));
            }
        }
    }
    let mut unit = vec![Rational::zero(); dim];
    unit[0] = Rational::one();
    let table = StructureConstants::new(dim, entries, unit).expect("indices in range");
    let (group, degrees) = match grading {
        AqGrading::BooleanVectors => {
            (GroupModel::BooleanVectors(n), exps.iter().map(|e| GroupValue::Bits(e.clone())).collect())
        }
        AqGrading::Integer => (
            GroupModel::Integers,
            exps.iter().map(|e| GroupValue::Int(e.iter().filter(|&&b| b).count() as i64)).collect(),
        ),
        AqGrading::Trivial => (GroupModel::trivial(), vec![GroupValue::Residue(0); dim]),
    };
    let names = exps.iter().map(|e| aq_name(e)).collect();
    GradedAlgebra::new(group, names, degrees, table).expect("degrees belong to the model")
}

/// The exterior algebra on `n` generators, i.e. `A(q)` with every `q_{ij} = -1`.
pub fn make_exterior(n: usize, grading: AqGrading) -> Result<GradedAlgebra, ConstructorError> {
    let q = QMatrix::constant(n, -Rational::one())?;
    Ok(make_aq(&q, grading))
}

/// Closed-form symmetry test for `A(q)`:
/// `q_{in} = (prod_{p<i} q_{pi}) (prod_{i<p<=n-1} q_{ip}^{-1})` for every `1 <= i <= n-1`.
pub fn aq_symmetric_condition(q: &QMatrix) -> bool {
    let n = q.n();
    (1..n).all(|i| {
        let mut rhs = Rational::one();
        for p in 1..i {
            rhs *= q.get(p, i);
        }
        for p in i + 1..n {
            rhs /= q.get(i, p);
        }
        *q.get(i, n) == rhs
    })
}

/// A good grading on `M_n(K)`: `e_{ij}` has degree `g_i g_j⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodGradingSpec {
    group: GroupModel,
    tuple: Vec<GroupValue>,
}

impl GoodGradingSpec {
    pub fn new(group: GroupModel, tuple: Vec<GroupValue>) -> Result<Self, ConstructorError> {
        if tuple.is_empty() {
            return Err(ConstructorError::InvalidSpec("empty tuple".into()));
        }
        if let Some(bad) = tuple.iter().find(|g| !group.contains(g)) {
            return Err(GroupError::ElementOutOfModel(format!("{bad:?}")).into());
        }
        Ok(GoodGradingSpec { group, tuple })
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn tuple(&self) -> &[GroupValue] {
        &self.tuple
    }
}

/// Basis index of the matrix unit `e_{ij}` (0-based `i`, `j`) in [`make_good_matrix`].
pub fn matrix_unit_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// `M_n(K)` with the good grading of `spec`, on the basis of matrix units in row-major order.
pub fn make_good_matrix(spec: &GoodGradingSpec) -> GradedAlgebra {
    let n = spec.tuple.len();
    let group = &spec.group;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for q in 0..n {
                // e_ij e_jq = e_iq
                entries.push((matrix_unit_index(n, i, j), matrix_unit_index(n, j, q), matrix_unit_index(n, i, q), Rational::one()));
            }
        }
    }
    let mut unit = vec![Rational::zero(); n * n];
    for i in 0..n {
        unit[matrix_unit_index(n, i, i)] = Rational::one();
    }
    let table = StructureConstants::new(n * n, entries, unit).expect("indices in range");
    let mut names = Vec::with_capacity(n * n);
    let mut degrees = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            names.push(if n < 10 { format!("e{}{}", i + 1, j + 1) } else { format!("e{}_{}", i + 1, j + 1) });
            let inv = group.invert(&spec.tuple[j]).expect("validated");
            degrees.push(group.compose(&spec.tuple[i], &inv).expect("validated"));
        }
    }
    GradedAlgebra::new(group.clone(), names, degrees, table).expect("degrees belong to the model")
}

/// The twisted group algebra `K^c[G]`: basis `u_g`, `u_g u_h = c(g,h) u_{gh}`, graded by `G`.
///
/// `cocycle` must be nonzero, normalised (`c(ε,g) = c(g,ε) = 1`) and satisfy
/// `c(g,h) c(gh,k) = c(h,k) c(g,hk)`; all of this is checked.
pub fn make_twisted_group_algebra(
    model: &GroupModel,
    cocycle: impl Fn(&GroupValue, &GroupValue) -> Rational,
) -> Result<GradedAlgebra, ConstructorError> {
    let elems = model
        .elements()
        .ok_or_else(|| ConstructorError::InvalidSpec(format!("{model} is not finite")))?;
    let index: BTreeMap<&GroupValue, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let eps = model.identity();
    let n = elems.len();
    let mut c = vec![vec![Rational::zero(); n]; n];
    let mut prod = vec![vec![0usize; n]; n];
    for (a, g) in elems.iter().enumerate() {
        for (b, h) in elems.iter().enumerate() {
            let v = cocycle(g, h);
            if v.is_zero() {
                return Err(ConstructorError::InvalidSpec(format!(
                    "cocycle vanishes at ({}, {})",
                    model.format_element(g),
                    model.format_element(h)
                )));
            }
            if (*g == eps || *h == eps) && !v.is_one() {
                return Err(ConstructorError::InvalidSpec("cocycle is not normalised".into()));
            }
            c[a][b] = v;
            prod[a][b] = index[&model.compose(g, h)?];
        }
    }
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                if &c[a][b] * &c[prod[a][b]][k] != &c[b][k] * &c[a][prod[b][k]] {
                    return Err(ConstructorError::CocycleViolation {
                        g: model.format_element(&elems[a]),
                        h: model.format_element(&elems[b]),
                        k: model.format_element(&elems[k]),
                    });
                }
            }
        }
    }
    let entries = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, prod[a][b], c[a][b].clone()));
    let mut unit = vec![Rational::zero(); n];
    unit[index[&eps]] = Rational::one();
    let table = StructureConstants::new(n, entries.collect::<Vec<_>>(), unit)?;
    let names = elems.iter().map(|g| format!("u{}", model.format_element(g).replace(['(', ')', ','], ""))).collect();
    Ok(GradedAlgebra::new(model.clone(), names, elems, table)?)
}

/// Puts the trivial grading (over the one-element group) on validated structure constants.
pub fn with_trivial_grading(table: StructureConstants) -> Result<GradedAlgebra, AlgebraError> {
    let m = table.dim();
    GradedAlgebra::new_validated(
        GroupModel::trivial(),
        (0..m).map(|i| format!("e{i}")).collect(),
        vec![GroupValue::Residue(0); m],
        table,
    )
}

/// The same algebra with the grading forgotten, basis names kept.
pub fn forget_grading(a: &GradedAlgebra) -> GradedAlgebra {
    GradedAlgebra::new(
        GroupModel::trivial(),
        a.names().to_vec(),
        vec![GroupValue::Residue(0); a.dim()],
        a.table().clone(),
    )
    .expect("trivial degrees are valid")
}

/// `K[x]/(x^n)` on the basis `1, x, ..., x^{n-1}`.
pub fn truncated_polynomial(n: usize) -> Result<StructureConstants, AlgebraError> {
    let entries = (0..n).flat_map(|i| (0..n).filter(move |j| i + j < n).map(move |j| (i, j, i + j, Rational::one())));
    let mut unit = vec![Rational::zero(); n];
    if let Some(u) = unit.first_mut() {
        *u = Rational::one();
    }
    StructureConstants::new(n, entries.collect::<Vec<_>>(), unit)
}

/// Upper-triangular `n x n` matrices on the basis `e_{ij}`, `i <= j`, in row-major order.
pub fn upper_triangular(n: usize) -> Result<StructureConstants, AlgebraError> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let idx: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut entries = Vec::new();
    for &(i, j) in &pairs {
        for &(p, q) in &pairs {
            if j == p {
                entries.push((idx[&(i, j)], idx[&(p, q)], idx[&(i, q)], Rational::one()));
            }
        }
    }
    let mut unit = vec![Rational::zero(); pairs.len()];
    for i in 0..n {
        unit[idx[&(i, i)]] = Rational::one();
    }
    StructureConstants::new(pairs.len(), entries, unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, ratio};

    fn e(a: &GradedAlgebra, i: usize) -> Vec<Rational> {
        a.table().basis_vector(i)
    }

    #[test]
    fn aq_products_n2() {
        let q = QMatrix::from_fn(2, |_, _| int(3)).unwrap();
        let a = make_aq(&q, AqGrading::BooleanVectors);
        // index 1 = x2, index 2 = x1, index 3 = x1x2
        assert_eq!(a.names(), &["1", "x2", "x1", "x1x2"]);
        assert_eq!(a.multiply(&e(&a, 2), &e(&a, 1)).unwrap(), e(&a, 3));
        let three_top: Vec<Rational> = e(&a, 3).iter().map(|x| x * int(3)).collect();
        assert_eq!(a.multiply(&e(&a, 1), &e(&a, 2)).unwrap(), three_top);
        for g in 1..4 {
            assert!(a.multiply(&e(&a, g), &e(&a, g)).unwrap().iter().all(Zero::is_zero));
        }
        assert!(a.validate().passed());
    }

    #[test]
    fn aq_integer_grading_sizes() {
        let q = QMatrix::constant(2, int(5)).unwrap();
        let a = make_aq(&q, AqGrading::Integer);
        assert_eq!(a.dim(), 4);
        let sizes: Vec<usize> = (0..3).map(|d| a.component(&GroupValue::Int(d)).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 2, 1]);
        let a3 = make_aq(&QMatrix::constant(3, int(2)).unwrap(), AqGrading::Integer);
        assert_eq!(a3.component(&GroupValue::Int(2)).unwrap().len(), 3);
    }

    #[test]
    fn koszul_dual_examples() {
        let q = QMatrix::constant(2, int(2)).unwrap();
        assert_eq!(*q.koszul_dual().get(1, 2), ratio(-1, 2));
        let ones = QMatrix::constant(4, int(1)).unwrap();
        assert_eq!(ones.koszul_dual(), QMatrix::constant(4, int(-1)).unwrap());
        assert_eq!(q.koszul_dual().koszul_dual(), q);
    }

    #[test]
    fn symmetric_condition_examples() {
        for (q12, want) in [(int(1), true), (int(-1), false), (ratio(2, 3), false)] {
            assert_eq!(aq_symmetric_condition(&QMatrix::constant(2, q12).unwrap()), want);
        }
        assert!(aq_symmetric_condition(&QMatrix::constant(3, int(-1)).unwrap()));
        assert!(!aq_symmetric_condition(&QMatrix::constant(4, int(-1)).unwrap()));
        let q = QMatrix::new(3, BTreeMap::from([((1, 2), int(2)), ((1, 3), ratio(1, 2)), ((2, 3), int(2))])).unwrap();
        assert!(aq_symmetric_condition(&q));
    }

    #[test]
    fn qmatrix_rejects_bad_input() {
        assert!(QMatrix::constant(1, int(1)).is_err());
        assert!(QMatrix::constant(3, int(0)).is_err());
        assert!(QMatrix::new(3, BTreeMap::from([((1, 2), int(1))])).is_err());
        assert!(QMatrix::new(2, BTreeMap::from([((2, 1), int(1))])).is_err());
    }

    #[test]
    fn exterior_anticommutes() {
        let a = make_exterior(2, AqGrading::Trivial).unwrap();
        let x1x2 = a.multiply(&e(&a, 2), &e(&a, 1)).unwrap();
        let x2x1 = a.multiply(&e(&a, 1), &e(&a, 2)).unwrap();
        assert_eq!(x2x1, x1x2.iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn good_matrix_m2_over_z2() {
        let z2 = GroupModel::Cyclic(2);
        let spec = GoodGradingSpec::new(z2, vec![GroupValue::Residue(0), GroupValue::Residue(1)]).unwrap();
        let a = make_good_matrix(&spec);
        let d: Vec<&GroupValue> = a.degrees().iter().collect();
        assert_eq!(d, vec![&GroupValue::Residue(0), &GroupValue::Residue(1), &GroupValue::Residue(1), &GroupValue::Residue(0)]);
        assert_eq!(a.component(&GroupValue::Residue(0)).unwrap(), &[0, 3]);
        // e12 e21 = e11, e12 e12 = 0
        assert_eq!(a.multiply(&e(&a, 1), &e(&a, 2)).unwrap(), e(&a, 0));
        assert!(a.multiply(&e(&a, 1), &e(&a, 1)).unwrap().iter().all(Zero::is_zero));
        assert!(a.validate().passed());
    }

    #[test]
    fn constant_tuple_gives_trivial_grading() {
        let spec = GoodGradingSpec::new(GroupModel::Cyclic(3), vec![GroupValue::Residue(2); 3]).unwrap();
        let a = make_good_matrix(&spec);
        assert_eq!(a.support(), vec![GroupValue::Residue(0)]);
    }

    #[test]
    fn twisted_group_algebras() {
        let z2 = GroupModel::Cyclic(2);
        let a = make_twisted_group_algebra(&z2, |_, _| int(1)).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.validate().passed());
        // c(1,1) = -1 on Z/2 is a cocycle (it is K[x]/(x^2+1))
        let b = make_twisted_group_algebra(&z2, |g, h| if *g == GroupValue::Residue(1) && *h == *g { int(-1) } else { int(1) });
        assert!(b.unwrap().validate().passed());
        // on Z/3 the function c(1,1) = 2, else 1 breaks the identity
        let z3 = GroupModel::Cyclic(3);
        let bad = make_twisted_group_algebra(&z3, |g, h| {
            if *g == GroupValue::Residue(1) && *h == GroupValue::Residue(1) {
                int(2)
            } else {
                int(1)
            }
        });
        assert!(matches!(bad, Err(ConstructorError::CocycleViolation { .. })));
        assert!(make_twisted_group_algebra(&GroupModel::Integers, |_, _| int(1)).is_err());
    }

    #[test]
    fn classical_examples_validate() {
        for n in 1..=5 {
            assert!(with_trivial_grading(truncated_polynomial(n).unwrap()).is_ok());
        }
        let ut = with_trivial_grading(upper_triangular(2).unwrap()).unwrap();
        assert_eq!(ut.dim(), 3);
    }

    #[test]
    fn forgetting_the_grading_keeps_products() {
        let a = make_aq(&QMatrix::constant(3, ratio(2, 5)).unwrap(), AqGrading::BooleanVectors);
        let b = forget_grading(&a);
        assert_eq!(a.table(), b.table());
        assert!(b.validate().passed());
    }
}
