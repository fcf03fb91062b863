//! Decision procedures: σ-graded Frobenius, graded symmetric, left
//! σ-faithful, duals of modules and of the σ-component, plus a consistency
//! checker that evaluates the three equivalent invertibility conditions
//! independently.
//!
//! Every `Yes` carries one rational point `α` (indexed by `J_σ`) at which all
//! blocks were verified invertible by exact determinants. Every `No` carries
//! a witness that can be re-checked deterministically.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, GradedAlgebra, StructureConstants, ValidationReport, Violation};
use crate::constructors::with_trivial_grading;
use crate::exactmath::{
    common_nonzero_point, is_generically_invertible, structural_rank, Invertibility, LinearForm, LinearFormMatrix,
    MathError, Matrix, MultiPoly, PitConfig, Rational, Strategy,
};
use crate::group::{GroupModel, GroupValue};
use crate::paratrophic::{build_cg, ParatrophicMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Why a property fails.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    /// `|J_{σg⁻¹}| = rows` differs from `|J_g| = cols`.
    DimensionMismatch { g: GroupValue, rows: usize, cols: usize },
    /// `rank C_g < |J_g|`.
    RankDeficiency { g: GroupValue, rank: usize, expected: usize },
    /// The block with column degree `g` has an identically zero determinant.
    IdenticallyZeroDet { g: GroupValue },
    /// `A_σ = 0`, so every paratrophic matrix vanishes.
    ZeroSigmaComponent,
    /// The symmetry constraints force `α = 0`.
    NoSymmetricSolution,
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::DimensionMismatch { .. } => "dimension-mismatch",
            Witness::RankDeficiency { .. } => "rank-deficiency",
            Witness::IdenticallyZeroDet { .. } => "identically-zero-det",
            Witness::ZeroSigmaComponent => "zero-sigma-component",
            Witness::NoSymmetricSolution => "no-symmetric-solution",
        }
    }

    pub fn describe(&self, group: &GroupModel) -> String {
        match self {
            Witness::DimensionMismatch { g, rows, cols } => {
                format!("block g={}: {rows} rows but {cols} columns", group.format_element(g))
            }
            Witness::RankDeficiency { g, rank, expected } => {
                format!("C_g for g={} has rank {rank} < {expected}", group.format_element(g))
            }
            Witness::IdenticallyZeroDet { g } => {
                format!("block g={} has identically zero determinant", group.format_element(g))
            }
            Witness::ZeroSigmaComponent => "the sigma component is zero".into(),
            Witness::NoSymmetricSolution => "symmetry constraints force alpha = 0".into(),
        }
    }
}

/// A verified point: `alpha[k]` is `α_l` for `l = variables[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub variables: Vec<usize>,
    pub alpha: Vec<Rational>,
    /// Determinant at `alpha` of every non-empty block, by column degree.
    pub block_dets: Vec<(GroupValue, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes(Certificate),
    No(Witness),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockStatus {
    Empty,
    Invertible,
    DimensionMismatch,
    IdenticallyZero,
    /// Not examined because an earlier block already decided the answer.
    Skipped,
}

impl BlockStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BlockStatus::Empty => "empty",
            BlockStatus::Invertible => "invertible",
            BlockStatus::DimensionMismatch => "dimension-mismatch",
            BlockStatus::IdenticallyZero => "identically-zero",
            BlockStatus::Skipped => "skipped",
        }
    }
}

/// One row of the per-block table: rows `J_{σg⁻¹}`, columns `J_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInfo {
    pub g: GroupValue,
    pub rows: usize,
    pub cols: usize,
    pub status: BlockStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub blocks: Vec<BlockInfo>,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self.verdict, Verdict::Yes(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.verdict {
            Verdict::Yes(c) => Some(c),
            Verdict::No(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Yes(_) => None,
            Verdict::No(w) => Some(w),
        }
    }

    fn no(witness: Witness, blocks: Vec<BlockInfo>) -> Self {
        Decision { verdict: Verdict::No(witness), blocks }
    }
}

/// Extra sample points tried when every block is known to be generically
/// invertible but no single point among the first `trials` inverts them all.
const JOINT_EXTRA_SAMPLES: usize = 64;

struct BlockProblem {
    g: GroupValue,
    matrix: LinearFormMatrix,
}

/// Shared engine: decides whether one point inverts every square block at once.
///
/// `subst`, when given, rewrites the `α` variables as `α = sum_k t_k subst[k]`
/// and the search runs over `t`.
fn decide_blocks(
    a: &GradedAlgebra,
    sigma: &GroupValue,
    subst: Option<&[Vec<Rational>]>,
    cfg: &PitConfig,
) -> Result<Decision, DecideError> {
    let p = ParatrophicMatrix::new(a, sigma)?;
    let degrees = a.relevant_degrees(sigma)?;
    let mut blocks = Vec::with_capacity(degrees.len());
    let mut mismatch = None;
    for g in &degrees {
        let rows = a.component(&a.partner(sigma, g)?)?.len();
        let cols = a.component(g)?.len();
        let status = if rows != cols {
            mismatch.get_or_insert_with(|| Witness::DimensionMismatch { g: g.clone(), rows, cols });
            BlockStatus::DimensionMismatch
        } else if rows == 0 {
            BlockStatus::Empty
        } else {
            BlockStatus::Skipped
        };
        blocks.push(BlockInfo { g: g.clone(), rows, cols, status });
    }
    if let Some(w) = mismatch {
        return Ok(Decision::no(w, blocks));
    }

    let nvars = subst.map_or(p.nvars(), |s| s.len());
    let mut problems = Vec::new();
    for info in blocks.iter().filter(|b| b.status == BlockStatus::Skipped) {
        let m = p.block(&info.g)?;
        let matrix = match subst {
            Some(s) => m.substitute(s)?,
            None => m,
        };
        cfg.check(matrix.rows())?;
        problems.push(BlockProblem { g: info.g.clone(), matrix });
    }
    let set_status = |blocks: &mut Vec<BlockInfo>, g: &GroupValue, status| {
        if let Some(b) = blocks.iter_mut().find(|b| &b.g == g) {
            b.status = status;
        }
    };

    if cfg.strategy == Strategy::Auto {
        if let Some(bad) = problems.iter().find(|b| structural_rank(&b.matrix) < b.matrix.rows()) {
            let g = bad.g.clone();
            set_status(&mut blocks, &g, BlockStatus::IdenticallyZero);
            return Ok(Decision::no(Witness::IdenticallyZeroDet { g }, blocks));
        }
    }

    let mut known_nonzero = vec![false; problems.len()];
    if cfg.strategy != Strategy::Symbolic {
        for point in cfg.points(nvars).take(cfg.trials as usize) {
            let dets = block_dets_at(&problems, &point)?;
            for (k, d) in dets.iter().enumerate() {
                known_nonzero[k] |= !d.is_zero();
            }
            if dets.iter().all(|d| !d.is_zero()) {
                return Ok(yes(&p, subst, point, &problems, dets, blocks));
            }
        }
    }

    let mut symbolic: BTreeMap<usize, MultiPoly> = BTreeMap::new();
    for (k, b) in problems.iter().enumerate() {
        if known_nonzero[k] {
            continue;
        }
        let det = b.matrix.symbolic_det()?;
        if det.is_zero() {
            let g = b.g.clone();
            set_status(&mut blocks, &g, BlockStatus::IdenticallyZero);
            return Ok(Decision::no(Witness::IdenticallyZeroDet { g }, blocks));
        }
        symbolic.insert(k, det);
    }

    if cfg.strategy != Strategy::Symbolic {
        let stream = cfg.points(nvars).skip(cfg.trials as usize).take(JOINT_EXTRA_SAMPLES);
        for point in stream {
            let dets = block_dets_at(&problems, &point)?;
            if dets.iter().all(|d| !d.is_zero()) {
                return Ok(yes(&p, subst, point, &problems, dets, blocks));
            }
        }
    }
    for (k, b) in problems.iter().enumerate() {
        if !symbolic.contains_key(&k) {
            symbolic.insert(k, b.matrix.symbolic_det()?);
        }
    }
    let polys: Vec<MultiPoly> = symbolic.into_values().collect();
    let point = if polys.is_empty() { vec![Rational::one(); nvars] } else { common_nonzero_point(&polys) };
    let dets = block_dets_at(&problems, &point)?;
    debug_assert!(dets.iter().all(|d| !d.is_zero()));
    Ok(yes(&p, subst, point, &problems, dets, blocks))
}

fn block_dets_at(problems: &[BlockProblem], point: &[Rational]) -> Result<Vec<Rational>, MathError> {
    let mut dets = Vec::with_capacity(problems.len());
    for b in problems {
        let d = b.matrix.eval_at(point)?.determinant()?;
        let zero = d.is_zero();
        dets.push(d);
        if zero {
            break;
        }
    }
    dets.resize(problems.len(), Rational::zero());
    Ok(dets)
}

fn yes(
    p: &ParatrophicMatrix<'_>,
    subst: Option<&[Vec<Rational>]>,
    point: Vec<Rational>,
    problems: &[BlockProblem],
    dets: Vec<Rational>,
    mut blocks: Vec<BlockInfo>,
) -> Decision {
    let alpha = match subst {
        Some(basis) => combine(basis, &point, p.nvars()),
        None => point,
    };
    for b in blocks.iter_mut().filter(|b| b.status == BlockStatus::Skipped) {
        b.status = BlockStatus::Invertible;
    }
    let block_dets = problems.iter().zip(dets).map(|(b, d)| (b.g.clone(), d)).collect();
    Decision { verdict: Verdict::Yes(Certificate { variables: p.variables().to_vec(), alpha, block_dets }), blocks }
}

fn combine(basis: &[Vec<Rational>], t: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (b, tk) in basis.iter().zip(t) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += x * tk;
        }
    }
    out
}

/// Decides whether some `α` makes `P(σ, α)` invertible.
///
/// Checks `A_σ != 0`, then `|J_{σg⁻¹}| = |J_g|` for every relevant `g`, then
/// looks for one point inverting all square blocks.
pub fn decide_sigma_frobenius(a: &GradedAlgebra, sigma: &GroupValue, cfg: &PitConfig) -> Result<Decision, DecideError> {
    if a.component(sigma)?.is_empty() {
        return Ok(Decision::no(Witness::ZeroSigmaComponent, Vec::new()));
    }
    decide_blocks(a, sigma, None, cfg)
}

/// The linear constraints `sum_l (c_{ijl} - c_{jil}) α_l = 0` on `α` over `J_ε`.
pub fn symmetry_system(a: &GradedAlgebra) -> Result<Matrix, DecideError> {
    let eps = a.group().identity();
    let vars = a.component(&eps)?;
    let mut rows = Vec::new();
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            let row: Vec<Rational> = vars.iter().map(|&l| a.constant(i, j, l) - a.constant(j, i, l)).collect();
            if row.iter().any(|x| !x.is_zero()) && !rows.contains(&row) {
                rows.push(row);
            }
        }
    }
    Ok(Matrix::from_rows(rows, vars.len())?)
}

/// Decides whether some `α` over `J_ε` makes `P(ε, α)` both symmetric and invertible.
pub fn decide_graded_symmetric(a: &GradedAlgebra, cfg: &PitConfig) -> Result<Decision, DecideError> {
    let eps = a.group().identity();
    if a.component(&eps)?.is_empty() {
        return Ok(Decision::no(Witness::ZeroSigmaComponent, Vec::new()));
    }
    let basis = symmetry_system(a)?.nullspace_basis();
    if basis.is_empty() {
        return Ok(Decision::no(Witness::NoSymmetricSolution, Vec::new()));
    }
    decide_blocks(a, &eps, Some(&basis), cfg)
}

/// The classical Frobenius test: trivial grading, `σ = ε`.
pub fn decide_frobenius_ungraded(table: &StructureConstants, cfg: &PitConfig) -> Result<Decision, DecideError> {
    let a = with_trivial_grading(table.clone())?;
    decide_sigma_frobenius(&a, &a.group().identity(), cfg)
}

/// Result of the left σ-faithfulness test, with every `rank C_g` computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Faithfulness {
    /// `(g, rank C_g, |J_g|)` for each relevant `g`.
    pub ranks: Vec<(GroupValue, usize, usize)>,
    /// The first `g` with `rank C_g < |J_g|`.
    pub witness: Option<Witness>,
}

impl Faithfulness {
    pub fn is_faithful(&self) -> bool {
        self.witness.is_none()
    }
}

/// Left σ-faithful iff `rank C_g = |J_g|` for every `g`.
pub fn is_sigma_faithful(a: &GradedAlgebra, sigma: &GroupValue) -> Result<Faithfulness, DecideError> {
    let mut ranks = Vec::new();
    let mut witness = None;
    for g in a.relevant_degrees(sigma)? {
        let cg = build_cg(a, sigma, &g)?;
        let rank = cg.rank();
        let expected = cg.col_labels.len();
        if rank != expected && witness.is_none() {
            witness = Some(Witness::RankDeficiency { g: g.clone(), rank, expected });
        }
        ranks.push((g, rank, expected));
    }
    Ok(Faithfulness { ranks, witness })
}

/// Decides `(A_σ)* ≅ A_ε` as left `A_ε`-modules through the `J_σ x J_ε` matrix
/// `(sum_{l in J_σ} α_l c_{ijl})`, which is the block of `P(σ, α)` with column degree `ε`.
pub fn decide_dual_component_iso(a: &GradedAlgebra, sigma: &GroupValue, cfg: &PitConfig) -> Result<Decision, DecideError> {
    let eps = a.group().identity();
    let rows = a.component(sigma)?.len();
    let cols = a.component(&eps)?.len();
    let mut info = BlockInfo { g: eps.clone(), rows, cols, status: BlockStatus::Skipped };
    if rows == 0 {
        return Ok(Decision::no(Witness::ZeroSigmaComponent, vec![info]));
    }
    if rows != cols {
        info.status = BlockStatus::DimensionMismatch;
        return Ok(Decision::no(Witness::DimensionMismatch { g: eps, rows, cols }, vec![info]));
    }
    let p = ParatrophicMatrix::new(a, sigma)?;
    let m = p.block(&eps)?;
    match is_generically_invertible(&m, cfg)? {
        Invertibility::Yes { witness, det } => {
            info.status = BlockStatus::Invertible;
            let cert = Certificate { variables: p.variables().to_vec(), alpha: witness, block_dets: vec![(eps, det)] };
            Ok(Decision { verdict: Verdict::Yes(cert), blocks: vec![info] })
        }
        Invertibility::No => {
            info.status = BlockStatus::IdenticallyZero;
            Ok(Decision::no(Witness::IdenticallyZeroDet { g: eps }, vec![info]))
        }
    }
}

/// A right module `U` over an ungraded algebra `R`: `u_i e_j = sum_l c_{ijl} u_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightModule {
    base: StructureConstants,
    dim: usize,
    action: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
}

impl RightModule {
    /// Checks `(u e_j) e_k = u (e_j e_k)` on all basis triples and `u 1 = u`.
    pub fn new(
        base: StructureConstants,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut action: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
        for (i, j, l, c) in entries {
            if i >= dim || l >= dim || j >= base.dim() {
                return Err(AlgebraError::IndexOutOfRange { i, j, l, dim });
            }
            if !c.is_zero() && action.entry((i, j)).or_default().insert(l, c).is_some() {
                return Err(AlgebraError::DuplicateConstant { i, j, l });
            }
        }
        let module = RightModule { base, dim, action };
        let report = module.validate();
        if report.passed() {
            Ok(module)
        } else {
            Err(AlgebraError::Invalid(report))
        }
    }

    /// `R` acting on itself from the right.
    pub fn regular(base: StructureConstants) -> Self {
        let dim = base.dim();
        let action = base.entries().fold(BTreeMap::new(), |mut acc: BTreeMap<_, BTreeMap<_, _>>, (i, j, l, c)| {
            acc.entry((i, j)).or_default().insert(l, c.clone());
            acc
        });
        RightModule { base, dim, action }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> &StructureConstants {
        &self.base
    }

    pub fn constant(&self, i: usize, j: usize, l: usize) -> Rational {
        self.action.get(&(i, j)).and_then(|p| p.get(&l)).cloned().unwrap_or_else(Rational::zero)
    }

    fn act(&self, u: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if let Some(p) = self.action.get(&(i, j)) {
                for (&l, c) in p {
                    out[l] += x * c;
                }
            }
        }
        out
    }

    fn act_vec(&self, u: &[Rational], r: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (j, x) in r.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(self.act(u, j)) {
                *o += x * y;
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let m = self.base.dim();
        for i in 0..self.dim {
            let mut ui = vec![Rational::zero(); self.dim];
            ui[i] = Rational::one();
            for j in 0..m {
                let uij = self.act(&ui, j);
                for k in 0..m {
                    let left = self.act(&uij, k);
                    let ejk = self.base.multiply(&self.base.basis_vector(j), &self.base.basis_vector(k)).expect("in range");
                    let right = self.act_vec(&ui, &ejk);
                    if let Some(r) = (0..self.dim).find(|&r| left[r] != right[r]) {
                        violations.push(Violation::Associativity { i, j, p: k, r });
                    }
                }
            }
            if self.act_vec(&ui, self.base.unit()) != ui {
                violations.push(Violation::UnitRight { j: i });
            }
        }
        ValidationReport { violations }
    }
}

/// Decides `U* ≅ R` as left `R`-modules: the `m x m` matrix `(sum_l α_l c_{ijl})`
/// must be generically invertible. The certificate `α_l` plays the role of `u*(u_l)`.
pub fn decide_dual_module_iso(u: &RightModule, cfg: &PitConfig) -> Result<Decision, DecideError> {
    let m = u.dim();
    if m != u.base().dim() {
        return Err(AlgebraError::DimensionMismatch(format!("module has dimension {m}, algebra {}", u.base().dim())).into());
    }
    let mut matrix = LinearFormMatrix::new((0..m).collect(), (0..m).collect(), m);
    for (&(i, j), p) in &u.action {
        let form = p.iter().fold(LinearForm::zero(), |f, (&l, c)| f.with_term(l, c.clone()));
        matrix.set(i, j, form)?;
    }
    let eps = GroupModel::trivial().identity();
    let mut info = BlockInfo { g: eps.clone(), rows: m, cols: m, status: BlockStatus::Skipped };
    match is_generically_invertible(&matrix, cfg)? {
        Invertibility::Yes { witness, det } => {
            info.status = BlockStatus::Invertible;
            let cert = Certificate { variables: (0..m).collect(), alpha: witness, block_dets: vec![(eps, det)] };
            Ok(Decision { verdict: Verdict::Yes(cert), blocks: vec![info] })
        }
        Invertibility::No => {
            info.status = BlockStatus::IdenticallyZero;
            Ok(Decision::no(Witness::IdenticallyZeroDet { g: eps }, vec![info]))
        }
    }
}

/// The three invertibility conditions, each evaluated on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremAReport {
    /// `P(σ, α)` is invertible (exact rank of the full matrix).
    pub full_invertible: bool,
    /// `|J_ε| = |J_σ|`, the `J_ε x J_σ` block is invertible and every `C_g` has full column rank.
    pub rank_condition: bool,
    /// Every block `J_{σg⁻¹} x J_g` is square and invertible.
    pub block_condition: bool,
}

impl TheoremAReport {
    pub fn consistent(&self) -> bool {
        self.full_invertible == self.rank_condition && self.rank_condition == self.block_condition
    }
}

pub fn check_theorem_a(a: &GradedAlgebra, sigma: &GroupValue, alpha: &[Rational]) -> Result<TheoremAReport, DecideError> {
    let p = ParatrophicMatrix::new(a, sigma)?;
    if alpha.len() != p.nvars() {
        return Err(MathError::VariableMismatch { expected: p.nvars(), got: alpha.len() }.into());
    }
    let full_invertible = p.full().eval_at(alpha)?.is_invertible();

    let eps = a.group().identity();
    let j_eps = a.component(&eps)?;
    let j_sigma = a.component(sigma)?;
    let degrees = a.relevant_degrees(sigma)?;
    let rank_condition = j_eps.len() == j_sigma.len()
        && p.restrict(j_eps, j_sigma).eval_at(alpha)?.is_invertible()
        && degrees.iter().try_fold(true, |ok, g| {
            Ok::<_, DecideError>(ok && build_cg(a, sigma, g)?.has_full_column_rank())
        })?;

    let mut block_condition = true;
    for g in &degrees {
        let rows = a.component(&a.partner(sigma, g)?)?;
        let cols = a.component(g)?;
        if rows.len() != cols.len() || !p.restrict(rows, cols).eval_at(alpha)?.is_invertible() {
            block_condition = false;
            break;
        }
    }
    Ok(TheoremAReport { full_invertible, rank_condition, block_condition })
}

/// Runs [`decide_sigma_frobenius`] for every σ in the support, in canonical order.
/// Any σ outside the support has `A_σ = 0` and is a `No` without computation.
pub fn scan_sigma(a: &GradedAlgebra, cfg: &PitConfig) -> Result<Vec<(GroupValue, Decision)>, DecideError> {
    a.support()
        .into_par_iter()
        .map(|s| decide_sigma_frobenius(a, &s, cfg).map(|d| (s, d)))
        .collect()
}

/// Re-checks a σ-Frobenius decision without reusing the block decomposition:
/// a `Yes` must make the full `P(σ, α)` invertible, a `No` witness is
/// recomputed from scratch.
pub fn verify_frobenius(a: &GradedAlgebra, sigma: &GroupValue, d: &Decision) -> Result<bool, DecideError> {
    let p = ParatrophicMatrix::new(a, sigma)?;
    match &d.verdict {
        Verdict::Yes(c) => {
            Ok(c.variables == p.variables() && c.alpha.len() == p.nvars() && p.full().eval_at(&c.alpha)?.is_invertible())
        }
        Verdict::No(w) => verify_witness(a, sigma, &p, w, None),
    }
}

/// Re-checks a graded-symmetric decision: a `Yes` must give a symmetric,
/// invertible `P(ε, α)`.
pub fn verify_symmetric(a: &GradedAlgebra, d: &Decision) -> Result<bool, DecideError> {
    let eps = a.group().identity();
    let p = ParatrophicMatrix::new(a, &eps)?;
    match &d.verdict {
        Verdict::Yes(c) => {
            if c.alpha.len() != p.nvars() {
                return Ok(false);
            }
            let m = p.full().eval_at(&c.alpha)?;
            Ok(m == m.transpose() && m.is_invertible())
        }
        Verdict::No(Witness::NoSymmetricSolution) => Ok(symmetry_system(a)?.nullspace_basis().is_empty()),
        Verdict::No(w) => {
            let basis = symmetry_system(a)?.nullspace_basis();
            verify_witness(a, &eps, &p, w, Some(&basis))
        }
    }
}

fn verify_witness(
    a: &GradedAlgebra,
    sigma: &GroupValue,
    p: &ParatrophicMatrix<'_>,
    w: &Witness,
    subst: Option<&[Vec<Rational>]>,
) -> Result<bool, DecideError> {
    Ok(match w {
        Witness::ZeroSigmaComponent => a.component(sigma)?.is_empty(),
        Witness::DimensionMismatch { g, rows, cols } => {
            let r = a.component(&a.partner(sigma, g)?)?.len();
            let c = a.component(g)?.len();
            r == *rows && c == *cols && r != c
        }
        Witness::IdenticallyZeroDet { g } => {
            let m = p.block(g)?;
            let m = match subst {
                Some(s) => m.substitute(s)?,
                None => m,
            };
            m.is_square() && m.symbolic_det()?.is_zero()
        }
        Witness::RankDeficiency { g, rank, expected } => {
            let cg = build_cg(a, sigma, g)?;
            cg.rank() == *rank && cg.col_labels.len() == *expected && rank < expected
        }
        Witness::NoSymmetricSolution => false,
    })
}
