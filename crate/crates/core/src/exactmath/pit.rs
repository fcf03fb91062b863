//! Deciding whether a matrix of linear forms has a non-identically-zero
//! determinant, with an explicit rational witness point when it does.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LinearFormMatrix, MathError, MultiPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Structural pre-check, then random sampling, then symbolic fallback.
    #[default]
    Auto,
    /// Random sampling, then symbolic fallback.
    Randomized,
    /// Symbolic determinant only.
    Symbolic,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::Randomized => "randomized",
            Strategy::Symbolic => "symbolic",
        })
    }
}

impl FromStr for Strategy {
    type Err = MathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "randomized" => Ok(Strategy::Randomized),
            "symbolic" => Ok(Strategy::Symbolic),
            other => Err(MathError::InvalidConfig(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PitConfig {
    pub strategy: Strategy,
    pub seed: u64,
    pub trials: u32,
    pub sample_bound: u64,
}

impl Default for PitConfig {
    fn default() -> Self {
        PitConfig { strategy: Strategy::Auto, seed: 0, trials: 4, sample_bound: 1 << 16 }
    }
}

impl PitConfig {
    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Checks `trials >= 1` and that the sampling box is wider than `size`.
    pub fn check(&self, size: usize) -> Result<(), MathError> {
        if self.trials == 0 {
            return Err(MathError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.sample_bound <= size as u64 {
            return Err(MathError::InvalidConfig(format!(
                "sample bound {} must exceed the matrix size {size}",
                self.sample_bound
            )));
        }
        Ok(())
    }

    pub fn points(&self, nvars: usize) -> SamplePoints {
        SamplePoints::new(nvars, self.seed, self.sample_bound)
    }
}

/// The sampling sequence used by every randomized test.
///
/// The first point is all ones; each later point draws its coordinates in
/// variable order, uniformly from `[1, bound]`, from a ChaCha8 stream
/// seeded with `seed`.
pub struct SamplePoints {
    nvars: usize,
    bound: u64,
    first: bool,
    rng: ChaCha8Rng,
}

impl SamplePoints {
    pub fn new(nvars: usize, seed: u64, bound: u64) -> Self {
        SamplePoints { nvars, bound: bound.max(1), first: true, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Iterator for SamplePoints {
    type Item = Vec<Rational>;

    fn next(&mut self) -> Option<Self::Item> {
        if std::mem::take(&mut self.first) {
            return Some(vec![Rational::one(); self.nvars]);
        }
        Some((0..self.nvars).map(|_| super::int(self.rng.gen_range(1..=self.bound) as i64)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invertibility {
    /// The determinant is not identically zero; the matrix is invertible at `witness`.
    Yes { witness: Vec<Rational>, det: Rational },
    /// The determinant is identically zero.
    No,
}

impl Invertibility {
    pub fn is_yes(&self) -> bool {
        matches!(self, Invertibility::Yes { .. })
    }
}

/// Maximum matching size of the bipartite graph of nonzero entries.
///
/// If it is smaller than the matrix size every term of the Leibniz
/// expansion vanishes, so the determinant is identically zero.
pub fn structural_rank(m: &LinearFormMatrix) -> usize {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m.rows()];
    for (r, c, _) in m.entries() {
        adj[r].push(c);
    }
    let mut match_col: Vec<Option<usize>> = vec![None; m.cols()];
    let mut size = 0;
    for r in 0..m.rows() {
        let mut seen = vec![false; m.cols()];
        if augment(r, &adj, &mut match_col, &mut seen) {
            size += 1;
        }
    }
    size
}

fn augment(r: usize, adj: &[Vec<usize>], match_col: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &c in &adj[r] {
        if std::mem::replace(&mut seen[c], true) {
            continue;
        }
        if match_col[c].is_none_or(|other| augment(other, adj, match_col, seen)) {
            match_col[c] = Some(r);
            return true;
        }
    }
    false
}

/// Exact generic-invertibility test.
///
/// The answer never depends on luck: a `Yes` carries a point verified by an
/// exact determinant, and a `No` is only returned once the symbolic
/// determinant (or a structural argument) shows it vanishes identically.
/// The same configuration always yields the same witness.
pub fn is_generically_invertible(m: &LinearFormMatrix, cfg: &PitConfig) -> Result<Invertibility, MathError> {
    if !m.is_square() {
        return Err(MathError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    cfg.check(m.rows())?;
    if m.rows() == 0 {
        return Ok(Invertibility::Yes { witness: vec![Rational::one(); m.nvars()], det: Rational::one() });
    }
    if cfg.strategy == Strategy::Auto && structural_rank(m) < m.rows() {
        return Ok(Invertibility::No);
    }
    if cfg.strategy != Strategy::Symbolic {
        for point in cfg.points(m.nvars()).take(cfg.trials as usize) {
            let det = m.eval_at(&point)?.determinant()?;
            if !det.is_zero() {
                return Ok(Invertibility::Yes { witness: point, det });
            }
        }
    }
    let det = m.symbolic_det()?;
    if det.is_zero() {
        return Ok(Invertibility::No);
    }
    let witness = common_nonzero_point(std::slice::from_ref(&det));
    let value = m.eval_at(&witness)?.determinant()?;
    debug_assert!(!value.is_zero());
    Ok(Invertibility::Yes { witness, det: value })
}

/// A deterministic point with positive integer coordinates at which none of
/// the given nonzero polynomials vanishes.
///
/// Variables are fixed one at a time to the smallest value in
/// `1..=D+1` (with `D` the summed degree in that variable) that keeps every
/// polynomial nonzero; at most `D` values can fail, so one always works.
pub fn common_nonzero_point(polys: &[MultiPoly]) -> Vec<Rational> {
    let Some(nvars) = polys.first().map(|p| p.nvars()) else {
        return Vec::new();
    };
    assert!(polys.iter().all(|p| !p.is_zero() && p.nvars() == nvars), "polynomials must be nonzero over one variable set");
    let mut current: Vec<MultiPoly> = polys.to_vec();
    let mut point = Vec::with_capacity(nvars);
    for var in 0..nvars {
        let bound: u32 = current.iter().map(|p| p.degree_in(var)).sum();
        let (value, next) = (1..=bound as i64 + 1)
            .map(super::int)
            .find_map(|v| {
                let subbed: Vec<MultiPoly> = current.iter().map(|p| p.substitute(var, &v)).collect();
                subbed.iter().all(|p| !p.is_zero()).then_some((v, subbed))
            })
            .expect("a non-vanishing value exists among D+1 candidates");
        point.push(value);
        current = next;
    }
    point
}
