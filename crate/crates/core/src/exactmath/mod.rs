//! Exact arithmetic kernel: rationals, scalar matrices, sparse multivariate
//! polynomials and matrices of linear forms.

mod linform;
mod matrix;
mod pit;
mod poly;

use std::str::FromStr;

use thiserror::Error;

pub use linform::{LinearForm, LinearFormMatrix};
pub use matrix::Matrix;
pub use pit::{common_nonzero_point, is_generically_invertible, structural_rank, Invertibility, PitConfig, SamplePoints, Strategy};
pub use poly::MultiPoly;

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} variable values, got {got}")]
    VariableMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid identity-testing configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational, MathError> {
    let t = text.trim();
    let err = || MathError::ParseRational(text.to_string());
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(err());
    }
    let r = Rational::from_str(t).map_err(|_| err())?;
    Ok(r)
}

/// Renders as `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
