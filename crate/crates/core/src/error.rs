use std::fmt;

use thiserror::Error;

/// One of the canonical sectors in which multiplication acts diagonally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// The `v_plus` axis (sum of coordinates).
    Plus,
    /// The `v_minus` axis (alternating sum), present for even `n`.
    Minus,
    /// The complex plane `(v_k, vt_k)`, `k` starting at 1.
    Pair(usize),
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Plus => write!(f, "v_plus"),
            Sector::Minus => write!(f, "v_minus"),
            Sector::Pair(k) => write!(f, "rho_{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("InvalidDimension: n = {0}, need n >= 2")]
    InvalidDimension(usize),
    #[error("DimensionMismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("NonFinite: coordinate {index} is not finite")]
    NonFinite { index: usize },
    #[error("NonPositiveNu: nu = {0}")]
    NonPositiveNu(f64),
    #[error("NotInvertible: {sector}")]
    NotInvertible { sector: Sector },
    #[error("DegenerateDirection: {which}")]
    DegenerateDirection { which: Sector },
    #[error("OutsideDomain: {reason}")]
    OutsideDomain { reason: String },
    #[error("Overflow: exponent in {sector} exceeds 700")]
    Overflow { sector: Sector },
    #[error("IndexOutOfRange: {index} not in {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("InsufficientCoefficients: need {needed}, got {got}")]
    InsufficientCoefficients { needed: usize, got: usize },
    #[error("OutsideConvergenceRegion: {sector}")]
    OutsideConvergenceRegion { sector: Sector },
    #[error("PointOnPath: projection {k}")]
    PointOnPath { k: usize },
    #[error("InvalidPath: {0}")]
    InvalidPath(String),
    #[error("NoConvergence: {sector}")]
    NoConvergence { sector: Sector },
    #[error("NonRealAssembly: imaginary part {max_imag:e}")]
    NonRealAssembly { max_imag: f64 },
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Numerical failures (as opposed to bad input or domain violations).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::PointOnPath { .. } | Error::Overflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
