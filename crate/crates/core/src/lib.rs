//! Polar n-complex numbers.
//!
//! The numbers `x_0 + h_1 x_1 + ... + h_{n-1} x_{n-1}` with
//! `h_j h_k = h_{(j+k) mod n}` form a commutative algebra for every `n >= 2`.
//! The crate provides the arithmetic, the canonical (sector) decomposition,
//! polar, exponential and trigonometric forms, the cosexponential functions,
//! elementary functions, power series, loop integrals with residues, and the
//! factorization of polynomials.
//!
//! ```
//! use polar_ncomplex::PolarNComplex;
//!
//! let h1 = PolarNComplex::unit(3, 1);
//! assert_eq!((&h1 * &h1).coords(), &[0.0, 0.0, 1.0]);
//! ```

pub mod algebra;
pub mod canonical;
pub mod cli;
pub mod cosexp;
pub mod elementary;
pub mod error;
pub mod geometry;
pub mod integration;
pub mod polynomial;
pub mod series;

pub use algebra::{PolarNComplex, RealMatrix};
pub use canonical::{CanonicalBasis, CanonicalCoords, RotatedCoords};
pub use error::{Error, Result, Sector};
pub use geometry::PolarForm;
pub use integration::{ClosedPath, Loop2, Point2};
pub use polynomial::{NPolynomial, RootSet};
pub use series::{ConvergenceRadii, PowerSeries};
