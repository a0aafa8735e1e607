//! The value type and its ring operations.
//!
//! A [`PolarNComplex`] is an element of the real group algebra of the cyclic
//! group of order `n`: coordinates `x_0..x_{n-1}` on the bases
//! `1, h_1, ..., h_{n-1}` with `h_j h_k = h_{(j+k) mod n}`. Products are cyclic
//! convolutions; the determinant, amplitude and inverse go through the
//! canonical sectors (see [`crate::canonical`]).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::canonical::{self, CanonicalCoords};
use crate::error::{Error, Result, Sector};

/// Relative threshold under which a canonical sector counts as zero.
pub const NODAL_REL_TOL: f64 = 1e-12;
/// Absolute floor for the same test.
pub const NODAL_ABS_TOL: f64 = 1e-300;

/// `true` when a sector magnitude is negligible relative to `scale`.
pub(crate) fn is_nodal(magnitude: f64, scale: f64) -> bool {
    magnitude <= NODAL_REL_TOL * scale || magnitude <= NODAL_ABS_TOL
}

#[derive(Clone, PartialEq)]
pub struct PolarNComplex {
    coords: Vec<f64>,
}

impl PolarNComplex {
    /// Builds a number from its coordinates; `n` is the slice length.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidDimension(coords.len()));
        }
        if let Some(index) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { coords })
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    /// Internal constructor for results of arithmetic on valid values.
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(coords.len() >= 2);
        Self { coords }
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 2, "dimension must be at least 2");
        Self::from_raw(vec![0.0; n])
    }

    pub fn one(n: usize) -> Self {
        Self::real(n, 1.0)
    }

    /// `x * 1`, i.e. only the `x_0` coordinate set.
    pub fn real(n: usize, x: f64) -> Self {
        let mut u = Self::zero(n);
        u.coords[0] = x;
        u
    }

    /// The basis unit `h_k` (`h_0 = 1`).
    pub fn unit(n: usize, k: usize) -> Self {
        assert!(k < n, "basis index {k} out of range for n = {n}");
        let mut u = Self::zero(n);
        u.coords[k] = 1.0;
        u
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|x| x.is_finite())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_raw(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_raw(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Cyclic convolution: component `k` is `sum_l x_l x'_{(k-l) mod n}`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n();
        let mut out = vec![0.0; n];
        for (l, &a) in self.coords.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coords.iter().enumerate() {
                let k = if l + j >= n { l + j - n } else { l + j };
                out[k] += a * b;
            }
        }
        Ok(Self::from_raw(out))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_raw(self.coords.iter().map(|x| x * s).collect())
    }

    /// Integer power by repeated squaring (non-negative exponents only).
    pub fn powu(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean norm of the coordinates.
    pub fn modulus(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn to_canonical(&self) -> CanonicalCoords {
        canonical::to_canonical(self)
    }

    /// Max absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n(), other.n(), "dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `|self - other| / max(|other|, floor)`.
    pub fn rel_diff(&self, other: &Self, floor: f64) -> f64 {
        let diff = self.try_sub(other).expect("dimension mismatch").modulus();
        diff / other.modulus().max(floor)
    }
}

impl fmt::Debug for PolarNComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolarNComplex{:?}", self.coords)
    }
}

impl fmt::Display for PolarNComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

// Operator forms panic on dimension mismatch; use the `try_*` methods when
// the dimensions are not known to agree.
impl Add for &PolarNComplex {
    type Output = PolarNComplex;
    fn add(self, rhs: Self) -> PolarNComplex {
        self.try_add(rhs).expect("dimension mismatch")
    }
}

impl Sub for &PolarNComplex {
    type Output = PolarNComplex;
    fn sub(self, rhs: Self) -> PolarNComplex {
        self.try_sub(rhs).expect("dimension mismatch")
    }
}

impl Mul for &PolarNComplex {
    type Output = PolarNComplex;
    fn mul(self, rhs: Self) -> PolarNComplex {
        self.try_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &PolarNComplex {
    type Output = PolarNComplex;
    fn neg(self) -> PolarNComplex {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolarNComplex {
            type Output = PolarNComplex;
            fn $m(self, rhs: Self) -> PolarNComplex {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolarNComplex {
    type Output = PolarNComplex;
    fn neg(self) -> PolarNComplex {
        self.scale(-1.0)
    }
}

pub fn add(u: &PolarNComplex, u2: &PolarNComplex) -> Result<PolarNComplex> {
    u.try_add(u2)
}

pub fn mul(u: &PolarNComplex, u2: &PolarNComplex) -> Result<PolarNComplex> {
    u.try_mul(u2)
}

pub fn modulus(u: &PolarNComplex) -> f64 {
    u.modulus()
}

/// Determinant of the circulant, computed from the canonical product form
/// `v+ [v-] prod_k (v_k^2 + vt_k^2)`.
pub fn nu(u: &PolarNComplex) -> f64 {
    let c = u.to_canonical();
    let mut p = c.v_plus;
    if let Some(m) = c.v_minus {
        p *= m;
    }
    for z in &c.pairs {
        p *= z.norm_sqr();
    }
    p
}

/// `nu^(1/n)`, defined only for positive `nu`.
pub fn amplitude(u: &PolarNComplex) -> Result<f64> {
    let v = nu(u);
    if v > 0.0 {
        Ok(v.powf(1.0 / u.n() as f64))
    } else {
        Err(Error::NonPositiveNu(v))
    }
}

/// First sector that vanishes (within the nodal tolerance), if any.
pub fn nodal_sector(u: &PolarNComplex) -> Option<Sector> {
    nodal_sector_of(&u.to_canonical(), u.modulus())
}

pub(crate) fn nodal_sector_of(c: &CanonicalCoords, scale: f64) -> Option<Sector> {
    if is_nodal(c.v_plus.abs(), scale) {
        return Some(Sector::Plus);
    }
    if let Some(m) = c.v_minus {
        if is_nodal(m.abs(), scale) {
            return Some(Sector::Minus);
        }
    }
    c.pairs
        .iter()
        .position(|z| is_nodal(z.norm(), scale))
        .map(|i| Sector::Pair(i + 1))
}

/// Multiplicative inverse, by inverting each canonical sector.
pub fn inverse(u: &PolarNComplex) -> Result<PolarNComplex> {
    let c = u.to_canonical();
    if let Some(sector) = nodal_sector_of(&c, u.modulus()) {
        return Err(Error::NotInvertible { sector });
    }
    let inv = CanonicalCoords {
        n: c.n,
        v_plus: 1.0 / c.v_plus,
        v_minus: c.v_minus.map(|m| 1.0 / m),
        pairs: c.pairs.iter().map(|z| z.inv()).collect(),
    };
    Ok(canonical::from_canonical(&inv))
}

/// Dense row-major real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// `M x` for a column vector.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `x^T M` for a row vector.
    pub fn vec_mul(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, x.len(), "shape mismatch");
        let mut out = vec![0.0; self.cols];
        for (i, xi) in x.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += xi * a;
            }
        }
        out
    }

    /// Determinant by LU with partial pivoting.
    pub fn determinant(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
                .unwrap();
            if a[pivot * n + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for i in col + 1..n {
                let f = a[i * n + col] / p;
                if f != 0.0 {
                    for j in col..n {
                        a[i * n + j] -= f * a[col * n + j];
                    }
                }
            }
        }
        det
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Circulant representation: first row `x_0..x_{n-1}`, each following row
/// rotated right by one. Products of numbers map to matrix products.
pub fn to_matrix(u: &PolarNComplex) -> RealMatrix {
    let n = u.n();
    let mut m = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = u.coords[(j + n - i) % n];
        }
    }
    m
}
