//! Canonical sector coordinates and the idempotent basis.
//!
//! `to_canonical` is a real DFT: `v_plus = sum x_p`, `v_minus = sum (-1)^p x_p`
//! (even `n`), and `v_k + i vt_k = sum x_p exp(2 pi i k p / n)` for
//! `k = 1..=K`, `K = (n - 1) / 2`. In these coordinates multiplication is
//! component-wise: real on `v_plus`/`v_minus`, complex on each pair.

use std::collections::HashMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::algebra::{to_matrix, PolarNComplex, RealMatrix};

/// Number of complex sector pairs, `floor((n - 1) / 2)`.
#[inline]
pub fn pair_count(n: usize) -> usize {
    (n - 1) / 2
}

/// Whether the `v_minus` sector exists.
#[inline]
pub fn has_minus(n: usize) -> bool {
    n.is_multiple_of(2)
}

/// `cos(2 pi k p / n)` and `sin(...)` for all `k, p < n`.
pub(crate) struct TrigTable {
    n: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigTable {
    fn build(n: usize) -> Self {
        let mut cos = Vec::with_capacity(n * n);
        let mut sin = Vec::with_capacity(n * n);
        for k in 0..n {
            for p in 0..n {
                let (c, s) = unit_root((k * p) % n, n);
                cos.push(c);
                sin.push(s);
            }
        }
        Self { n, cos, sin }
    }

    #[inline]
    pub(crate) fn cos(&self, k: usize, p: usize) -> f64 {
        self.cos[(k % self.n) * self.n + p % self.n]
    }

    #[inline]
    pub(crate) fn sin(&self, k: usize, p: usize) -> f64 {
        self.sin[(k % self.n) * self.n + p % self.n]
    }
}

/// `(cos, sin)` of `2 pi j / n`, reduced to the first octant so that values
/// at multiples of `pi/4` and symmetric angles come out exactly symmetric.
fn unit_root(j: usize, n: usize) -> (f64, f64) {
    // angle = (pi/2) * (q + r/n) with a = 4j = q n + r
    let a = 4 * j;
    let (q, r) = (a / n, a % n);
    let (c0, s0) = if 2 * r <= n {
        first_octant(r, n)
    } else {
        let (c, s) = first_octant(n - r, n);
        (s, c)
    };
    match q % 4 {
        0 => (c0, s0),
        1 => (-s0, c0),
        2 => (-c0, -s0),
        _ => (s0, -c0),
    }
}

/// `(cos t, sin t)` for `t = (pi/2) r/n <= pi/4`, exact at 30 and 45 degrees.
fn first_octant(r: usize, n: usize) -> (f64, f64) {
    if 3 * r == n {
        return (0.75f64.sqrt(), 0.5);
    }
    if 2 * r == n {
        return (FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    }
    let t = 0.5 * PI * r as f64 / n as f64;
    (t.cos(), t.sin())
}

pub(crate) fn trig_table(n: usize) -> Arc<TrigTable> {
    static TABLES: OnceLock<RwLock<HashMap<usize, Arc<TrigTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.read().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let mut w = tables.write().unwrap();
    Arc::clone(w.entry(n).or_insert_with(|| Arc::new(TrigTable::build(n))))
}

/// Sector image of a number. `pairs[k - 1]` holds `v_k + i vt_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalCoords {
    pub n: usize,
    pub v_plus: f64,
    pub v_minus: Option<f64>,
    pub pairs: Vec<Complex64>,
}

impl CanonicalCoords {
    /// All-zero sectors for dimension `n`.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            v_plus: 0.0,
            v_minus: has_minus(n).then_some(0.0),
            pairs: vec![Complex64::new(0.0, 0.0); pair_count(n)],
        }
    }

    /// Checks the shape invariants (pair count, presence of `v_minus`).
    pub fn is_well_formed(&self) -> bool {
        self.n >= 2
            && self.pairs.len() == pair_count(self.n)
            && self.v_minus.is_some() == has_minus(self.n)
    }

    /// Applies `real` to the real sectors and `pair` to each complex sector.
    pub fn map(&self, real: impl Fn(f64) -> f64, pair: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            n: self.n,
            v_plus: real(self.v_plus),
            v_minus: self.v_minus.map(&real),
            pairs: self.pairs.iter().map(|&z| pair(z)).collect(),
        }
    }

    /// Sector-wise product (the image of the n-complex product).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            v_plus: self.v_plus * other.v_plus,
            v_minus: self.v_minus.zip(other.v_minus).map(|(a, b)| a * b),
            pairs: self.pairs.iter().zip(&other.pairs).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            v_plus: self.v_plus + other.v_plus,
            v_minus: self.v_minus.zip(other.v_minus).map(|(a, b)| a + b),
            pairs: self.pairs.iter().zip(&other.pairs).map(|(a, b)| a + b).collect(),
        }
    }

    /// Radii `rho_k = |v_k + i vt_k|`.
    pub fn rho_k(&self) -> Vec<f64> {
        self.pairs.iter().map(|z| z.norm()).collect()
    }
}

pub fn to_canonical(u: &PolarNComplex) -> CanonicalCoords {
    let n = u.n();
    let x = u.coords();
    let t = trig_table(n);
    let v_plus = x.iter().sum();
    let v_minus = has_minus(n).then(|| {
        x.iter()
            .enumerate()
            .map(|(p, xp)| if p % 2 == 0 { *xp } else { -xp })
            .sum()
    });
    let pairs = (1..=pair_count(n))
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            for (p, xp) in x.iter().enumerate() {
                re += xp * t.cos(k, p);
                im += xp * t.sin(k, p);
            }
            Complex64::new(re, im)
        })
        .collect();
    CanonicalCoords {
        n,
        v_plus,
        v_minus,
        pairs,
    }
}

/// Inverse of [`to_canonical`], evaluated as the basis expansion
/// `e+ v+ + e- v- + sum (e_k v_k + et_k vt_k)`.
pub fn from_canonical(c: &CanonicalCoords) -> PolarNComplex {
    assert!(c.is_well_formed(), "malformed canonical coordinates");
    let n = c.n;
    let t = trig_table(n);
    let inv_n = 1.0 / n as f64;
    let coords = (0..n)
        .map(|p| {
            let mut x = c.v_plus * inv_n;
            if let Some(m) = c.v_minus {
                x += if p % 2 == 0 { m } else { -m } * inv_n;
            }
            for (i, z) in c.pairs.iter().enumerate() {
                let k = i + 1;
                x += 2.0 * inv_n * (z.re * t.cos(k, p) + z.im * t.sin(k, p));
            }
            x
        })
        .collect();
    PolarNComplex::from_raw(coords)
}

/// The idempotent basis `e+, e-, (e_k, et_k)`.
#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    pub e_plus: PolarNComplex,
    pub e_minus: Option<PolarNComplex>,
    pub pairs: Vec<(PolarNComplex, PolarNComplex)>,
}

impl CanonicalBasis {
    /// `e+ + e- + sum e_k`, which is the unit.
    pub fn idempotent_sum(&self) -> PolarNComplex {
        let mut s = self.e_plus.clone();
        if let Some(m) = &self.e_minus {
            s = &s + m;
        }
        for (e, _) in &self.pairs {
            s = &s + e;
        }
        s
    }
}

pub fn basis(n: usize) -> CanonicalBasis {
    assert!(n >= 2, "dimension must be at least 2");
    let t = trig_table(n);
    let inv_n = 1.0 / n as f64;
    let e_plus = PolarNComplex::from_raw(vec![inv_n; n]);
    let e_minus = has_minus(n).then(|| {
        PolarNComplex::from_raw(
            (0..n).map(|p| if p % 2 == 0 { inv_n } else { -inv_n }).collect(),
        )
    });
    let pairs = (1..=pair_count(n))
        .map(|k| {
            let e = (0..n).map(|p| 2.0 * inv_n * t.cos(k, p)).collect();
            let et = (0..n).map(|p| 2.0 * inv_n * t.sin(k, p)).collect();
            (PolarNComplex::from_raw(e), PolarNComplex::from_raw(et))
        })
        .collect();
    CanonicalBasis {
        e_plus,
        e_minus,
        pairs,
    }
}

/// `et_k` alone, `k` in `1..=K`.
pub fn e_tilde(n: usize, k: usize) -> PolarNComplex {
    assert!((1..=pair_count(n)).contains(&k), "pair index {k} out of range");
    let t = trig_table(n);
    PolarNComplex::from_raw((0..n).map(|p| 2.0 / n as f64 * t.sin(k, p)).collect())
}

/// Coordinates along the orthonormal rotated axes.
#[derive(Clone, Debug, PartialEq)]
pub struct RotatedCoords {
    pub xi_plus: f64,
    pub xi_minus: Option<f64>,
    /// `(xi_k, eta_k)` for `k = 1..=K`.
    pub pairs: Vec<(f64, f64)>,
}

impl RotatedCoords {
    pub fn norm_sqr(&self) -> f64 {
        self.xi_plus * self.xi_plus
            + self.xi_minus.map_or(0.0, |m| m * m)
            + self.pairs.iter().map(|(a, b)| a * a + b * b).sum::<f64>()
    }
}

pub fn rotated(u: &PolarNComplex) -> RotatedCoords {
    let c = u.to_canonical();
    let n = c.n as f64;
    let s1 = 1.0 / n.sqrt();
    let s2 = (2.0 / n).sqrt();
    RotatedCoords {
        xi_plus: c.v_plus * s1,
        xi_minus: c.v_minus.map(|m| m * s1),
        pairs: c.pairs.iter().map(|z| (z.re * s2, z.im * s2)).collect(),
    }
}

/// The orthogonal matrix `T` whose rows are the rotated axes, ordered
/// `xi+, [xi-], xi_1, eta_1, ..., xi_K, eta_K`.
pub fn rotation_matrix(n: usize) -> RealMatrix {
    let t = trig_table(n);
    let s1 = 1.0 / (n as f64).sqrt();
    let s2 = (2.0 / n as f64).sqrt();
    let mut rows = vec![vec![s1; n]];
    if has_minus(n) {
        rows.push((0..n).map(|p| if p % 2 == 0 { s1 } else { -s1 }).collect());
    }
    for k in 1..=pair_count(n) {
        rows.push((0..n).map(|p| s2 * t.cos(k, p)).collect());
        rows.push((0..n).map(|p| s2 * t.sin(k, p)).collect());
    }
    RealMatrix::from_rows(rows)
}

/// `diag(v+, [v-], V_1, ..., V_K)` with `V_k = [[v_k, vt_k], [-vt_k, v_k]]`.
///
/// This equals `T U T^T` for the circulant `U = to_matrix(u)` and the
/// rotation `T`.
pub fn block_diagonalize(u: &PolarNComplex) -> RealMatrix {
    let c = u.to_canonical();
    let n = c.n;
    let mut m = RealMatrix::zeros(n, n);
    m[(0, 0)] = c.v_plus;
    let mut at = 1;
    if let Some(v) = c.v_minus {
        m[(1, 1)] = v;
        at = 2;
    }
    for z in &c.pairs {
        m[(at, at)] = z.re;
        m[(at, at + 1)] = z.im;
        m[(at + 1, at)] = -z.im;
        m[(at + 1, at + 1)] = z.re;
        at += 2;
    }
    m
}

/// `T U T^T`, computed densely; used as the oracle for [`block_diagonalize`].
pub fn conjugated_matrix(u: &PolarNComplex) -> RealMatrix {
    let t = rotation_matrix(u.n());
    t.matmul(&to_matrix(u)).matmul(&t.transpose())
}
