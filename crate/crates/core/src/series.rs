//! Power series `sum a_l u^l` with n-complex coefficients.
//!
//! In canonical coordinates a series splits into one real series per real
//! sector and one ordinary complex series per pair sector, so convergence is
//! governed by a separate radius in each sector. The region of convergence is
//! the cylinder `|v+| < c+, [|v-| < c-,] rho_k < c_k`; the ball of modulus
//! `c = min(...) / sqrt(n)` sits inside it.

use num_complex::Complex64;

use crate::algebra::{inverse, PolarNComplex};
use crate::canonical::{from_canonical, CanonicalCoords};
use crate::error::{Error, Result, Sector};

/// Number of trailing ratios used by default when estimating a radius.
pub const DEFAULT_TAIL: usize = 16;
/// Ratios above this are reported as an infinite radius.
pub const RADIUS_CAP: f64 = 1e12;

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    n: usize,
    coeffs: Vec<PolarNComplex>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<PolarNComplex>) -> Result<Self> {
        let first = coeffs.first().ok_or(Error::InsufficientCoefficients { needed: 1, got: 0 })?;
        let n = first.n();
        if let Some(bad) = coeffs.iter().find(|a| a.n() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.n(),
            });
        }
        Ok(Self { n, coeffs })
    }

    /// Series with real coefficients `f(l) * 1`, `l < len`.
    pub fn real(n: usize, len: usize, mut f: impl FnMut(usize) -> f64) -> Self {
        Self {
            n,
            coeffs: (0..len).map(|l| PolarNComplex::real(n, f(l))).collect(),
        }
    }

    /// Truncated exponential series, `len` terms.
    pub fn exp(n: usize, len: usize) -> Self {
        let mut c = 1.0;
        Self::real(n, len, |l| {
            if l > 0 {
                c /= l as f64;
            }
            c
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[PolarNComplex] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Canonical image of each coefficient: `plus[l] = A_{l+}`,
/// `minus[l] = A_{l-}`, `pairs[k-1][l] = A_{lk} + i At_{lk}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorCoefficients {
    pub n: usize,
    pub plus: Vec<f64>,
    pub minus: Option<Vec<f64>>,
    pub pairs: Vec<Vec<Complex64>>,
}

impl SectorCoefficients {
    pub fn from_coeffs(coeffs: &[PolarNComplex]) -> Self {
        let n = coeffs.first().map_or(2, PolarNComplex::n);
        let canon: Vec<CanonicalCoords> = coeffs.iter().map(PolarNComplex::to_canonical).collect();
        let k_count = canon.first().map_or(0, |c| c.pairs.len());
        Self {
            n,
            plus: canon.iter().map(|c| c.v_plus).collect(),
            minus: canon
                .first()
                .and_then(|c| c.v_minus)
                .map(|_| canon.iter().map(|c| c.v_minus.unwrap()).collect()),
            pairs: (0..k_count)
                .map(|i| canon.iter().map(|c| c.pairs[i]).collect())
                .collect(),
        }
    }

    pub fn from_series(s: &PowerSeries) -> Self {
        Self::from_coeffs(&s.coeffs)
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    /// Canonical coordinates of coefficient `l`.
    pub fn canonical(&self, l: usize) -> CanonicalCoords {
        CanonicalCoords {
            n: self.n,
            v_plus: self.plus[l],
            v_minus: self.minus.as_ref().map(|m| m[l]),
            pairs: self.pairs.iter().map(|p| p[l]).collect(),
        }
    }

    /// Maps every coefficient back through the idempotent basis.
    pub fn recombine(&self) -> Vec<PolarNComplex> {
        (0..self.len()).map(|l| from_canonical(&self.canonical(l))).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRadii {
    pub c: f64,
    pub c_plus: f64,
    pub c_minus: Option<f64>,
    pub c_k: Vec<f64>,
}

impl ConvergenceRadii {
    fn smallest(&self) -> f64 {
        self.c_k
            .iter()
            .chain(self.c_minus.iter())
            .fold(self.c_plus, |a, &b| a.min(b))
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Least-squares slope of `ln r` against `ln l`.
fn log_slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let (mx, my) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x / k, b + y / k));
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in points {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx > 0.0 {
        sxy / sxx
    } else {
        0.0
    }
}

/// Radius of one sector from the magnitudes `|A_l|`.
///
/// The median of the last `tail` ratios `|A_l| / |A_{l+1}|` estimates the
/// limit. Ratios that keep growing like a power of `l` (as for `1/l!`) mean
/// the limit is infinite even though every finite ratio is modest, so a
/// ratio sequence with log-log slope at least 1/4 is reported as infinite.
fn sector_radius(mags: &[f64], tail: usize) -> f64 {
    let start = mags.len() - tail - 1;
    let mut ratios = Vec::with_capacity(tail);
    let mut pts = Vec::with_capacity(tail);
    for l in start..start + tail {
        let r = mags[l] / mags[l + 1];
        if r.is_nan() {
            continue;
        }
        ratios.push(r);
        if r.is_finite() && r > 0.0 {
            pts.push((((l + 1) as f64).ln(), r.ln()));
        }
    }
    if ratios.is_empty() {
        return f64::INFINITY;
    }
    let m = median(ratios);
    if m > RADIUS_CAP || (pts.len() >= 3 && log_slope(&pts) >= 0.25) {
        f64::INFINITY
    } else {
        m
    }
}

/// Sector radii and the spherical radius estimated from the last `tail`
/// coefficient ratios.
pub fn radii(s: &PowerSeries, tail: usize) -> Result<ConvergenceRadii> {
    if tail < 2 {
        return Err(Error::InvalidArgument(format!("tail = {tail}, need at least 2")));
    }
    if s.len() < tail + 1 {
        return Err(Error::InsufficientCoefficients {
            needed: tail + 1,
            got: s.len(),
        });
    }
    let sc = SectorCoefficients::from_series(s);
    let real = |v: &[f64]| sector_radius(&v.iter().map(|x| x.abs()).collect::<Vec<_>>(), tail);
    let mut r = ConvergenceRadii {
        c: 0.0,
        c_plus: real(&sc.plus),
        c_minus: sc.minus.as_deref().map(real),
        c_k: sc
            .pairs
            .iter()
            .map(|p| sector_radius(&p.iter().map(|z| z.norm()).collect::<Vec<_>>(), tail))
            .collect(),
    };
    r.c = r.smallest() / (s.n as f64).sqrt();
    Ok(r)
}

/// Direct Horner evaluation of the stored coefficients.
pub fn horner(s: &PowerSeries, u: &PolarNComplex) -> Result<PolarNComplex> {
    if u.n() != s.n {
        return Err(Error::DimensionMismatch {
            left: s.n,
            right: u.n(),
        });
    }
    let mut acc = PolarNComplex::zero(s.n);
    for a in s.coeffs.iter().rev() {
        acc = &(&acc * u) + a;
    }
    Ok(acc)
}

/// Sums the series sector by sector.
///
/// Lists of more than [`DEFAULT_TAIL`] coefficients are read as truncations
/// of an infinite series, and `u` must then lie inside the estimated
/// cylinder of convergence. Shorter lists are polynomials and converge
/// everywhere. Summation in a sector stops once three consecutive terms fall
/// below `tol` relative to the partial sum.
pub fn evaluate(s: &PowerSeries, u: &PolarNComplex, tol: f64) -> Result<PolarNComplex> {
    if u.n() != s.n {
        return Err(Error::DimensionMismatch {
            left: s.n,
            right: u.n(),
        });
    }
    let c = u.to_canonical();
    if s.len() > DEFAULT_TAIL {
        let r = radii(s, DEFAULT_TAIL)?;
        if c.v_plus.abs() >= r.c_plus {
            return Err(Error::OutsideConvergenceRegion { sector: Sector::Plus });
        }
        if let (Some(v), Some(cm)) = (c.v_minus, r.c_minus) {
            if v.abs() >= cm {
                return Err(Error::OutsideConvergenceRegion { sector: Sector::Minus });
            }
        }
        if let Some(i) = c.pairs.iter().zip(&r.c_k).position(|(z, ck)| z.norm() >= *ck) {
            return Err(Error::OutsideConvergenceRegion {
                sector: Sector::Pair(i + 1),
            });
        }
    }
    let sc = SectorCoefficients::from_series(s);
    let real = |coef: &[f64], v: f64| {
        sum_sector(coef.iter().map(|a| Complex64::new(*a, 0.0)), Complex64::new(v, 0.0), tol).re
    };
    let out = CanonicalCoords {
        n: s.n,
        v_plus: real(&sc.plus, c.v_plus),
        v_minus: sc.minus.as_deref().zip(c.v_minus).map(|(m, v)| real(m, v)),
        pairs: sc
            .pairs
            .iter()
            .zip(&c.pairs)
            .map(|(p, z)| sum_sector(p.iter().copied(), *z, tol))
            .collect(),
    };
    Ok(from_canonical(&out))
}

fn sum_sector(coef: impl Iterator<Item = Complex64>, z: Complex64, tol: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    let mut quiet = 0;
    for a in coef {
        let term = a * power;
        sum += term;
        power *= z;
        if term.norm() < tol * sum.norm().max(1.0) {
            quiet += 1;
            if quiet == 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    sum
}

/// Coefficients of the expansion around `u0`:
/// `c_k = sum_l C(k+l, k) a_{k+l} u0^l` for `k = 0..=degree`.
/// `degree` is clamped to the last stored index.
pub fn recenter(s: &PowerSeries, u0: &PolarNComplex, degree: usize) -> Result<PowerSeries> {
    if u0.n() != s.n {
        return Err(Error::DimensionMismatch {
            left: s.n,
            right: u0.n(),
        });
    }
    let len = s.len();
    let degree = degree.min(len - 1);
    let mut powers = vec![PolarNComplex::one(s.n)];
    for l in 1..len {
        powers.push(&powers[l - 1] * u0);
    }
    let coeffs = (0..=degree)
        .map(|k| {
            let mut acc = PolarNComplex::zero(s.n);
            let mut binom = 1.0;
            for l in 0..len - k {
                if l > 0 {
                    binom *= (k + l) as f64 / l as f64;
                }
                acc = &acc + &(&s.coeffs[k + l] * &powers[l]).scale(binom);
            }
            acc
        })
        .collect();
    PowerSeries::new(coeffs)
}

/// Default step for [`derivative_fd`], `1e-6 * max(1, |u0|)`.
pub fn default_step(u0: &PolarNComplex) -> f64 {
    1e-6 * u0.modulus().max(1.0)
}

/// `[f(u0 + h dir) - f(u0 - h dir)] / (2 h dir)`.
pub fn derivative_fd<F>(f: F, u0: &PolarNComplex, dir: &PolarNComplex, h: f64) -> Result<PolarNComplex>
where
    F: Fn(&PolarNComplex) -> PolarNComplex,
{
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step h = {h} must be positive")));
    }
    let denom = inverse(&dir.scale(2.0 * h))?;
    let step = dir.scale(h);
    let diff = &f(&(u0 + &step)) - &f(&(u0 - &step));
    Ok(&diff * &denom)
}

/// Residuals of the Riemann-type relations at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct CRReport {
    pub point: PolarNComplex,
    /// Largest first-order spread, `max(per_relation)`.
    pub max_residual: f64,
    /// Spread of `dP_{(c+l) mod n} / dx_l` over `l`, for each class `c`.
    pub per_relation: Vec<f64>,
    /// Largest spread of `d2P_k / dx_a dx_b` within a class `k - a - b mod n`.
    pub second_order_max: f64,
}

/// Checks that the partial derivatives of the coordinate functions of `f`
/// satisfy the relations forced by `df/dx_l = h_l f'`, using central
/// differences with step `h`.
pub fn cr_check<F>(f: F, u0: &PolarNComplex, h: f64) -> CRReport
where
    F: Fn(&PolarNComplex) -> PolarNComplex,
{
    let n = u0.n();
    let shifted = |moves: &[(usize, f64)]| {
        let mut x = u0.coords().to_vec();
        for &(l, s) in moves {
            x[l] += s;
        }
        f(&PolarNComplex::from_raw(x)).into_coords()
    };

    // jac[l][k] = dP_k / dx_l
    let jac: Vec<Vec<f64>> = (0..n)
        .map(|l| {
            let (p, m) = (shifted(&[(l, h)]), shifted(&[(l, -h)]));
            p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h)).collect()
        })
        .collect();
    let per_relation: Vec<f64> = (0..n)
        .map(|c| {
            let vals = (0..n).map(|l| jac[l][(c + l) % n]);
            spread(vals)
        })
        .collect();

    let mut hess = vec![vec![vec![0.0; n]; n]; n];
    for a in 0..n {
        for b in a..n {
            let pp = shifted(&[(a, h), (b, h)]);
            let pm = shifted(&[(a, h), (b, -h)]);
            let mp = shifted(&[(a, -h), (b, h)]);
            let mm = shifted(&[(a, -h), (b, -h)]);
            for k in 0..n {
                let v = (pp[k] - pm[k] - mp[k] + mm[k]) / (4.0 * h * h);
                hess[a][b][k] = v;
                hess[b][a][k] = v;
            }
        }
    }
    let second_order_max = (0..n)
        .map(|c| {
            let mut vals = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    vals.push(hess[a][b][(c + a + b) % n]);
                }
            }
            spread(vals.into_iter())
        })
        .fold(0.0, f64::max);

    CRReport {
        point: u0.clone(),
        max_residual: per_relation.iter().copied().fold(0.0, f64::max),
        per_relation,
        second_order_max,
    }
}

fn spread(vals: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    hi - lo
}
