//! Monic polynomials with n-complex coefficients and their factorizations.
//!
//! `P(u) = u^m + a_1 u^(m-1) + ... + a_m` splits into an ordinary polynomial
//! of degree `m` in every canonical sector. Choosing which root of each
//! sector goes into which linear factor gives the different factorizations
//! `P(u) = (u - u_1)...(u - u_m)`; only choices whose real sectors receive
//! real roots give roots with real coordinates.

use std::collections::HashSet;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::algebra::PolarNComplex;
use crate::canonical::{from_canonical, CanonicalCoords};
use crate::error::{Error, Result, Sector};
use crate::series::SectorCoefficients;

/// Iteration limit of the root finder.
pub const MAX_ITERATIONS: usize = 500;
/// Step size below which the root finder stops.
pub const CONVERGENCE_TOL: f64 = 1e-13;
/// Largest imaginary part tolerated in a real sector of an assembled root.
pub const REALNESS_TOL: f64 = 1e-9;
/// Default bound on the number of root sets returned.
pub const DEFAULT_CAP: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct NPolynomial {
    n: usize,
    coeffs: Vec<PolarNComplex>,
}

impl NPolynomial {
    /// Monic polynomial with lower coefficients `a_1..a_m`.
    pub fn new(coeffs: Vec<PolarNComplex>) -> Result<Self> {
        let first = coeffs.first().ok_or(Error::InsufficientCoefficients { needed: 1, got: 0 })?;
        let n = first.n();
        if let Some(bad) = coeffs.iter().find(|a| a.n() != n) {
            return Err(Error::DimensionMismatch { left: n, right: bad.n() });
        }
        Ok(Self { n, coeffs })
    }

    /// `(u - w_1)...(u - w_m)`.
    pub fn from_roots(roots: &[PolarNComplex]) -> Result<Self> {
        Self::new(expand(roots)?.split_off(1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_1..a_m`.
    pub fn coeffs(&self) -> &[PolarNComplex] {
        &self.coeffs
    }

    /// `1, a_1, ..., a_m`.
    pub fn full_coeffs(&self) -> Vec<PolarNComplex> {
        std::iter::once(PolarNComplex::one(self.n))
            .chain(self.coeffs.iter().cloned())
            .collect()
    }

    pub fn eval(&self, u: &PolarNComplex) -> PolarNComplex {
        self.coeffs
            .iter()
            .fold(PolarNComplex::one(self.n), |acc, a| &(&acc * u) + a)
    }
}

/// Coefficients `1, c_1, ..., c_m` of `prod (u - r_p)`.
fn expand(roots: &[PolarNComplex]) -> Result<Vec<PolarNComplex>> {
    let n = roots.first().ok_or(Error::InsufficientCoefficients { needed: 1, got: 0 })?.n();
    let mut c = vec![PolarNComplex::one(n)];
    for r in roots {
        if r.n() != n {
            return Err(Error::DimensionMismatch { left: n, right: r.n() });
        }
        let mut next = c.clone();
        next.push(PolarNComplex::zero(n));
        for j in 1..next.len() {
            next[j] = &next[j] - &(r * &c[j - 1]);
        }
        c = next;
    }
    Ok(c)
}

/// Sector polynomials; index 0 holds the leading coefficient 1.
pub fn sector_polynomials(p: &NPolynomial) -> SectorCoefficients {
    SectorCoefficients::from_coeffs(&p.full_coeffs())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectorRoots {
    pub plus: Vec<Complex64>,
    pub minus: Option<Vec<Complex64>>,
    pub pairs: Vec<Vec<Complex64>>,
}

fn horner_c(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// All roots of the monic polynomial `c[0] = 1, c[1..]` by simultaneous
/// (Durand-Kerner) iteration.
fn durand_kerner(c: &[Complex64], sector: Sector) -> Result<Vec<Complex64>> {
    let m = c.len() - 1;
    if m == 1 {
        return Ok(vec![-c[1]]);
    }
    let radius = 1.0 + c[1..].iter().map(|a| a.norm()).fold(0.0, f64::max);
    // the offset keeps the start points off the real axis and away from symmetric roots
    let mut z: Vec<Complex64> = (0..m)
        .map(|j| Complex64::from_polar(radius, TAU * j as f64 / m as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut largest = 0.0_f64;
        for j in 0..m {
            let mut denom = Complex64::new(1.0, 0.0);
            for i in 0..m {
                if i != j {
                    denom *= z[j] - z[i];
                }
            }
            if denom.norm() == 0.0 {
                // coincident estimates; nudge apart
                z[j] += Complex64::new(1e-8, 1e-8) * radius;
                largest = f64::INFINITY;
                continue;
            }
            let step = horner_c(c, z[j]) / denom;
            z[j] -= step;
            largest = largest.max(step.norm() / z[j].norm().max(1.0));
        }
        if largest <= CONVERGENCE_TOL {
            return Ok(z);
        }
    }
    // slow convergence near repeated roots is acceptable when residuals are small
    let ok = z.iter().all(|&r| {
        let scale: f64 = c.iter().enumerate().map(|(i, a)| a.norm() * r.norm().powi((m - i) as i32)).sum();
        horner_c(c, r).norm() <= 1e-8 * scale.max(1.0)
    });
    if ok {
        Ok(z)
    } else {
        Err(Error::NoConvergence { sector })
    }
}

/// Makes a root list of a real polynomial exactly conjugate-closed.
fn close_under_conjugation(roots: &mut [Complex64]) {
    for r in roots.iter_mut() {
        if r.im.abs() <= 1e-8 * r.norm().max(1.0) {
            r.im = 0.0;
        }
    }
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] || roots[i].im <= 0.0 {
            continue;
        }
        let target = roots[i].conj();
        let partner = (0..roots.len())
            .filter(|&j| !used[j] && j != i && roots[j].im < 0.0)
            .min_by(|&a, &b| (roots[a] - target).norm().total_cmp(&(roots[b] - target).norm()));
        if let Some(j) = partner {
            let avg = 0.5 * (roots[i] + roots[j].conj());
            roots[i] = avg;
            roots[j] = avg.conj();
            used[i] = true;
            used[j] = true;
        }
    }
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

pub fn sector_roots(p: &NPolynomial) -> Result<SectorRoots> {
    let sc = sector_polynomials(p);
    let real_roots = |coef: &[f64], sector| -> Result<Vec<Complex64>> {
        let c: Vec<Complex64> = coef.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        let mut r = durand_kerner(&c, sector)?;
        close_under_conjugation(&mut r);
        sort_roots(&mut r);
        Ok(r)
    };
    Ok(SectorRoots {
        plus: real_roots(&sc.plus, Sector::Plus)?,
        minus: sc.minus.as_deref().map(|m| real_roots(m, Sector::Minus)).transpose()?,
        pairs: sc
            .pairs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut r = durand_kerner(c, Sector::Pair(i + 1))?;
                sort_roots(&mut r);
                Ok(r)
            })
            .collect::<Result<_>>()?,
    })
}

/// Which root of each sector goes to each factor: `plus[p]` is the index
/// into `SectorRoots::plus` used by root `p`, and so on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub plus: Vec<usize>,
    pub minus: Option<Vec<usize>>,
    pub pairs: Vec<Vec<usize>>,
}

impl Selection {
    /// Root `p` of every sector goes to factor `p`.
    pub fn identity(roots: &SectorRoots) -> Self {
        let id: Vec<usize> = (0..roots.plus.len()).collect();
        Self {
            plus: id.clone(),
            minus: roots.minus.as_ref().map(|_| id.clone()),
            pairs: vec![id; roots.pairs.len()],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<PolarNComplex>,
}

fn check_permutation(perm: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    if perm.len() != m || perm.iter().any(|&i| i >= m || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation of 0..{m}")));
    }
    Ok(())
}

/// Builds the roots `u_p` from one sector assignment.
pub fn assemble(roots: &SectorRoots, selection: &Selection) -> Result<RootSet> {
    let m = roots.plus.len();
    check_permutation(&selection.plus, m)?;
    if let Some(s) = &selection.minus {
        check_permutation(s, m)?;
    }
    if selection.minus.is_some() != roots.minus.is_some() || selection.pairs.len() != roots.pairs.len() {
        return Err(Error::InvalidArgument("selection does not match the sectors".into()));
    }
    for s in &selection.pairs {
        check_permutation(s, m)?;
    }
    let n = 2 * roots.pairs.len() + 1 + usize::from(roots.minus.is_some());
    let mut max_imag = 0.0_f64;
    let mut real_part = |z: Complex64| {
        max_imag = max_imag.max(z.im.abs());
        z.re
    };
    let mut out = Vec::with_capacity(m);
    for p in 0..m {
        let c = CanonicalCoords {
            n,
            v_plus: real_part(roots.plus[selection.plus[p]]),
            v_minus: roots
                .minus
                .as_ref()
                .zip(selection.minus.as_ref())
                .map(|(r, s)| real_part(r[s[p]])),
            pairs: roots
                .pairs
                .iter()
                .zip(&selection.pairs)
                .map(|(r, s)| r[s[p]])
                .collect(),
        };
        out.push(from_canonical(&c));
    }
    if max_imag > REALNESS_TOL {
        return Err(Error::NonRealAssembly { max_imag });
    }
    Ok(RootSet { roots: out })
}

/// In-place lexicographic successor; returns `false` (and resets to the
/// identity) after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        p.sort_unstable();
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn set_key(set: &RootSet) -> Vec<Vec<i64>> {
    let mut keys: Vec<Vec<i64>> = set
        .roots
        .iter()
        .map(|u| u.coords().iter().map(|x| (x * 1e8).round() as i64).collect())
        .collect();
    keys.sort();
    keys
}

#[derive(Clone, Debug, PartialEq)]
pub struct Enumeration {
    /// The first `cap` distinct root sets in enumeration order.
    pub sets: Vec<RootSet>,
    /// Distinct root sets seen; exact unless `truncated`.
    pub count: usize,
    /// Set when the search stopped after `1000 * cap` assignments.
    pub truncated: bool,
}

/// Distinct factorizations of `p`.
///
/// The `v_+` assignment stays fixed, which removes the reordering of the
/// factors; the remaining sectors run through all permutations in
/// lexicographic order (last sector fastest).
pub fn enumerate_rootsets(p: &NPolynomial, cap: usize) -> Result<Enumeration> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    let roots = sector_roots(p)?;
    let mut sel = Selection::identity(&roots);
    let budget = cap.saturating_mul(1000);
    let mut seen = HashSet::new();
    let mut sets = Vec::new();
    let mut visited = 0;
    let truncated = loop {
        if visited == budget {
            break true;
        }
        visited += 1;
        if let Ok(set) = assemble(&roots, &sel) {
            if seen.insert(set_key(&set)) && sets.len() < cap {
                sets.push(set);
            }
        }
        let mut odometer: Vec<&mut Vec<usize>> = sel.minus.iter_mut().chain(sel.pairs.iter_mut()).collect();
        let advanced = odometer.iter_mut().rev().any(|perm| next_permutation(perm));
        if !advanced {
            break false;
        }
    };
    Ok(Enumeration {
        sets,
        count: seen.len(),
        truncated,
    })
}

/// Largest coordinate difference between the coefficients of
/// `prod (u - u_p)` and those of `p`.
pub fn verify_factorization(p: &NPolynomial, rs: &RootSet) -> f64 {
    if rs.roots.len() != p.degree() {
        return f64::INFINITY;
    }
    match expand(&rs.roots) {
        Ok(c) => c
            .iter()
            .zip(p.full_coeffs())
            .map(|(a, b)| a.max_abs_diff(&b))
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}
