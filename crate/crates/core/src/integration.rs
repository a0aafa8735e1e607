//! Loop integrals in n-complex space and their residues.
//!
//! Only the azimuthal angles `phi_k` are cyclic, so the integral of
//! `du / (u - u0)` around a closed loop picks up `2 pi et_k` once for each
//! turn of the loop's projection onto the plane `(xi_k, eta_k)` around the
//! projection of `u0`.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use crate::algebra::{inverse, PolarNComplex};
use crate::canonical::{e_tilde, pair_count, rotated};
use crate::error::{Error, Result};
use crate::series::{evaluate, recenter, PowerSeries};

/// Default number of Gauss-Legendre panels per polyline segment.
pub const DEFAULT_STEPS: usize = 8;

/// A polyline, closed by an implicit segment from the last vertex back to
/// the first when `closed` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedPath {
    n: usize,
    vertices: Vec<PolarNComplex>,
    closed: bool,
}

impl ClosedPath {
    pub fn new(vertices: Vec<PolarNComplex>, closed: bool) -> Result<Self> {
        let min = if closed { 3 } else { 2 };
        if vertices.len() < min {
            return Err(Error::InvalidPath(format!(
                "{} vertices, need at least {min}",
                vertices.len()
            )));
        }
        let n = vertices[0].n();
        if let Some(v) = vertices.iter().find(|v| v.n() != n) {
            return Err(Error::DimensionMismatch { left: n, right: v.n() });
        }
        let count = vertices.len();
        let links = if closed { count } else { count - 1 };
        if let Some(i) = (0..links).find(|&i| vertices[i] == vertices[(i + 1) % count]) {
            return Err(Error::InvalidPath(format!(
                "vertex {} repeats vertex {i}",
                (i + 1) % count
            )));
        }
        Ok(Self { n, vertices, closed })
    }

    /// Closed loop through `vertices`.
    pub fn closed(vertices: Vec<PolarNComplex>) -> Result<Self> {
        Self::new(vertices, true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[PolarNComplex] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Consecutive vertex pairs, including the closing segment.
    pub fn segments(&self) -> impl Iterator<Item = (&PolarNComplex, &PolarNComplex)> {
        let count = self.vertices.len();
        let links = if self.closed { count } else { count - 1 };
        (0..links).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % count]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub a: f64,
    pub b: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Loop2 {
    pub points: Vec<Point2>,
}

fn check_sector(n: usize, k: usize) -> Result<()> {
    let hi = pair_count(n);
    if k == 0 || k > hi {
        return Err(Error::IndexOutOfRange { index: k, lo: 1, hi });
    }
    Ok(())
}

/// `(xi_k, eta_k)` of `u`.
pub fn project_point(u: &PolarNComplex, k: usize) -> Result<Point2> {
    check_sector(u.n(), k)?;
    let (a, b) = rotated(u).pairs[k - 1];
    Ok(Point2 { a, b })
}

pub fn project_path(path: &ClosedPath, k: usize) -> Result<Loop2> {
    let points = path
        .vertices
        .iter()
        .map(|v| project_point(v, k))
        .collect::<Result<_>>()?;
    Ok(Loop2 { points })
}

fn segment_distance(m: Point2, p: Point2, q: Point2) -> f64 {
    let (dx, dy) = (q.a - p.a, q.b - p.b);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (((m.a - p.a) * dx + (m.b - p.b) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (m.a - p.a - t * dx).hypot(m.b - p.b - t * dy)
}

fn winding_in(m: Point2, c: &Loop2, k: usize) -> Result<i64> {
    let pts = &c.points;
    if pts.len() < 3 {
        return Err(Error::InvalidPath(format!("{} points, need at least 3", pts.len())));
    }
    let (mut lo_a, mut hi_a, mut lo_b, mut hi_b) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo_a = lo_a.min(p.a);
        hi_a = hi_a.max(p.a);
        lo_b = lo_b.min(p.b);
        hi_b = hi_b.max(p.b);
    }
    let diameter = (hi_a - lo_a).hypot(hi_b - lo_b);
    let count = pts.len();
    let mut total = 0.0;
    for i in 0..count {
        let (p, q) = (pts[i], pts[(i + 1) % count]);
        if segment_distance(m, p, q) <= 1e-12 * diameter || (p.a == m.a && p.b == m.b) {
            return Err(Error::PointOnPath { k });
        }
        let (ux, uy) = (p.a - m.a, p.b - m.b);
        let (vx, vy) = (q.a - m.a, q.b - m.b);
        total += (ux * vy - uy * vx).atan2(ux * vx + uy * vy);
    }
    Ok((total / TAU).round() as i64)
}

/// Winding number of `c` around `m`, from the summed signed angles.
pub fn winding(m: Point2, c: &Loop2) -> Result<i64> {
    winding_in(m, c, 0)
}

/// 16-point Gauss-Legendre nodes and weights on `[-1, 1]`.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        const N: usize = 16;
        (0..N)
            .map(|i| {
                let mut x = (PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for j in 2..=N {
                        let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = N as f64 * (x * p1 - p0) / (x * x - 1.0);
                    let dx = p1 / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                (x, 2.0 / ((1.0 - x * x) * dp * dp))
            })
            .collect()
    })
}

/// `integral f(u) du` along the path, with `steps_per_segment` 16-point
/// Gauss-Legendre panels on every segment.
pub fn contour_integral<F>(f: F, path: &ClosedPath, steps_per_segment: usize) -> PolarNComplex
where
    F: Fn(&PolarNComplex) -> PolarNComplex,
{
    let steps = steps_per_segment.max(1);
    let rule = gauss_legendre();
    let mut total = PolarNComplex::zero(path.n);
    for (a, b) in path.segments() {
        let du = b - a;
        let mut acc = PolarNComplex::zero(path.n);
        for s in 0..steps {
            let (t0, t1) = (s as f64 / steps as f64, (s + 1) as f64 / steps as f64);
            let (mid, half) = (0.5 * (t0 + t1), 0.5 * (t1 - t0));
            for &(x, w) in rule {
                let u = a + &du.scale(mid + half * x);
                acc = &acc + &f(&u).scale(w * half);
            }
        }
        total = &total + &(&acc * &du);
    }
    total
}

/// Windings of the projected loop around the projected point, one per pair
/// sector.
pub fn windings(u0: &PolarNComplex, path: &ClosedPath) -> Result<Vec<i64>> {
    if u0.n() != path.n {
        return Err(Error::DimensionMismatch {
            left: path.n,
            right: u0.n(),
        });
    }
    if !path.closed {
        return Err(Error::InvalidPath("residues need a closed loop".into()));
    }
    (1..=pair_count(path.n))
        .map(|k| winding_in(project_point(u0, k)?, &project_path(path, k)?, k))
        .collect()
}

fn residue_from_windings(n: usize, w: &[i64]) -> PolarNComplex {
    w.iter()
        .enumerate()
        .filter(|(_, &wk)| wk != 0)
        .fold(PolarNComplex::zero(n), |acc, (i, &wk)| {
            &acc + &e_tilde(n, i + 1).scale(TAU * wk as f64)
        })
}

/// `sum_k 2 pi et_k * winding_k`, the closed form of the loop integral of
/// `1 / (u - u0)`.
pub fn residue_value(u0: &PolarNComplex, path: &ClosedPath) -> Result<PolarNComplex> {
    Ok(residue_from_windings(path.n, &windings(u0, path)?))
}

/// `f(u0) * residue_value(u0, path)`, the closed form of the loop integral
/// of `f(u) / (u - u0)` for `f` regular inside the loop.
pub fn cauchy_eval<F>(f: F, u0: &PolarNComplex, path: &ClosedPath) -> Result<PolarNComplex>
where
    F: Fn(&PolarNComplex) -> PolarNComplex,
{
    Ok(&f(u0) * &residue_value(u0, path)?)
}

/// Quadrature of `f(u) / (u - u0)`, the numerical side of [`cauchy_eval`].
/// Fails if `u - u0` meets a nodal hypersurface at a quadrature node.
pub fn cauchy_quadrature<F>(f: F, u0: &PolarNComplex, path: &ClosedPath, steps: usize) -> Result<PolarNComplex>
where
    F: Fn(&PolarNComplex) -> PolarNComplex,
{
    pole_quadrature(f, u0, path, 0, steps)
}

fn pole_quadrature<F>(f: F, u0: &PolarNComplex, path: &ClosedPath, order: u32, steps: usize) -> Result<PolarNComplex>
where
    F: Fn(&PolarNComplex) -> PolarNComplex,
{
    let failure = std::cell::Cell::new(None);
    let value = contour_integral(
        |u| match inverse(&(u - u0)) {
            Ok(inv) => &f(u) * &inv.powu(order + 1),
            Err(e) => {
                failure.set(Some(e));
                PolarNComplex::zero(u.n())
            }
        },
        path,
        steps,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// Quadrature and closed-form values of one loop integral.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchyPair {
    pub numeric: PolarNComplex,
    pub closed_form: PolarNComplex,
}

impl CauchyPair {
    pub fn deviation(&self) -> f64 {
        self.numeric.max_abs_diff(&self.closed_form)
    }
}

/// Loop integral of `f(u) / (u - u0)^(order + 1)` for `f` given as a power
/// series. The closed form is `2 pi c_order(u0) sum_k et_k winding_k`, where
/// `c_order = f^(order)(u0) / order!` is read off the series recentered at
/// `u0`.
pub fn cauchy_derivative(
    f: &PowerSeries,
    u0: &PolarNComplex,
    path: &ClosedPath,
    order: usize,
    steps: usize,
) -> Result<CauchyPair> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let residue = residue_value(u0, path)?;
    let shifted = recenter(f, u0, order)?;
    let closed_form = match shifted.coeffs().get(order) {
        Some(c) => c * &residue,
        None => PolarNComplex::zero(path.n),
    };
    // points on the loop are checked against the series' region up front
    for v in &path.vertices {
        evaluate(f, v, 1e-17)?;
    }
    let numeric = pole_quadrature(
        |u| evaluate(f, u, 1e-17).unwrap_or_else(|_| PolarNComplex::zero(u.n())),
        u0,
        path,
        order as u32,
        steps,
    )?;
    Ok(CauchyPair { numeric, closed_form })
}

/// `sum_l r_l * residue_value(u_l, path)` for simple poles `u_l` with
/// residues `r_l`.
pub fn residue_sum(poles: &[(PolarNComplex, PolarNComplex)], path: &ClosedPath) -> Result<PolarNComplex> {
    poles.iter().try_fold(PolarNComplex::zero(path.n), |acc, (u, r)| {
        Ok(&acc + &(r * &residue_value(u, path)?))
    })
}
