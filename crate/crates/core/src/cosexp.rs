//! Polar cosexponential functions `g_nk` and the exponential, trigonometric
//! and hyperbolic functions of `h_k y`.
//!
//! `g_nk(y)` collects the terms of the exponential series whose power is
//! congruent to `k` modulo `n`. The closed form
//! `(1/n) sum_l exp(y cos a_l) cos(y sin a_l - k a_l)`, `a_l = 2 pi l / n`,
//! is the production path; the truncated series is the cross-check.

use crate::algebra::PolarNComplex;
use crate::canonical::trig_table;
use crate::error::{Error, Result};

/// Values `g_n0(y)..g_{n,n-1}(y)` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct CosexpValue {
    pub n: usize,
    pub y: f64,
    pub values: Vec<f64>,
}

impl CosexpValue {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `sum (-1)^k g_nk`, meaningful for even `n`.
    pub fn alternating_sum(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { *g } else { -g })
            .sum()
    }
}

fn check_index(n: usize, k: usize, lo: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    if k < lo || k >= n {
        return Err(Error::IndexOutOfRange {
            index: k,
            lo,
            hi: n - 1,
        });
    }
    Ok(())
}

/// Closed form of `g_nk(y)`.
pub fn g_closed(n: usize, k: usize, y: f64) -> Result<f64> {
    check_index(n, k, 0)?;
    if y == 0.0 {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    let t = trig_table(n);
    let mut s = 0.0;
    for l in 0..n {
        // y sin(a_l) - k a_l, with cos(k a_l) / sin(k a_l) from the table
        let (c, sn) = (t.cos(1, l), t.sin(1, l));
        let ysin = y * sn;
        let phase = ysin.cos() * t.cos(k, l) + ysin.sin() * t.sin(k, l);
        s += (y * c).exp() * phase;
    }
    Ok(s / n as f64)
}

/// All `g_nk(y)`, `k = 0..n`.
pub fn cosexp_values(n: usize, y: f64) -> Result<CosexpValue> {
    let values = (0..n).map(|k| g_closed(n, k, y)).collect::<Result<_>>()?;
    Ok(CosexpValue { n, y, values })
}

/// Truncated series `sum_{p < terms} y^{k+pn} / (k+pn)!`.
pub fn g_series(n: usize, k: usize, y: f64, terms: usize) -> f64 {
    let mut term = (1..=k).fold(1.0, |acc, j| acc * y / j as f64);
    let mut sum = 0.0;
    let mut power = k;
    for _ in 0..terms {
        sum += term;
        for _ in 0..n {
            power += 1;
            term *= y / power as f64;
        }
    }
    sum
}

/// Series evaluation that stops once the next term drops below
/// `1e-17 * |partial sum|`, or after 200 terms.
pub fn g_series_auto(n: usize, k: usize, y: f64) -> f64 {
    let mut term = (1..=k).fold(1.0, |acc, j| acc * y / j as f64);
    let mut sum = 0.0;
    let mut power = k;
    for _ in 0..200 {
        sum += term;
        for _ in 0..n {
            power += 1;
            term *= y / power as f64;
        }
        if term.abs() < 1e-17 * sum.abs() || term == 0.0 {
            break;
        }
    }
    sum
}

/// Scatters `values[p]` onto coordinate `k p mod n`.
fn scatter(n: usize, k: usize, values: impl Iterator<Item = f64>) -> PolarNComplex {
    let mut coords = vec![0.0; n];
    for (p, g) in values.enumerate() {
        coords[(k * p) % n] += g;
    }
    PolarNComplex::new(coords).expect("finite cosexponential values")
}

/// `exp(h_k y) = sum_p h_{kp mod n} g_np(y)`.
pub fn exp_hk(n: usize, k: usize, y: f64) -> Result<PolarNComplex> {
    check_index(n, k, 1)?;
    let g = cosexp_values(n, y)?;
    Ok(scatter(n, k, g.values.into_iter()))
}

/// `(g^(c)_{p+}(y), g^(c)_{p-}(y))`, the components of `cos(h_k y)` and
/// `sin(h_k y)`, evaluated in real arithmetic.
pub fn trig_components(n: usize, p: usize, y: f64) -> (f64, f64) {
    let t = trig_table(n);
    let (mut plus, mut minus) = (0.0, 0.0);
    for l in 0..n {
        let a = y * t.cos(1, l);
        let b = y * t.sin(1, l);
        let (cp, sp) = (t.cos(l, p), t.sin(l, p));
        plus += a.cos() * b.cosh() * cp - a.sin() * b.sinh() * sp;
        minus += a.sin() * b.cosh() * cp + a.cos() * b.sinh() * sp;
    }
    (plus / n as f64, minus / n as f64)
}

/// `(g_{p+}(y), g_{p-}(y))`, the even and odd parts of `g_np`.
pub fn hyp_components(n: usize, p: usize, y: f64) -> (f64, f64) {
    let t = trig_table(n);
    let (mut plus, mut minus) = (0.0, 0.0);
    for l in 0..n {
        let a = y * t.cos(1, l);
        let b = y * t.sin(1, l);
        let (cp, sp) = (t.cos(l, p), t.sin(l, p));
        plus += a.cosh() * b.cos() * cp + a.sinh() * b.sin() * sp;
        minus += a.sinh() * b.cos() * cp + a.cosh() * b.sin() * sp;
    }
    (plus / n as f64, minus / n as f64)
}

/// `(cos(h_k y), sin(h_k y))`.
pub fn trig_hk(n: usize, k: usize, y: f64) -> Result<(PolarNComplex, PolarNComplex)> {
    check_index(n, k, 1)?;
    let comps: Vec<_> = (0..n).map(|p| trig_components(n, p, y)).collect();
    Ok((
        scatter(n, k, comps.iter().map(|c| c.0)),
        scatter(n, k, comps.iter().map(|c| c.1)),
    ))
}

/// `(cosh(h_k y), sinh(h_k y))`.
pub fn hyp_hk(n: usize, k: usize, y: f64) -> Result<(PolarNComplex, PolarNComplex)> {
    check_index(n, k, 1)?;
    let comps: Vec<_> = (0..n).map(|p| hyp_components(n, p, y)).collect();
    Ok((
        scatter(n, k, comps.iter().map(|c| c.0)),
        scatter(n, k, comps.iter().map(|c| c.1)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary;

    #[test]
    fn values_at_zero() {
        for n in 2..=9 {
            assert!((g_closed(n, 0, 0.0).unwrap() - 1.0).abs() < 1e-15);
            for k in 1..n {
                assert!(g_closed(n, k, 0.0).unwrap().abs() < 1e-15);
                assert!(exp_hk(n, k, 0.0).unwrap().max_abs_diff(&PolarNComplex::one(n)) < 1e-15);
            }
        }
        assert_eq!(g_series(4, 1, 0.0, 10), 0.0);
    }

    #[test]
    fn reference_values() {
        // frozen from the 30-term series
        let g20 = g_series(2, 0, 1.0, 30);
        let g30 = g_series(3, 0, 1.0, 30);
        assert!((g20 - 1.0_f64.cosh()).abs() < 1e-15);
        assert!((g_closed(2, 0, 1.0).unwrap() - 1.543_080_634_815_243_7).abs() < 1e-14);
        assert!((g_closed(3, 0, 1.0).unwrap() - g30).abs() < 1e-14);
        assert!((g30 - 1.168_058_313_375_918_5).abs() < 1e-14);
        assert!((g_series(2, 1, 1.0, 30) - 1.0_f64.sinh()).abs() < 1e-15);
    }

    #[test]
    fn index_errors() {
        assert!(matches!(g_closed(3, 3, 1.0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(exp_hk(4, 0, 1.0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(trig_hk(4, 4, 1.0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn n2_is_cosh_sinh() {
        for y in [-2.0, -0.5, 0.3, 1.7] {
            let e = exp_hk(2, 1, y).unwrap();
            assert!((e.coords()[0] - f64::cosh(y)).abs() < 1e-14);
            assert!((e.coords()[1] - f64::sinh(y)).abs() < 1e-14);
        }
    }

    #[test]
    fn against_sector_functions() {
        for n in 2..=8 {
            for k in 1..n {
                for y in [-1.3, 0.4, 2.1] {
                    let arg = PolarNComplex::unit(n, k).scale(y);
                    let e = exp_hk(n, k, y).unwrap();
                    assert!(e.max_abs_diff(&elementary::exp(&arg).unwrap()) < 1e-11);
                    let (c, s) = trig_hk(n, k, y).unwrap();
                    assert!(c.max_abs_diff(&elementary::cos(&arg)) < 1e-10);
                    assert!(s.max_abs_diff(&elementary::sin(&arg)) < 1e-10);
                    let (ch, sh) = hyp_hk(n, k, y).unwrap();
                    assert!(ch.max_abs_diff(&elementary::cosh(&arg)) < 1e-10);
                    assert!(sh.max_abs_diff(&elementary::sinh(&arg)) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn pythagorean_identities() {
        for n in 3..=7 {
            let one = PolarNComplex::one(n);
            for k in 1..n {
                let y = 0.9;
                let (c, s) = trig_hk(n, k, y).unwrap();
                assert!((&(&c * &c) + &(&s * &s)).max_abs_diff(&one) < 1e-10);
                let (ch, sh) = hyp_hk(n, k, y).unwrap();
                assert!((&(&ch * &ch) - &(&sh * &sh)).max_abs_diff(&one) < 1e-10);
                assert!((&ch + &sh).max_abs_diff(&exp_hk(n, k, y).unwrap()) < 1e-12);
            }
            let (c0, s0) = trig_hk(n, 1, 0.0).unwrap();
            assert!(c0.max_abs_diff(&one) < 1e-15 && s0.modulus() < 1e-15);
            let (ch0, sh0) = hyp_hk(n, 1, 0.0).unwrap();
            assert!(ch0.max_abs_diff(&one) < 1e-15 && sh0.modulus() < 1e-15);
        }
    }

    #[test]
    fn series_auto_matches_closed() {
        for n in 2..=8 {
            for k in 0..n {
                for y in [-5.0, -1.25, 0.0, 2.5, 5.0] {
                    let d = (g_series_auto(n, k, y) - g_closed(n, k, y).unwrap()).abs();
                    assert!(d < 1e-10, "n={n} k={k} y={y} d={d}");
                }
            }
        }
    }
}
