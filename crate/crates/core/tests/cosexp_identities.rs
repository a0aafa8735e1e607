use std::f64::consts::TAU;

use polar_ncomplex::cosexp::{cosexp_values, g_closed, hyp_hk, trig_hk};
use polar_ncomplex::elementary as el;
use polar_ncomplex::PolarNComplex;

fn grid() -> impl Iterator<Item = f64> {
    (0..=20).map(|i| -3.0 + 0.3 * i as f64)
}

fn squares(n: usize, y: f64) -> Vec<f64> {
    cosexp_values(n, y).unwrap().values.iter().map(|g| g * g).collect()
}

fn alt(v: &[f64]) -> f64 {
    v.iter().enumerate().map(|(k, x)| if k % 2 == 0 { *x } else { -x }).sum()
}

fn inner_cos_sum(n: usize, y: f64) -> f64 {
    (1..n / 4).map(|l| (2.0 * y * (TAU * l as f64 / n as f64).cos()).cos()).sum()
}

#[test]
fn alternating_square_sum_needs_doubled_inner_sum() {
    for n in [4usize, 8, 12, 16] {
        for y in grid() {
            let lhs = alt(&squares(n, y));
            let rhs = 2.0 / n as f64 * (1.0 + (2.0 * y).cos() + 2.0 * inner_cos_sum(n, y));
            assert!((lhs - rhs).abs() < 1e-12, "n={n} y={y}: {lhs} vs {rhs}");
        }
    }
    // without the factor 2 the relation breaks once the inner sum is non-empty
    let (n, y) = (8, 0.3_f64);
    let undoubled = 2.0 / n as f64 * (1.0 + (2.0 * y).cos() + inner_cos_sum(n, y));
    assert!((alt(&squares(n, y)) - undoubled).abs() > 0.2);
}

#[test]
fn product_with_reflection_is_unit() {
    for n in 2..=8 {
        for y in grid() {
            let (g, h) = (cosexp_values(n, y).unwrap().values, cosexp_values(n, -y).unwrap().values);
            for k in 0..n {
                let conv: f64 = (0..n).map(|j| g[j] * h[(k + n - j) % n]).sum();
                let expect = if k == 0 { 1.0 } else { 0.0 };
                assert!((conv - expect).abs() < 1e-12 * (1.0 + (2.0 * y.abs()).exp()), "n={n} k={k} y={y}");
            }
        }
    }
}

#[test]
fn fourier_components_of_g() {
    for n in 2..=8 {
        let nf = n as f64;
        for y in grid() {
            let g = cosexp_values(n, y).unwrap().values;
            for k in 0..n {
                let angle = |p: usize| TAU * (k * p) as f64 / nf;
                let a: f64 = (0..n).map(|p| g[p] * angle(p).cos()).sum();
                let b: f64 = (0..n).map(|p| g[p] * angle(p).sin()).sum();
                let (c, s) = ((TAU * k as f64 / nf).cos(), (TAU * k as f64 / nf).sin());
                let scale = (y * c).exp();
                assert!((a - scale * (y * s).cos()).abs() < 1e-12 * (1.0 + y.abs().exp()));
                assert!((b - scale * (y * s).sin()).abs() < 1e-12 * (1.0 + y.abs().exp()));
            }
        }
    }
}

/// n-th derivative by central differences with one Richardson step.
fn nth_derivative(f: impl Fn(f64) -> f64, order: usize, y: f64, h: f64) -> f64 {
    let central = |h: f64| {
        let mut binom = 1.0;
        let mut acc = 0.0;
        for i in 0..=order {
            let x = y + (order as f64 / 2.0 - i as f64) * h;
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * f(x);
            binom = binom * (order - i) as f64 / (i + 1) as f64;
        }
        acc / h.powi(order as i32)
    };
    (4.0 * central(h / 2.0) - central(h)) / 3.0
}

#[test]
fn nth_derivative_reproduces_g() {
    for n in 2..=8 {
        for y in [-1.5, -0.4, 0.0, 0.7, 2.0] {
            for k in 0..n {
                let f = |t: f64| g_closed(n, k, t).unwrap();
                let d = nth_derivative(f, n, y, 0.2);
                let g = f(y);
                assert!((d - g).abs() < 1e-4 * g.abs().max(1.0), "n={n} k={k} y={y}: {d} vs {g}");
            }
        }
    }
}

#[test]
fn trig_and_hyperbolic_match_elementary_functions() {
    for n in 3..=7 {
        for k in 1..n {
            for y in [-1.3, 0.25, 2.2] {
                let arg = PolarNComplex::unit(n, k).scale(y);
                let (c, s) = trig_hk(n, k, y).unwrap();
                let (ch, sh) = hyp_hk(n, k, y).unwrap();
                assert!(c.max_abs_diff(&el::cos(&arg)) < 1e-12);
                assert!(s.max_abs_diff(&el::sin(&arg)) < 1e-12);
                assert!(ch.max_abs_diff(&el::cosh(&arg)) < 1e-12);
                assert!(sh.max_abs_diff(&el::sinh(&arg)) < 1e-12);
            }
        }
    }
}
