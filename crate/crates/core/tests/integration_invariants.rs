use std::f64::consts::TAU;

use num_complex::Complex64;

use polar_ncomplex::canonical::{from_canonical, pair_count};
use polar_ncomplex::elementary as el;
use polar_ncomplex::integration::{cauchy_quadrature, contour_integral, residue_value, windings, ClosedPath};
use polar_ncomplex::PolarNComplex;

fn pc(x: &[f64]) -> PolarNComplex {
    PolarNComplex::from_slice(x).unwrap()
}

/// Loop around `u0` circling the pair sectors listed in `circled` with
/// radius `r`; the other sectors are offset so the loop stays off the
/// nodal cone of `u - u0`.
fn around(u0: &PolarNComplex, circled: &[usize], r: f64, points: usize) -> ClosedPath {
    let c0 = u0.to_canonical();
    let verts = (0..points)
        .map(|j| {
            let t = TAU * j as f64 / points as f64;
            let mut c = c0.clone();
            c.v_plus += 0.7;
            c.v_minus = c.v_minus.map(|m| m - 0.6);
            for (k, z) in c.pairs.iter_mut().enumerate() {
                *z += if circled.contains(&(k + 1)) {
                    Complex64::from_polar(r, t)
                } else {
                    Complex64::new(0.5, 0.4)
                };
            }
            from_canonical(&c)
        })
        .collect();
    ClosedPath::closed(verts).unwrap()
}

#[test]
fn integral_of_entire_function_is_path_independent() {
    let a = pc(&[0.1, -0.3, 0.5, 0.2]);
    let b = pc(&[1.0, 0.4, -0.2, 0.7]);
    let paths = [
        vec![a.clone(), b.clone()],
        vec![a.clone(), pc(&[2.0, 2.0, -1.0, 0.0]), b.clone()],
        vec![a.clone(), pc(&[-1.0, 0.0, 0.3, 1.5]), pc(&[0.0, -2.0, 1.0, 1.0]), b.clone()],
    ];
    let exact = &el::exp(&b).unwrap() - &el::exp(&a).unwrap();
    for p in paths {
        let open = ClosedPath::new(p, false).unwrap();
        let v = contour_integral(|u| el::exp(u).unwrap(), &open, 8);
        assert!(v.max_abs_diff(&exact) < 1e-12, "{v:?}");
    }
}

#[test]
fn quadrature_converges_with_steps() {
    let u0 = pc(&[0.2, -0.1, 0.4, 0.0, 0.3]);
    let path = around(&u0, &[1, 2], 0.5, 8);
    let closed = residue_value(&u0, &path).unwrap();
    let errs: Vec<f64> = [1, 2, 4, 8]
        .iter()
        .map(|&s| cauchy_quadrature(|u| el::exp(u).unwrap(), &u0, &path, s).unwrap())
        .map(|q| (&q - &(&el::exp(&u0).unwrap() * &closed)).modulus())
        .collect();
    assert!(errs[3] < 1e-10, "{errs:?}");
    assert!(errs[0] > errs[3]);
}

#[test]
fn logarithm_loop_has_only_azimuthal_part() {
    // the amplitude and polar-angle parts of the logarithm are single-valued,
    // so a closed loop changes only the azimuths phi_k by 2 pi w_k
    for n in [3usize, 4, 5, 6, 7, 8] {
        let u0 = PolarNComplex::zero(n);
        for circled in (1..=pair_count(n)).map(|k| vec![k]).chain([(1..=pair_count(n)).collect()]) {
            let path = around(&u0, &circled, 0.3, 32);
            let v = contour_integral(|u| polar_ncomplex::algebra::inverse(u).unwrap(), &path, 8);
            let c = v.to_canonical();
            assert!(c.v_plus.abs() < 1e-10);
            assert!(c.v_minus.unwrap_or(0.0).abs() < 1e-10);
            let w = windings(&u0, &path).unwrap();
            for (k, z) in c.pairs.iter().enumerate() {
                assert!(z.re.abs() < 1e-10, "n={n} {circled:?}: {z}");
                let expected = TAU * w[k] as f64;
                assert!((z.im.abs() - expected.abs()).abs() < 1e-9, "n={n} {circled:?}: {z} vs {expected}");
            }
        }
    }
}

#[test]
fn refining_the_loop_keeps_the_residue() {
    let u0 = pc(&[0.0, 0.5, -0.5, 0.25, 0.0, 0.1]);
    let coarse = around(&u0, &[1, 2], 0.6, 12);
    let fine = around(&u0, &[1, 2], 0.6, 48);
    let (a, b) = (residue_value(&u0, &coarse).unwrap(), residue_value(&u0, &fine).unwrap());
    assert!(a.max_abs_diff(&b) == 0.0);
    let q = cauchy_quadrature(el::cos, &u0, &fine, 8).unwrap();
    assert!((&q - &(&el::cos(&u0) * &b)).modulus() < 1e-9);
}
