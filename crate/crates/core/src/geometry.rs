//! Polar description of a point and the exponential/trigonometric forms.
//!
//! A number is described by its modulus `d`, the sector radii `rho_k`, the
//! azimuthal angles `phi_k` (one per pair sector), the planar angles
//! `psi_{k-1}` with `tan psi_{k-1} = rho_1 / rho_k`, and the polar angles
//! `theta_+` (and `theta_-` for even `n`) with `tan theta_+ = sqrt(2) rho_1 / v_+`.

use std::f64::consts::SQRT_2;

use crate::algebra::{amplitude, is_nodal, PolarNComplex};
use crate::canonical::{basis, e_tilde, pair_count, trig_table};
use crate::elementary::{self, azimuth};
use crate::error::{Error, Result, Sector};

#[derive(Clone, Debug, PartialEq)]
pub struct PolarForm {
    pub n: usize,
    pub d: f64,
    /// Amplitude `nu^(1/n)`, present when `nu > 0`.
    pub rho: Option<f64>,
    pub v_plus: f64,
    pub v_minus: Option<f64>,
    pub theta_plus: f64,
    pub theta_minus: Option<f64>,
    /// `psi_1..psi_{K-1}`.
    pub psi: Vec<f64>,
    /// `phi_1..phi_K` in `[0, 2 pi)`.
    pub phi: Vec<f64>,
    /// `rho_1..rho_K`.
    pub rho_k: Vec<f64>,
}

impl PolarForm {
    /// `1/tan^2 theta_+ + [1/tan^2 theta_-] + 1 + sum 1/tan^2 psi`.
    pub fn angular_sum(&self) -> f64 {
        let cot2 = |a: f64| (a.cos() / a.sin()).powi(2);
        let mut s = cot2(self.theta_plus) + 1.0;
        if let Some(t) = self.theta_minus {
            s += cot2(t);
        }
        s + self.psi.iter().map(|&p| cot2(p)).sum::<f64>()
    }

    /// `rho_1` rebuilt from `d` and the polar/planar angles.
    pub fn rho1_from_angles(&self) -> f64 {
        (self.n as f64 * self.d * self.d / 2.0 / self.angular_sum()).sqrt()
    }

    /// `d` rebuilt from the amplitude and the angles (needs `nu > 0`).
    pub fn modulus_from_amplitude(&self) -> Option<f64> {
        let rho = self.rho?;
        let n = self.n as f64;
        let mut prod = self.theta_plus.tan();
        let pow2 = match self.theta_minus {
            Some(t) => {
                prod *= t.tan();
                (n - 2.0) / (2.0 * n)
            }
            None => (n - 1.0) / (2.0 * n),
        };
        for p in &self.psi {
            prod *= p.tan().powi(2);
        }
        Some(rho * 2f64.powf(pow2) / n.sqrt() * prod.powf(1.0 / n) * self.angular_sum().sqrt())
    }
}

/// Full angle set of `u`. Fails with `DegenerateDirection` when some
/// `rho_k` vanishes, since `phi_k` (and the planar angles) are undefined there.
pub fn polar_decompose(u: &PolarNComplex) -> Result<PolarForm> {
    let n = u.n();
    let c = u.to_canonical();
    let d = u.modulus();
    let rho_k = c.rho_k();
    if let Some(i) = rho_k.iter().position(|&r| is_nodal(r, d)) {
        return Err(Error::DegenerateDirection {
            which: Sector::Pair(i + 1),
        });
    }
    // n = 2 has no pair sector; rho_1 is taken as 0 there.
    let rho1 = rho_k.first().copied().unwrap_or(0.0);
    let theta = |v: f64| (SQRT_2 * rho1).atan2(v);
    Ok(PolarForm {
        n,
        d,
        rho: amplitude(u).ok(),
        v_plus: c.v_plus,
        v_minus: c.v_minus,
        theta_plus: theta(c.v_plus),
        theta_minus: c.v_minus.map(theta),
        psi: rho_k.iter().skip(1).map(|&r| rho1.atan2(r)).collect(),
        phi: c.pairs.iter().map(|&z| azimuth(z)).collect(),
        rho_k,
    })
}

fn check_form_domain(u: &PolarNComplex) -> Result<PolarForm> {
    let c = u.to_canonical();
    let d = u.modulus();
    if !(c.v_plus > 0.0) || is_nodal(c.v_plus, d) {
        return Err(Error::OutsideDomain {
            reason: "v_plus must be positive".into(),
        });
    }
    if c.v_minus.is_some_and(|m| !(m > 0.0) || is_nodal(m, d)) {
        return Err(Error::OutsideDomain {
            reason: "v_minus must be positive".into(),
        });
    }
    polar_decompose(u).map_err(|e| Error::OutsideDomain {
        reason: e.to_string(),
    })
}

/// Exponent of the exponential form: the `h_p` (p >= 1) combination of
/// `ln(sqrt2/tan theta_+)`, `ln(sqrt2/tan theta_-)`, `ln tan psi_{k-1}`,
/// plus `sum et_k phi_k`.
pub fn exponential_exponent(form: &PolarForm) -> PolarNComplex {
    let n = form.n;
    let nf = n as f64;
    let t = trig_table(n);
    // with no pair sector these logs degenerate to ln v+ and ln v-
    let ln_plus = if form.rho_k.is_empty() {
        form.v_plus.ln()
    } else {
        (SQRT_2 / form.theta_plus.tan()).ln()
    };
    let ln_minus = form.theta_minus.map(|th| {
        if form.rho_k.is_empty() {
            form.v_minus.unwrap().ln()
        } else {
            (SQRT_2 / th.tan()).ln()
        }
    });
    let mut coords = vec![0.0; n];
    for (p, x) in coords.iter_mut().enumerate().skip(1) {
        let mut s = ln_plus / nf;
        if let Some(lm) = ln_minus {
            s += if p % 2 == 0 { lm } else { -lm } / nf;
        }
        for (i, psi) in form.psi.iter().enumerate() {
            let k = i + 2;
            s -= 2.0 / nf * t.cos(k, p) * psi.tan().ln();
        }
        *x = s;
    }
    let mut w = PolarNComplex::from_raw(coords);
    for (i, phi) in form.phi.iter().enumerate() {
        w = &w + &e_tilde(n, i + 1).scale(*phi);
    }
    w
}

/// Rebuilds `u` as `rho * exp(exponent)`. Defined for `v_+ > 0`, `v_- > 0`
/// (even `n`) and all `rho_k > 0`.
pub fn exponential_form(u: &PolarNComplex) -> Result<PolarNComplex> {
    let form = check_form_domain(u)?;
    let rho = form.rho.ok_or_else(|| Error::OutsideDomain {
        reason: "amplitude undefined".into(),
    })?;
    Ok(elementary::exp(&exponential_exponent(&form))?.scale(rho))
}

/// `e+ sqrt2/tan theta_+ + e- sqrt2/tan theta_- + e_1 + sum e_k / tan psi_{k-1}`.
pub fn angular_factor(form: &PolarForm) -> PolarNComplex {
    let b = basis(form.n);
    let cot = |a: f64| a.cos() / a.sin();
    let mut f = b.e_plus.scale(SQRT_2 * cot(form.theta_plus));
    if let (Some(em), Some(th)) = (&b.e_minus, form.theta_minus) {
        f = &f + &em.scale(SQRT_2 * cot(th));
    }
    for (i, (e, _)) in b.pairs.iter().enumerate() {
        let w = if i == 0 { 1.0 } else { cot(form.psi[i - 1]) };
        f = &f + &e.scale(w);
    }
    f
}

/// Closed form of `|angular_factor|`: `sqrt(2/n) * sqrt(angular_sum)`.
pub fn angular_factor_modulus(form: &PolarForm) -> f64 {
    (2.0 / form.n as f64).sqrt() * form.angular_sum().sqrt()
}

/// `exp(sum et_k phi_k)`.
pub fn azimuthal_factor(form: &PolarForm) -> PolarNComplex {
    let mut w = PolarNComplex::zero(form.n);
    for (i, phi) in form.phi.iter().enumerate() {
        w = &w + &e_tilde(form.n, i + 1).scale(*phi);
    }
    elementary::exp(&w).expect("bounded exponent")
}

/// Rebuilds `u` as `d sqrt(n/2) S^{-1/2} * angular_factor * azimuthal_factor`.
/// Needs at least one pair sector (`n >= 3`).
pub fn trigonometric_form(u: &PolarNComplex) -> Result<PolarNComplex> {
    if pair_count(u.n()) == 0 {
        return Err(Error::OutsideDomain {
            reason: "trigonometric form needs a pair sector (n >= 3)".into(),
        });
    }
    let form = check_form_domain(u)?;
    if !(form.d > 0.0) {
        return Err(Error::OutsideDomain {
            reason: "modulus is zero".into(),
        });
    }
    let scale = form.d * (form.n as f64 / 2.0).sqrt() / form.angular_sum().sqrt();
    Ok((&angular_factor(&form) * &azimuthal_factor(&form)).scale(scale))
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    use crate::canonical::{from_canonical, CanonicalCoords};
    use num_complex::Complex64;

    fn pc(x: &[f64]) -> PolarNComplex {
        PolarNComplex::from_slice(x).unwrap()
    }

    #[test]
    fn e1_direction() {
        let (e1, _) = basis(3).pairs[0].clone();
        let f = polar_decompose(&e1).unwrap();
        assert!((f.rho_k[0] - 1.0).abs() < 1e-15);
        assert!(f.phi[0].abs() < 1e-15);
        assert!((f.theta_plus - FRAC_PI_2).abs() < 1e-15);
        assert!(f.psi.is_empty());
    }

    #[test]
    fn quarter_pi_polar_angles() {
        let mut c = CanonicalCoords::zero(4);
        c.pairs[0] = Complex64::from_polar(0.7, 2.0);
        c.v_plus = SQRT_2 * 0.7;
        c.v_minus = Some(SQRT_2 * 0.7);
        let f = polar_decompose(&from_canonical(&c)).unwrap();
        assert!((f.theta_plus - FRAC_PI_4).abs() < 1e-14);
        assert!((f.theta_minus.unwrap() - FRAC_PI_4).abs() < 1e-14);
    }

    #[test]
    fn rho1_reconstruction() {
        for x in [vec![0.5, 1.0, -0.3, 0.8, 0.1, -0.6, 0.9], vec![1.0, 0.2, -0.7, 0.4, 0.6, -0.1]] {
            let f = polar_decompose(&pc(&x)).unwrap();
            assert!((f.rho1_from_angles() - f.rho_k[0]).abs() <= 1e-9 * f.rho_k[0]);
        }
    }

    #[test]
    fn degenerate_direction() {
        assert_eq!(
            polar_decompose(&PolarNComplex::zero(5)).unwrap_err(),
            Error::DegenerateDirection { which: Sector::Pair(1) }
        );
        // rho_2 = 0 but rho_1 != 0
        let mut c = CanonicalCoords::zero(5);
        c.v_plus = 1.0;
        c.pairs[0] = Complex64::new(1.0, 0.5);
        assert_eq!(
            polar_decompose(&from_canonical(&c)).unwrap_err(),
            Error::DegenerateDirection { which: Sector::Pair(2) }
        );
    }

    #[test]
    fn psi_list_shape() {
        for n in 2..=10 {
            let x: Vec<f64> = (0..n).map(|i| 1.0 + 0.37 * (i * i) as f64 - 0.2 * i as f64).collect();
            let f = polar_decompose(&pc(&x)).unwrap();
            assert_eq!(f.phi.len(), pair_count(n));
            assert_eq!(f.psi.len(), pair_count(n).saturating_sub(1));
            assert_eq!(f.theta_minus.is_some(), n % 2 == 0);
        }
    }

    #[test]
    fn exponential_form_unit() {
        for n in 2..=8 {
            let one = PolarNComplex::one(n);
            assert!(exponential_form(&one).unwrap().max_abs_diff(&one) < 1e-14);
        }
    }

    #[test]
    fn exponential_form_examples() {
        let u = pc(&[1.0, 1.0, 0.0]);
        assert!(exponential_form(&u).unwrap().rel_diff(&u, 1e-300) < 1e-9);
        let u = pc(&[2.0, 0.3, 0.5, -0.4]);
        assert!(exponential_form(&u).unwrap().rel_diff(&u, 1e-300) < 1e-9);
        let u = pc(&[3.0, 1.0]);
        assert!(exponential_form(&u).unwrap().rel_diff(&u, 1e-300) < 1e-12);
    }

    #[test]
    fn exponential_form_domain() {
        assert!(matches!(exponential_form(&pc(&[-1.0, 0.2, 0.1])), Err(Error::OutsideDomain { .. })));
        assert!(matches!(exponential_form(&pc(&[0.1, 1.0, 0.2, 0.1])), Err(Error::OutsideDomain { .. })));
        assert!(matches!(exponential_form(&pc(&[1.0, 1.0, 1.0])), Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn trigonometric_form_examples() {
        let u = pc(&[2.0, 0.3, 0.5, -0.4, 0.7]);
        let f = polar_decompose(&u).unwrap();
        assert!(trigonometric_form(&u).unwrap().rel_diff(&u, 1e-300) < 1e-9);
        let m = angular_factor(&f).modulus();
        assert!((m - angular_factor_modulus(&f)).abs() <= 1e-12 * m);
        assert!((azimuthal_factor(&f).modulus() - 1.0).abs() < 1e-12);
        let d = f.modulus_from_amplitude().unwrap();
        assert!((d - f.d).abs() <= 1e-9 * f.d);
        assert!(matches!(trigonometric_form(&pc(&[3.0, 1.0])), Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn angle_distance_wraps() {
        assert!((angle_distance(0.1, std::f64::consts::TAU - 0.1) - 0.2).abs() < 1e-15);
        assert_eq!(angle_distance(1.0, 1.0), 0.0);
    }
}
