//! Elementary functions of an n-complex argument.
//!
//! Every function is evaluated sector by sector in canonical coordinates and
//! mapped back through the idempotent basis. On a pair sector the value
//! `v_k + i vt_k` behaves as an ordinary complex number.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::algebra::{is_nodal, nodal_sector_of, PolarNComplex};
use crate::canonical::{from_canonical, CanonicalCoords};
use crate::error::{Error, Result, Sector};

/// Largest sector exponent accepted by [`exp`].
pub const MAX_EXPONENT: f64 = 700.0;

/// Principal azimuth in `[0, 2 pi)`.
pub(crate) fn azimuth(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        // a + TAU can round up to TAU for tiny negative angles
        let w = a + TAU;
        if w >= TAU {
            0.0
        } else {
            w
        }
    } else {
        a
    }
}

fn check_exponents(c: &CanonicalCoords) -> Result<()> {
    if c.v_plus > MAX_EXPONENT {
        return Err(Error::Overflow { sector: Sector::Plus });
    }
    if c.v_minus.is_some_and(|m| m > MAX_EXPONENT) {
        return Err(Error::Overflow { sector: Sector::Minus });
    }
    if let Some(i) = c.pairs.iter().position(|z| z.re > MAX_EXPONENT) {
        return Err(Error::Overflow { sector: Sector::Pair(i + 1) });
    }
    Ok(())
}

/// `e+ e^{v+} + e- e^{v-} + sum e^{v_k}(e_k cos vt_k + et_k sin vt_k)`.
pub fn exp(u: &PolarNComplex) -> Result<PolarNComplex> {
    let c = u.to_canonical();
    check_exponents(&c)?;
    Ok(from_canonical(&c.map(f64::exp, |z| {
        let r = z.re.exp();
        Complex64::new(r * z.im.cos(), r * z.im.sin())
    })))
}

fn check_log_domain(u: &PolarNComplex, c: &CanonicalCoords) -> Result<()> {
    let scale = u.modulus();
    if !(c.v_plus > 0.0) || is_nodal(c.v_plus, scale) {
        return Err(Error::OutsideDomain {
            reason: format!("v_plus = {} is not positive", c.v_plus),
        });
    }
    if let Some(m) = c.v_minus {
        if !(m > 0.0) || is_nodal(m, scale) {
            return Err(Error::OutsideDomain {
                reason: format!("v_minus = {m} is not positive"),
            });
        }
    }
    if let Some(i) = c.pairs.iter().position(|z| is_nodal(z.norm(), scale)) {
        return Err(Error::OutsideDomain {
            reason: format!("rho_{} vanishes", i + 1),
        });
    }
    Ok(())
}

/// Principal logarithm, `e+ ln v+ + e- ln v- + sum (e_k ln rho_k + et_k phi_k)`
/// with `phi_k` in `[0, 2 pi)`.
pub fn log(u: &PolarNComplex) -> Result<PolarNComplex> {
    let c = u.to_canonical();
    check_log_domain(u, &c)?;
    Ok(from_canonical(&c.map(f64::ln, |z| {
        Complex64::new(z.norm().ln(), azimuth(z))
    })))
}

/// `u^m`. Integer exponents work everywhere (negative ones need an
/// invertible `u`); other exponents take the principal branch and require
/// the logarithm's domain.
pub fn pow(u: &PolarNComplex, m: f64) -> Result<PolarNComplex> {
    if !m.is_finite() {
        return Err(Error::InvalidArgument(format!("exponent {m} is not finite")));
    }
    let c = u.to_canonical();
    if m.fract() == 0.0 && m.abs() <= i32::MAX as f64 {
        let e = m as i32;
        if e < 0 {
            if let Some(sector) = nodal_sector_of(&c, u.modulus()) {
                return Err(Error::NotInvertible { sector });
            }
        }
        return Ok(from_canonical(&c.map(
            |v| v.powi(e),
            |z| {
                let (r, phi) = z.to_polar();
                Complex64::from_polar(r.powi(e), phi * e as f64)
            },
        )));
    }
    check_log_domain(u, &c)?;
    Ok(from_canonical(&c.map(
        |v| v.powf(m),
        |z| Complex64::from_polar(z.norm().powf(m), m * azimuth(z)),
    )))
}

pub fn cos(u: &PolarNComplex) -> PolarNComplex {
    let c = u.to_canonical();
    from_canonical(&c.map(f64::cos, |z| {
        Complex64::new(z.re.cos() * z.im.cosh(), -z.re.sin() * z.im.sinh())
    }))
}

pub fn sin(u: &PolarNComplex) -> PolarNComplex {
    let c = u.to_canonical();
    from_canonical(&c.map(f64::sin, |z| {
        Complex64::new(z.re.sin() * z.im.cosh(), z.re.cos() * z.im.sinh())
    }))
}

pub fn cosh(u: &PolarNComplex) -> PolarNComplex {
    let c = u.to_canonical();
    from_canonical(&c.map(f64::cosh, |z| {
        Complex64::new(z.re.cosh() * z.im.cos(), z.re.sinh() * z.im.sin())
    }))
}

pub fn sinh(u: &PolarNComplex) -> PolarNComplex {
    let c = u.to_canonical();
    from_canonical(&c.map(f64::sinh, |z| {
        Complex64::new(z.re.sinh() * z.im.cos(), z.re.cosh() * z.im.sin())
    }))
}
