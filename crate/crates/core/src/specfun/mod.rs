//! Order-0 Bessel and Kelvin special functions, the amplitude functions
//! M₀/N₀, and the Gamma function.
//!
//! Every public operation returns a [`SpecialValue`] carrying the value and an
//! absolute error estimate. The module accuracy target is 1e-12 relative (or
//! absolute for values of order one) for arguments of modulus up to 50,
//! degrading gracefully beyond; `est_abs_error` reports the honest per-call
//! estimate.

mod bessel;
mod constants;
mod gamma;
mod kelvin;

use num_complex::Complex64;

pub use bessel::EULER_GAMMA;
pub use constants::{
    constants_report, envelope_c_m, envelope_c_n, envelope_m_j0, ConstantsReport,
};
pub use kelvin::{kelvin_all, KelvinValues};

pub(crate) use bessel::{i0_raw, j0_raw, k0_raw};
pub(crate) use kelvin::{m0_raw, n0_raw};

use crate::error::{Error, Result};

/// A function value together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialValue<T> {
    pub value: T,
    pub est_abs_error: f64,
}

impl<T> SpecialValue<T> {
    fn new(value: T, est_abs_error: f64) -> Self {
        Self { value, est_abs_error }
    }
}

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> Result<SpecialValue<f64>> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j0: non-finite argument {x}")));
    }
    let (v, e) = j0_raw(x);
    Ok(SpecialValue::new(v, e))
}

/// Which Kelvin function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KelvinKind {
    Ber,
    Bei,
    Ker,
    Kei,
}

impl std::str::FromStr for KelvinKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ber" => Ok(Self::Ber),
            "bei" => Ok(Self::Bei),
            "ker" => Ok(Self::Ker),
            "kei" => Ok(Self::Kei),
            other => Err(Error::Domain(format!("unknown Kelvin function {other:?}"))),
        }
    }
}

/// Kelvin function of order zero at s ≥ 0 (ker requires s > 0).
pub fn kelvin(which: KelvinKind, s: f64) -> Result<SpecialValue<f64>> {
    if which == KelvinKind::Ker && s == 0.0 {
        return Err(Error::Pole("ker has a logarithmic pole at s = 0".into()));
    }
    let kv = kelvin_all(s)?;
    let v = match which {
        KelvinKind::Ber => kv.ber,
        KelvinKind::Bei => kv.bei,
        KelvinKind::Ker => kv.ker,
        KelvinKind::Kei => kv.kei,
    };
    Ok(SpecialValue::new(v, kv.est_abs_error))
}

/// Kelvin amplitude M₀(s) = √(ber² + bei²), s ≥ 0.
pub fn amplitude_m0(s: f64) -> Result<SpecialValue<f64>> {
    let (v, e) = m0_raw(s)?;
    Ok(SpecialValue::new(v, e))
}

/// Kelvin amplitude N₀(s) = √(ker² + kei²), s > 0.
pub fn amplitude_n0(s: f64) -> Result<SpecialValue<f64>> {
    let (v, e) = n0_raw(s)?;
    Ok(SpecialValue::new(v, e))
}

/// Γ(x) for x > 0.
pub fn gamma_fn(x: f64) -> Result<SpecialValue<f64>> {
    let (v, e) = gamma::gamma_raw(x)?;
    Ok(SpecialValue::new(v, e))
}

/// Which modified Bessel function to evaluate on a ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModifiedBesselKind {
    I0,
    K0,
}

/// I₀ or K₀ at z = r·e^{i·phase}, phase ∈ (-π, π).
///
/// K₀ requires r > 0. Accuracy is best on the Kelvin rays (±π/4, ±3π/4) and
/// degrades for large r near ±π/2 where the defining integrals lose their
/// analyticity margin.
pub fn modified_bessel_ray(
    which: ModifiedBesselKind,
    r: f64,
    phase: f64,
) -> Result<SpecialValue<Complex64>> {
    if !(r.is_finite() && phase.is_finite()) {
        return Err(Error::Domain("modified_bessel_ray: non-finite input".into()));
    }
    if r < 0.0 {
        return Err(Error::Domain(format!("modified_bessel_ray: negative modulus {r}")));
    }
    if phase <= -std::f64::consts::PI || phase >= std::f64::consts::PI {
        return Err(Error::Domain(format!(
            "modified_bessel_ray: phase {phase} outside (-π, π)"
        )));
    }
    let z = Complex64::from_polar(r, phase);
    match which {
        ModifiedBesselKind::I0 => {
            let (v, e) = i0_raw(z);
            Ok(SpecialValue::new(v, e))
        }
        ModifiedBesselKind::K0 => {
            let (v, e) = k0_raw(z)?;
            Ok(SpecialValue::new(v, e))
        }
    }
}
