//! Kelvin functions of order zero and the amplitude functions M₀, N₀.
//!
//! For s ≤ 8 the ascending series are used directly. Beyond the switch the
//! values come from the connection with the modified Bessel functions on the
//! π/4 ray: ber + i·bei = I₀(s e^{iπ/4}), ker + i·kei = K₀(s e^{iπ/4}).

use num_complex::Complex64;

use super::bessel::{i0_raw, k0_raw, EULER_GAMMA, SERIES_SWITCH};
use crate::error::{Error, Result};

const EPS: f64 = 2.2e-16;

/// All four order-0 Kelvin functions at once, with an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct KelvinValues {
    pub ber: f64,
    pub bei: f64,
    pub ker: f64,
    pub kei: f64,
    pub est_abs_error: f64,
}

fn kelvin_series(s: f64) -> KelvinValues {
    // c = (s/2)^2; ber collects even powers, bei odd powers of c
    let c = 0.25 * s * s;
    let mut ber = 1.0f64;
    let mut bei = 0.0f64;
    let mut ker_sum = 0.0f64; // Σ (-1)^k (H_{2k} - γ) c^{2k} / ((2k)!)²
    let mut kei_sum = 0.0f64; // Σ (-1)^k (H_{2k+1} - γ) c^{2k+1} / ((2k+1)!)²
    let mut abs_acc = 1.0f64;

    let mut pow = 1.0f64; // c^m / (m!)²
    let mut harmonic = 0.0f64; // H_m
    for m in 1..200 {
        pow *= c / ((m * m) as f64);
        harmonic += 1.0 / m as f64;
        if m % 2 == 0 {
            let sign = if m % 4 == 2 { -1.0 } else { 1.0 };
            ber += sign * pow;
            ker_sum += sign * pow * (harmonic - EULER_GAMMA);
        } else {
            let sign = if m % 4 == 1 { 1.0 } else { -1.0 };
            bei += sign * pow;
            kei_sum += sign * pow * (harmonic - EULER_GAMMA);
        }
        abs_acc += pow * (1.0 + harmonic);
        if pow * (1.0 + harmonic) < 1e-18 * abs_acc {
            break;
        }
    }
    // k = 0 terms of the ker/kei auxiliary sums
    ker_sum += -EULER_GAMMA;

    let pi4 = std::f64::consts::FRAC_PI_4;
    let (ker, kei) = if s > 0.0 {
        let lg = (0.5 * s).ln();
        (-lg * ber + pi4 * bei + ker_sum, -lg * bei - pi4 * ber + kei_sum)
    } else {
        (f64::INFINITY, -pi4)
    };
    KelvinValues {
        ber,
        bei,
        ker,
        kei,
        est_abs_error: abs_acc * EPS * 8.0 * (1.0 + (0.5 * s).ln().abs()),
    }
}

fn kelvin_bessel(s: f64) -> Result<KelvinValues> {
    let z = Complex64::from_polar(s, std::f64::consts::FRAC_PI_4);
    let (be, be_err) = i0_raw(z);
    let (ke, ke_err) = k0_raw(z)?;
    Ok(KelvinValues {
        ber: be.re,
        bei: be.im,
        ker: ke.re,
        kei: ke.im,
        est_abs_error: be_err.max(ke_err),
    })
}

/// Evaluate ber, bei, ker, kei at s ≥ 0.
///
/// ker has a logarithmic pole at s = 0 (reported as +∞ there; use
/// [`crate::specfun::kelvin`] for the contract-checked scalar interface).
pub fn kelvin_all(s: f64) -> Result<KelvinValues> {
    if !s.is_finite() {
        return Err(Error::Domain(format!("kelvin: non-finite argument {s}")));
    }
    if s < 0.0 {
        return Err(Error::Domain(format!("kelvin: negative argument {s}")));
    }
    if s <= SERIES_SWITCH {
        Ok(kelvin_series(s))
    } else {
        kelvin_bessel(s)
    }
}

/// M₀(s) = √(ber² + bei²).
pub fn m0_raw(s: f64) -> Result<(f64, f64)> {
    let kv = kelvin_all(s)?;
    Ok((kv.ber.hypot(kv.bei), kv.est_abs_error))
}

/// N₀(s) = √(ker² + kei²); requires s > 0 (log pole of ker).
pub fn n0_raw(s: f64) -> Result<(f64, f64)> {
    if s <= 0.0 {
        return Err(Error::Pole("N0 inherits the ker pole at s = 0".into()));
    }
    let kv = kelvin_all(s)?;
    Ok((kv.ker.hypot(kv.kei), kv.est_abs_error))
}
