//! Quadrature primitives: Gauss-Legendre nodes/weights and double-exponential
//! rules for singular and semi-infinite integrals.

use crate::error::{Error, Result};

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi-style initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and its derivative
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    // odd n: center node is exactly 0
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Tanh-sinh (double-exponential) quadrature of f on the open interval (a, b).
///
/// Handles integrable endpoint singularities of algebraic or logarithmic type.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let t_max = 3.8f64;
    let eval = |h: f64| -> f64 {
        let mut sum = 0.0;
        let mut k = 0i64;
        loop {
            let t = k as f64 * h;
            if t > t_max {
                break;
            }
            let (pi_half, s) = (std::f64::consts::FRAC_PI_2, t.sinh());
            let w = pi_half * s;
            // 1 - tanh(w) = 2/(e^{2w} + 1), kept explicit so endpoint
            // distances stay fully accurate for singular integrands
            let one_minus_x = 2.0 / ((2.0 * w).exp() + 1.0);
            let dx = pi_half * t.cosh() / w.cosh().powi(2);
            let terms = if k == 0 {
                f(c) * dx
            } else {
                let xp = b - half * one_minus_x;
                let xm = a + half * one_minus_x;
                let mut acc = 0.0;
                if xp > a && xp < b {
                    let v = f(xp);
                    if v.is_finite() {
                        acc += v * dx;
                    }
                }
                if xm > a && xm < b {
                    let v = f(xm);
                    if v.is_finite() {
                        acc += v * dx;
                    }
                }
                acc
            };
            sum += terms;
            k += 1;
        }
        sum * h * half
    };
    let mut h = 0.5;
    let mut prev = eval(h);
    for level in 0..8 {
        h *= 0.5;
        let cur = eval(h);
        let change = (cur - prev).abs();
        prev = cur;
        if level >= 2 && change < 1e-14 * prev.abs().max(1e-12) {
            return Ok((cur, change));
        }
        if level == 7 {
            return Ok((cur, change));
        }
    }
    unreachable!()
}

/// Exp-sinh (double-exponential) quadrature of f on (0, ∞).
///
/// Requires f integrable at 0 (algebraic singularities allowed) and decaying
/// at infinity faster than 1/x. Returns `Divergence` when refinement fails to
/// stabilise.
pub fn exp_sinh<F: Fn(f64) -> f64>(f: F, scale: f64) -> Result<(f64, f64)> {
    let t_max = 4.3f64;
    let eval = |h: f64| -> f64 {
        let mut sum = 0.0;
        let mut k = -((t_max / h) as i64);
        while (k as f64) * h <= t_max {
            let t = k as f64 * h;
            let s = std::f64::consts::FRAC_PI_2 * t.sinh();
            let x = scale * s.exp();
            let dx = scale * std::f64::consts::FRAC_PI_2 * t.cosh() * s.exp();
            if x.is_finite() && dx.is_finite() && dx > 0.0 {
                let v = f(x);
                if v.is_finite() {
                    sum += v * dx;
                }
            }
            k += 1;
        }
        sum * h
    };
    let mut h = 0.5;
    let mut prev = eval(h);
    let mut last_change = f64::INFINITY;
    for level in 0..9 {
        h *= 0.5;
        let cur = eval(h);
        let change = (cur - prev).abs();
        prev = cur;
        last_change = change;
        if level >= 2 && change < 1e-13 * prev.abs().max(1e-12) {
            return Ok((cur, change));
        }
    }
    if last_change > 1e-5 * prev.abs().max(1.0) {
        return Err(Error::Divergence(format!(
            "exp_sinh failed to stabilise: value {prev}, last change {last_change}"
        )));
    }
    Ok((prev, last_change))
}
