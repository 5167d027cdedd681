//! The unitary involution B, the free operator T = -BxB, explicit resolvent
//! kernels, and the translation between the shifted picture and the physical
//! thermal picture.
//!
//! B has kernel i·(sgn x - sgn y)/2 · J₀(2√|xy|), which vanishes on
//! same-sign pairs. On a sign-symmetric grid the discretised operator is a
//! pair of antidiagonal blocks built from one real symmetric matrix of J₀
//! values over the positive nodes; that block is cached here and reused by
//! the propagators, the resolvent cross-check, and the perturbation module.

use std::sync::{Arc, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{QuadratureGrid, SampledFunction};
use crate::specfun::{i0_raw, j0_raw, k0_raw, kelvin_all};

/// Pointwise kernel of B. Zero when sgn x = sgn y; purely imaginary otherwise.
pub fn kernel_b(x: f64, y: f64) -> Result<Complex64> {
    if x == 0.0 || y == 0.0 {
        return Err(Error::Domain("kernel_b: coordinates must be nonzero".into()));
    }
    let s = (x.signum() - y.signum()) * 0.5;
    if s == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (j, _) = j0_raw(2.0 * (x * y).abs().sqrt());
    Ok(Complex64::new(0.0, s * j))
}

/// Discretised B on a fixed grid, with the positive-block J₀ matrix cached.
pub struct DiscreteB {
    grid: Arc<QuadratureGrid>,
    /// jblock[a * n + b] = J₀(2√(x⁺_a x⁺_b)), symmetric, n = n_per_side.
    jblock: Vec<f64>,
    t_matrix: OnceLock<DMatrix<f64>>,
}

impl DiscreteB {
    pub fn new(grid: Arc<QuadratureGrid>) -> Self {
        let pos = grid.positive_nodes();
        let n = pos.len();
        let mut jblock = vec![0.0; n * n];
        jblock
            .par_chunks_mut(n)
            .enumerate()
            .for_each(|(a, row)| {
                let xa = pos[a];
                for (b, slot) in row.iter_mut().enumerate() {
                    if b < a {
                        continue; // filled by symmetry below
                    }
                    *slot = j0_raw(2.0 * (xa * pos[b]).sqrt()).0;
                }
            });
        for a in 0..n {
            for b in 0..a {
                jblock[a * n + b] = jblock[b * n + a];
            }
        }
        Self { grid, jblock, t_matrix: OnceLock::new() }
    }

    pub fn grid(&self) -> &Arc<QuadratureGrid> {
        &self.grid
    }

    /// Apply B to raw values (index order matches the grid nodes).
    pub fn apply_raw(&self, f: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.n_per_side();
        let wp = self.grid.positive_weights();
        let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
        // magnitude-ordered views of the two halves
        let (neg, pos) = f.split_at(n);
        let (out_neg, out_pos) = out.split_at_mut(n);
        out_pos
            .par_iter_mut()
            .enumerate()
            .for_each(|(a, slot)| {
                // x > 0 couples to y < 0: B = +i J₀
                let row = &self.jblock[a * n..(a + 1) * n];
                let mut acc = Complex64::new(0.0, 0.0);
                for b in 0..n {
                    acc += row[b] * wp[b] * neg[n - 1 - b];
                }
                *slot = Complex64::new(-acc.im, acc.re);
            });
        out_neg
            .par_iter_mut()
            .enumerate()
            .for_each(|(i, slot)| {
                // x < 0 couples to y > 0: B = -i J₀
                let a = n - 1 - i;
                let row = &self.jblock[a * n..(a + 1) * n];
                let mut acc = Complex64::new(0.0, 0.0);
                for b in 0..n {
                    acc += row[b] * wp[b] * pos[b];
                }
                *slot = Complex64::new(acc.im, -acc.re);
            });
        out
    }

    pub fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        if f.grid().as_ref() != self.grid.as_ref() {
            return Err(Error::GridMismatch("apply_b: foreign grid".into()));
        }
        SampledFunction::new(self.grid.clone(), self.apply_raw(f.values()))
    }

    /// T f = -B (x · (B f)).
    pub fn apply_t_raw(&self, f: &[Complex64]) -> Vec<Complex64> {
        let mut mid = self.apply_raw(f);
        for (v, &x) in mid.iter_mut().zip(self.grid.nodes()) {
            *v *= x;
        }
        let mut out = self.apply_raw(&mid);
        for v in &mut out {
            *v = -*v;
        }
        out
    }

    pub fn apply_t(&self, f: &SampledFunction) -> Result<SampledFunction> {
        if f.grid().as_ref() != self.grid.as_ref() {
            return Err(Error::GridMismatch("apply_t: foreign grid".into()));
        }
        SampledFunction::new(self.grid.clone(), self.apply_t_raw(f.values()))
    }

    /// Symmetrised real matrix R with B = iR, R antisymmetric,
    /// R[i][j] = (sgn xᵢ - sgn xⱼ)/2 · J₀(2√|xᵢxⱼ|) √(wᵢwⱼ).
    pub fn r_matrix(&self) -> DMatrix<f64> {
        let n = self.grid.n_per_side();
        let total = 2 * n;
        let w = self.grid.weights();
        let mut m = DMatrix::<f64>::zeros(total, total);
        for i in 0..n {
            // row i is a negative node of magnitude index a = n-1-i
            let a = n - 1 - i;
            for b in 0..n {
                let j = n + b;
                let val = -self.jblock[a * n + b] * (w[i] * w[j]).sqrt();
                m[(i, j)] = val;
                m[(j, i)] = -val;
            }
        }
        m
    }

    /// Symmetrised T = R x R (real symmetric matrix).
    pub fn t_matrix(&self) -> &DMatrix<f64> {
        self.t_matrix.get_or_init(|| {
            let r = self.r_matrix();
            let mut xr = r.clone();
            for (i, mut row) in xr.row_iter_mut().enumerate() {
                let x = self.grid.nodes()[i];
                for v in row.iter_mut() {
                    *v *= x;
                }
            }
            &r * xr
        })
    }

    /// Resolvent by functional calculus: R_z = B (-x - z)^{-1} B.
    ///
    /// Exact in the discrete model; serves as the cross-validation route for
    /// the explicit kernel.
    pub fn resolvent_bconj_raw(&self, z: Complex64, f: &[Complex64]) -> Result<Vec<Complex64>> {
        if z.im == 0.0 {
            return Err(Error::Domain("resolvent: z must be off the real axis".into()));
        }
        let mut mid = self.apply_raw(f);
        for (v, &x) in mid.iter_mut().zip(self.grid.nodes()) {
            *v /= Complex64::new(-x - z.re, -z.im);
        }
        Ok(self.apply_raw(&mid))
    }
}

/// Resolvent kernel F_z(x, y) for z off the real axis (Im z ≠ 0).
///
/// F_z = I₀(2√(|z| min(|x|,|y|)) e^{iθ}) · K₀(2√(|z| max(|x|,|y|)) e^{iθ})
/// with θ = ±(φ/2 - (π/4)(sgn x + 1)), the sign following Im z and
/// z = |z| e^{±iφ}, 0 < φ < π.
pub fn kernel_f(z: Complex64, x: f64, y: f64) -> Result<Complex64> {
    if z.im == 0.0 {
        return Err(Error::Domain("kernel_f: z must be off the real axis".into()));
    }
    if x == 0.0 || y == 0.0 {
        return Err(Error::Domain("kernel_f: coordinates must be nonzero".into()));
    }
    let theta = ray_phase(z, x.signum());
    let rz = z.norm();
    let (lo, hi) = (x.abs().min(y.abs()), x.abs().max(y.abs()));
    let i0 = i0_raw(Complex64::from_polar(2.0 * (rz * lo).sqrt(), theta)).0;
    let k0 = k0_raw(Complex64::from_polar(2.0 * (rz * hi).sqrt(), theta))?.0;
    Ok(i0 * k0)
}

/// Modulus kernel |F|(x, y) = M₀(2√min(|x|,|y|)) · N₀(2√max(|x|,|y|)).
pub fn kernel_f_abs(x: f64, y: f64) -> Result<f64> {
    if x == 0.0 || y == 0.0 {
        return Err(Error::Domain("kernel_f_abs: coordinates must be nonzero".into()));
    }
    let (lo, hi) = (x.abs().min(y.abs()), x.abs().max(y.abs()));
    let kv_lo = kelvin_all(2.0 * lo.sqrt())?;
    let kv_hi = kelvin_all(2.0 * hi.sqrt())?;
    Ok(kv_lo.ber.hypot(kv_lo.bei) * kv_hi.ker.hypot(kv_hi.kei))
}

/// The ray angle θ entering both Bessel factors of F_z.
fn ray_phase(z: Complex64, sign_x: f64) -> f64 {
    let phi = z.arg().abs(); // z = |z| e^{±iφ}, φ ∈ (0, π)
    let base = 0.5 * phi - std::f64::consts::FRAC_PI_4 * (sign_x + 1.0);
    if z.im > 0.0 {
        base
    } else {
        -base
    }
}

/// Per-grid factorised evaluation of the resolvent kernel on one sign half.
struct HalfKernel {
    i0: Vec<Complex64>,
    k0: Vec<Complex64>,
}

fn half_kernel(grid: &QuadratureGrid, z: Complex64, sign_x: f64) -> Result<HalfKernel> {
    let theta = ray_phase(z, sign_x);
    let rz = z.norm();
    let pos = grid.positive_nodes();
    let mut i0 = Vec::with_capacity(pos.len());
    let mut k0 = Vec::with_capacity(pos.len());
    for &x in pos {
        let arg = 2.0 * (rz * x).sqrt();
        i0.push(i0_raw(Complex64::from_polar(arg, theta)).0);
        k0.push(k0_raw(Complex64::from_polar(arg, theta))?.0);
    }
    Ok(HalfKernel { i0, k0 })
}

/// Apply the resolvent R_z(T) through its explicit kernel:
/// (R_z f)(x) = Σ_j w_j (sgn x + sgn x_j) F_z(x, x_j) f(x_j).
///
/// Only same-sign pairs contribute; prefix sums over the min/max split give
/// an O(n) evaluation per node.
pub fn apply_resolvent(
    b: &DiscreteB,
    z: Complex64,
    f: &SampledFunction,
) -> Result<SampledFunction> {
    if f.grid().as_ref() != b.grid().as_ref() {
        return Err(Error::GridMismatch("apply_resolvent: foreign grid".into()));
    }
    let grid = b.grid();
    let n = grid.n_per_side();
    let wp = grid.positive_weights();
    let vals = f.values();
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];

    for (sign_x, (idx_of_mag, out_range)) in [
        (1.0, (None, n..2 * n)),
        (-1.0, (Some(()), 0..n)),
    ] {
        let hk = half_kernel(grid, z, sign_x)?;
        // values of f on this half, in magnitude order
        let fv: Vec<Complex64> = (0..n)
            .map(|a| {
                if sign_x > 0.0 {
                    vals[n + a]
                } else {
                    vals[n - 1 - a]
                }
            })
            .collect();
        // prefix[a] = Σ_{b<=a} i0[b] w[b] f[b];  suffix[a] = Σ_{b>=a} k0[b] w[b] f[b]
        let mut prefix = vec![Complex64::new(0.0, 0.0); n];
        let mut acc = Complex64::new(0.0, 0.0);
        for bidx in 0..n {
            acc += hk.i0[bidx] * wp[bidx] * fv[bidx];
            prefix[bidx] = acc;
        }
        let mut suffix = vec![Complex64::new(0.0, 0.0); n + 1];
        let mut acc = Complex64::new(0.0, 0.0);
        for bidx in (0..n).rev() {
            acc += hk.k0[bidx] * wp[bidx] * fv[bidx];
            suffix[bidx] = acc;
        }
        for a in 0..n {
            // sgn x + sgn y = ±2 on same-sign pairs
            let v = 2.0 * sign_x * (hk.k0[a] * prefix[a] + hk.i0[a] * (suffix[a + 1]));
            let slot = if idx_of_mag.is_none() {
                out_range.start + a
            } else {
                n - 1 - a
            };
            out[slot] = v;
        }
    }
    SampledFunction::new(grid.clone(), out)
}

/// Physical-picture parameters: coupling λ > 0 and critical point x_c = -1/λ.
#[derive(Debug, Clone, Copy)]
pub struct ThermalPicture {
    lambda: f64,
}

impl ThermalPicture {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::Construction(format!("lambda must be positive, got {lambda}")));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn x_c(&self) -> f64 {
        -1.0 / self.lambda
    }

    /// Deficiency-type profiles (κ₀, κ₁) at x ≠ x_c:
    /// κ₀ = -√(8/π) sgn(x - x_c) kei(2√|x - x_c|),
    /// κ₁ = +√(8/π) ker(2√|x - x_c|).
    pub fn kappa_pair(&self, x: f64) -> Result<(f64, f64)> {
        let u = x - self.x_c();
        if u == 0.0 {
            return Err(Error::Pole("kappa_pair: ker pole at the critical point".into()));
        }
        let kv = kelvin_all(2.0 * u.abs().sqrt())?;
        let c = (8.0 / std::f64::consts::PI).sqrt();
        Ok((-c * u.signum() * kv.kei, c * kv.ker))
    }

    /// Combined potential W_V(x) = (1 + λx) V(x).
    pub fn w_v<F: Fn(f64) -> f64 + 'static>(&self, v: F) -> impl Fn(f64) -> f64 {
        let lambda = self.lambda;
        move |x| (1.0 + lambda * x) * v(x)
    }

    /// Transported potential Ŵ(x) = λ · W(x - x_c).
    pub fn transport_potential<F: Fn(f64) -> f64 + 'static>(&self, w: F) -> impl Fn(f64) -> f64 {
        let lambda = self.lambda;
        let xc = self.x_c();
        move |x| lambda * w(x - xc)
    }
}

/// Result of a picture shift, with the mass lost past the cutoff.
#[derive(Debug, Clone)]
pub struct ShiftedFunction {
    pub f: SampledFunction,
    pub truncated_mass_fraction: f64,
    pub truncation_warning: bool,
}

/// Shift (S_λ f)(x) = f(x + x_c), realised by one-sided cubic interpolation
/// on the graded grid. Mass moved past the cutoff is reported, not an error.
pub fn to_physical(f: &SampledFunction, picture: &ThermalPicture) -> Result<ShiftedFunction> {
    shift_by(f, picture.x_c())
}

/// Inverse shift (S_λ* f)(x) = f(x - x_c).
pub fn from_physical(f: &SampledFunction, picture: &ThermalPicture) -> Result<ShiftedFunction> {
    shift_by(f, -picture.x_c())
}

fn shift_by(f: &SampledFunction, delta: f64) -> Result<ShiftedFunction> {
    let grid = f.grid().clone();
    let nodes = grid.nodes();
    let vals = f.values();
    let total_mass: f64 = grid
        .weights()
        .iter()
        .zip(vals)
        .map(|(&w, v)| w * v.norm_sqr())
        .sum();
    let mut out = Vec::with_capacity(nodes.len());
    for &x in nodes {
        let target = x + delta;
        if target.abs() > grid.cutoff() {
            out.push(Complex64::new(0.0, 0.0));
            continue;
        }
        out.push(interp_cubic(nodes, vals, target));
    }
    let new_mass: f64 = grid
        .weights()
        .iter()
        .zip(&out)
        .map(|(&w, v)| w * v.norm_sqr())
        .sum();
    let lost = ((total_mass - new_mass) / total_mass.max(1e-300)).max(0.0);
    let shifted = SampledFunction::new(grid, out)?;
    Ok(ShiftedFunction {
        f: shifted,
        truncated_mass_fraction: lost,
        truncation_warning: lost > 1e-6,
    })
}

/// One-sided 4-point Lagrange interpolation; the stencil never crosses 0, so
/// jump discontinuities at the critical point are not smeared.
fn interp_cubic(nodes: &[f64], vals: &[Complex64], target: f64) -> Complex64 {
    let n = nodes.len();
    // restrict to the half containing the target
    let (lo, hi) = if target >= 0.0 { (n / 2, n) } else { (0, n / 2) };
    let seg = &nodes[lo..hi];
    let pos = seg.partition_point(|&x| x < target);
    let start = (lo + pos).saturating_sub(2).clamp(lo, hi.saturating_sub(4));
    let idx = [start, start + 1, start + 2, start + 3];
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &i) in idx.iter().enumerate() {
        let mut l = 1.0;
        for (m, &j) in idx.iter().enumerate() {
            if m != k {
                l *= (target - nodes[j]) / (nodes[i] - nodes[j]);
            }
        }
        acc += l * vals[i];
    }
    acc
}
