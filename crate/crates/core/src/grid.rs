//! Quadrature grids on [-cutoff, cutoff] graded at the singular point x = 0,
//! and functions sampled on them.
//!
//! The positive side is built from composite Gauss-Legendre panels in the
//! variable u = x^{1/g} (g = grading exponent), which clusters nodes near 0
//! with density ∝ |x|^{-(1-1/g)} and absorbs √|x|-type kernel behaviour for
//! g = 2. The panel adjacent to 0 carries doubled order. The negative side is
//! the exact mirror image, so no node is ever placed at 0 and sgn(x) is
//! always ±1.

use std::io::{BufRead, Write};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::gauss_legendre;

#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    cutoff: f64,
    n_per_side: usize,
    grading_exponent: f64,
}

impl PartialEq for QuadratureGrid {
    fn eq(&self, other: &Self) -> bool {
        self.cutoff == other.cutoff
            && self.n_per_side == other.n_per_side
            && self.grading_exponent == other.grading_exponent
    }
}

/// Build a graded grid. `n_per_side` nodes cover (0, cutoff]; the full grid
/// mirrors them to 2·n_per_side nodes.
pub fn build_grid(cutoff: f64, n_per_side: usize, grading_exponent: f64) -> Result<QuadratureGrid> {
    if !(cutoff.is_finite() && cutoff > 0.0) {
        return Err(Error::Construction(format!("cutoff must be positive, got {cutoff}")));
    }
    if n_per_side < 8 {
        return Err(Error::Construction(format!(
            "n_per_side must be at least 8, got {n_per_side}"
        )));
    }
    if !(grading_exponent.is_finite() && grading_exponent >= 1.0) {
        return Err(Error::Construction(format!(
            "grading exponent must be >= 1, got {grading_exponent}"
        )));
    }
    let order = [16usize, 8, 4]
        .into_iter()
        .find(|q| n_per_side % q == 0 && n_per_side / q >= 3)
        .ok_or_else(|| {
            Error::Construction(format!(
                "n_per_side = {n_per_side} is not a multiple of 4, 8 or 16 with at least 3 panels"
            ))
        })?;

    let g = grading_exponent;
    let u_max = cutoff.powf(1.0 / g);
    let regions = n_per_side / order - 1;
    let mut xs = Vec::with_capacity(n_per_side);
    let mut ws = Vec::with_capacity(n_per_side);
    for r in 0..regions {
        let q = if r == 0 { 2 * order } else { order };
        let (t, w) = gauss_legendre(q);
        let a = u_max * r as f64 / regions as f64;
        let b = u_max * (r + 1) as f64 / regions as f64;
        for (ti, wi) in t.iter().zip(&w) {
            let u = 0.5 * (b - a) * ti + 0.5 * (a + b);
            let du = 0.5 * (b - a) * wi;
            xs.push(u.powf(g));
            ws.push(du * g * u.powf(g - 1.0));
        }
    }
    // enforce the weight-sum identity per side (a no-op for integer g)
    let side_sum: f64 = ws.iter().sum();
    let scale = cutoff / side_sum;
    if !(0.99..=1.01).contains(&scale) {
        return Err(Error::Construction(format!(
            "side weight sum {side_sum} is too far from cutoff {cutoff}"
        )));
    }
    for w in &mut ws {
        *w *= scale;
    }

    let n = 2 * n_per_side;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in (0..n_per_side).rev() {
        nodes.push(-xs[i]);
        weights.push(ws[i]);
    }
    nodes.extend_from_slice(&xs);
    weights.extend_from_slice(&ws);

    Ok(QuadratureGrid { nodes, weights, cutoff, n_per_side, grading_exponent })
}

impl QuadratureGrid {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn n_per_side(&self) -> usize {
        self.n_per_side
    }

    pub fn grading_exponent(&self) -> f64 {
        self.grading_exponent
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Positive-side nodes in ascending order (the second half).
    pub fn positive_nodes(&self) -> &[f64] {
        &self.nodes[self.n_per_side..]
    }

    pub fn positive_weights(&self) -> &[f64] {
        &self.weights[self.n_per_side..]
    }

    /// Index of the mirror node -x_i.
    pub fn mirror(&self, i: usize) -> usize {
        self.nodes.len() - 1 - i
    }

    /// ∫ f(x) dx over the grid.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Complex samples of an L² function on a shared grid.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    grid: Arc<QuadratureGrid>,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn new(grid: Arc<QuadratureGrid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Contract(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Sample a real-valued function.
    pub fn from_real<F: Fn(f64) -> f64>(grid: Arc<QuadratureGrid>, f: F) -> Self {
        let values = grid.nodes().iter().map(|&x| Complex64::new(f(x), 0.0)).collect();
        Self { grid, values }
    }

    /// Sample a complex-valued function.
    pub fn from_complex<F: Fn(f64) -> Complex64>(grid: Arc<QuadratureGrid>, f: F) -> Self {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<QuadratureGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch(
                "operands are sampled on different grids".into(),
            ))
        }
    }
}

/// Weighted inner product Σ wᵢ conj(fᵢ) gᵢ.
pub fn inner(f: &SampledFunction, g: &SampledFunction) -> Result<Complex64> {
    f.check_same_grid(g)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for ((&w, &fv), &gv) in f.grid.weights().iter().zip(&f.values).zip(&g.values) {
        acc += w * fv.conj() * gv;
    }
    Ok(acc)
}

pub fn norm_l2(f: &SampledFunction) -> f64 {
    f.grid
        .weights()
        .iter()
        .zip(&f.values)
        .map(|(&w, v)| w * v.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn norm_l1(f: &SampledFunction) -> f64 {
    f.grid
        .weights()
        .iter()
        .zip(&f.values)
        .map(|(&w, v)| w * v.norm())
        .sum()
}

pub fn norm_linf(f: &SampledFunction) -> f64 {
    f.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Write a sampled function as CSV (node, weight, re, im).
pub fn write_csv<W: Write>(f: &SampledFunction, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "node,weight,re,im")?;
    for ((&x, &w), v) in f.grid.nodes().iter().zip(f.grid.weights()).zip(&f.values) {
        writeln!(out, "{:.17e},{:.17e},{:.17e},{:.17e}", x, w, v.re, v.im)?;
    }
    Ok(())
}

/// Read a sampled function from CSV, checking node agreement with `grid`.
pub fn read_csv<R: BufRead>(grid: Arc<QuadratureGrid>, input: R) -> Result<SampledFunction> {
    let mut values = Vec::with_capacity(grid.len());
    for (lineno, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::Contract(format!("csv read: {e}")))?;
        if lineno == 0 {
            continue; // header
        }
        let parts: Vec<&str> = line.trim().split(',').collect();
        if line.trim().is_empty() {
            continue;
        }
        if parts.len() != 4 {
            return Err(Error::Contract(format!("csv line {lineno}: expected 4 columns")));
        }
        let node: f64 = parts[0].parse().map_err(|_| {
            Error::Contract(format!("csv line {lineno}: bad node {:?}", parts[0]))
        })?;
        let idx = values.len();
        if idx >= grid.len() || (node - grid.nodes()[idx]).abs() > 1e-9 * grid.cutoff() {
            return Err(Error::GridMismatch(format!(
                "csv node {node} at row {idx} does not match the target grid"
            )));
        }
        let re: f64 = parts[2].parse().map_err(|_| {
            Error::Contract(format!("csv line {lineno}: bad re {:?}", parts[2]))
        })?;
        let im: f64 = parts[3].parse().map_err(|_| {
            Error::Contract(format!("csv line {lineno}: bad im {:?}", parts[3]))
        })?;
        values.push(Complex64::new(re, im));
    }
    SampledFunction::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_sum_identity() {
        let g = build_grid(10.0, 64, 2.0).unwrap();
        assert_eq!(g.len(), 128);
        let s: f64 = g.weights().iter().sum();
        assert!((s - 20.0).abs() < 1e-10 * 20.0);
    }

    #[test]
    fn gaussian_integral() {
        // ∫_{-10}^{10} e^{-x²} dx = √π erf(10) ≈ √π to machine precision
        let g = build_grid(10.0, 64, 2.0).unwrap();
        let v = g.integrate(|x| (-x * x).exp());
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn sqrt_singular_integral() {
        // ∫₀^10 x^{-1/2} e^{-x} dx; oracle: lower incomplete gamma via
        // series Γ(1/2)P(1/2,10) = √π erf(√10)
        let g = build_grid(10.0, 64, 2.0).unwrap();
        let v: f64 = g
            .positive_nodes()
            .iter()
            .zip(g.positive_weights())
            .map(|(&x, &w)| w * x.powf(-0.5) * (-x).exp())
            .sum();
        let (oracle, _) = crate::quad::tanh_sinh(|x| x.powf(-0.5) * (-x).exp(), 0.0, 10.0).unwrap();
        assert!((v - oracle).abs() < 1e-8, "{v} vs {oracle}");
    }

    #[test]
    fn mirror_symmetry_exact() {
        let g = build_grid(40.0, 64, 2.0).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.nodes()[i], -g.nodes()[g.mirror(i)]);
            assert_eq!(g.weights()[i], g.weights()[g.mirror(i)]);
        }
        // sampling an even function is exactly mirror symmetric
        let f = SampledFunction::from_real(Arc::new(g), |x| (-x * x).exp());
        let n = f.values().len();
        for i in 0..n {
            assert_eq!(f.values()[i], f.values()[n - 1 - i]);
        }
    }

    #[test]
    fn no_node_at_zero() {
        let g = build_grid(40.0, 128, 2.0).unwrap();
        assert!(g.nodes().iter().all(|&x| x != 0.0));
        // strictly increasing
        assert!(g.nodes().windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn inner_consistency() {
        let g = Arc::new(build_grid(20.0, 64, 2.0).unwrap());
        let f = SampledFunction::from_complex(g.clone(), |x| {
            Complex64::new((-x * x / 4.0).exp(), 0.3 * x * (-x * x / 5.0).exp())
        });
        let ip = inner(&f, &f).unwrap();
        assert!((ip.re - norm_l2(&f).powi(2)).abs() < 1e-12 * ip.re);
        assert!(ip.im.abs() < 1e-14 * ip.re);
    }

    #[test]
    fn grid_mismatch_detected() {
        let g1 = Arc::new(build_grid(20.0, 64, 2.0).unwrap());
        let g2 = Arc::new(build_grid(20.0, 32, 2.0).unwrap());
        let f1 = SampledFunction::from_real(g1, |x| x);
        let f2 = SampledFunction::from_real(g2, |x| x);
        assert!(inner(&f1, &f2).is_err());
    }

    #[test]
    fn degenerate_parameters_rejected() {
        assert!(build_grid(-1.0, 64, 2.0).is_err());
        assert!(build_grid(10.0, 4, 2.0).is_err());
        assert!(build_grid(10.0, 64, 0.5).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let g = Arc::new(build_grid(10.0, 32, 2.0).unwrap());
        let f = SampledFunction::from_complex(g.clone(), |x| Complex64::new(x.sin(), x.cos()));
        let mut buf = Vec::new();
        write_csv(&f, &mut buf).unwrap();
        let back = read_csv(g, std::io::BufReader::new(&buf[..])).unwrap();
        for (a, b) in f.values().iter().zip(back.values()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn refinement_convergence_order() {
        // an oscillatory integrand is marginally resolved at 32 nodes per
        // side; the next doubling must shrink the change by far more than 4^4
        let f = |x: f64| (-x * x).exp() * (6.0 * x).cos();
        let vals: Vec<f64> = [32, 64, 128]
            .iter()
            .map(|&n| build_grid(10.0, n, 2.0).unwrap().integrate(f))
            .collect();
        let d1 = (vals[1] - vals[0]).abs();
        let d2 = (vals[2] - vals[1]).abs();
        assert!(d2 < d1 / 256.0 + 1e-15, "d1 = {d1}, d2 = {d2}");
    }
}
