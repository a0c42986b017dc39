//! Trapezoidal quadrature on circles and periodic curves.
//!
//! On a circle `|z| = R` the trapezoidal rule with `M` nodes turns Laurent
//! coefficient extraction into a discrete Fourier transform; for analytic
//! integrands it converges geometrically.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{FwError, Result};

/// Node counts and stopping tolerance for adaptive trapezoidal rules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    pub min_nodes: usize,
    pub max_nodes: usize,
    /// Stop when successive refinements differ by at most `tol` (relative).
    pub tol: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            min_nodes: 64,
            max_nodes: 1 << 16,
            tol: 1e-11,
        }
    }
}

impl QuadratureOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_min_nodes(mut self, n: usize) -> Self {
        self.min_nodes = n;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.min_nodes < 8 || !self.min_nodes.is_power_of_two() {
            return Err(FwError::invalid(format!(
                "node count {} must be a power of two >= 8",
                self.min_nodes
            )));
        }
        if self.max_nodes < self.min_nodes {
            return Err(FwError::invalid("node cap below starting node count"));
        }
        Ok(())
    }
}

/// `exp(2 pi i k / m)` for `k = 0..m`.
pub(crate) fn roots_of_unity(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
        .collect()
}

/// `(1/M) sum_j f_j exp(-i e theta_j)` for every requested exponent `e`.
pub(crate) fn fourier_coeffs(samples: &[Complex64], exponents: &[i64]) -> Vec<Complex64> {
    let m = samples.len();
    let roots = roots_of_unity(m);
    let mi = m as i64;
    exponents
        .iter()
        .map(|&e| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &f) in samples.iter().enumerate() {
                let k = (-(e * j as i64)).rem_euclid(mi) as usize;
                acc += f * roots[k];
            }
            acc / m as f64
        })
        .collect()
}

/// Samples `f` on `M` equispaced nodes of `|z| = radius`, reusing the
/// previous (coarser) sample set when it is a subset.
fn refine_samples<F>(
    f: &F,
    radius: f64,
    previous: Option<Vec<Complex64>>,
    m: usize,
) -> Result<Vec<Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let node = |j: usize| Complex64::from_polar(radius, 2.0 * PI * j as f64 / m as f64);
    match previous {
        Some(prev) if prev.len() * 2 == m => {
            let odd: Vec<Complex64> = (0..m / 2)
                .into_par_iter()
                .map(|j| f(node(2 * j + 1)))
                .collect::<Result<_>>()?;
            let mut out = Vec::with_capacity(m);
            for (a, b) in prev.into_iter().zip(odd) {
                out.push(a);
                out.push(b);
            }
            Ok(out)
        }
        _ => (0..m).into_par_iter().map(|j| f(node(j))).collect(),
    }
}

/// Laurent coefficients of `f` on the annulus containing `|z| = radius`.
///
/// Returns `(pos, neg)` with `pos[e]` the coefficient of `z^e`, `e = 0..=max_pos`,
/// and `neg[k-1]` the coefficient of `z^{-k}`, `k = 1..=max_neg`. Nodes are
/// doubled until the Fourier coefficients change by at most
/// `opts.tol * max|f|` on the circle.
pub fn laurent_on_circle<F>(
    f: F,
    radius: f64,
    max_pos: usize,
    max_neg: usize,
    opts: QuadratureOptions,
) -> Result<(Vec<Complex64>, Vec<Complex64>)>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    opts.validate()?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(FwError::invalid(format!(
            "circle radius {radius} must be positive"
        )));
    }
    let exps: Vec<i64> = (-(max_neg as i64)..=max_pos as i64).collect();
    let needed = (2 * exps.len()).next_power_of_two();
    let mut m = opts.min_nodes.max(needed);
    let mut samples: Option<Vec<Complex64>> = None;
    let mut prev: Option<Vec<Complex64>> = None;
    let mut iterations = 0;
    while m <= opts.max_nodes.max(needed) {
        let s = refine_samples(&f, radius, samples.take(), m)?;
        let scale = s
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let fc = fourier_coeffs(&s, &exps);
        if let Some(p) = &prev {
            let change = fc
                .iter()
                .zip(p.iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if change <= opts.tol * scale {
                return Ok(split_scaled(&fc, radius, max_pos, max_neg));
            }
        }
        prev = Some(fc);
        samples = Some(s);
        m *= 2;
        iterations += 1;
    }
    Err(FwError::no_convergence(
        "circle Laurent extraction",
        iterations,
    ))
}

fn split_scaled(
    fc: &[Complex64],
    radius: f64,
    max_pos: usize,
    max_neg: usize,
) -> (Vec<Complex64>, Vec<Complex64>) {
    // fc[i] belongs to exponent i - max_neg
    let neg = (1..=max_neg)
        .map(|k| fc[max_neg - k] * radius.powi(k as i32))
        .collect();
    let pos = (0..=max_pos)
        .map(|e| fc[max_neg + e] / radius.powi(e as i32))
        .collect();
    (pos, neg)
}

/// Spectral derivative `dz/dt` of a closed curve sampled at `t_j = 2 pi j / M`.
pub fn periodic_derivative(points: &[Complex64]) -> Vec<Complex64> {
    let m = points.len();
    if m < 3 {
        return vec![Complex64::new(0.0, 0.0); m];
    }
    let half = (m / 2) as i64;
    let exps: Vec<i64> = (-half + 1..half).collect();
    let fc = fourier_coeffs(points, &exps);
    let roots = roots_of_unity(m);
    (0..m)
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (&e, &c) in exps.iter().zip(fc.iter()) {
                let k = (e * j as i64).rem_euclid(m as i64) as usize;
                acc += Complex64::new(0.0, e as f64) * c * roots[k];
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_laurent_polynomial() {
        let f = |z: Complex64| -> Result<Complex64> {
            Ok(z * z * 2.0 + z * Complex64::new(0.0, 1.0) - 3.0 + z.inv() * 0.5)
        };
        let (pos, neg) = laurent_on_circle(f, 1.7, 3, 2, QuadratureOptions::default()).unwrap();
        assert!((pos[0] + 3.0).norm() < 1e-13);
        assert!((pos[1] - Complex64::new(0.0, 1.0)).norm() < 1e-13);
        assert!((pos[2] - 2.0).norm() < 1e-13);
        assert!(pos[3].norm() < 1e-13);
        assert!((neg[0] - 0.5).norm() < 1e-13);
        assert!(neg[1].norm() < 1e-13);
    }

    #[test]
    fn doubles_until_geometric_tail_resolves() {
        // 1/(z - 0.9) = sum 0.9^{k-1} z^{-k} on |z| = 1
        let f = |z: Complex64| Ok((z - 0.9).inv());
        let (_, neg) = laurent_on_circle(f, 1.0, 0, 5, QuadratureOptions::default()).unwrap();
        for (k, c) in neg.iter().enumerate() {
            assert!((c - 0.9f64.powi(k as i32)).norm() < 1e-9);
        }
    }

    #[test]
    fn node_cap_reports_non_convergence() {
        let f = |z: Complex64| Ok((z - 0.999999).inv());
        let opts = QuadratureOptions {
            min_nodes: 64,
            max_nodes: 256,
            tol: 1e-14,
        };
        let err = laurent_on_circle(f, 1.0, 0, 3, opts).unwrap_err();
        assert!(err.is_numerical());
    }

    #[test]
    fn spectral_derivative_of_circle() {
        let m = 32;
        let pts: Vec<Complex64> = (0..m)
            .map(|j| Complex64::from_polar(2.0, 2.0 * PI * j as f64 / m as f64))
            .collect();
        let d = periodic_derivative(&pts);
        for (p, dp) in pts.iter().zip(d.iter()) {
            assert!((dp - Complex64::new(0.0, 1.0) * p).norm() < 1e-12);
        }
    }
}
