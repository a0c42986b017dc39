use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{FwError, Result};
use crate::lemniscatic::FocusSequence;
use crate::maps::ConformalPair;
use crate::poly::Poly;
use crate::quadrature::roots_of_unity;

/// Circle `|zeta| = radius` in the `z`-plane on which Cauchy integrals are
/// evaluated, plus the node schedule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourOptions {
    /// Defaults to `1.2 * bounding_radius(E) + 0.1`.
    pub radius: Option<f64>,
    pub min_nodes: usize,
    pub max_nodes: usize,
    /// Stop once coefficients move by at most `tol * max(1, max|coeff|)`.
    pub tol: f64,
}

impl Default for ContourOptions {
    fn default() -> Self {
        ContourOptions {
            radius: None,
            min_nodes: 64,
            max_nodes: 1 << 16,
            tol: 1e-9,
        }
    }
}

impl ContourOptions {
    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.min_nodes = nodes;
        self
    }

    pub(crate) fn resolve_radius(&self, pair: &ConformalPair) -> Result<f64> {
        let bound = pair.set().bounding_radius()?;
        let r = self.radius.unwrap_or(1.2 * bound + 0.1);
        if !(r > bound) || !r.is_finite() {
            return Err(FwError::invalid(format!(
                "contour radius {r} does not enclose E (bounding radius {bound})"
            )));
        }
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        if self.min_nodes < 64 || !self.min_nodes.is_power_of_two() {
            return Err(FwError::invalid(format!(
                "node count {} must be a power of two >= 64",
                self.min_nodes
            )));
        }
        Ok(())
    }
}

/// `b_k` from the Cauchy integral `(1/2 pi i) int u_k(Phi(zeta)) / (zeta - z)`
/// over a circle around `E`. The integral is evaluated by the trapezoidal rule
/// at `k + 1` points `z_j = r e^{2 pi i j/(k+1)}` inside the circle, and the
/// coefficients follow by an inverse DFT of these values.
pub fn fw_contour(
    pair: &ConformalPair,
    seq: &FocusSequence,
    k: usize,
    opts: ContourOptions,
) -> Result<Poly> {
    opts.validate()?;
    if k > seq.len() {
        return Err(FwError::invalid(format!(
            "b_{k} needs {k} sequence entries"
        )));
    }
    let radius = opts.resolve_radius(pair)?;
    let alphas = seq.points(pair.domain(), k);
    let integrand = |zeta: Complex64| -> Result<Complex64> {
        let w = pair.phi(zeta)?;
        Ok(alphas.iter().map(|a| w - a).product())
    };
    let n = k + 1;
    let inner = 0.75 * radius;
    let targets: Vec<Complex64> = roots_of_unity(n).into_iter().map(|u| u * inner).collect();

    let mut m = opts.min_nodes;
    let mut samples: Vec<Complex64> = Vec::new();
    let mut prev: Option<Vec<Complex64>> = None;
    let mut rounds = 0;
    while m <= opts.max_nodes {
        let node = |j: usize| Complex64::from_polar(radius, 2.0 * PI * j as f64 / m as f64);
        samples = if samples.len() * 2 == m {
            let odd: Vec<Complex64> = (0..m / 2)
                .into_par_iter()
                .map(|j| integrand(node(2 * j + 1)))
                .collect::<Result<_>>()?;
            samples.iter().zip(odd).flat_map(|(&a, b)| [a, b]).collect()
        } else {
            (0..m)
                .into_par_iter()
                .map(|j| integrand(node(j)))
                .collect::<Result<_>>()?
        };
        // (1/2 pi i) int f/(zeta - z) dzeta = (1/M) sum f_j zeta_j / (zeta_j - z)
        let values: Vec<Complex64> = targets
            .iter()
            .map(|&z| {
                let s: Complex64 = samples
                    .iter()
                    .enumerate()
                    .map(|(j, f)| {
                        let zeta = node(j);
                        f * zeta / (zeta - z)
                    })
                    .sum();
                s / m as f64
            })
            .collect();
        let coeffs = interpolate_on_circle(&values, inner);
        if let Some(p) = &prev {
            let scale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
            let change = coeffs
                .iter()
                .zip(p)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if change <= opts.tol * scale {
                return Ok(Poly::new(coeffs));
            }
        }
        prev = Some(coeffs);
        m *= 2;
        rounds += 1;
    }
    Err(FwError::no_convergence("Cauchy integral for b_k", rounds))
}

/// Coefficients of the degree `< n` polynomial through `values[j]` at
/// `r e^{2 pi i j/n}`.
fn interpolate_on_circle(values: &[Complex64], r: f64) -> Vec<Complex64> {
    let n = values.len();
    let roots = roots_of_unity(n);
    (0..n)
        .map(|e| {
            let s: Complex64 = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * roots[(n - (e * j) % n) % n])
                .sum();
            s / (n as f64 * r.powi(e as i32))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemniscatic::{build_focus_sequence, FocusOrder};
    use crate::maps::sym_intervals_pair;

    #[test]
    fn low_degrees() {
        let pair = sym_intervals_pair(0.25, 1.0).unwrap();
        let seq = build_focus_sequence(pair.domain(), 4, FocusOrder::default());
        let b0 = fw_contour(&pair, &seq, 0, ContourOptions::default()).unwrap();
        assert!(b0.max_coeff_diff(&Poly::one()) < 1e-12);
        let b2 = fw_contour(&pair, &seq, 2, ContourOptions::default()).unwrap();
        assert!(b2.max_coeff_diff(&Poly::from_real(&[-0.53125, 0.0, 1.0])) < 1e-10);
    }

    #[test]
    fn rejects_small_radius_and_bad_nodes() {
        let pair = sym_intervals_pair(0.25, 1.0).unwrap();
        let seq = FocusSequence::cyclic(2, 4);
        let opts = ContourOptions {
            radius: Some(0.9),
            ..Default::default()
        };
        assert!(fw_contour(&pair, &seq, 2, opts).is_err());
        assert!(fw_contour(&pair, &seq, 2, ContourOptions::default().with_nodes(48)).is_err());
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let p = Poly::from_real(&[1.0, -2.0, 0.5, 3.0]);
        let r = 0.8;
        let vals: Vec<Complex64> = roots_of_unity(4).iter().map(|u| p.eval(u * r)).collect();
        let c = interpolate_on_circle(&vals, r);
        assert!(Poly::new(c).max_coeff_diff(&p) < 1e-14);
    }
}
