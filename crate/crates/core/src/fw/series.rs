use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{FwError, Result};
use crate::lemniscatic::{CurveComponent, FocusSequence};
use crate::maps::ConformalPair;
use crate::poly::Poly;

/// Where the coefficient integrals are evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeriesContour {
    /// `|w| = R_w`, default `R_w = 2 (max|a_j| + mu) + 1`; valid for entire `f`.
    Circle { radius: Option<f64> },
    /// The level curve `Lambda_lambda`; `rho`, when known, bounds `lambda`
    /// from above and gives the default `lambda = (1 + rho)/2`.
    Level {
        lambda: Option<f64>,
        rho: Option<f64>,
    },
}

/// Coefficients `a_0, ..., a_K` of `f = sum a_k b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesExpansion {
    pub coeffs: Vec<Complex64>,
    /// Analyticity level of `f`; `None` for entire functions.
    pub rho: Option<f64>,
    /// Level of the contour used (`None` for a circle).
    pub lambda_used: Option<f64>,
}

impl SeriesExpansion {
    /// `S_n(z) = sum_{k<=n} a_k b_k(z)`.
    pub fn partial_sum(&self, polys: &[Poly], n: usize, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .zip(polys)
            .take(n + 1)
            .map(|(a, b)| a * b.eval(z))
            .sum()
    }

    /// `S_n` expanded into a single polynomial.
    pub fn partial_sum_poly(&self, polys: &[Poly], n: usize) -> Poly {
        self.coeffs
            .iter()
            .zip(polys)
            .take(n + 1)
            .fold(Poly::zero(), |acc, (a, b)| acc.add(&b.scale(*a)))
    }
}

/// Options for the adaptive trapezoidal rule of [`fw_series`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesOptions {
    pub min_nodes: usize,
    pub max_nodes: usize,
    /// Per-coefficient stop: `|change| <= tol * (|a_k| + int |f||dt|/|u_{k+1}|)`.
    pub tol: f64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            min_nodes: 128,
            max_nodes: 1 << 16,
            tol: 1e-12,
        }
    }
}

/// Faber-Walsh coefficients
/// `a_k = (1/2 pi i) int f(psi(tau)) / u_{k+1}(tau) d tau` for `k = 0..=K`.
pub fn fw_series<F>(
    pair: &ConformalPair,
    seq: &FocusSequence,
    f: F,
    k_max: usize,
    contour: SeriesContour,
    opts: SeriesOptions,
) -> Result<SeriesExpansion>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if seq.len() < k_max + 1 {
        return Err(FwError::invalid(format!(
            "coefficient a_{k_max} needs {} sequence entries",
            k_max + 1
        )));
    }
    if opts.min_nodes < 16 || !opts.min_nodes.is_power_of_two() {
        return Err(FwError::invalid(
            "series node count must be a power of two >= 16",
        ));
    }
    let alphas = seq.points(pair.domain(), k_max + 1);
    let (rho, lambda_used) = match contour {
        SeriesContour::Circle { radius } => {
            let min = pair.lemniscate_radius();
            if let Some(r) = radius {
                if !(r > min) {
                    return Err(FwError::invalid(format!(
                        "circle radius {r} must exceed {min} to enclose the lemniscate"
                    )));
                }
            }
            (None, None)
        }
        SeriesContour::Level { lambda, rho } => {
            if let Some(r) = rho {
                if !(r > 1.0) {
                    return Err(FwError::invalid(format!("rho = {r} must exceed 1")));
                }
            }
            let lam = match (lambda, rho) {
                (Some(l), _) => l,
                (None, Some(r)) if r.is_finite() => 0.5 * (1.0 + r),
                (None, _) => {
                    return Err(FwError::invalid(
                        "a level contour needs lambda or a finite rho",
                    ))
                }
            };
            if !(lam > 1.0) || rho.is_some_and(|r| lam >= r) {
                return Err(FwError::invalid(format!(
                    "lambda = {lam} must satisfy 1 < lambda < rho ({rho:?})"
                )));
            }
            (rho, Some(lam))
        }
    };
    let default_radius = 2.0 * pair.lemniscate_radius() + 1.0;
    let curve_at = |m: usize| -> Result<Vec<CurveComponent>> {
        match (contour, lambda_used) {
            (SeriesContour::Circle { radius }, _) => {
                let r = radius.unwrap_or(default_radius);
                let points: Vec<Complex64> = (0..m)
                    .map(|j| Complex64::from_polar(r, 2.0 * PI * j as f64 / m as f64))
                    .collect();
                let derivatives = points
                    .iter()
                    .map(|p| Complex64::new(0.0, 1.0) * p)
                    .collect();
                Ok(vec![CurveComponent {
                    points,
                    derivatives,
                }])
            }
            (_, Some(lam)) => Ok(pair.domain().level_curve(lam, m)?.components),
            _ => unreachable!("level contour without lambda"),
        }
    };

    let mut m = opts.min_nodes;
    let mut prev: Option<Vec<Complex64>> = None;
    let mut rounds = 0;
    while m <= opts.max_nodes {
        let comps = curve_at(m)?;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k_max + 1];
        let mut scales = vec![0.0; k_max + 1];
        for comp in &comps {
            let len = comp.points.len() as f64;
            // per node: f(psi(tau)) * tau'(t) and the running products u_{k+1}
            let nodes: Vec<(Vec<Complex64>, Vec<f64>)> = comp
                .points
                .par_iter()
                .zip(&comp.derivatives)
                .map(|(&tau, &dtau)| -> Result<(Vec<Complex64>, Vec<f64>)> {
                    let g = f(pair.psi(tau)?) * dtau;
                    let mut u = Complex64::new(1.0, 0.0);
                    let mut terms = Vec::with_capacity(k_max + 1);
                    let mut mags = Vec::with_capacity(k_max + 1);
                    for a in &alphas {
                        u *= tau - a;
                        let t = g / u;
                        terms.push(t);
                        mags.push(t.norm());
                    }
                    Ok((terms, mags))
                })
                .collect::<Result<_>>()?;
            // trapezoid on t in [0, 2 pi): (2 pi / M) / (2 pi i)
            let denom = Complex64::new(0.0, len);
            for (terms, mags) in &nodes {
                for k in 0..=k_max {
                    coeffs[k] += terms[k] / denom;
                    scales[k] += mags[k] / len;
                }
            }
        }
        if let Some(p) = &prev {
            let settled = coeffs
                .iter()
                .zip(p)
                .zip(&scales)
                .all(|((a, b), s)| (a - b).norm() <= opts.tol * (a.norm() + s));
            if settled {
                return Ok(SeriesExpansion {
                    coeffs,
                    rho,
                    lambda_used,
                });
            }
        }
        prev = Some(coeffs);
        m *= 2;
        rounds += 1;
    }
    Err(FwError::no_convergence(
        "Faber-Walsh series coefficients",
        rounds,
    ))
}
