//! Lemniscatic maps supplied as boundary samples, e.g. by an external
//! numerical conformal mapping code.

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{continuation_invert, ConformalPair, LemniscaticMap, SetDescriptor};
use crate::error::{FwError, Result};
use crate::lemniscatic::LemniscaticDomain;
use crate::quadrature::periodic_derivative;

/// Domain parameters plus samples of `Phi` on closed contours surrounding the
/// components of `E`. Each contour is sampled at equispaced parameter values
/// of a smooth periodic parametrization; either orientation is accepted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TabulatedMapData {
    pub foci: Vec<Complex64>,
    pub exponents: Vec<f64>,
    pub mu: f64,
    pub contour_points: Vec<Vec<Complex64>>,
    pub phi_values: Vec<Vec<Complex64>>,
}

impl TabulatedMapData {
    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> Result<()> {
        LemniscaticDomain::new(self.foci.clone(), self.exponents.clone(), self.mu)?;
        if self.contour_points.is_empty() {
            return Err(FwError::invalid("tabulated map has no contours"));
        }
        if self.contour_points.len() != self.phi_values.len() {
            return Err(FwError::invalid(
                "contour_points and phi_values differ in length",
            ));
        }
        for (c, v) in self.contour_points.iter().zip(&self.phi_values) {
            if c.len() < 16 {
                return Err(FwError::invalid("each contour needs at least 16 samples"));
            }
            if c.len() != v.len() {
                return Err(FwError::invalid("contour and phi samples differ in length"));
            }
            if c.iter().chain(v).any(|p| !p.is_finite()) {
                return Err(FwError::invalid("tabulated samples must be finite"));
            }
        }
        Ok(())
    }

    /// Largest modulus over all contour samples.
    pub fn radius(&self) -> f64 {
        self.contour_points
            .iter()
            .flatten()
            .map(|p| p.norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug)]
struct Contour {
    points: Vec<Complex64>,
    derivatives: Vec<Complex64>,
    /// `Phi(zeta) - zeta`
    excess: Vec<Complex64>,
}

impl Contour {
    fn new(points: &[Complex64], phi: &[Complex64]) -> Self {
        let mut pts = points.to_vec();
        let mut vals = phi.to_vec();
        // shoelace: make every contour counter-clockwise
        let m = pts.len();
        let area: f64 = (0..m)
            .map(|j| {
                let (a, b) = (pts[j], pts[(j + 1) % m]);
                a.re * b.im - b.re * a.im
            })
            .sum();
        if area < 0.0 {
            pts.reverse();
            vals.reverse();
        }
        let derivatives = periodic_derivative(&pts);
        let excess = vals.iter().zip(&pts).map(|(v, p)| v - p).collect();
        Contour {
            points: pts,
            derivatives,
            excess,
        }
    }

    fn winding(&self, z: Complex64) -> f64 {
        let m = self.points.len();
        let mut total = 0.0;
        for j in 0..m {
            let a = self.points[j] - z;
            let b = self.points[(j + 1) % m] - z;
            total += (b / a).arg();
        }
        total / (2.0 * std::f64::consts::PI)
    }

    /// `(1/2 pi i) integral (Phi - zeta)/(zeta - z) d zeta` over the contour.
    fn cauchy(&self, z: Complex64) -> Complex64 {
        let m = self.points.len() as f64;
        let sum: Complex64 = self
            .points
            .iter()
            .zip(&self.derivatives)
            .zip(&self.excess)
            .map(|((&p, &dp), &e)| e * dp / (p - z))
            .sum();
        sum / (Complex64::new(0.0, 1.0) * m)
    }
}

#[derive(Debug)]
struct TabulatedMap {
    contours: Vec<Contour>,
    scale: f64,
}

impl LemniscaticMap for TabulatedMap {
    /// Cauchy formula for the exterior of the contours:
    /// `Phi(z) = z - sum (1/2 pi i) integral (Phi - zeta)/(zeta - z) d zeta`.
    fn phi(&self, z: Complex64) -> Result<Complex64> {
        if self.contours.iter().any(|c| c.winding(z).abs() > 0.5) {
            return Err(FwError::domain(format!(
                "{z} lies inside a tabulated contour, where Phi is not available"
            )));
        }
        Ok(z - self.contours.iter().map(|c| c.cauchy(z)).sum::<Complex64>())
    }

    fn psi(&self, w: Complex64) -> Result<Complex64> {
        continuation_invert(&|z| self.phi(z), w, self.scale)
    }
}

/// Pair built from tabulated boundary data. `Phi` is evaluated by the
/// exterior Cauchy integral of `Phi(zeta) - zeta`, so it is available outside
/// the contours only; `psi` is obtained by Newton inversion.
pub fn tabulated_pair(data: &TabulatedMapData) -> Result<ConformalPair> {
    data.validate()?;
    let domain = LemniscaticDomain::new(data.foci.clone(), data.exponents.clone(), data.mu)?;
    let contours = data
        .contour_points
        .iter()
        .zip(&data.phi_values)
        .map(|(c, v)| Contour::new(c, v))
        .collect();
    let map = TabulatedMap {
        contours,
        scale: data.radius(),
    };
    Ok(ConformalPair::new(
        domain,
        Arc::new(map),
        None,
        SetDescriptor::Tabulated(data.clone()),
    ))
}
