//! Conformal map pairs `(Phi, psi)` between the exterior of a compact set and
//! a lemniscatic domain.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{FwError, Result};
use crate::lemniscatic::LemniscaticDomain;
use crate::poly::LaurentAtInfinity;
use crate::quadrature::{laurent_on_circle, QuadratureOptions};

mod affine;
mod joukowski;
mod omega;
mod preimage;
mod set;
mod sym_intervals;
mod tabulated;

pub use affine::affine_image_pair;
pub use joukowski::inverse_joukowski_pair;
pub use omega::{
    koch_liesen_psi, ExteriorRiemannMap, KochLiesenMap, KochLiesenParams, OmegaSpec,
    UnitIntervalMap,
};
pub use preimage::{preimage_pair, preimage_pair_with, PreimagePolynomial};
pub use set::{SetDescriptor, SetPiece};
pub use sym_intervals::{sym_intervals_pair, sym_intervals_psi_coefficients, DEFAULT_PSI_ORDER};
pub use tabulated::{tabulated_pair, TabulatedMapData};

/// The two directions of a lemniscatic map.
pub trait LemniscaticMap: Send + Sync + fmt::Debug {
    /// `Phi`: exterior of `E` onto the lemniscatic domain.
    fn phi(&self, z: Complex64) -> Result<Complex64>;
    /// `psi = Phi^{-1}`.
    fn psi(&self, w: Complex64) -> Result<Complex64>;
}

/// A lemniscatic map together with its target domain, the Laurent data of
/// `psi` at infinity (when known) and the set it belongs to.
#[derive(Clone, Debug)]
pub struct ConformalPair {
    domain: LemniscaticDomain,
    map: Arc<dyn LemniscaticMap>,
    psi_laurent: Option<LaurentAtInfinity>,
    set: SetDescriptor,
}

impl ConformalPair {
    pub fn new(
        domain: LemniscaticDomain,
        map: Arc<dyn LemniscaticMap>,
        psi_laurent: Option<LaurentAtInfinity>,
        set: SetDescriptor,
    ) -> Self {
        ConformalPair {
            domain,
            map,
            psi_laurent,
            set,
        }
    }

    pub fn domain(&self) -> &LemniscaticDomain {
        &self.domain
    }

    pub fn map(&self) -> &Arc<dyn LemniscaticMap> {
        &self.map
    }

    pub fn set(&self) -> &SetDescriptor {
        &self.set
    }

    pub fn psi_laurent(&self) -> Option<&LaurentAtInfinity> {
        self.psi_laurent.as_ref()
    }

    pub fn phi(&self, z: Complex64) -> Result<Complex64> {
        self.map.phi(z)
    }

    pub fn psi(&self, w: Complex64) -> Result<Complex64> {
        self.map.psi(w)
    }

    /// Green's function of the exterior of `E`, `g(z) = g_L(Phi(z))`.
    pub fn green(&self, z: Complex64) -> Result<f64> {
        self.domain.green(self.phi(z)?)
    }

    /// Replaces the set descriptor (e.g. to tag a preimage pair as a star).
    pub fn with_set(mut self, set: SetDescriptor) -> Self {
        self.set = set;
        self
    }

    /// Radius of a `w`-circle enclosing the complement of the lemniscatic
    /// domain: every point with `|U(w)| <= mu` is within `mu` of a focus.
    pub fn lemniscate_radius(&self) -> f64 {
        let far = self
            .domain
            .foci()
            .iter()
            .map(|a| a.norm())
            .fold(0.0, f64::max);
        far + self.domain.capacity()
    }

    /// Ensures `psi_laurent` has at least `order` tail coefficients, computing
    /// them from `psi` on a `w`-circle when needed.
    pub fn with_psi_order(mut self, order: usize) -> Result<Self> {
        if self.psi_laurent.as_ref().map_or(0, |l| l.order()) < order {
            let radius = 1.2 * self.lemniscate_radius();
            self.psi_laurent = Some(numeric_laurent(|w| self.psi(w), radius, order)?);
        }
        Ok(self)
    }
}

/// Laurent data `f(z) = a z + b + sum_k c_k z^{-k}` of a map normalized at
/// infinity, by trapezoidal Fourier analysis on `|z| = radius`.
pub(crate) fn numeric_laurent<F>(f: F, radius: f64, order: usize) -> Result<LaurentAtInfinity>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let opts = QuadratureOptions::default().with_tol(1e-13);
    let (pos, neg) = match laurent_on_circle(&f, radius, 1, order, opts) {
        Ok(v) => v,
        // roundoff floor: accept a looser stop rather than fail
        Err(e) if e.is_numerical() => {
            laurent_on_circle(&f, radius, 1, order, opts.with_tol(1e-11))?
        }
        Err(e) => return Err(e),
    };
    Ok(LaurentAtInfinity::new(pos[1], pos[0], neg))
}

/// Laurent coefficients `d_j` of `Phi(z) = z + sum d_j z^{-j}`, by sampling
/// `Phi` on `|z| = radius` with node doubling until the coefficients settle
/// to `1e-11` relative.
pub fn numeric_laurent_of_phi(
    pair: &ConformalPair,
    radius: f64,
    order: usize,
) -> Result<LaurentAtInfinity> {
    let bound = pair.set().bounding_radius()?;
    if !(radius > bound) {
        return Err(FwError::invalid(format!(
            "circle radius {radius} does not enclose the set (bounding radius {bound})"
        )));
    }
    let opts = QuadratureOptions::default().with_tol(1e-11);
    let (pos, neg) = laurent_on_circle(|z| pair.phi(z), radius, 1, order, opts)?;
    Ok(LaurentAtInfinity::new(pos[1], pos[0], neg))
}

/// Solves `phi(z) = w` by damped Newton steps from `start`, with the
/// derivative from central differences. Converges when the residual is at
/// most `1e-12 max(1, |w|)`.
pub(crate) fn newton_invert<F>(phi: &F, w: Complex64, start: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let tol = 1e-12 * w.norm().max(1.0);
    let mut z = start;
    let mut r = phi(z)? - w;
    for it in 0..60 {
        if r.norm() <= tol {
            return Ok(z);
        }
        let h = 1e-7 * z.norm().max(1.0);
        let hc = Complex64::new(h, 0.0);
        let d = (phi(z + hc)? - phi(z - hc)?) / (2.0 * h);
        if d.norm() == 0.0 || !d.is_finite() {
            return Err(FwError::no_convergence(
                "Newton inversion (zero derivative)",
                it,
            ));
        }
        let step = r / d;
        let mut lambda = 1.0;
        loop {
            let cand = z - step * lambda;
            if let Ok(v) = phi(cand) {
                let rc = v - w;
                if rc.norm() < r.norm() || lambda < 1e-3 {
                    z = cand;
                    r = rc;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-6 {
                return Err(FwError::no_convergence(
                    "Newton inversion (line search)",
                    it,
                ));
            }
        }
    }
    if r.norm() <= tol {
        Ok(z)
    } else {
        Err(FwError::no_convergence("Newton inversion", 60))
    }
}

/// Inverts `phi` at `w` by continuation along the ray from a far point, where
/// `phi(z) ~ z`, towards `w`.
pub(crate) fn continuation_invert<F>(phi: &F, w: Complex64, scale: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if let Ok(z) = newton_invert(phi, w, w) {
        return Ok(z);
    }
    let dir = if w.norm() > 0.0 {
        w / w.norm()
    } else {
        Complex64::new(0.0, 1.0)
    };
    let far = dir * (8.0 * scale).max(2.0 * w.norm());
    let steps = 64;
    let mut z = newton_invert(phi, far, far)?;
    for s in 1..=steps {
        let t = s as f64 / steps as f64;
        let target = far + (w - far) * t;
        z = newton_invert(phi, target, z)?;
    }
    Ok(z)
}
