use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    newton_invert, ConformalPair, ExteriorRiemannMap, LemniscaticMap, OmegaSpec, SetDescriptor,
};
use crate::error::{FwError, Result};
use crate::lemniscatic::LemniscaticDomain;

/// Tail order of the numerically extracted `psi` Laurent series attached to
/// preimage pairs; callers needing more use `ConformalPair::with_psi_order`.
pub(crate) const NUMERIC_PSI_ORDER: usize = 64;

/// `P(z) = alpha z^n + alpha0` with `alpha > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreimagePolynomial {
    pub alpha: f64,
    pub n: usize,
    pub alpha0: f64,
}

impl PreimagePolynomial {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.alpha * z.powu(self.n as u32) + self.alpha0
    }

    /// All `n` solutions of `P(z) = s`, principal root first.
    pub fn roots_of(&self, s: Complex64) -> Vec<Complex64> {
        let base = ((s - self.alpha0) / self.alpha).powf(1.0 / self.n as f64);
        (0..self.n)
            .map(|j| base * Complex64::from_polar(1.0, 2.0 * PI * j as f64 / self.n as f64))
            .collect()
    }
}

#[derive(Debug)]
struct PreimageMap {
    omega: Arc<dyn ExteriorRiemannMap>,
    poly: PreimagePolynomial,
    mu_n: f64,
    /// `Phi~(P(0))`
    shift: Complex64,
}

impl PreimageMap {
    fn phi_raw(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() == 0.0 {
            return Ok(z);
        }
        let n = self.poly.n;
        let inner = self.omega.phi(self.poly.eval(z))? - self.shift;
        let bracket = inner * self.mu_n / z.powu(n as u32);
        Ok(z * bracket.powf(1.0 / n as f64))
    }
}

impl LemniscaticMap for PreimageMap {
    fn phi(&self, z: Complex64) -> Result<Complex64> {
        self.phi_raw(z)
    }

    fn psi(&self, w: Complex64) -> Result<Complex64> {
        let n = self.poly.n;
        let s = w.powu(n as u32) / self.mu_n + self.shift;
        let target = self.omega.psi(s)?;
        let mut best: Option<(f64, Complex64)> = None;
        for z in self.poly.roots_of(target) {
            if let Ok(v) = self.phi_raw(z) {
                let d = (v - w).norm();
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, z));
                }
            }
        }
        let (_, z) = best.ok_or_else(|| FwError::domain(format!("no preimage of {w} found")))?;
        newton_invert(&|z| self.phi_raw(z), w, z)
    }
}

/// Lemniscatic pair of `E = P^{-1}(Omega)` for `P(z) = alpha z^n + alpha0`.
///
/// `mu = (1 / (alpha Phi~'(inf)))^{1/n}`, foci are the `n`-th roots of
/// `-mu^n Phi~(alpha0)` with exponents `1/n`, and
/// `Phi(z) = z (mu^n / z^n [Phi~(P(z)) - Phi~(alpha0)])^{1/n}` on the
/// principal branch.
pub fn preimage_pair(omega: &OmegaSpec, poly: PreimagePolynomial) -> Result<ConformalPair> {
    let set = SetDescriptor::PolynomialPreimage {
        omega: omega.clone(),
        alpha: poly.alpha,
        alpha0: poly.alpha0,
        n: poly.n,
    };
    preimage_pair_with(omega.to_map()?, poly, set)
}

/// As [`preimage_pair`] for an arbitrary exterior map, tagging the result
/// with `set`.
pub fn preimage_pair_with(
    omega: Arc<dyn ExteriorRiemannMap>,
    poly: PreimagePolynomial,
    set: SetDescriptor,
) -> Result<ConformalPair> {
    if !(poly.alpha > 0.0 && poly.alpha.is_finite()) {
        return Err(FwError::invalid(format!(
            "alpha = {} must be positive",
            poly.alpha
        )));
    }
    if poly.n == 0 {
        return Err(FwError::invalid("polynomial degree n must be at least 1"));
    }
    if !omega.is_conjugate_symmetric() {
        return Err(FwError::invalid(
            "Omega must be symmetric about the real axis",
        ));
    }
    let lo = omega.min_real();
    if !(poly.alpha0 < lo) {
        return Err(FwError::invalid(format!(
            "alpha0 = {} must lie left of Omega (min real point {lo})",
            poly.alpha0
        )));
    }
    let n = poly.n;
    let mu_n = 1.0 / (poly.alpha * omega.derivative_at_infinity());
    let mu = mu_n.powf(1.0 / n as f64);
    let shift = omega.phi(Complex64::new(poly.alpha0, 0.0))?;
    let focus_power = -shift * mu_n;
    let base = focus_power.powf(1.0 / n as f64);
    let foci: Vec<Complex64> = (0..n)
        .map(|j| base * Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
        .collect();
    let domain = LemniscaticDomain::new(foci, vec![1.0 / n as f64; n], mu)?;
    let map = PreimageMap {
        omega,
        poly,
        mu_n,
        shift,
    };
    ConformalPair::new(domain, Arc::new(map), None, set).with_psi_order(NUMERIC_PSI_ORDER)
}
