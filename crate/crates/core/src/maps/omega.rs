//! Exterior Riemann maps of simply connected sets `Omega`, the building block
//! of polynomial preimage sets.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::continuation_invert;
use crate::error::{FwError, Result};

/// Conformal map `Phi~` from the exterior of a compact simply connected set
/// `Omega` onto `|w| > 1`, with `Phi~(inf) = inf` and `Phi~'(inf) > 0`.
pub trait ExteriorRiemannMap: Send + Sync + fmt::Debug {
    fn phi(&self, z: Complex64) -> Result<Complex64>;

    /// `psi~ = Phi~^{-1}`; numerical inversion unless overridden.
    fn psi(&self, w: Complex64) -> Result<Complex64> {
        if w.norm() < 1.0 - 1e-12 {
            return Err(FwError::domain(format!("{w} lies inside the unit disk")));
        }
        let s = self.derivative_at_infinity();
        continuation_invert(&|z| self.phi(z).map(|v| v / s), w / s, 4.0 / s)
    }

    /// `Phi~'(inf)`, the reciprocal of the capacity of `Omega`.
    fn derivative_at_infinity(&self) -> f64;

    /// Point of `Omega` (its boundary for curve-bounded sets) at `t in [0, 1]`.
    fn boundary_point(&self, t: f64) -> Complex64;

    /// Whether `boundary_point` traces a closed curve (`t = 0` and `t = 1`
    /// coincide) rather than a segment.
    fn boundary_closed(&self) -> bool;

    /// `min(Omega n R)` for sets symmetric about the real axis.
    fn min_real(&self) -> f64;

    fn is_conjugate_symmetric(&self) -> bool;

    fn contains(&self, z: Complex64) -> bool {
        match self.phi(z) {
            Ok(w) => w.norm() <= 1.0 + 1e-12,
            Err(_) => true,
        }
    }
}

/// `Omega = [-1, 1]`, `Phi~(z) = z + sqrt(z^2 - 1)` on the exterior branch.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitIntervalMap;

impl ExteriorRiemannMap for UnitIntervalMap {
    fn phi(&self, z: Complex64) -> Result<Complex64> {
        let r = (z - 1.0).sqrt() * (z + 1.0).sqrt();
        let (a, b) = (z + r, z - r);
        Ok(if a.norm() >= b.norm() { a } else { b })
    }

    fn psi(&self, w: Complex64) -> Result<Complex64> {
        if w.norm() == 0.0 {
            return Err(FwError::domain("Joukowski map is singular at 0"));
        }
        Ok(0.5 * (w + w.inv()))
    }

    fn derivative_at_infinity(&self) -> f64 {
        2.0
    }

    fn boundary_point(&self, t: f64) -> Complex64 {
        Complex64::new(-(PI * t).cos(), 0.0)
    }

    fn boundary_closed(&self) -> bool {
        false
    }

    fn min_real(&self) -> f64 {
        -1.0
    }

    fn is_conjugate_symmetric(&self) -> bool {
        true
    }

    fn contains(&self, z: Complex64) -> bool {
        z.im.abs() <= 1e-12 && z.re.abs() <= 1.0 + 1e-12
    }
}

/// Derived constants of the Koch-Liesen region `Omega(lambda, phi, R)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KochLiesenParams {
    pub n_param: f64,
    pub m_param: f64,
    pub p: f64,
    /// Capacity of `Omega`, `psi~'(inf) = 1 / (N - M)`.
    pub t: f64,
    pub lambda: Complex64,
}

/// `psi~(w) = (w - lambda N)(w - lambda M) / ((N - M) w + lambda (N M - 1))`
/// and its inverse.
#[derive(Clone, Copy, Debug)]
pub struct KochLiesenMap {
    params: KochLiesenParams,
}

impl KochLiesenMap {
    pub fn params(&self) -> &KochLiesenParams {
        &self.params
    }
}

/// Builds the Koch-Liesen map for `|lambda| = 1`, `0 < phi < 2 pi` and
/// `1 <= R < P`, `P = tan(phi/4) + 1/cos(phi/4)`.
pub fn koch_liesen_psi(
    lambda: Complex64,
    phi: f64,
    r: f64,
) -> Result<(KochLiesenMap, KochLiesenParams)> {
    if (lambda.norm() - 1.0).abs() > 1e-12 {
        return Err(FwError::invalid(format!(
            "|lambda| = {} must be 1",
            lambda.norm()
        )));
    }
    if !(phi > 0.0 && phi < 2.0 * PI) {
        return Err(FwError::invalid(format!(
            "phi = {phi} must lie in (0, 2 pi)"
        )));
    }
    let q = phi / 4.0;
    let p = q.tan() + 1.0 / q.cos();
    if !(r >= 1.0 && r < p) {
        return Err(FwError::invalid(format!("R = {r} must lie in [1, {p})")));
    }
    let n_param = 0.5 * (p / r + r / p);
    let m_param = (r * r - 1.0) / (2.0 * r * q.tan());
    if !(n_param > m_param) {
        return Err(FwError::invalid(
            "degenerate Koch-Liesen parameters (N <= M)",
        ));
    }
    let params = KochLiesenParams {
        n_param,
        m_param,
        p,
        t: 1.0 / (n_param - m_param),
        lambda,
    };
    Ok((KochLiesenMap { params }, params))
}

impl ExteriorRiemannMap for KochLiesenMap {
    fn phi(&self, z: Complex64) -> Result<Complex64> {
        let KochLiesenParams {
            n_param: n,
            m_param: m,
            lambda: l,
            ..
        } = self.params;
        // w^2 + b w + c = 0
        let b = -(l * (n + m) + z * (n - m));
        let c = l * l * n * m - z * l * (n * m - 1.0);
        let disc = (b * b - 4.0 * c).sqrt();
        let s = if (b + disc).norm() >= (b - disc).norm() {
            b + disc
        } else {
            b - disc
        };
        if s.norm() == 0.0 {
            return Err(FwError::domain(format!("{z} has a double preimage at 0")));
        }
        let w1 = -0.5 * s;
        let w2 = c / w1;
        let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
        if w.norm() < 1.0 - 1e-12 {
            return Err(FwError::domain(format!("{z} lies in Omega")));
        }
        Ok(w)
    }

    fn psi(&self, w: Complex64) -> Result<Complex64> {
        let KochLiesenParams {
            n_param: n,
            m_param: m,
            lambda: l,
            ..
        } = self.params;
        let den = (n - m) * w + l * (n * m - 1.0);
        if den.norm() == 0.0 {
            return Err(FwError::domain(format!("psi~ has its pole at {w}")));
        }
        Ok((w - l * n) * (w - l * m) / den)
    }

    fn derivative_at_infinity(&self) -> f64 {
        1.0 / self.params.t
    }

    fn boundary_point(&self, t: f64) -> Complex64 {
        // |w| = 1 never hits the pole, which lies inside the unit disk
        self.psi(Complex64::from_polar(1.0, 2.0 * PI * t))
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    fn boundary_closed(&self) -> bool {
        true
    }

    fn min_real(&self) -> f64 {
        let a = self.psi(Complex64::new(1.0, 0.0)).map(|v| v.re);
        let b = self.psi(Complex64::new(-1.0, 0.0)).map(|v| v.re);
        match (a, b) {
            (Ok(a), Ok(b)) => a.min(b),
            _ => f64::NAN,
        }
    }

    fn is_conjugate_symmetric(&self) -> bool {
        self.params.lambda.im.abs() <= 1e-12
    }
}

/// Serializable choice of `Omega`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OmegaSpec {
    UnitInterval,
    KochLiesen {
        lambda: Complex64,
        phi: f64,
        #[serde(alias = "R")]
        r: f64,
    },
}

impl OmegaSpec {
    pub fn to_map(&self) -> Result<Arc<dyn ExteriorRiemannMap>> {
        Ok(match *self {
            OmegaSpec::UnitInterval => Arc::new(UnitIntervalMap),
            OmegaSpec::KochLiesen { lambda, phi, r } => {
                Arc::new(koch_liesen_psi(lambda, phi, r)?.0)
            }
        })
    }
}
