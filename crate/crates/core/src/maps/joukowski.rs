use std::sync::Arc;

use num_complex::Complex64;

use super::{ConformalPair, LemniscaticMap, SetDescriptor, DEFAULT_PSI_ORDER};
use crate::error::{FwError, Result};
use crate::lemniscatic::LemniscaticDomain;
use crate::poly::LaurentAtInfinity;

/// Normalized exterior map of the real interval `[a, b]` onto the exterior of
/// the disk with centre `(a+b)/2` and radius `(b-a)/4`.
#[derive(Debug)]
struct InverseJoukowski {
    a: f64,
    b: f64,
}

impl InverseJoukowski {
    fn center(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    fn radius(&self) -> f64 {
        0.25 * (self.b - self.a)
    }
}

impl LemniscaticMap for InverseJoukowski {
    fn phi(&self, z: Complex64) -> Result<Complex64> {
        let m = self.center();
        let root = ((z - self.a) * (z - self.b)).sqrt();
        let plus = 0.5 * (z + m + root);
        let minus = 0.5 * (z + m - root);
        if (plus - m).norm() >= (minus - m).norm() {
            Ok(plus)
        } else {
            Ok(minus)
        }
    }

    fn psi(&self, w: Complex64) -> Result<Complex64> {
        let v = w - self.center();
        if v.norm() == 0.0 {
            return Err(FwError::domain("psi is singular at the disk centre"));
        }
        let r = self.radius();
        Ok(w + r * r / v)
    }
}

/// Pair for a single interval `[alpha, beta]`: one focus `(alpha+beta)/2`,
/// capacity `(beta-alpha)/4` and `psi(w) = w + r^2 / (w - m)`, whose Laurent
/// coefficients are `c_k = r^2 m^{k-1}`.
pub fn inverse_joukowski_pair(alpha: f64, beta: f64) -> Result<ConformalPair> {
    if !(alpha < beta) || !alpha.is_finite() || !beta.is_finite() {
        return Err(FwError::invalid(format!(
            "interval endpoints must satisfy alpha < beta, got [{alpha}, {beta}]"
        )));
    }
    let map = InverseJoukowski { a: alpha, b: beta };
    let m = map.center();
    let r = map.radius();
    let domain = LemniscaticDomain::new(vec![Complex64::new(m, 0.0)], vec![1.0], r)?;
    let tail = (1..=DEFAULT_PSI_ORDER)
        .map(|k| Complex64::new(r * r * m.powi(k as i32 - 1), 0.0))
        .collect();
    let laurent = LaurentAtInfinity::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), tail);
    Ok(ConformalPair::new(
        domain,
        Arc::new(map),
        Some(laurent),
        SetDescriptor::Interval { a: alpha, b: beta },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_two() {
        let pair = inverse_joukowski_pair(-1.0, 1.0).unwrap();
        let w = pair.phi(Complex64::new(2.0, 0.0)).unwrap();
        assert!((w - Complex64::new((2.0 + 3f64.sqrt()) / 2.0, 0.0)).norm() < 1e-15);
        assert!(w.norm() > 0.5);
        let big = Complex64::new(1e6, 0.0);
        assert!((pair.phi(big).unwrap() - big).norm() < 1e-4);
    }

    #[test]
    fn round_trip_off_centre() {
        let pair = inverse_joukowski_pair(-0.3, 2.1).unwrap();
        for z in [
            Complex64::new(3.0, 0.2),
            Complex64::new(0.9, -0.4),
            Complex64::new(-1.0, 0.0),
        ] {
            let w = pair.phi(z).unwrap();
            assert!((w - 0.9).norm() > 0.6);
            assert!((pair.psi(w).unwrap() - z).norm() < 1e-13);
        }
        let l = pair.psi_laurent().unwrap();
        let w = Complex64::new(2.0, 1.5);
        assert!((l.eval(w) - pair.psi(w).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn rejects_empty_interval() {
        assert!(inverse_joukowski_pair(1.0, 1.0).is_err());
        assert!(inverse_joukowski_pair(2.0, 1.0).is_err());
    }
}
