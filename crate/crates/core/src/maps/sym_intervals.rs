use std::sync::Arc;

use num_complex::Complex64;

use super::{ConformalPair, LemniscaticMap, SetDescriptor};
use crate::error::{FwError, Result};
use crate::lemniscatic::LemniscaticDomain;
use crate::poly::LaurentAtInfinity;

/// Default number of tail coefficients of `psi` for analytic pairs.
pub const DEFAULT_PSI_ORDER: usize = 200;

/// Lemniscatic map of `[-D, -C] u [C, D]`.
#[derive(Debug)]
struct SymIntervalsMap {
    c: f64,
    d: f64,
    domain: LemniscaticDomain,
}

impl LemniscaticMap for SymIntervalsMap {
    fn phi(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) {
            return Ok(z);
        }
        let (c, d) = (self.c, self.d);
        let z2 = z * z;
        let root = ((z2 - c * c) * (z2 - d * d)).sqrt();
        let base = 0.5 + d * c / (2.0 * z2);
        let half = root / (2.0 * z2);
        let plus = z * (base + half).sqrt();
        let minus = z * (base - half).sqrt();
        // exterior branch: the candidate with the larger |U|
        if self.domain.log_abs_u(plus) >= self.domain.log_abs_u(minus) {
            Ok(plus)
        } else {
            Ok(minus)
        }
    }

    fn psi(&self, w: Complex64) -> Result<Complex64> {
        let p = 0.5 * (self.d + self.c);
        let q = 0.5 * (self.d - self.c);
        let den = w * w - p * p;
        if den.norm() == 0.0 {
            return Err(FwError::domain(format!("psi is singular at the focus {w}")));
        }
        Ok(w * (1.0 + q * q / den).sqrt())
    }
}

/// Tail coefficients `c_1, ..., c_order` of `psi(w) = w + sum c_k w^{-k}` for
/// `[-D, -C] u [C, D]`: even ones vanish and
/// `c_{2k+1} = q^2 p^{2k} / 2 - (1/2) sum_{j=1}^k c_{2j-1} c_{2(k-j)+1}`
/// with `p = (D+C)/2`, `q = (D-C)/2`.
pub fn sym_intervals_psi_coefficients(c: f64, d: f64, order: usize) -> Vec<f64> {
    let p = 0.5 * (d + c);
    let q = 0.5 * (d - c);
    let odd_count = order.div_ceil(2);
    // odd[k] = c_{2k+1}
    let mut odd: Vec<f64> = Vec::with_capacity(odd_count);
    for k in 0..odd_count {
        let conv: f64 = (1..=k).map(|j| odd[j - 1] * odd[k - j]).sum();
        odd.push(0.5 * q * q * p.powi(2 * k as i32) - 0.5 * conv);
    }
    (1..=order)
        .map(|l| if l % 2 == 1 { odd[(l - 1) / 2] } else { 0.0 })
        .collect()
}

/// Analytic pair for `E = [-D, -C] u [C, D]`: foci `+-(D+C)/2`, exponents
/// `1/2`, capacity `sqrt(D^2 - C^2)/2`.
pub fn sym_intervals_pair(c: f64, d: f64) -> Result<ConformalPair> {
    sym_intervals_pair_with_order(c, d, DEFAULT_PSI_ORDER)
}

pub(crate) fn sym_intervals_pair_with_order(c: f64, d: f64, order: usize) -> Result<ConformalPair> {
    if !(c > 0.0 && d > c && d.is_finite()) {
        return Err(FwError::invalid(format!(
            "need 0 < C < D, got C = {c}, D = {d}"
        )));
    }
    let p = 0.5 * (d + c);
    let domain = LemniscaticDomain::new(
        vec![Complex64::new(p, 0.0), Complex64::new(-p, 0.0)],
        vec![0.5, 0.5],
        0.5 * (d * d - c * c).sqrt(),
    )?;
    let tail = sym_intervals_psi_coefficients(c, d, order)
        .into_iter()
        .map(|v| Complex64::new(v, 0.0))
        .collect();
    let laurent = LaurentAtInfinity::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), tail);
    let map = SymIntervalsMap {
        c,
        d,
        domain: domain.clone(),
    };
    Ok(ConformalPair::new(
        domain,
        Arc::new(map),
        Some(laurent),
        SetDescriptor::SymmetricIntervals { c, d },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters_for_quarter_interval() {
        let pair = sym_intervals_pair(0.25, 1.0).unwrap();
        assert!((pair.domain().capacity() - 15f64.sqrt() / 8.0).abs() < 1e-15);
        assert_eq!(pair.domain().foci()[0], Complex64::new(0.625, 0.0));
        let l = pair.psi_laurent().unwrap();
        assert_eq!(l.tail_coeff(1), Complex64::new(0.0703125, 0.0));
        assert!((l.tail_coeff(3).re - 0.024993896484375).abs() < 1e-16);
        assert_eq!(l.order(), DEFAULT_PSI_ORDER);
        for k in 1..=100 {
            assert_eq!(l.tail_coeff(2 * k), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(sym_intervals_pair(0.0, 1.0).is_err());
        assert!(sym_intervals_pair(1.0, 1.0).is_err());
        assert!(sym_intervals_pair(0.5, 0.2).is_err());
    }

    #[test]
    fn round_trip_and_exterior_branch() {
        let pair = sym_intervals_pair(0.25, 1.0).unwrap();
        for z in [
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.1),
            Complex64::new(-3.0, 0.5),
            Complex64::new(0.1, 0.0),
            Complex64::new(-0.6, 0.05),
        ] {
            let w = pair.phi(z).unwrap();
            assert!(pair.domain().abs_u(w) > pair.domain().capacity());
            let back = pair.psi(w).unwrap();
            assert!(
                (back - z).norm() <= 1e-11 * z.norm(),
                "{z} -> {w} -> {back}"
            );
        }
        let big = Complex64::new(1e6, 0.0);
        assert!((pair.phi(big).unwrap() - big).norm() < 1e-4);
    }

    #[test]
    fn laurent_series_matches_psi() {
        let pair = sym_intervals_pair(0.25, 1.0).unwrap();
        let l = pair.psi_laurent().unwrap();
        let w = Complex64::new(1.3, 0.9);
        assert!((l.eval(w) - pair.psi(w).unwrap()).norm() < 1e-14);
    }
}
