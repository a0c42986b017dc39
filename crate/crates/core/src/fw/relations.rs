//! Identities linking Faber-Walsh polynomials of related sets.

use num_complex::Complex64;

use super::FaberWalshFamily;
use crate::error::{FwError, Result};
use crate::lemniscatic::FocusSequence;
use crate::maps::{affine_image_pair, ConformalPair, ExteriorRiemannMap, SetDescriptor};
use crate::poly::Poly;
use crate::quadrature::{laurent_on_circle, QuadratureOptions};

/// Largest coefficient deviation per degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    /// `(k, max |coefficient difference|)`.
    pub deviations: Vec<(usize, f64)>,
}

impl RelationReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().map(|d| d.1).fold(0.0, f64::max)
    }
}

/// Faber polynomial `F_k` of `Omega`: the polynomial part of `Phi~(z)^k`,
/// read off from Fourier coefficients on a circle enclosing `Omega`.
pub fn faber_polynomial(omega: &dyn ExteriorRiemannMap, k: usize) -> Result<Poly> {
    if k == 0 {
        return Ok(Poly::one());
    }
    let m = 1024;
    let reach = (0..m)
        .map(|j| omega.boundary_point(j as f64 / m as f64).norm())
        .fold(0.0, f64::max);
    let radius = 1.2 * reach + 0.1;
    let opts = QuadratureOptions::default().with_tol(1e-14);
    let (pos, _) = match laurent_on_circle(|z| Ok(omega.phi(z)?.powu(k as u32)), radius, k, 1, opts)
    {
        Ok(v) => v,
        Err(e) if e.is_numerical() => laurent_on_circle(
            |z| Ok(omega.phi(z)?.powu(k as u32)),
            radius,
            k,
            1,
            opts.with_tol(1e-12),
        )?,
        Err(e) => return Err(e),
    };
    Ok(Poly::new(pos))
}

/// Checks `b_{kn}(z) = (alpha Phi~'(inf))^{-k} F_k(P(z))` for a polynomial
/// preimage set (stars, Koch-Liesen preimages, general preimages) with the
/// cyclic focus sequence, for `k = 0..=k_max`.
pub fn faber_relation_check(set: &SetDescriptor, k_max: usize) -> Result<RelationReport> {
    let (omega, poly) = set
        .preimage_parts()
        .ok_or_else(|| FwError::invalid("the Faber relation needs a polynomial preimage set"))?;
    let pair = set.conformal_pair()?;
    let n = poly.n;
    let seq = FocusSequence::cyclic(n, n * k_max);
    let fam = FaberWalshFamily::build(&pair, &seq, n * k_max)?;
    let mut p = vec![Complex64::new(0.0, 0.0); n + 1];
    p[0] = Complex64::new(poly.alpha0, 0.0);
    p[n] += Complex64::new(poly.alpha, 0.0);
    let p = Poly::new(p);
    let base = 1.0 / (poly.alpha * omega.derivative_at_infinity());
    let mut deviations = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let fk = faber_polynomial(omega.as_ref(), k)?;
        let rhs = fk
            .compose(&p)
            .scale(Complex64::new(base.powi(k as i32), 0.0));
        deviations.push((k, fam.polys()[n * k].max_coeff_diff(&rhs)));
    }
    Ok(RelationReport { deviations })
}

/// Checks `b_k(z) = alpha^{-k} b~_k(alpha z + beta)` where `b~_k` belong to
/// the affine image `alpha E + beta` with the mapped focus sequence.
pub fn affine_covariance_check(
    base: &ConformalPair,
    seq: &FocusSequence,
    alpha: Complex64,
    beta: Complex64,
    k_max: usize,
) -> Result<RelationReport> {
    let image = affine_image_pair(base, alpha, beta)?;
    let fam = FaberWalshFamily::build(base, seq, k_max)?;
    let fam_image = FaberWalshFamily::build(&image, seq, k_max)?;
    let deviations = (0..=k_max)
        .map(|k| {
            let mapped = fam_image.polys()[k]
                .compose_affine(alpha, beta)
                .scale(alpha.powi(-(k as i32)));
            (k, fam.polys()[k].max_coeff_diff(&mapped))
        })
        .collect();
    Ok(RelationReport { deviations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::UnitIntervalMap;

    #[test]
    fn faber_polynomials_of_unit_interval() {
        // Phi~ = z + sqrt(z^2 - 1): F_1 = 2z, F_2 = 4z^2 - 2 = 2 T_2
        let f1 = faber_polynomial(&UnitIntervalMap, 1).unwrap();
        assert!(f1.max_coeff_diff(&Poly::from_real(&[0.0, 2.0])) < 1e-12);
        let f2 = faber_polynomial(&UnitIntervalMap, 2).unwrap();
        assert!(f2.max_coeff_diff(&Poly::from_real(&[-2.0, 0.0, 4.0])) < 1e-12);
    }

    #[test]
    fn symmetric_intervals_as_star() {
        let set = SetDescriptor::StarIntervals {
            n: 2,
            c: 0.25,
            d: 1.0,
        };
        let rep = faber_relation_check(&set, 5).unwrap();
        assert!(rep.max_deviation() < 1e-9, "{rep:?}");
        assert_eq!(rep.deviations[0], (0, 0.0));
    }

    #[test]
    fn identity_affine_map() {
        let set = SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 };
        let pair = set.conformal_pair().unwrap();
        let seq = FocusSequence::cyclic(2, 8);
        let one = Complex64::new(1.0, 0.0);
        let rep = affine_covariance_check(&pair, &seq, one, Complex64::new(0.0, 0.0), 8).unwrap();
        assert_eq!(rep.max_deviation(), 0.0);
        let rep = affine_covariance_check(&pair, &seq, one, Complex64::new(0.4, 0.0), 8).unwrap();
        assert!(rep.max_deviation() < 1e-12);
    }
}
