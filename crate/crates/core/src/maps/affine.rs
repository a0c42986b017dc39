use std::sync::Arc;

use num_complex::Complex64;

use super::{ConformalPair, LemniscaticMap, SetDescriptor};
use crate::error::{FwError, Result};
use crate::lemniscatic::LemniscaticDomain;
use crate::poly::LaurentAtInfinity;

#[derive(Debug)]
struct AffineMap {
    base: Arc<dyn LemniscaticMap>,
    alpha: Complex64,
    beta: Complex64,
}

impl LemniscaticMap for AffineMap {
    fn phi(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.alpha * self.base.phi((z - self.beta) / self.alpha)? + self.beta)
    }

    fn psi(&self, w: Complex64) -> Result<Complex64> {
        Ok(self.alpha * self.base.psi((w - self.beta) / self.alpha)? + self.beta)
    }
}

/// Laurent data of `alpha psi((w - beta)/alpha) + beta`:
/// `c'_n = sum_{k<=n} alpha^{k+1} c_k binom(n-1, k-1) beta^{n-k}`.
fn transform_laurent(
    l: &LaurentAtInfinity,
    alpha: Complex64,
    beta: Complex64,
) -> LaurentAtInfinity {
    let order = l.order();
    let mut tail = vec![Complex64::new(0.0, 0.0); order];
    // row[k-1] = binom(n-1, k-1) for the current n
    let mut row: Vec<f64> = Vec::with_capacity(order);
    let beta_pow: Vec<Complex64> = (0..order).map(|e| beta.powu(e as u32)).collect();
    let mut alpha_pow = alpha;
    let scaled: Vec<Complex64> = (1..=order)
        .map(|k| {
            alpha_pow *= alpha;
            l.tail_coeff(k) * alpha_pow
        })
        .collect();
    for n in 1..=order {
        // Pascal update from binom(n-2, .) to binom(n-1, .)
        row.push(1.0);
        for k in (1..row.len() - 1).rev() {
            row[k] += row[k - 1];
        }
        tail[n - 1] = (1..=n)
            .map(|k| scaled[k - 1] * row[k - 1] * beta_pow[n - k])
            .sum();
    }
    let linear = l.linear();
    let constant = alpha * l.constant() + beta - linear * beta;
    LaurentAtInfinity::new(linear, constant, tail)
}

/// Pair for `P(E)`, `P(z) = alpha z + beta`: `Phi_P = P o Phi o P^{-1}`, foci
/// mapped by `P`, capacity scaled by `|alpha|`.
pub fn affine_image_pair(
    base: &ConformalPair,
    alpha: Complex64,
    beta: Complex64,
) -> Result<ConformalPair> {
    if alpha.norm() == 0.0 || !alpha.is_finite() || !beta.is_finite() {
        return Err(FwError::invalid(
            "affine map needs finite alpha != 0 and finite beta",
        ));
    }
    let dom = base.domain();
    let domain = LemniscaticDomain::new(
        dom.foci().iter().map(|a| alpha * a + beta).collect(),
        dom.exponents().to_vec(),
        dom.capacity() * alpha.norm(),
    )?;
    let laurent = base
        .psi_laurent()
        .map(|l| transform_laurent(l, alpha, beta));
    let map = AffineMap {
        base: base.map().clone(),
        alpha,
        beta,
    };
    let set = SetDescriptor::AffineImage {
        base: Box::new(base.set().clone()),
        alpha,
        beta,
    };
    Ok(ConformalPair::new(domain, Arc::new(map), laurent, set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::sym_intervals_pair;

    #[test]
    fn identity_is_identity() {
        let base = sym_intervals_pair(0.25, 1.0).unwrap();
        let same =
            affine_image_pair(&base, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(same.domain(), base.domain());
        assert_eq!(same.psi_laurent(), base.psi_laurent());
    }

    #[test]
    fn shift_and_scale() {
        let base = sym_intervals_pair(0.25, 1.0).unwrap();
        let shifted =
            affine_image_pair(&base, Complex64::new(1.0, 0.0), Complex64::new(0.7, 0.0)).unwrap();
        assert_eq!(shifted.domain().foci()[0], Complex64::new(1.325, 0.0));
        assert_eq!(shifted.domain().capacity(), base.domain().capacity());
        let doubled =
            affine_image_pair(&base, Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        assert!((doubled.domain().capacity() - 2.0 * base.domain().capacity()).abs() < 1e-15);
    }

    #[test]
    fn transformed_laurent_matches_psi() {
        let base = sym_intervals_pair(0.25, 1.0).unwrap();
        let alpha = Complex64::new(0.8, -0.6);
        let beta = Complex64::new(0.3, 0.2);
        let pair = affine_image_pair(&base, alpha, beta).unwrap();
        let l = pair.psi_laurent().unwrap();
        assert_eq!(l.linear(), Complex64::new(1.0, 0.0));
        assert!(l.constant().norm() < 1e-15);
        for w in [Complex64::new(2.5, 1.0), Complex64::new(-1.0, 2.2)] {
            assert!((l.eval(w) - pair.psi(w).unwrap()).norm() < 1e-12);
        }
        let z = Complex64::new(0.4, 1.1);
        let w = pair.phi(z).unwrap();
        assert!((pair.psi(w).unwrap() - z).norm() < 1e-13);
        assert!(affine_image_pair(&base, Complex64::new(0.0, 0.0), beta).is_err());
    }
}
