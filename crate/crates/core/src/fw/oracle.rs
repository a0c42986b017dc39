use crate::error::{FwError, Result};
use crate::lemniscatic::FocusSequence;
use crate::maps::{numeric_laurent_of_phi, ConformalPair};
use crate::poly::{LaurentAtInfinity, Poly};

/// `b_k` as the polynomial part of `u_k(Phi(z)) = prod (Phi(z) - alpha_j)`,
/// formed from the numerically extracted Laurent series of `Phi` by
/// truncated series products. `k_tail >= k + 10` tail terms are used.
pub fn polynomial_part_oracle(
    pair: &ConformalPair,
    seq: &FocusSequence,
    k: usize,
    k_tail: usize,
) -> Result<Poly> {
    if k_tail < k + 10 {
        return Err(FwError::invalid(format!(
            "tail order {k_tail} must be at least k + 10 = {}",
            k + 10
        )));
    }
    if k > seq.len() {
        return Err(FwError::invalid(format!(
            "b_{k} needs {k} sequence entries"
        )));
    }
    if k == 0 {
        return Ok(Poly::one());
    }
    let radius = 1.2 * pair.set().bounding_radius()? + 0.1;
    let phi = numeric_laurent_of_phi(pair, radius, k_tail)?;
    let alphas = seq.points(pair.domain(), k);
    let mut acc: LaurentAtInfinity = phi.shifted(alphas[0]);
    for &a in &alphas[1..] {
        let factor = phi.shifted(a);
        let order = acc.product_order(&factor);
        acc = acc.truncated_product(&factor, order)?;
    }
    Ok(acc.positive().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::inverse_joukowski_pair;

    fn max_imag(p: &Poly) -> f64 {
        p.coeffs().iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    #[test]
    fn first_faber_polynomial_of_interval() {
        let pair = inverse_joukowski_pair(-1.0, 1.0).unwrap();
        let seq = FocusSequence::cyclic(1, 3);
        let b1 = polynomial_part_oracle(&pair, &seq, 1, 11).unwrap();
        assert!(b1.max_coeff_diff(&Poly::monomial(1)) < 1e-12);
        assert_eq!(
            polynomial_part_oracle(&pair, &seq, 0, 10).unwrap(),
            Poly::one()
        );
        let b2 = polynomial_part_oracle(&pair, &seq, 2, 12).unwrap();
        assert!(b2.max_coeff_diff(&Poly::from_real(&[-0.5, 0.0, 1.0])) < 1e-12);
        assert!(max_imag(&b2) < 1e-12);
        assert!(polynomial_part_oracle(&pair, &seq, 2, 5).is_err());
    }
}
