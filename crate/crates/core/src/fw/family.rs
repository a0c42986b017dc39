use num_complex::Complex64;

use crate::error::{FwError, Result};
use crate::lemniscatic::FocusSequence;
use crate::maps::ConformalPair;
use crate::poly::{LaurentAtInfinity, Poly};

/// Faber-Walsh polynomials `b_0, ..., b_K` from the tail `c_k` of `psi` and
/// the sequence points `alpha_1, ..., alpha_K`:
///
/// ```text
/// b_k          = (z - alpha_k) b_{k-1} + beta_{k-1,1}
/// beta_{1,l}   = alpha_1 (l-1) c_{l-1} - (l+1) c_l            (c_0 = 0)
/// beta_{k,l}   = -c_l b_{k-1} - alpha_k beta_{k-1,l} + beta_{k-1,l+1}
/// ```
///
/// The tail must carry at least `K + 2` coefficients.
pub fn fw_recursion(
    psi: &LaurentAtInfinity,
    alphas: &[Complex64],
    k_max: usize,
) -> Result<Vec<Poly>> {
    if psi.order() < k_max + 2 {
        return Err(FwError::InsufficientTruncation {
            needed: k_max + 2,
            available: psi.order(),
        });
    }
    if alphas.len() < k_max {
        return Err(FwError::invalid(format!(
            "degree {k_max} needs {k_max} sequence points, got {}",
            alphas.len()
        )));
    }
    let c = |l: usize| psi.tail_coeff(l);
    let mut polys = Vec::with_capacity(k_max + 1);
    polys.push(Poly::one());
    if k_max == 0 {
        return Ok(polys);
    }
    polys.push(Poly::one().linear_shift_mul(alphas[0]));
    // beta[l - 1] = beta_{k,l} for the current k, l = 1..=k_max - k + 1
    let a1 = alphas[0];
    let mut beta: Vec<Poly> = (1..=k_max)
        .map(|l| {
            let prev = if l >= 2 {
                c(l - 1)
            } else {
                Complex64::new(0.0, 0.0)
            };
            Poly::constant(a1 * (l as f64 - 1.0) * prev - c(l) * (l as f64 + 1.0))
        })
        .collect();
    for k in 2..=k_max {
        let ak = alphas[k - 1];
        let b = polys[k - 1].linear_shift_mul(ak).add(&beta[0]);
        // beta_{k,l} from beta_{k-1,.} and b_{k-1}
        let len = beta.len() - 1;
        let prev_b = &polys[k - 1];
        let next: Vec<Poly> = (1..=len)
            .map(|l| {
                prev_b
                    .scale(-c(l))
                    .sub(&beta[l - 1].scale(ak))
                    .add(&beta[l])
            })
            .collect();
        polys.push(b);
        beta = next;
    }
    Ok(polys)
}

/// The polynomials `b_0, ..., b_K` of a conformal pair and focus sequence.
#[derive(Clone, Debug)]
pub struct FaberWalshFamily {
    pair: ConformalPair,
    seq: FocusSequence,
    polys: Vec<Poly>,
}

impl FaberWalshFamily {
    /// Runs the recursion, extending the `psi` Laurent data numerically when
    /// the pair carries fewer than `K + 2` tail coefficients.
    pub fn build(pair: &ConformalPair, seq: &FocusSequence, k_max: usize) -> Result<Self> {
        if seq.len() < k_max {
            return Err(FwError::invalid(format!(
                "degree {k_max} needs {k_max} sequence entries, got {}",
                seq.len()
            )));
        }
        if seq.num_foci() != pair.domain().num_foci() {
            return Err(FwError::invalid("focus sequence does not match the domain"));
        }
        let pair = pair.clone().with_psi_order(k_max + 2)?;
        let laurent = pair
            .psi_laurent()
            .ok_or_else(|| FwError::invalid("pair has no Laurent data for psi"))?;
        let alphas = seq.points(pair.domain(), k_max);
        let polys = fw_recursion(laurent, &alphas, k_max)?;
        Ok(FaberWalshFamily {
            pair,
            seq: seq.clone(),
            polys,
        })
    }

    pub fn pair(&self) -> &ConformalPair {
        &self.pair
    }

    pub fn sequence(&self) -> &FocusSequence {
        &self.seq
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn get(&self, k: usize) -> Option<&Poly> {
        self.polys.get(k)
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }
}
