use num_complex::Complex64;
use rayon::prelude::*;

use super::{acf, FaberWalshFamily};
use crate::error::{FwError, Result};
use crate::maps::{SetDescriptor, SetPiece};
use crate::poly::Poly;

const GOLDEN: f64 = 0.618_033_988_749_894_8;

fn piece_value<F: Fn(Complex64) -> f64>(f: &F, piece: &SetPiece, t: f64) -> f64 {
    let t = if piece.periodic { t } else { t.clamp(0.0, 1.0) };
    piece.points(t).into_iter().map(f).fold(0.0, f64::max)
}

fn golden_max<F: Fn(Complex64) -> f64>(f: &F, piece: &SetPiece, mut a: f64, mut b: f64) -> f64 {
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let mut f1 = piece_value(f, piece, x1);
    let mut f2 = piece_value(f, piece, x2);
    for _ in 0..60 {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = piece_value(f, piece, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = piece_value(f, piece, x2);
        }
        if b - a < 1e-15 {
            break;
        }
    }
    f1.max(f2)
}

/// Max of `f` over one piece: `m + 1` samples, then golden-section search
/// around every discrete local maximum.
fn piece_max<F: Fn(Complex64) -> f64 + Sync>(f: &F, piece: &SetPiece, m: usize) -> f64 {
    let h = 1.0 / m as f64;
    let vals: Vec<f64> = (0..=m)
        .into_par_iter()
        .map(|j| piece_value(f, piece, j as f64 * h))
        .collect();
    let mut best = vals.iter().copied().fold(0.0, f64::max);
    let last = m;
    let candidates: Vec<usize> = (0..=last)
        .filter(|&j| {
            let left = if j > 0 {
                vals[j - 1]
            } else if piece.periodic {
                vals[last - 1]
            } else {
                f64::NEG_INFINITY
            };
            let right = if j < last {
                vals[j + 1]
            } else if piece.periodic {
                vals[1]
            } else {
                f64::NEG_INFINITY
            };
            vals[j] >= left && vals[j] >= right
        })
        .collect();
    let refined: Vec<f64> = candidates
        .par_iter()
        .map(|&j| {
            let t = j as f64 * h;
            golden_max(f, piece, t - h, t + h).max(vals[j])
        })
        .collect();
    for r in refined {
        best = best.max(r);
    }
    best
}

/// `max_E f` for a nonnegative continuous `f` (e.g. `|p|`), sampling interval
/// components fully and curve-bounded ones on their boundary. The sample
/// count starts at `density` per piece and doubles until the result moves by
/// less than `1e-6` relative.
pub fn sup_norm_fn<F: Fn(Complex64) -> f64 + Sync>(
    f: F,
    set: &SetDescriptor,
    density: usize,
) -> Result<f64> {
    sup_norm_fn_with_floor(f, set, density, 0.0)
}

/// [`sup_norm_fn`] that also stops once successive estimates differ by at
/// most `abs_floor`, for functions sampled at roundoff level.
pub fn sup_norm_fn_with_floor<F: Fn(Complex64) -> f64 + Sync>(
    f: F,
    set: &SetDescriptor,
    density: usize,
    abs_floor: f64,
) -> Result<f64> {
    if density < 64 {
        return Err(FwError::invalid(format!(
            "density {density} must be at least 64"
        )));
    }
    let pieces = set.pieces()?;
    let eval = |m: usize| {
        pieces
            .iter()
            .map(|p| piece_max(&f, p, m))
            .fold(0.0, f64::max)
    };
    let mut m = density;
    let mut prev = eval(m);
    for _ in 0..12 {
        m *= 2;
        let cur = eval(m);
        if (cur - prev).abs() <= (1e-6 * cur).max(abs_floor).max(f64::MIN_POSITIVE) {
            return Ok(cur.max(prev));
        }
        prev = cur;
    }
    Err(FwError::no_convergence("sup-norm sampling", 12))
}

/// `||p||_E`. Sampling also stops at the [`horner_noise`] level for the
/// bounding radius of `E`, below which the estimates only fluctuate.
pub fn sup_norm_on_e(p: &Poly, set: &SetDescriptor, density: usize) -> Result<f64> {
    let floor = horner_noise(p, set.bounding_radius()?);
    sup_norm_fn_with_floor(|z| p.eval(z).norm(), set, density, floor)
}

/// Roundoff scale `64 eps sum |c_j| r^j` of evaluating `p` on `|z| <= r`.
pub fn horner_noise(p: &Poly, r: f64) -> f64 {
    64.0 * f64::EPSILON
        * p.coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
}

/// One row of a norm-decay table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormRow {
    pub k: usize,
    pub norm: f64,
    /// `||b_k||_E / |b_k(z0)|`; `+inf` when `b_k(z0) = 0`.
    pub normalized: f64,
    /// `R_{z0}(E)^k`.
    pub acf_pow: f64,
    pub zero_at_z0: bool,
}

impl NormRow {
    /// Bernstein-Walsh: `normalized >= R^k (1 - 1e-9)`.
    pub fn bernstein_walsh_ok(&self) -> bool {
        self.normalized >= self.acf_pow * (1.0 - 1e-9)
    }
}

/// Norms, normalized norms and `R^k` for `b_0, ..., b_K` of `family`.
pub fn norm_decay_table(
    family: &FaberWalshFamily,
    z0: Complex64,
    k_max: usize,
    density: usize,
) -> Result<Vec<NormRow>> {
    if k_max > family.max_degree() {
        return Err(FwError::invalid(format!(
            "table to degree {k_max} but the family stops at {}",
            family.max_degree()
        )));
    }
    let set = family.pair().set();
    if set.contains(z0) {
        return Err(FwError::invalid(format!("z0 = {z0} lies in E")));
    }
    let r = acf(family.pair(), z0)?;
    (0..=k_max)
        .map(|k| {
            let b = &family.polys()[k];
            let norm = sup_norm_on_e(b, set, density)?;
            let at = b.eval(z0).norm();
            let zero = at == 0.0;
            Ok(NormRow {
                k,
                norm,
                normalized: if zero { f64::INFINITY } else { norm / at },
                acf_pow: r.powi(k as i32),
                zero_at_z0: zero,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lemniscatic::{build_focus_sequence, FocusOrder};

    #[test]
    fn norm_of_t2() {
        let set = SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 };
        let b2 = Poly::from_real(&[-0.53125, 0.0, 1.0]);
        let n = sup_norm_on_e(&b2, &set, 64).unwrap();
        assert!((n - 0.46875).abs() < 1e-6);
        assert!((sup_norm_on_e(&Poly::one(), &set, 64).unwrap() - 1.0).abs() < 1e-15);
        assert!(sup_norm_on_e(&b2, &set, 8).is_err());
    }

    #[test]
    fn interior_maximum_on_a_curve() {
        // |z - 1.05| on the Koch-Liesen preimage boundary peaks away from the samples
        let set = SetDescriptor::KochLiesenPreimage {
            lambda: Complex64::new(-1.0, 0.0),
            phi: 2.0 * std::f64::consts::PI / 3.0,
            r: 1.1,
            n: 5,
        };
        let v = sup_norm_fn(|z| (z - 1.05).norm(), &set, 64).unwrap();
        assert!(v > 1.9 && v < 2.2, "{v}");
    }

    #[test]
    fn table_rows() {
        let set = SetDescriptor::SymmetricIntervals { c: 0.5, d: 1.0 };
        let pair = set.conformal_pair().unwrap();
        let seq = build_focus_sequence(pair.domain(), 6, FocusOrder::default());
        let fam = FaberWalshFamily::build(&pair, &seq, 6).unwrap();
        let rows = norm_decay_table(&fam, Complex64::new(0.0, 0.0), 6, 64).unwrap();
        assert_eq!(rows[0].norm, 1.0);
        assert_eq!(rows[0].normalized, 1.0);
        assert!(rows.iter().all(|r| r.bernstein_walsh_ok()));
        // b_1 = z - 0.75 does not vanish at 0; odd b_k with a focus at 0 would
        let z = Complex64::new(0.75, 0.0);
        assert!(norm_decay_table(&fam, z, 6, 64).is_err());
    }
}
