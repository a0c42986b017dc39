use num_complex::Complex64;

use crate::error::{FwError, Result};
use crate::poly::Poly;

/// Classical Chebyshev polynomial of the first kind, from
/// `T_{k+1} = 2 z T_k - T_{k-1}`.
pub fn chebyshev_t(k: usize) -> Poly {
    let mut prev = Poly::one();
    if k == 0 {
        return prev;
    }
    let mut cur = Poly::monomial(1);
    let two_z = Poly::from_real(&[0.0, 2.0]);
    for _ in 1..k {
        let next = two_z.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_{nk}(z; E)` for the star `E = U_j e^{2 pi i j/n} [C, D]`:
/// `((D^n - C^n)/4)^k * 2 T_k(P(z))` with `P(z) = (2 z^n - C^n - D^n)/(D^n - C^n)`.
pub fn chebyshev_star_oracle(n: usize, c: f64, d: f64, k: usize) -> Result<Poly> {
    if !(c > 0.0 && d > c && d.is_finite()) {
        return Err(FwError::invalid(format!(
            "need 0 < C < D, got C = {c}, D = {d}"
        )));
    }
    if n == 0 || k == 0 {
        return Err(FwError::invalid("need n >= 1 and k >= 1"));
    }
    let (cn, dn) = (c.powi(n as i32), d.powi(n as i32));
    let span = dn - cn;
    let mut p = vec![Complex64::new(0.0, 0.0); n + 1];
    p[0] = Complex64::new(-(cn + dn) / span, 0.0);
    p[n] = Complex64::new(2.0 / span, 0.0);
    let inner = Poly::new(p);
    let scale = 2.0 * (span / 4.0).powi(k as i32);
    Ok(chebyshev_t(k)
        .compose(&inner)
        .scale(Complex64::new(scale, 0.0)))
}
