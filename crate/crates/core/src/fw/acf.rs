use num_complex::Complex64;

use crate::error::Result;
use crate::maps::{ConformalPair, SetDescriptor};

/// `R_{z0}(E) = mu / |U(Phi(z0))|` evaluated through the map; `1` on `E`
/// and within a relative `1e-12` of its boundary.
pub fn acf_generic(pair: &ConformalPair, z0: Complex64) -> Result<f64> {
    if pair.set().contains(z0) {
        return Ok(1.0);
    }
    let w = pair.phi(z0)?;
    let r = pair.domain().capacity() / pair.domain().abs_u(w);
    Ok(if r >= 1.0 - 1e-12 { 1.0 } else { r })
}

/// Closed form for `[-D, -C] u [C, D]`:
/// `R = (2/(D^2 - C^2) |z0^2 - (D^2+C^2)/2 +- sqrt((z0^2 - C^2)(z0^2 - D^2))|)^{-1/2}`
/// with the sign giving the larger modulus.
pub fn acf_sym_closed_form(c: f64, d: f64, z0: Complex64) -> f64 {
    let z2 = z0 * z0;
    let root = ((z2 - c * c) * (z2 - d * d)).sqrt();
    let mid = z2 - 0.5 * (d * d + c * c);
    let m = (mid + root).norm().max((mid - root).norm());
    let r = (2.0 * m / (d * d - c * c)).sqrt().recip();
    if r >= 1.0 - 1e-12 {
        1.0
    } else {
        r
    }
}

/// Asymptotic convergence factor of `E` at `z0`; symmetric intervals use the
/// closed form, every other set the map.
pub fn acf(pair: &ConformalPair, z0: Complex64) -> Result<f64> {
    match pair.set() {
        SetDescriptor::SymmetricIntervals { c, d } => {
            if pair.set().contains(z0) {
                Ok(1.0)
            } else {
                Ok(acf_sym_closed_form(*c, *d, z0))
            }
        }
        _ => acf_generic(pair, z0),
    }
}
