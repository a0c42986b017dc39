//! Preimage of a Koch-Liesen domain under z^5: lemniscatic data, R_0(E),
//! and the norm decay of b_k against R_0^k.

use std::f64::consts::PI;

use faber_walsh::fw::norm_decay_table;
use faber_walsh::maps::koch_liesen_psi;
use faber_walsh::{acf, build_focus_sequence, FaberWalshFamily, FocusOrder, SetDescriptor};
use num_complex::Complex64;

fn main() -> faber_walsh::Result<()> {
    let lambda = Complex64::new(-1.0, 0.0);
    let (_, params) = koch_liesen_psi(lambda, 2.0 * PI / 3.0, 1.1)?;
    println!(
        "N = {}, M = {}, t = {}",
        params.n_param, params.m_param, params.t
    );

    let set = SetDescriptor::KochLiesenPreimage {
        lambda,
        phi: 2.0 * PI / 3.0,
        r: 1.1,
        n: 5,
    };
    let pair = set.conformal_pair()?;
    println!("mu = {}", pair.domain().capacity());
    let z0 = Complex64::new(0.0, 0.0);
    println!("R_0(E) = {:.6}", acf(&pair, z0)?);

    let seq = build_focus_sequence(pair.domain(), 40, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, 40)?;
    println!("k,norm,normalized,acf_pow_k");
    for r in norm_decay_table(&fam, z0, 40, 128)?.iter().step_by(5) {
        println!(
            "{},{:.6e},{:.6e},{:.6e}",
            r.k, r.norm, r.normalized, r.acf_pow
        );
    }
    Ok(())
}
