//! b_k of E and of alpha E + beta are related by b_k(z) = alpha^-k b~_k(alpha z + beta).

use faber_walsh::fw::affine_covariance_check;
use faber_walsh::maps::sym_intervals_pair;
use faber_walsh::{build_focus_sequence, FocusOrder};
use num_complex::Complex64;

fn main() -> faber_walsh::Result<()> {
    let pair = sym_intervals_pair(0.25, 1.0)?;
    let seq = build_focus_sequence(pair.domain(), 15, FocusOrder::default());
    for (alpha, beta) in [
        (Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)),
        (Complex64::new(0.0, 1.0), Complex64::new(0.5, 0.0)),
        (Complex64::from_polar(0.7, 1.0), Complex64::new(-0.3, 0.4)),
    ] {
        let rep = affine_covariance_check(&pair, &seq, alpha, beta, 15)?;
        println!(
            "alpha = {alpha:.3}, beta = {beta:.3}: max deviation {:.2e}",
            rep.max_deviation()
        );
    }
    Ok(())
}
