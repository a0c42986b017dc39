//! b_{nk} coincides with the Chebyshev polynomial of a star of intervals.

use faber_walsh::fw::{chebyshev_star_oracle, FaberWalshFamily};
use faber_walsh::{FocusSequence, SetDescriptor};

fn main() -> faber_walsh::Result<()> {
    for n in [2, 3, 4] {
        let set = SetDescriptor::StarIntervals { n, c: 0.25, d: 1.0 };
        let pair = set.conformal_pair()?;
        let fam = FaberWalshFamily::build(&pair, &FocusSequence::cyclic(n, 8 * n), 8 * n)?;
        let worst = (1..=8)
            .map(|k| {
                let t = chebyshev_star_oracle(n, 0.25, 1.0, k).unwrap();
                fam.polys()[n * k].max_coeff_diff(&t)
            })
            .fold(0.0, f64::max);
        println!("n = {n}: max |b_nk - T_nk| over k <= 8 is {worst:.2e}");
    }
    Ok(())
}
