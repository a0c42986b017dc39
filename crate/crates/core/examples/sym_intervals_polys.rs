//! Faber-Walsh polynomials of [-1, -1/4] u [1/4, 1] from the recursion.

use faber_walsh::{build_focus_sequence, FaberWalshFamily, FocusOrder, SetDescriptor};

fn main() -> faber_walsh::Result<()> {
    let set = SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 };
    let pair = set.conformal_pair()?;
    println!("capacity mu = {}", pair.domain().capacity());
    println!("foci = {:?}", pair.domain().foci());

    let seq = build_focus_sequence(pair.domain(), 8, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, 8)?;
    for (k, b) in fam.polys().iter().enumerate() {
        println!("b_{k}(z) = {}", b.trimmed(1e-14));
    }
    Ok(())
}
