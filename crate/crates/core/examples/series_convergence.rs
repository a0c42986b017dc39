//! Faber-Walsh series of 1/(z - z*) on two intervals: the n-th root of the
//! error approaches 1/rho = R_{z*}(E).

use faber_walsh::fw::{fw_series, sup_norm_fn, SeriesContour, SeriesOptions};
use faber_walsh::{acf, build_focus_sequence, FaberWalshFamily, FocusOrder, SetDescriptor};
use num_complex::Complex64;

fn main() -> faber_walsh::Result<()> {
    let set = SetDescriptor::SymmetricIntervals { c: 0.5, d: 1.0 };
    let pair = set.conformal_pair()?;
    let zs = Complex64::new(0.2, 0.6);
    let rho = 1.0 / acf(&pair, zs)?;
    println!("z* = {zs}, rho = {rho:.6}");

    let n_max = 30;
    let seq = build_focus_sequence(pair.domain(), n_max + 1, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, n_max)?;
    let f = |z: Complex64| 1.0 / (z - zs);
    let contour = SeriesContour::Level {
        lambda: None,
        rho: Some(rho),
    };
    let exp = fw_series(&pair, &seq, f, n_max, contour, SeriesOptions::default())?;

    for n in (5..=n_max).step_by(5) {
        let s = exp.partial_sum_poly(fam.polys(), n);
        let err = sup_norm_fn(|z| (f(z) - s.eval(z)).norm(), &set, 256)?;
        println!(
            "n = {n:2}: ||f - S_n|| = {err:.3e}, n-th root {:.4}",
            err.powf(1.0 / n as f64)
        );
    }
    Ok(())
}
