//! Phase portrait of b_10 for a Koch-Liesen preimage, written as a P6 image.
//! Usage: cargo run --example phase_portrait [out.ppm]

use std::f64::consts::PI;

use faber_walsh::cli::output::{phase_portrait, zeros_in_window, Window};
use faber_walsh::{build_focus_sequence, FaberWalshFamily, FocusOrder, SetDescriptor};
use num_complex::Complex64;

fn main() -> faber_walsh::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| {
        std::env::temp_dir()
            .join("b10_phase.ppm")
            .display()
            .to_string()
    });
    let set = SetDescriptor::KochLiesenPreimage {
        lambda: Complex64::new(-1.0, 0.0),
        phi: 2.0 * PI / 3.0,
        r: 1.1,
        n: 5,
    };
    let pair = set.conformal_pair()?;
    let seq = build_focus_sequence(pair.domain(), 10, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, 10)?;
    let win = Window::parse("-1.5,1.5,-1.5,1.5,600,600")?;
    let b10 = &fam.polys()[10];
    std::fs::write(&out, phase_portrait(b10, &win))?;
    println!(
        "wrote {out}; {} zeros in the window",
        zeros_in_window(b10, &win)?
    );
    Ok(())
}
