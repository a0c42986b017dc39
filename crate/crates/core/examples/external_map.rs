//! Plugging in an externally computed map: the boundary of a disk pair's
//! level curve is tabulated together with its Phi values, and the resulting
//! pair is used like any built-in one.

use faber_walsh::maps::{sym_intervals_pair, tabulated_pair, TabulatedMapData};
use faber_walsh::{build_focus_sequence, FaberWalshFamily, FocusOrder};
use num_complex::Complex64;

fn main() -> faber_walsh::Result<()> {
    // tabulate the exact two-interval map on the level curves sigma = 1.6
    let exact = sym_intervals_pair(0.25, 1.0)?;
    let curve = exact.domain().level_curve(1.6, 512)?;
    let mut contour_points = Vec::new();
    let mut phi_values = Vec::new();
    for comp in &curve.components {
        let z: Vec<Complex64> = comp
            .points
            .iter()
            .map(|&w| exact.psi(w))
            .collect::<Result<_, _>>()?;
        contour_points.push(z);
        phi_values.push(comp.points.clone());
    }
    let data = TabulatedMapData {
        foci: exact.domain().foci().to_vec(),
        exponents: exact.domain().exponents().to_vec(),
        mu: exact.domain().capacity(),
        contour_points,
        phi_values,
    };
    let json = serde_json::to_string(&data)?;
    println!("tabulated document: {} bytes", json.len());

    let pair = tabulated_pair(&serde_json::from_str(&json)?)?;
    let z = Complex64::new(0.3, 1.2);
    println!(
        "Phi(z): tabulated {:.12}, exact {:.12}",
        pair.phi(z)?,
        exact.phi(z)?
    );

    let seq = build_focus_sequence(pair.domain(), 6, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, 6)?;
    println!("b_2 from tabulated data: {}", fam.polys()[2].trimmed(1e-9));
    Ok(())
}
