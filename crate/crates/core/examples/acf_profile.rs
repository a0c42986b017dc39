//! Convergence factors R_{z0}(E_j) along the real axis for the interval pairs
//! E_j = [-1, -2^-j] u [2^-j, 1], printed as CSV.

use faber_walsh::acf;
use faber_walsh::maps::sym_intervals_pair;
use num_complex::Complex64;

fn main() -> faber_walsh::Result<()> {
    let pairs: Vec<_> = (1..=4)
        .map(|j| sym_intervals_pair(0.5f64.powi(j), 1.0))
        .collect::<Result<_, _>>()?;
    println!("x,E1,E2,E3,E4");
    for i in 0..=80 {
        let x = -2.0 + 4.0 * i as f64 / 80.0;
        let row: Vec<String> = pairs
            .iter()
            .map(|p| acf(p, Complex64::new(x, 0.0)).map(|r| format!("{r:.16e}")))
            .collect::<Result<_, _>>()?;
        println!("{x:.4},{}", row.join(","));
    }
    Ok(())
}
