use std::f64::consts::PI;

use clap::ValueEnum;
use num_complex::Complex64;

use crate::error::Result;
use crate::fw::{
    acf, acf_generic, acf_sym_closed_form, affine_covariance_check, chebyshev_star_oracle,
    faber_relation_check, fw_contour, norm_decay_table, polynomial_part_oracle, ContourOptions,
    FaberWalshFamily,
};
use crate::lemniscatic::{build_focus_sequence, FocusOrder, FocusSequence, LemniscaticDomain};
use crate::maps::SetDescriptor;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Chebyshev,
    Oracles,
    Explicit,
    Acf,
    KochLiesen,
    Faber,
    Balance,
    Affine,
    BernsteinWalsh,
}

impl Suite {
    pub fn all() -> &'static [Suite] {
        &[
            Suite::Chebyshev,
            Suite::Oracles,
            Suite::Explicit,
            Suite::Acf,
            Suite::KochLiesen,
            Suite::Faber,
            Suite::Balance,
            Suite::Affine,
            Suite::BernsteinWalsh,
        ]
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Chebyshev => "chebyshev",
            Suite::Oracles => "oracles",
            Suite::Explicit => "explicit",
            Suite::Acf => "acf",
            Suite::KochLiesen => "koch-liesen",
            Suite::Faber => "faber",
            Suite::Balance => "balance",
            Suite::Affine => "affine",
            Suite::BernsteinWalsh => "bernstein-walsh",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Points on a golden-angle spiral in the annulus `r0 <= |z| <= r1`.
fn spiral(n: usize, r0: f64, r1: f64) -> Vec<Complex64> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|j| {
            let s = (j as f64 + 0.5) / n as f64;
            Complex64::from_polar(r0 + (r1 - r0) * s, golden * j as f64)
        })
        .collect()
}

fn within(dev: f64, tol: f64) -> (bool, String) {
    (
        dev <= tol,
        format!("max deviation {dev:.3e} (tol {tol:.0e})"),
    )
}

fn chebyshev() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    let sym = SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 };
    let pair = sym.conformal_pair()?;
    let seq = build_focus_sequence(pair.domain(), 16, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, 16)?;
    for k in 1..=8 {
        let t = chebyshev_star_oracle(2, 0.25, 1.0, k)?;
        worst = worst.max(fam.polys()[2 * k].max_coeff_diff(&t));
    }
    let star = SetDescriptor::StarIntervals {
        n: 3,
        c: 0.25,
        d: 1.0,
    };
    let pair = star.conformal_pair()?;
    let fam = FaberWalshFamily::build(&pair, &FocusSequence::cyclic(3, 24), 24)?;
    for k in 1..=8 {
        let t = chebyshev_star_oracle(3, 0.25, 1.0, k)?;
        worst = worst.max(fam.polys()[3 * k].max_coeff_diff(&t));
    }
    Ok(within(worst, 1e-8))
}

fn oracles() -> Result<(bool, String)> {
    let set = SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 };
    let pair = set.conformal_pair()?;
    let k_max = 12;
    let seq = build_focus_sequence(pair.domain(), k_max + 1, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, k_max)?;
    let mut worst: f64 = 0.0;
    for k in 0..=k_max {
        let c = fw_contour(&pair, &seq, k, ContourOptions::default())?;
        let o = polynomial_part_oracle(&pair, &seq, k, k + 10)?;
        worst = worst.max(fam.polys()[k].max_coeff_diff(&c));
        worst = worst.max(fam.polys()[k].max_coeff_diff(&o));
    }
    Ok(within(worst, 1e-8))
}

fn explicit() -> Result<(bool, String)> {
    let set = SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 };
    let pair = set.conformal_pair()?;
    let seq = build_focus_sequence(pair.domain(), 2, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, 2)?;
    let c1 = pair.psi_laurent().map_or(f64::NAN, |l| l.tail_coeff(1).re);
    let devs = [
        fam.polys()[1].max_coeff_diff(&Poly::from_real(&[-0.625, 1.0])),
        fam.polys()[2].max_coeff_diff(&Poly::from_real(&[-0.53125, 0.0, 1.0])),
        (c1 - 0.0703125).abs(),
        (pair.domain().capacity() - 15f64.sqrt() / 8.0).abs(),
    ];
    Ok(within(devs.iter().copied().fold(0.0, f64::max), 1e-12))
}

fn acf_suite() -> Result<(bool, String)> {
    let set = SetDescriptor::SymmetricIntervals { c: 0.5, d: 1.0 };
    let pair = set.conformal_pair()?;
    let z = Complex64::new(0.0, 0.0);
    let exact = (1.0f64 / 3.0).sqrt();
    let at_zero = (acf(&pair, z)? - exact)
        .abs()
        .max((acf_generic(&pair, z)? - exact).abs());
    let mut spread: f64 = 0.0;
    for p in spiral(100, 0.05, 3.0) {
        spread = spread.max((acf_sym_closed_form(0.5, 1.0, p) - acf_generic(&pair, p)?).abs());
    }
    let passed = at_zero <= 1e-12 && spread <= 1e-10;
    Ok((
        passed,
        format!("R_0 error {at_zero:.3e}, closed vs generic {spread:.3e}"),
    ))
}

fn koch_liesen_set() -> SetDescriptor {
    SetDescriptor::KochLiesenPreimage {
        lambda: Complex64::new(-1.0, 0.0),
        phi: 2.0 * PI / 3.0,
        r: 1.1,
        n: 5,
    }
}

fn koch_liesen() -> Result<(bool, String)> {
    let pair = koch_liesen_set().conformal_pair()?;
    let r = acf(&pair, Complex64::new(0.0, 0.0))?;
    Ok(((r - 0.9803).abs() <= 5e-4, format!("R_0 = {r:.6}")))
}

fn faber() -> Result<(bool, String)> {
    let rep = faber_relation_check(&koch_liesen_set(), 4)?;
    Ok(within(rep.max_deviation(), 1e-7))
}

fn balance() -> Result<(bool, String)> {
    let configs: [&[f64]; 3] = [&[0.5, 0.5], &[1.0 / 3.0, 2.0 / 3.0], &[0.2, 0.3, 0.5]];
    let mut worst: f64 = 0.0;
    for m in configs {
        let foci = (0..m.len())
            .map(|j| Complex64::new(j as f64, 0.0))
            .collect();
        let dom = LemniscaticDomain::new(foci, m.to_vec(), 1.0)?;
        let seq = build_focus_sequence(&dom, 10_000, FocusOrder::default());
        worst = worst.max(seq.max_imbalance(m));
    }
    Ok((worst <= 1.0, format!("max |N_kj - k m_j| = {worst}")))
}

fn affine() -> Result<(bool, String)> {
    let set = SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 };
    let pair = set.conformal_pair()?;
    let seq = build_focus_sequence(pair.domain(), 16, FocusOrder::default());
    let mut worst: f64 = 0.0;
    for (a, b) in [
        ((0.7, 0.4), (0.3, -0.2)),
        ((1.5, 0.0), (0.0, 1.0)),
        ((0.0, -1.2), (-0.5, 0.5)),
    ] {
        let alpha = Complex64::new(a.0, a.1);
        let beta = Complex64::new(b.0, b.1);
        worst = worst.max(affine_covariance_check(&pair, &seq, alpha, beta, 15)?.max_deviation());
    }
    Ok(within(worst, 1e-9))
}

fn bernstein_walsh() -> Result<(bool, String)> {
    let configs = [
        (
            SetDescriptor::SymmetricIntervals { c: 0.5, d: 1.0 },
            Complex64::new(0.0, 0.0),
        ),
        (
            SetDescriptor::SymmetricIntervals { c: 0.1, d: 2.0 },
            Complex64::new(0.3, 0.6),
        ),
        (
            SetDescriptor::StarIntervals {
                n: 3,
                c: 0.3,
                d: 1.0,
            },
            Complex64::new(0.1, 0.0),
        ),
        (koch_liesen_set(), Complex64::new(0.0, 0.0)),
    ];
    let mut violations = 0;
    for (set, z0) in configs {
        let pair = set.conformal_pair()?;
        let k_max = 20;
        let seq = build_focus_sequence(pair.domain(), k_max + 1, FocusOrder::default());
        let fam = FaberWalshFamily::build(&pair, &seq, k_max)?;
        let mu = pair.domain().capacity();
        for row in norm_decay_table(&fam, z0, k_max, 128)? {
            if !row.bernstein_walsh_ok() || row.norm < mu.powi(row.k as i32) * (1.0 - 1e-9) {
                violations += 1;
            }
        }
    }
    Ok((violations == 0, format!("{violations} violated rows")))
}

fn run_one(s: Suite) -> CheckOutcome {
    let res = match s {
        Suite::Chebyshev => chebyshev(),
        Suite::Oracles => oracles(),
        Suite::Explicit => explicit(),
        Suite::Acf => acf_suite(),
        Suite::KochLiesen => koch_liesen(),
        Suite::Faber => faber(),
        Suite::Balance => balance(),
        Suite::Affine => affine(),
        Suite::BernsteinWalsh => bernstein_walsh(),
    };
    let (passed, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckOutcome {
        name: s.name().to_owned(),
        passed,
        detail,
    }
}

/// Runs one suite, or all of them.
pub fn run_suites(only: Option<Suite>) -> Vec<CheckOutcome> {
    match only {
        Some(s) => vec![run_one(s)],
        None => Suite::all().iter().map(|&s| run_one(s)).collect(),
    }
}
