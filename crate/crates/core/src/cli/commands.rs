use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use super::check::run_suites;
use super::config::{parse_complex, FunctionSelector, JobConfig};
use super::output::{csv_string, emit, phase_portrait, zeros_in_window, Cell, Window};
use super::{AcfArgs, CheckArgs, NormsArgs, PhaseArgs, PolyArgs, PolyMethod, SeriesArgs};
use crate::error::{FwError, Result};
use crate::fw::{
    acf, fw_contour, fw_series, horner_noise, norm_decay_table, sup_norm_fn,
    sup_norm_fn_with_floor, ContourOptions, SeriesContour, SeriesOptions,
};
use crate::lemniscatic::FocusSequence;
use crate::maps::ConformalPair;
use crate::poly::Poly;

/// Progress text goes to stdout when the data goes to a file, else stderr.
fn info(cfg: &JobConfig, msg: &str) {
    if cfg.out.is_some() {
        println!("{msg}");
    } else {
        eprintln!("{msg}");
    }
}

fn describe_sequence(pair: &ConformalPair, seq: &FocusSequence, k: usize) -> String {
    let idx: Vec<String> = seq
        .entries()
        .iter()
        .take(k)
        .map(|i| (i + 1).to_string())
        .collect();
    let foci: Vec<String> = pair
        .domain()
        .foci()
        .iter()
        .enumerate()
        .map(|(j, a)| format!("a_{} = {}{:+}i", j + 1, a.re, a.im))
        .collect();
    format!(
        "focus sequence: [{}] with {}",
        idx.join(", "),
        foci.join(", ")
    )
}

/// Coefficient table of `b_0, ..., b_K`: rows `(k, power, re, im)`.
pub fn poly_table(polys: &[Poly]) -> Result<String> {
    let rows: Vec<Vec<Cell>> = polys
        .iter()
        .enumerate()
        .flat_map(|(k, p)| {
            (0..=k).map(move |j| {
                let c = p.coeff(j);
                vec![k.into(), j.into(), c.re.into(), c.im.into()]
            })
        })
        .collect();
    csv_string(&["k", "power", "re", "im"], &rows)
}

pub fn cmd_poly(a: &PolyArgs) -> Result<()> {
    let cfg = JobConfig::from_args(&a.set)?;
    let pair = cfg.pair()?;
    let seq = cfg.sequence(&pair, a.degree.max(1));
    let polys = match a.method {
        PolyMethod::Recursion => crate::fw::FaberWalshFamily::build(&pair, &seq, a.degree)?
            .polys()
            .to_vec(),
        PolyMethod::Contour => {
            let opts = cfg.nodes.map_or(ContourOptions::default(), |n| {
                ContourOptions::default().with_nodes(n)
            });
            (0..=a.degree)
                .map(|k| fw_contour(&pair, &seq, k, opts))
                .collect::<Result<Vec<_>>>()?
        }
    };
    emit(cfg.out.as_deref(), poly_table(&polys)?.as_bytes())?;
    if let Some(path) = &a.json {
        let doc = json!({
            "sequence": seq.entries().iter().take(a.degree).collect::<Vec<_>>(),
            "foci": pair.domain().foci(),
            "polys": polys.iter().map(|p| p.coeffs().to_vec()).collect::<Vec<_>>(),
        });
        std::fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    }
    info(&cfg, &describe_sequence(&pair, &seq, a.degree));
    Ok(())
}

pub fn cmd_norms(a: &NormsArgs) -> Result<()> {
    let cfg = JobConfig::from_args(&a.set)?;
    let z0 = parse_complex(&a.z0)?;
    let fam = cfg.family(a.kmax)?;
    let density = cfg.nodes.unwrap_or(256).max(64);
    let rows = norm_decay_table(&fam, z0, a.kmax, density)?;
    let cells: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| {
            vec![
                r.k.into(),
                r.norm.into(),
                r.normalized.into(),
                r.acf_pow.into(),
            ]
        })
        .collect();
    emit(
        cfg.out.as_deref(),
        csv_string(&["k", "norm", "normalized", "acf_pow_k"], &cells)?.as_bytes(),
    )?;
    let zeros: Vec<String> = rows
        .iter()
        .filter(|r| r.zero_at_z0)
        .map(|r| r.k.to_string())
        .collect();
    if !zeros.is_empty() {
        info(
            &cfg,
            &format!(
                "b_k(z0) = 0 for k in [{}]; normalized reported as inf",
                zeros.join(", ")
            ),
        );
    }
    info(&cfg, &describe_sequence(fam.pair(), fam.sequence(), a.kmax));
    Ok(())
}

fn acf_values(pair: &ConformalPair, points: &[Complex64]) -> Result<Vec<f64>> {
    points.par_iter().map(|&z| acf(pair, z)).collect()
}

pub fn cmd_acf(a: &AcfArgs) -> Result<()> {
    let cfg = JobConfig::from_args(&a.set)?;
    let pair = cfg.pair()?;
    let text = if let Some(g) = &a.grid {
        let win = Window::parse(g)?;
        let pts = win.points();
        let vals = acf_values(&pair, &pts)?;
        let rows: Vec<Vec<Cell>> = pts
            .iter()
            .zip(&vals)
            .map(|(z, r)| vec![z.re.into(), z.im.into(), (*r).into()])
            .collect();
        csv_string(&["re", "im", "acf"], &rows)?
    } else if let Some(p) = &a.profile {
        let parts: Vec<&str> = p.split(',').map(str::trim).collect();
        let bad = || FwError::invalid(format!("profile '{p}' must be x0,x1,n"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let x0: f64 = parts[0].parse().map_err(|_| bad())?;
        let x1: f64 = parts[1].parse().map_err(|_| bad())?;
        let n: usize = parts[2].parse().map_err(|_| bad())?;
        if !(x1 > x0) || !x0.is_finite() || !x1.is_finite() || !(2..=1 << 20).contains(&n) {
            return Err(bad());
        }
        let pts: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new(x0 + (x1 - x0) * j as f64 / (n - 1) as f64, 0.0))
            .collect();
        let vals = acf_values(&pair, &pts)?;
        let rows: Vec<Vec<Cell>> = pts
            .iter()
            .zip(&vals)
            .map(|(z, r)| vec![z.re.into(), (*r).into()])
            .collect();
        csv_string(&["x", "acf"], &rows)?
    } else {
        let z0 = parse_complex(
            a.z0.as_deref()
                .ok_or_else(|| FwError::invalid("acf needs one of --z0, --profile or --grid"))?,
        )?;
        let r = acf(&pair, z0)?;
        csv_string(
            &["re", "im", "acf"],
            &[vec![z0.re.into(), z0.im.into(), r.into()]],
        )?
    };
    emit(cfg.out.as_deref(), text.as_bytes())
}

pub fn cmd_phase(a: &PhaseArgs) -> Result<()> {
    let cfg = JobConfig::from_args(&a.set)?;
    let out = cfg
        .out
        .clone()
        .ok_or_else(|| FwError::invalid("phase needs --out <file.ppm>"))?;
    let win = Window::parse(&a.grid)?;
    let fam = cfg.family(a.degree)?;
    let p = &fam.polys()[a.degree];
    std::fs::write(&out, phase_portrait(p, &win))?;
    match zeros_in_window(p, &win) {
        Ok(n) => println!("zeros of b_{} in window: {n}", a.degree),
        Err(e) => println!("zeros of b_{} in window: not counted ({e})", a.degree),
    }
    Ok(())
}

pub fn cmd_series(a: &SeriesArgs) -> Result<()> {
    let cfg = JobConfig::from_args(&a.set)?;
    let f = FunctionSelector::parse(&a.function)?;
    let pair = cfg.pair()?;
    let seq = cfg.sequence(&pair, a.kmax + 1);
    let fam = crate::fw::FaberWalshFamily::build(&pair, &seq, a.kmax)?;
    let contour = match (&f, a.lambda) {
        (FunctionSelector::Rational(p), lambda) => {
            if cfg.set.contains(*p) {
                return Err(FwError::invalid(format!("pole {p} lies in E")));
            }
            let rho = 1.0 / acf(&pair, *p)?;
            info(&cfg, &format!("rho = {rho:.16e}"));
            SeriesContour::Level {
                lambda,
                rho: Some(rho),
            }
        }
        (_, Some(l)) => SeriesContour::Level {
            lambda: Some(l),
            rho: None,
        },
        (_, None) => SeriesContour::Circle { radius: None },
    };
    let mut opts = SeriesOptions::default();
    if let Some(n) = cfg.nodes {
        opts.min_nodes = n;
    }
    let fe = |z: Complex64| f.eval(z);
    let exp = fw_series(&pair, &seq, fe, a.kmax, contour, opts)?;
    if let Some(l) = exp.lambda_used {
        info(&cfg, &format!("lambda = {l:.16e}"));
    }
    let density = cfg.nodes.unwrap_or(256).max(64);
    let errors: Vec<f64> = match cfg.set.pieces() {
        Ok(_) => {
            let fnorm = sup_norm_fn(|z| fe(z).norm(), &cfg.set, density)?;
            let radius = cfg.set.bounding_radius()?;
            (0..=a.kmax)
                .map(|n| {
                    let s = exp.partial_sum_poly(fam.polys(), n);
                    let floor = 1e-15 * fnorm + horner_noise(&s, radius);
                    sup_norm_fn_with_floor(|z| (fe(z) - s.eval(z)).norm(), &cfg.set, density, floor)
                })
                .collect::<Result<_>>()?
        }
        // no description of E itself: the error column stays empty
        Err(_) => vec![f64::NAN; a.kmax + 1],
    };
    let rows: Vec<Vec<Cell>> = exp
        .coeffs
        .iter()
        .zip(&errors)
        .enumerate()
        .map(|(k, (c, e))| vec![k.into(), c.re.into(), c.im.into(), (*e).into()])
        .collect();
    emit(
        cfg.out.as_deref(),
        csv_string(&["k", "a_re", "a_im", "error"], &rows)?.as_bytes(),
    )
}

pub fn cmd_check(a: &CheckArgs) -> Result<()> {
    let outcomes = run_suites(a.suite);
    let mut failed = Vec::new();
    for o in &outcomes {
        println!(
            "{} {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
        if !o.passed {
            failed.push(o.name.clone());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(FwError::CheckFailed(failed.join(", ")))
    }
}
