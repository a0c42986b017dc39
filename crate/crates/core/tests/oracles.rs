//! Reference values for Faber-Walsh polynomials, lemniscatic maps and
//! convergence factors of two intervals, stars and Koch-Liesen preimages.

use std::f64::consts::PI;

use faber_walsh::fw::{
    acf, chebyshev_star_oracle, faber_polynomial, norm_decay_table, sup_norm_on_e, FaberWalshFamily,
};
use faber_walsh::lemniscatic::{
    build_focus_sequence, u_k_polynomial, FocusOrder, LemniscaticDomain,
};
use faber_walsh::maps::{
    koch_liesen_psi, sym_intervals_pair, ExteriorRiemannMap, SetDescriptor, UnitIntervalMap,
};
use faber_walsh::poly::Poly;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn koch_liesen() -> SetDescriptor {
    SetDescriptor::KochLiesenPreimage {
        lambda: c(-1.0, 0.0),
        phi: 2.0 * PI / 3.0,
        r: 1.1,
        n: 5,
    }
}

#[test]
fn two_foci_sequence_alternates_from_the_right() {
    let pair = sym_intervals_pair(0.25, 1.0).unwrap();
    let seq = build_focus_sequence(pair.domain(), 6, FocusOrder::default());
    let pts = seq.points(pair.domain(), 6);
    for (j, p) in pts.iter().enumerate() {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(*p, c(sign * 0.625, 0.0));
    }
    assert_eq!(seq.prefix_counts()[6], vec![3, 3]);
}

#[test]
fn one_focus_sequence_and_u_k() {
    let a = c(0.3, -0.2);
    let dom = LemniscaticDomain::new(vec![a], vec![1.0], 0.5).unwrap();
    let seq = build_focus_sequence(&dom, 5, FocusOrder::default());
    assert!(seq.entries().iter().all(|&e| e == 0));
    let u3 = u_k_polynomial(&dom, &seq, 3).unwrap();
    let lin = Poly::linear_factor(a);
    assert!(u3.max_coeff_diff(&lin.mul(&lin).mul(&lin)) < 1e-15);
}

#[test]
fn first_laurent_coefficient_and_capacity() {
    let pair = sym_intervals_pair(0.25, 1.0).unwrap();
    let l = pair.psi_laurent().unwrap();
    assert_eq!(l.tail_coeff(1), c(0.5 * (0.75f64 / 2.0).powi(2), 0.0));
    assert!((l.tail_coeff(1).re - 0.0703125).abs() < 1e-15);
    assert!((pair.domain().capacity() - 15f64.sqrt() / 8.0).abs() < 1e-15);
}

#[test]
fn koch_liesen_capacity_and_lemniscate() {
    let (map, p) = koch_liesen_psi(c(-1.0, 0.0), 2.0 * PI / 3.0, 1.1).unwrap();
    // psi~'(inf) = t from difference quotients far out
    let w = Complex64::from_polar(1e6, 0.7);
    let slope = (map.psi(w * 2.0).unwrap() - map.psi(w).unwrap()) / w;
    assert!((slope - p.t).norm() < 1e-6);
    assert!((1.0 / map.derivative_at_infinity() - p.t).abs() < 1e-12);

    let pair = koch_liesen().conformal_pair().unwrap();
    let dom = pair.domain();
    // P(z) = z^5, alpha = 1: mu = (1/Phi~'(inf))^{1/5} = t^{1/5}
    assert!((dom.capacity() - p.t.powf(0.2)).abs() < 1e-12);
    let radius = (p.t * p.n_param).powf(0.2);
    for a in dom.foci() {
        assert!((a.norm() - radius).abs() < 1e-10);
        let k = a.arg() / (2.0 * PI / 5.0);
        assert!((k - k.round()).abs() < 1e-10);
    }
    for w in [c(2.0, 0.3), c(-0.1, 1.7), c(1.2, -1.2)] {
        let u = (w.powu(5) - p.t * p.n_param).norm().powf(0.2);
        assert!((dom.abs_u(w) - u).abs() < 1e-12 * u);
    }
}

#[test]
fn families_are_monic() {
    for set in [
        SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 },
        SetDescriptor::StarIntervals {
            n: 3,
            c: 0.25,
            d: 1.0,
        },
        koch_liesen(),
    ] {
        let pair = set.conformal_pair().unwrap();
        let seq = build_focus_sequence(pair.domain(), 25, FocusOrder::default());
        let fam = FaberWalshFamily::build(&pair, &seq, 25).unwrap();
        for (k, b) in fam.polys().iter().enumerate() {
            assert_eq!(b.degree(), Some(k));
            assert!((b.leading() - 1.0).norm() <= 1e-9);
        }
    }
}

#[test]
fn star_oracle_is_monic_of_degree_nk() {
    for n in 2..5 {
        for k in 1..6 {
            let t = chebyshev_star_oracle(n, 0.3, 1.2, k).unwrap();
            assert_eq!(t.degree(), Some(n * k));
            assert!(t.is_monic(1e-12));
        }
    }
}

#[test]
fn norm_of_t2_on_two_intervals() {
    let set = SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 };
    let t2 = chebyshev_star_oracle(2, 0.25, 1.0, 1).unwrap();
    let n = sup_norm_on_e(&t2, &set, 64).unwrap();
    assert!((n - (1.0 - 0.0625) / 2.0).abs() < 1e-6);
    assert!((n - 0.46875).abs() < 1e-6);
}

#[test]
fn two_intervals_as_preimage_of_unit_interval() {
    let (cc, d) = (0.25f64, 1.0f64);
    let fam = {
        let pair = sym_intervals_pair(cc, d).unwrap();
        let seq = build_focus_sequence(pair.domain(), 12, FocusOrder::default());
        FaberWalshFamily::build(&pair, &seq, 12).unwrap()
    };
    let span = d * d - cc * cc;
    let p = Poly::from_real(&[-(cc * cc + d * d) / span, 0.0, 2.0 / span]);
    for k in 1..=6 {
        let fk = faber_polynomial(&UnitIntervalMap, k).unwrap();
        let rhs = fk.compose(&p).scale(c((span / 4.0).powi(k as i32), 0.0));
        assert!(fam.polys()[2 * k].max_coeff_diff(&rhs) < 1e-9, "k = {k}");
    }
}

#[test]
fn koch_liesen_faber_relation() {
    let (map, p) = koch_liesen_psi(c(-1.0, 0.0), 2.0 * PI / 3.0, 1.1).unwrap();
    let pair = koch_liesen().conformal_pair().unwrap();
    let seq = build_focus_sequence(pair.domain(), 20, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, 20).unwrap();
    let z5 = Poly::monomial(5);
    for k in 1..=4 {
        let rhs = faber_polynomial(&map, k)
            .unwrap()
            .compose(&z5)
            .scale(c(p.t.powi(k as i32), 0.0));
        assert!(fam.polys()[5 * k].max_coeff_diff(&rhs) <= 1e-7, "k = {k}");
    }
}

#[test]
fn convergence_factor_values() {
    let pair = sym_intervals_pair(0.5, 1.0).unwrap();
    let r = acf(&pair, c(0.0, 0.0)).unwrap();
    assert!((r - (0.5f64 / 1.5).sqrt()).abs() < 1e-12);
    assert!((r - 0.5773503).abs() < 1e-7);
    let kl = koch_liesen().conformal_pair().unwrap();
    assert!((acf(&kl, c(0.0, 0.0)).unwrap() - 0.9803).abs() <= 5e-4);
}

#[test]
fn norm_decay_of_the_first_interval_pair() {
    let set = SetDescriptor::SymmetricIntervals { c: 0.5, d: 1.0 };
    let pair = set.conformal_pair().unwrap();
    let seq = build_focus_sequence(pair.domain(), 31, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, 30).unwrap();
    let rows = norm_decay_table(&fam, c(0.0, 0.0), 30, 256).unwrap();
    let mu: f64 = 0.75f64.sqrt() / 2.0;
    for r in &rows {
        assert!(r.bernstein_walsh_ok());
        assert!(r.norm >= mu.powi(r.k as i32) * (1.0 - 1e-9));
    }
    let root = rows[30].normalized.powf(1.0 / 30.0);
    assert!((root - (1.0f64 / 3.0).sqrt()).abs() <= 0.02);
}

#[test]
fn koch_liesen_b5_has_five_zeros_near_the_set() {
    use faber_walsh::cli::output::{zeros_in_window, Window};
    let pair = koch_liesen().conformal_pair().unwrap();
    let seq = build_focus_sequence(pair.domain(), 10, FocusOrder::default());
    let fam = FaberWalshFamily::build(&pair, &seq, 10).unwrap();
    let win = Window::parse("-2,2,-2,2,8,8").unwrap();
    assert_eq!(zeros_in_window(&fam.polys()[5], &win).unwrap(), 5);
    assert_eq!(zeros_in_window(&fam.polys()[10], &win).unwrap(), 10);
}
