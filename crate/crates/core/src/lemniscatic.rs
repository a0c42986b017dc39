//! Lemniscatic domains `{ |U(w)| > mu }` with `U(w) = prod (w - a_j)^{m_j}`,
//! their Green's function and level curves, and balanced focus sequences.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FwError, Result};
use crate::poly::Poly;
use crate::quadrature::periodic_derivative;

/// Exterior of a lemniscate: foci `a_j`, exponents `m_j` (summing to one) and
/// capacity `mu`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemniscaticDomain {
    foci: Vec<Complex64>,
    exponents: Vec<f64>,
    capacity: f64,
}

impl LemniscaticDomain {
    pub fn new(foci: Vec<Complex64>, exponents: Vec<f64>, capacity: f64) -> Result<Self> {
        if foci.is_empty() {
            return Err(FwError::invalid(
                "a lemniscatic domain needs at least one focus",
            ));
        }
        if foci.len() != exponents.len() {
            return Err(FwError::invalid(format!(
                "{} foci but {} exponents",
                foci.len(),
                exponents.len()
            )));
        }
        if exponents.iter().any(|&m| !(m > 0.0) || !m.is_finite()) {
            return Err(FwError::invalid("exponents must be positive"));
        }
        let total: f64 = exponents.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(FwError::invalid(format!("exponents sum to {total}, not 1")));
        }
        if !(capacity > 0.0) || !capacity.is_finite() {
            return Err(FwError::invalid(format!(
                "capacity {capacity} must be positive"
            )));
        }
        if foci.iter().any(|a| !a.is_finite()) {
            return Err(FwError::invalid("foci must be finite"));
        }
        for i in 0..foci.len() {
            for j in i + 1..foci.len() {
                if foci[i] == foci[j] {
                    return Err(FwError::invalid("foci must be pairwise distinct"));
                }
            }
        }
        Ok(LemniscaticDomain {
            foci,
            exponents,
            capacity,
        })
    }

    pub fn foci(&self) -> &[Complex64] {
        &self.foci
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn num_foci(&self) -> usize {
        self.foci.len()
    }

    /// `log|U(w)|`; `-inf` at a focus, `+inf` for non-finite `w`.
    pub fn log_abs_u(&self, w: Complex64) -> f64 {
        if !w.is_finite() {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for (a, m) in self.foci.iter().zip(&self.exponents) {
            let d = (w - a).norm();
            if d == 0.0 {
                return f64::NEG_INFINITY;
            }
            acc += m * d.ln();
        }
        acc
    }

    /// `|U(w)|`. Only the modulus is ever formed, so no branch of the
    /// fractional powers has to be chosen.
    pub fn abs_u(&self, w: Complex64) -> f64 {
        self.log_abs_u(w).exp()
    }

    /// Green's function of the domain with pole at infinity,
    /// `log|U(w)| - log(mu)`.
    pub fn green(&self, w: Complex64) -> Result<f64> {
        let l = self.log_abs_u(w);
        if l == f64::NEG_INFINITY {
            return Err(FwError::domain(format!("{w} is a focus of U")));
        }
        Ok(l - self.capacity.ln())
    }

    /// Foci of the form `center + (n-th roots of c)` with equal exponents.
    fn rotational_structure(&self) -> Option<(Complex64, Complex64, usize)> {
        let n = self.foci.len();
        if self
            .exponents
            .iter()
            .any(|&m| (m - 1.0 / n as f64).abs() > 1e-12)
        {
            return None;
        }
        let center = self.foci.iter().sum::<Complex64>() / n as f64;
        if n == 1 {
            return Some((center, Complex64::new(0.0, 0.0), 1));
        }
        let c = (self.foci[0] - center).powu(n as u32);
        let ok = self
            .foci
            .iter()
            .all(|a| ((a - center).powu(n as u32) - c).norm() <= 1e-10 * c.norm());
        ok.then_some((center, c, n))
    }

    /// Discretization of the level curve `|U(w)| = sigma * mu`.
    ///
    /// Domains whose foci are rotated copies of one another around a centre
    /// (one focus, two symmetric foci, stars) use the exact parametrization
    /// `(w - center)^n = c + (sigma mu)^n e^{i theta}`; everything else is
    /// found by bisection along rays leaving each focus.
    pub fn level_curve(&self, sigma: f64, samples: usize) -> Result<LevelCurve> {
        if !(sigma > 1.0) || !sigma.is_finite() {
            return Err(FwError::invalid(format!(
                "level sigma = {sigma} must exceed 1"
            )));
        }
        if samples < 4 {
            return Err(FwError::invalid("need at least 4 samples per curve"));
        }
        let level = sigma * self.capacity;
        match self.rotational_structure() {
            Some((center, c, n)) => Ok(rotational_level_curve(center, c, n, level, samples)),
            None => self.radial_level_curve(level, samples),
        }
    }

    fn radial_level_curve(&self, level: f64, samples: usize) -> Result<LevelCurve> {
        let log_level = level.ln();
        let mut components = Vec::with_capacity(self.foci.len());
        for &a in &self.foci {
            let mut points = Vec::with_capacity(samples);
            for i in 0..samples {
                let dir = Complex64::from_polar(1.0, 2.0 * PI * i as f64 / samples as f64);
                let g = |r: f64| self.log_abs_u(a + dir * r) - log_level;
                let mut hi = 1e-3 * level;
                let mut steps = 0;
                while g(hi) < 0.0 {
                    hi *= 1.5;
                    steps += 1;
                    if steps > 200 {
                        return Err(FwError::no_convergence("level curve bracketing", steps));
                    }
                }
                let mut lo = hi / 1.5;
                if g(lo) >= 0.0 {
                    lo = 0.0;
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let v = g(mid);
                    if v.abs() <= 1e-13 {
                        lo = mid;
                        hi = mid;
                        break;
                    }
                    if v < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                points.push(a + dir * (0.5 * (lo + hi)));
            }
            let derivatives = periodic_derivative(&points);
            components.push(CurveComponent {
                points,
                derivatives,
            });
        }
        Ok(LevelCurve { components })
    }
}

fn rotational_level_curve(
    center: Complex64,
    c: Complex64,
    n: usize,
    level: f64,
    samples: usize,
) -> LevelCurve {
    let s = level.powi(n as i32);
    let nf = n as f64;
    if s < c.norm() {
        // n separate ovals, one around each focus
        let arg_c = c.arg();
        let omega = Complex64::from_polar(1.0, 2.0 * PI / nf);
        let mut base = Vec::with_capacity(samples);
        for j in 0..samples {
            let e = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / samples as f64);
            let v = c + e * s;
            let arg = arg_c + (v / c).arg();
            let r = Complex64::from_polar(v.norm().powf(1.0 / nf), arg / nf);
            let dr = Complex64::new(0.0, 1.0) * s * e / (r.powu(n as u32 - 1) * nf);
            base.push((r, dr));
        }
        let components = (0..n)
            .map(|m| {
                let rot = omega.powu(m as u32);
                CurveComponent {
                    points: base.iter().map(|(r, _)| center + r * rot).collect(),
                    derivatives: base.iter().map(|(_, d)| d * rot).collect(),
                }
            })
            .collect();
        LevelCurve { components }
    } else {
        // one curve around all foci; theta runs over [0, 2 pi n)
        let total = samples * n;
        let q = c / s;
        let mut points = Vec::with_capacity(total);
        let mut derivatives = Vec::with_capacity(total);
        for j in 0..total {
            let theta = 2.0 * PI * nf * j as f64 / total as f64;
            let e = Complex64::from_polar(1.0, theta);
            let r = Complex64::from_polar(s.powf(1.0 / nf), theta / nf)
                * (Complex64::new(1.0, 0.0) + q * e.conj()).powf(1.0 / nf);
            // d/dtheta of (c + s e^{i theta})^{1/n}
            let dr = Complex64::new(0.0, 1.0) * s * e / (r.powu(n as u32 - 1) * nf);
            points.push(center + r);
            // parameter t = theta / n runs over [0, 2 pi)
            derivatives.push(dr * nf);
        }
        LevelCurve {
            components: vec![CurveComponent {
                points,
                derivatives,
            }],
        }
    }
}

/// A closed curve sampled at `t_j = 2 pi j / M`, positively oriented, with
/// the derivative `dw/dt` at every node.
#[derive(Clone, Debug)]
pub struct CurveComponent {
    pub points: Vec<Complex64>,
    pub derivatives: Vec<Complex64>,
}

impl CurveComponent {
    /// Trapezoidal approximation of `(1 / 2 pi i) * integral of f(w) dw`.
    pub fn contour_integral<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        let m = self.points.len() as f64;
        let sum: Complex64 = self
            .points
            .iter()
            .zip(&self.derivatives)
            .map(|(&w, &dw)| f(w) * dw)
            .sum();
        // (2 pi / M) / (2 pi i)
        sum / (Complex64::new(0.0, 1.0) * m)
    }
}

/// Level set `|U(w)| = sigma mu`, one component per closed curve.
#[derive(Clone, Debug)]
pub struct LevelCurve {
    pub components: Vec<CurveComponent>,
}

impl LevelCurve {
    pub fn points(&self) -> Vec<Complex64> {
        self.components
            .iter()
            .flat_map(|c| c.points.iter().copied())
            .collect()
    }

    /// Sum of the contour integrals over all components.
    pub fn contour_integral<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        self.components.iter().map(|c| c.contour_integral(&f)).sum()
    }
}

/// Which focus the sequence prefers first; only affects tie-breaking and, for
/// two foci, which one opens the floor-rule sequence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FocusOrder {
    /// Foci in the order stored in the domain.
    Given,
    /// Largest real part first.
    #[default]
    DescendingReal,
    /// Smallest real part first.
    AscendingReal,
}

impl FocusOrder {
    fn permutation(self, foci: &[Complex64]) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..foci.len()).collect();
        match self {
            FocusOrder::Given => {}
            FocusOrder::DescendingReal => {
                idx.sort_by(|&i, &j| foci[j].re.partial_cmp(&foci[i].re).unwrap())
            }
            FocusOrder::AscendingReal => {
                idx.sort_by(|&i, &j| foci[i].re.partial_cmp(&foci[j].re).unwrap())
            }
        }
        idx
    }
}

/// Sequence of focus indices `alpha_1, alpha_2, ...` in which every focus
/// appears with frequency close to its exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FocusSequence {
    entries: Vec<usize>,
    num_foci: usize,
}

impl FocusSequence {
    /// Builds a sequence from explicit focus indices.
    pub fn from_entries(entries: Vec<usize>, num_foci: usize) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&e| e >= num_foci) {
            return Err(FwError::invalid(format!(
                "focus index {bad} out of range for {num_foci} foci"
            )));
        }
        Ok(FocusSequence { entries, num_foci })
    }

    /// The periodic sequence `a_1, ..., a_N, a_1, ...` of length `len`.
    pub fn cyclic(num_foci: usize, len: usize) -> Self {
        FocusSequence {
            entries: (0..len).map(|i| i % num_foci).collect(),
            num_foci,
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn num_foci(&self) -> usize {
        self.num_foci
    }

    /// The first `k` foci of the sequence.
    pub fn points(&self, dom: &LemniscaticDomain, k: usize) -> Vec<Complex64> {
        self.entries[..k].iter().map(|&i| dom.foci()[i]).collect()
    }

    /// `N_{k,j}` for `k = 0..=len`, one row per prefix length.
    pub fn prefix_counts(&self) -> Vec<Vec<usize>> {
        let mut rows = Vec::with_capacity(self.entries.len() + 1);
        let mut cur = vec![0usize; self.num_foci];
        rows.push(cur.clone());
        for &e in &self.entries {
            cur[e] += 1;
            rows.push(cur.clone());
        }
        rows
    }

    /// `max_{k, j} |N_{k,j} - k m_j|` over all prefixes.
    pub fn max_imbalance(&self, exponents: &[f64]) -> f64 {
        let mut cur = vec![0usize; self.num_foci];
        let mut worst: f64 = 0.0;
        for (k, &e) in self.entries.iter().enumerate() {
            cur[e] += 1;
            let kk = (k + 1) as f64;
            for (j, &m) in exponents.iter().enumerate() {
                worst = worst.max((cur[j] as f64 - kk * m).abs());
            }
        }
        worst
    }
}

/// Balanced focus sequence of length `len`.
///
/// One focus: constant sequence. Two foci: `alpha_j = a_1` iff
/// `floor(j m_1) > floor((j-1) m_1)`, where the labels are chosen so that the
/// preferred focus of `order` is `a_2` and therefore opens the sequence.
/// Three or more: pick the focus with the largest deficit `k m_j - N_{k-1,j}`,
/// ties going to the earlier focus in `order`.
pub fn build_focus_sequence(
    dom: &LemniscaticDomain,
    len: usize,
    order: FocusOrder,
) -> FocusSequence {
    let n = dom.num_foci();
    let perm = order.permutation(dom.foci());
    let entries = match n {
        1 => vec![0; len],
        2 => {
            let (a1, a2) = (perm[1], perm[0]);
            let m1 = dom.exponents()[a1];
            (1..=len)
                .map(|j| {
                    let cur = (j as f64 * m1).floor();
                    let prev = ((j - 1) as f64 * m1).floor();
                    if cur > prev {
                        a1
                    } else {
                        a2
                    }
                })
                .collect()
        }
        _ => {
            let mut counts = vec![0usize; n];
            let mut out = Vec::with_capacity(len);
            for k in 1..=len {
                let kf = k as f64;
                let mut best = perm[0];
                let mut best_def = f64::NEG_INFINITY;
                for &j in &perm {
                    let def = kf * dom.exponents()[j] - counts[j] as f64;
                    if def > best_def {
                        best_def = def;
                        best = j;
                    }
                }
                counts[best] += 1;
                out.push(best);
            }
            out
        }
    };
    FocusSequence {
        entries,
        num_foci: n,
    }
}

/// `u_k(w) = prod_{j <= k} (w - alpha_j)`.
pub fn u_k_polynomial(dom: &LemniscaticDomain, seq: &FocusSequence, k: usize) -> Result<Poly> {
    if k > seq.len() {
        return Err(FwError::invalid(format!(
            "u_{k} needs {k} sequence entries, only {} available",
            seq.len()
        )));
    }
    Ok(Poly::from_roots(seq.points(dom, k).iter()))
}

/// Observed extremes of `|u_k(w)| / |U(w)|^k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioBounds {
    pub min: f64,
    pub max: f64,
}

/// Empirical constants of the two-sided bound `A_1 < |u_k(w)|/|U(w)|^k < A_2`
/// over `k = 0..=k_max` and the sample points.
pub fn check_un_ratio_bounds(
    dom: &LemniscaticDomain,
    seq: &FocusSequence,
    samples: &[Complex64],
    k_max: usize,
) -> Result<RatioBounds> {
    if k_max > seq.len() {
        return Err(FwError::invalid("k_max exceeds the sequence length"));
    }
    for w in samples {
        if dom.foci().iter().any(|a| (w - a).norm() < 1e-6) {
            return Err(FwError::invalid(format!(
                "sample {w} is too close to a focus"
            )));
        }
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &w in samples {
        let log_u = dom.log_abs_u(w);
        let mut log_uk = 0.0;
        lo = lo.min(0.0);
        hi = hi.max(0.0);
        for (k, &e) in seq.entries()[..k_max].iter().enumerate() {
            log_uk += (w - dom.foci()[e]).norm().ln();
            let r = log_uk - (k + 1) as f64 * log_u;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    let bounds = RatioBounds {
        min: lo.exp(),
        max: hi.exp(),
    };
    if !(bounds.min > 0.0 && bounds.max.is_finite()) {
        return Err(FwError::domain("ratio bounds degenerate"));
    }
    Ok(bounds)
}
