//! Declarative description of the compact set `E`.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    affine_image_pair, inverse_joukowski_pair, koch_liesen_psi, preimage_pair, preimage_pair_with,
    sym_intervals_pair, tabulated_pair, ConformalPair, ExteriorRiemannMap, OmegaSpec,
    PreimagePolynomial, TabulatedMapData, UnitIntervalMap,
};
use crate::error::{FwError, Result};

/// The set `E`. Serialized as JSON with a `kind` tag, e.g.
/// `{"kind": "symmetric_intervals", "c": 0.25, "d": 1.0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetDescriptor {
    /// `[-D, -C] u [C, D]`.
    SymmetricIntervals {
        #[serde(alias = "C")]
        c: f64,
        #[serde(alias = "D")]
        d: f64,
    },
    /// `n` rotated copies `e^{2 pi i j/n} [C, D]`.
    StarIntervals {
        n: usize,
        #[serde(alias = "C")]
        c: f64,
        #[serde(alias = "D")]
        d: f64,
    },
    /// `alpha * base + beta`.
    AffineImage {
        base: Box<SetDescriptor>,
        alpha: Complex64,
        beta: Complex64,
    },
    /// `{ z : z^n in Omega(lambda, phi, R) }`.
    KochLiesenPreimage {
        lambda: Complex64,
        phi: f64,
        #[serde(alias = "R")]
        r: f64,
        n: usize,
    },
    /// Real interval `[a, b]`.
    Interval { a: f64, b: f64 },
    /// `{ z : alpha z^n + alpha0 in Omega }`.
    PolynomialPreimage {
        omega: OmegaSpec,
        alpha: f64,
        alpha0: f64,
        n: usize,
    },
    /// Externally computed map; the set itself is only known through the
    /// contours enclosing it.
    Tabulated(TabulatedMapData),
}

/// One connected piece of `E` (or of its boundary), traced by a parameter
/// `t in [0, 1]`. Each evaluation may return several points: rotated or
/// mirrored copies that share the parametrization.
#[derive(Clone)]
pub struct SetPiece {
    eval: Arc<dyn Fn(f64) -> Vec<Complex64> + Send + Sync>,
    /// `t = 0` and `t = 1` give the same points.
    pub periodic: bool,
}

impl SetPiece {
    fn new(periodic: bool, f: impl Fn(f64) -> Vec<Complex64> + Send + Sync + 'static) -> Self {
        SetPiece {
            eval: Arc::new(f),
            periodic,
        }
    }

    pub fn points(&self, t: f64) -> Vec<Complex64> {
        (self.eval)(t)
    }
}

impl fmt::Debug for SetPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SetPiece")
            .field("periodic", &self.periodic)
            .finish()
    }
}

/// Cosine-spaced point of `[a, b]`, clustering at the endpoints.
fn cos_point(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * 0.5 * (1.0 - (PI * t).cos())
}

fn unit_roots(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
        .collect()
}

impl SetDescriptor {
    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    /// Parses a descriptor; a bare tabulated-map document (no `kind`) is
    /// accepted as well.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let set = if value.get("kind").is_none() && value.get("contour_points").is_some() {
            SetDescriptor::Tabulated(serde_json::from_value(value)?)
        } else {
            serde_json::from_value(value)?
        };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        let fin = |v: f64| v.is_finite();
        match self {
            SetDescriptor::SymmetricIntervals { c, d }
            | SetDescriptor::StarIntervals { c, d, .. } => {
                if !(*c > 0.0 && d > c && fin(*d)) {
                    return Err(FwError::invalid(format!(
                        "need 0 < C < D, got C = {c}, D = {d}"
                    )));
                }
                if let SetDescriptor::StarIntervals { n, .. } = self {
                    if *n < 2 {
                        return Err(FwError::invalid(format!("star needs n >= 2, got {n}")));
                    }
                }
                Ok(())
            }
            SetDescriptor::AffineImage { base, alpha, beta } => {
                if alpha.norm() == 0.0 || !alpha.is_finite() || !beta.is_finite() {
                    return Err(FwError::invalid(
                        "affine image needs finite alpha != 0 and finite beta",
                    ));
                }
                base.validate()
            }
            SetDescriptor::KochLiesenPreimage { lambda, phi, r, n } => {
                if *n < 2 {
                    return Err(FwError::invalid(format!(
                        "preimage degree n = {n} must be >= 2"
                    )));
                }
                if lambda.im.abs() > 1e-12 {
                    return Err(FwError::invalid(
                        "lambda must be real (+-1) for a symmetric Omega",
                    ));
                }
                koch_liesen_psi(*lambda, *phi, *r).map(|_| ())
            }
            SetDescriptor::Interval { a, b } => {
                if !(a < b && fin(*a) && fin(*b)) {
                    return Err(FwError::invalid(format!("need a < b, got [{a}, {b}]")));
                }
                Ok(())
            }
            SetDescriptor::PolynomialPreimage {
                omega,
                alpha,
                alpha0,
                n,
            } => {
                if !(*alpha > 0.0 && fin(*alpha) && fin(*alpha0) && *n >= 1) {
                    return Err(FwError::invalid(
                        "preimage polynomial needs alpha > 0 and n >= 1",
                    ));
                }
                omega.to_map().map(|_| ())
            }
            SetDescriptor::Tabulated(data) => data.validate(),
        }
    }

    /// `Omega`, `P` for sets defined as polynomial preimages.
    pub fn preimage_parts(&self) -> Option<(Arc<dyn ExteriorRiemannMap>, PreimagePolynomial)> {
        match self {
            SetDescriptor::StarIntervals { n, c, d } => {
                let (cn, dn) = (c.powi(*n as i32), d.powi(*n as i32));
                let poly = PreimagePolynomial {
                    alpha: 2.0 / (dn - cn),
                    n: *n,
                    alpha0: -(cn + dn) / (dn - cn),
                };
                Some((Arc::new(UnitIntervalMap), poly))
            }
            SetDescriptor::KochLiesenPreimage { lambda, phi, r, n } => {
                let map = koch_liesen_psi(*lambda, *phi, *r).ok()?.0;
                let poly = PreimagePolynomial {
                    alpha: 1.0,
                    n: *n,
                    alpha0: 0.0,
                };
                Some((Arc::new(map), poly))
            }
            SetDescriptor::PolynomialPreimage {
                omega,
                alpha,
                alpha0,
                n,
            } => Some((
                omega.to_map().ok()?,
                PreimagePolynomial {
                    alpha: *alpha,
                    n: *n,
                    alpha0: *alpha0,
                },
            )),
            _ => None,
        }
    }

    /// The lemniscatic pair of the set.
    pub fn conformal_pair(&self) -> Result<ConformalPair> {
        self.validate()?;
        match self {
            SetDescriptor::SymmetricIntervals { c, d } => sym_intervals_pair(*c, *d),
            SetDescriptor::Interval { a, b } => inverse_joukowski_pair(*a, *b),
            SetDescriptor::AffineImage { base, alpha, beta } => {
                affine_image_pair(&base.conformal_pair()?, *alpha, *beta)
            }
            SetDescriptor::PolynomialPreimage {
                omega,
                alpha,
                alpha0,
                n,
            } => preimage_pair(
                omega,
                PreimagePolynomial {
                    alpha: *alpha,
                    n: *n,
                    alpha0: *alpha0,
                },
            ),
            SetDescriptor::Tabulated(data) => tabulated_pair(data),
            SetDescriptor::StarIntervals { .. } | SetDescriptor::KochLiesenPreimage { .. } => {
                let (omega, poly) = self
                    .preimage_parts()
                    .ok_or_else(|| FwError::invalid("invalid preimage parameters"))?;
                preimage_pair_with(omega, poly, self.clone())
            }
        }
    }

    /// Pieces covering `E` for sup-norm sampling: the sets themselves for
    /// interval components, the boundary for curve-bounded ones.
    pub fn pieces(&self) -> Result<Vec<SetPiece>> {
        self.validate()?;
        Ok(match self {
            SetDescriptor::SymmetricIntervals { c, d } => {
                let (c, d) = (*c, *d);
                vec![SetPiece::new(false, move |t| {
                    let x = cos_point(c, d, t);
                    vec![Complex64::new(x, 0.0), Complex64::new(-x, 0.0)]
                })]
            }
            SetDescriptor::Interval { a, b } => {
                let (a, b) = (*a, *b);
                vec![SetPiece::new(false, move |t| {
                    vec![Complex64::new(cos_point(a, b, t), 0.0)]
                })]
            }
            SetDescriptor::StarIntervals { n, c, d } => {
                let (c, d) = (*c, *d);
                let roots = unit_roots(*n);
                vec![SetPiece::new(false, move |t| {
                    let x = cos_point(c, d, t);
                    roots.iter().map(|r| r * x).collect()
                })]
            }
            SetDescriptor::AffineImage { base, alpha, beta } => {
                let (alpha, beta) = (*alpha, *beta);
                base.pieces()?
                    .into_iter()
                    .map(|p| {
                        let periodic = p.periodic;
                        SetPiece::new(periodic, move |t| {
                            p.points(t).into_iter().map(|z| alpha * z + beta).collect()
                        })
                    })
                    .collect()
            }
            SetDescriptor::KochLiesenPreimage { .. } | SetDescriptor::PolynomialPreimage { .. } => {
                let (omega, poly) = self
                    .preimage_parts()
                    .ok_or_else(|| FwError::invalid("invalid preimage parameters"))?;
                let periodic = omega.boundary_closed();
                vec![SetPiece::new(periodic, move |t| {
                    poly.roots_of(omega.boundary_point(t))
                })]
            }
            SetDescriptor::Tabulated(_) => {
                return Err(FwError::invalid(
                    "a tabulated map does not describe the set itself; sup norms are unavailable",
                ))
            }
        })
    }

    /// An upper bound for `max |z|` over `E`.
    pub fn bounding_radius(&self) -> Result<f64> {
        self.validate()?;
        Ok(match self {
            SetDescriptor::SymmetricIntervals { d, .. }
            | SetDescriptor::StarIntervals { d, .. } => *d,
            SetDescriptor::Interval { a, b } => a.abs().max(b.abs()),
            SetDescriptor::AffineImage { base, alpha, beta } => {
                alpha.norm() * base.bounding_radius()? + beta.norm()
            }
            SetDescriptor::Tabulated(data) => data.radius(),
            SetDescriptor::KochLiesenPreimage { .. } | SetDescriptor::PolynomialPreimage { .. } => {
                let pieces = self.pieces()?;
                let m = 4096;
                let sampled = pieces
                    .iter()
                    .flat_map(|p| (0..=m).flat_map(move |j| p.points(j as f64 / m as f64)))
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                // sampling can miss the extreme point by O(1/m^2)
                sampled * (1.0 + 1e-3)
            }
        })
    }

    /// Whether `z` belongs to `E` (up to a relative tolerance of `1e-12`).
    /// Tabulated sets are never reported as containing a point.
    pub fn contains(&self, z: Complex64) -> bool {
        let tol = 1e-12;
        match self {
            SetDescriptor::SymmetricIntervals { c, d } => {
                z.im.abs() <= tol * d && z.re.abs() >= c - tol * d && z.re.abs() <= d + tol * d
            }
            SetDescriptor::Interval { a, b } => {
                let s = a.abs().max(b.abs()).max(1.0);
                z.im.abs() <= tol * s && z.re >= a - tol * s && z.re <= b + tol * s
            }
            SetDescriptor::StarIntervals { n, c, d } => {
                let r = z.norm();
                if r < c * (1.0 - tol) || r > d * (1.0 + tol) {
                    return false;
                }
                let a = z.arg() * *n as f64 / (2.0 * PI);
                (a - a.round()).abs() * 2.0 * PI / *n as f64 * r <= tol * d
            }
            SetDescriptor::AffineImage { base, alpha, beta } => base.contains((z - beta) / alpha),
            SetDescriptor::KochLiesenPreimage { .. } | SetDescriptor::PolynomialPreimage { .. } => {
                match self.preimage_parts() {
                    Some((omega, poly)) => omega.contains(poly.eval(z)),
                    None => false,
                }
            }
            SetDescriptor::Tabulated(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let s = SetDescriptor::from_json_str(r#"{"kind":"symmetric_intervals","C":0.25,"D":1}"#)
            .unwrap();
        assert_eq!(s, SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 });
        let a = SetDescriptor::AffineImage {
            base: Box::new(SetDescriptor::StarIntervals {
                n: 3,
                c: 0.25,
                d: 1.0,
            }),
            alpha: Complex64::new(2.0, 1.0),
            beta: Complex64::new(0.0, -1.0),
        };
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(SetDescriptor::from_json_str(&text).unwrap(), a);
        let kl = r#"{"kind":"koch_liesen_preimage","lambda":[-1,0],"phi":2.0943951023931953,"r":1.1,"n":5}"#;
        assert!(SetDescriptor::from_json_str(kl).is_ok());
        assert!(
            SetDescriptor::from_json_str(r#"{"kind":"symmetric_intervals","c":1,"d":0.5}"#)
                .is_err()
        );
        assert!(
            SetDescriptor::from_json_str(r#"{"kind":"star_intervals","n":1,"c":0.1,"d":0.5}"#)
                .is_err()
        );
        assert!(SetDescriptor::from_json_str(r#"{"kind":"nonsense"}"#).is_err());
    }

    #[test]
    fn star_pair_foci_use_two_over_n() {
        let (n, c, d) = (3usize, 0.25f64, 1.0f64);
        let pair = SetDescriptor::StarIntervals { n, c, d }
            .conformal_pair()
            .unwrap();
        let h = n as f64 / 2.0;
        let r = ((d.powf(h) + c.powf(h)) / 2.0).powf(2.0 / n as f64);
        assert!((pair.domain().foci()[0] - Complex64::new(r, 0.0)).norm() < 1e-14);
        let mu = ((d.powi(3) - c.powi(3)) / 4.0).powf(1.0 / 3.0);
        assert!((pair.domain().capacity() - mu).abs() < 1e-14);
    }

    #[test]
    fn membership() {
        let s = SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 };
        assert!(s.contains(Complex64::new(-0.5, 0.0)));
        assert!(!s.contains(Complex64::new(0.0, 0.0)));
        let star = SetDescriptor::StarIntervals {
            n: 3,
            c: 0.25,
            d: 1.0,
        };
        assert!(star.contains(Complex64::from_polar(0.5, 2.0 * PI / 3.0)));
        assert!(!star.contains(Complex64::from_polar(0.5, 1.0)));
        let kl = SetDescriptor::KochLiesenPreimage {
            lambda: Complex64::new(-1.0, 0.0),
            phi: 2.0 * PI / 3.0,
            r: 1.1,
            n: 5,
        };
        assert!(kl.contains(Complex64::new(1.0, 0.0)));
        assert!(!kl.contains(Complex64::new(0.0, 0.0)));
        let r = kl.bounding_radius().unwrap();
        assert!(r > 1.0 && r < 1.2, "{r}");
        let moved = SetDescriptor::AffineImage {
            base: Box::new(s),
            alpha: Complex64::new(0.0, 2.0),
            beta: Complex64::new(1.0, 0.0),
        };
        assert!(moved.contains(Complex64::new(1.0, 1.0)));
    }

    #[test]
    fn pieces_lie_in_set() {
        let sets = [
            SetDescriptor::SymmetricIntervals { c: 0.25, d: 1.0 },
            SetDescriptor::StarIntervals {
                n: 4,
                c: 0.5,
                d: 1.0,
            },
            SetDescriptor::Interval { a: -1.0, b: 2.0 },
        ];
        for s in &sets {
            for p in s.pieces().unwrap() {
                for j in 0..=20 {
                    for z in p.points(j as f64 / 20.0) {
                        assert!(s.contains(z), "{s:?} {z}");
                    }
                }
            }
        }
    }
}
