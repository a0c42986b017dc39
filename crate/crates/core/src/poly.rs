//! Dense complex polynomials and truncated Laurent series at infinity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FwError, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A polynomial with complex coefficients stored in ascending powers.
///
/// The highest stored coefficient is nonzero; the zero polynomial has no
/// coefficients at all. Only exact zeros are stripped on construction, use
/// [`Poly::trimmed`] to drop coefficients that are merely tiny.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl From<Vec<Complex64>> for Poly {
    fn from(coeffs: Vec<Complex64>) -> Self {
        Poly::new(coeffs)
    }
}

impl From<Poly> for Vec<Complex64> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    /// The monic linear factor `z - root`.
    pub fn linear_factor(root: Complex64) -> Self {
        Poly::new(vec![-root, ONE])
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![ZERO; k + 1];
        c[k] = ONE;
        Poly { coeffs: c }
    }

    /// Monic polynomial with the given roots (with multiplicity).
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Complex64>) -> Self {
        roots
            .into_iter()
            .fold(Poly::one(), |p, &r| p.linear_shift_mul(r))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn is_monic(&self, tol: f64) -> bool {
        !self.is_zero() && (self.leading() - ONE).norm() <= tol
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `(z - alpha) * p(z)`.
    pub fn linear_shift_mul(&self, alpha: Complex64) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![ZERO; n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= alpha * c;
        }
        Poly::new(out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// `p(q(z))`, by Horner's scheme over polynomials.
    pub fn compose(&self, q: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(q).add(&Poly::constant(c)))
    }

    /// `p(alpha * z + beta)`.
    pub fn compose_affine(&self, alpha: Complex64, beta: Complex64) -> Poly {
        self.compose(&Poly::new(vec![beta, alpha]))
    }

    /// Drops highest coefficients whose modulus is below `rel * max|coeff|`.
    pub fn trimmed(&self, rel: f64) -> Poly {
        let scale = self.max_abs_coeff();
        let mut c = self.coeffs.clone();
        while let Some(last) = c.last() {
            if last.norm() < rel * scale {
                c.pop();
            } else {
                break;
            }
        }
        Poly::new(c)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise modulus of `self - other`.
    pub fn max_coeff_diff(&self, other: &Poly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-ONE)
    }
}

/// A Laurent series at infinity truncated after `w^{-K}`:
/// `p(w) + c_1/w + c_2/w^2 + ... + c_K/w^K`.
///
/// The positive part is kept exactly. For the inverse of a lemniscatic map
/// the positive part is `w` (linear coefficient 1, constant 0).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentAtInfinity {
    positive: Poly,
    tail: Vec<Complex64>,
}

impl LaurentAtInfinity {
    /// `linear*w + constant + sum c_k w^{-k}`.
    pub fn new(linear: Complex64, constant: Complex64, tail: Vec<Complex64>) -> Self {
        LaurentAtInfinity {
            positive: Poly::new(vec![constant, linear]),
            tail,
        }
    }

    pub fn from_parts(positive: Poly, tail: Vec<Complex64>) -> Self {
        LaurentAtInfinity { positive, tail }
    }

    /// The constant series 1 with an all-zero tail of the given order.
    pub fn one(order: usize) -> Self {
        LaurentAtInfinity::from_parts(Poly::one(), vec![ZERO; order])
    }

    pub fn positive(&self) -> &Poly {
        &self.positive
    }

    pub fn linear(&self) -> Complex64 {
        self.positive.coeff(1)
    }

    pub fn constant(&self) -> Complex64 {
        self.positive.coeff(0)
    }

    /// `c_1, ..., c_K`.
    pub fn tail(&self) -> &[Complex64] {
        &self.tail
    }

    /// `c_k` for `k >= 1`; zero for `k = 0` or `k > K`.
    pub fn tail_coeff(&self, k: usize) -> Complex64 {
        if k == 0 {
            ZERO
        } else {
            self.tail.get(k - 1).copied().unwrap_or(ZERO)
        }
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.tail.len()
    }

    fn positive_degree(&self) -> usize {
        self.positive.degree().unwrap_or(0)
    }

    /// Evaluates the truncated series at `w != 0`.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        let inv = w.inv();
        let tail = self.tail.iter().rev().fold(ZERO, |acc, &c| (acc + c) * inv);
        self.positive.eval(w) + tail
    }

    /// Subtracts a constant, e.g. `Phi(w) - alpha`.
    pub fn shifted(&self, alpha: Complex64) -> LaurentAtInfinity {
        LaurentAtInfinity {
            positive: self.positive.sub(&Poly::constant(alpha)),
            tail: self.tail.clone(),
        }
    }

    /// Same series with the tail cut to order `k`.
    pub fn truncate(&self, k: usize) -> LaurentAtInfinity {
        LaurentAtInfinity {
            positive: self.positive.clone(),
            tail: self.tail.iter().take(k).copied().collect(),
        }
    }

    /// Largest order to which the product with `other` is exactly determined.
    ///
    /// Unknown coefficients beyond `w^{-K}` of one factor reach down only to
    /// `w^{-K + deg(other)}` of the product.
    pub fn product_order(&self, other: &LaurentAtInfinity) -> usize {
        let a = self.order().saturating_sub(other.positive_degree());
        let b = other.order().saturating_sub(self.positive_degree());
        a.min(b)
    }

    /// Product of two series, truncated after `w^{-order}`.
    pub fn truncated_product(
        &self,
        other: &LaurentAtInfinity,
        order: usize,
    ) -> Result<LaurentAtInfinity> {
        let available = self.product_order(other);
        if order > available {
            return Err(FwError::InsufficientTruncation {
                needed: order,
                available,
            });
        }
        // dense layout: index i <-> exponent i - K
        let dense = |s: &LaurentAtInfinity| -> Vec<Complex64> {
            let mut v: Vec<Complex64> = s.tail.iter().rev().copied().collect();
            v.extend_from_slice(s.positive.coeffs());
            v
        };
        let (a, b) = (dense(self), dense(other));
        let (ka, kb) = (self.order() as isize, other.order() as isize);
        let top = self.positive.coeffs().len() as isize + other.positive.coeffs().len() as isize;
        let low = -(order as isize);
        let mut out = vec![ZERO; (top - low).max(0) as usize];
        for (i, &x) in a.iter().enumerate() {
            let ei = i as isize - ka;
            for (j, &y) in b.iter().enumerate() {
                let e = ei + j as isize - kb;
                if e >= low {
                    out[(e - low) as usize] += x * y;
                }
            }
        }
        let split = order;
        let tail: Vec<Complex64> = out[..split].iter().rev().copied().collect();
        let positive = Poly::new(out[split..].to_vec());
        Ok(LaurentAtInfinity { positive, tail })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn eval_examples() {
        let p = Poly::from_real(&[-0.53125, 0.0, 1.0]);
        assert!((p.eval(c(1.0)) - c(0.46875)).norm() < 1e-15);
        assert_eq!(Poly::zero().eval(Complex64::new(5.0, 2.0)), ZERO);
        let q = Poly::linear_factor(c(0.625));
        assert_eq!(q.eval(c(0.625)), ZERO);
    }

    #[test]
    fn mul_examples() {
        let a = c(0.625);
        let p = Poly::linear_factor(a).mul(&Poly::linear_factor(-a));
        assert_eq!(p, Poly::from_real(&[-0.390625, 0.0, 1.0]));
        let q = Poly::from_real(&[1.0, 2.0, 3.0]);
        assert!(q.mul(&Poly::zero()).is_zero());
        assert_eq!(q.mul(&Poly::one()), q);
    }

    #[test]
    fn linear_shift_mul_examples() {
        assert_eq!(
            Poly::one().linear_shift_mul(c(0.625)),
            Poly::linear_factor(c(0.625))
        );
        let p = Poly::linear_factor(c(0.625)).linear_shift_mul(c(-0.625));
        assert_eq!(p, Poly::from_real(&[-0.390625, 0.0, 1.0]));
        assert!(Poly::zero().linear_shift_mul(c(3.0)).is_zero());
    }

    #[test]
    fn zero_has_no_degree_and_exact_zeros_are_stripped() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_real(&[1.0, 0.0, 0.0]).degree(), Some(0));
        let tiny = Poly::from_real(&[1.0, 2.0, 1e-20]);
        assert_eq!(tiny.degree(), Some(2));
        assert_eq!(tiny.trimmed(1e-14).degree(), Some(1));
    }

    #[test]
    fn compose_affine_matches_pointwise() {
        let p = Poly::from_real(&[0.5, -1.0, 0.25, 2.0]);
        let (al, be) = (Complex64::new(2.0, -1.0), Complex64::new(0.3, 0.7));
        let q = p.compose_affine(al, be);
        let z = Complex64::new(-0.4, 1.1);
        assert!((q.eval(z) - p.eval(al * z + be)).norm() < 1e-12);
    }

    #[test]
    fn laurent_square_of_w_plus_c_over_w() {
        let c1 = Complex64::new(0.3, -0.2);
        // order 3 with zero c_2, c_3 so the w^-2 term is fully determined
        let s = LaurentAtInfinity::new(ONE, ZERO, vec![c1, ZERO, ZERO]);
        let p = s.truncated_product(&s, 2).unwrap();
        assert_eq!(p.positive(), &Poly::new(vec![c1 * 2.0, ZERO, ONE]));
        assert!((p.tail_coeff(1)).norm() < 1e-16);
        assert!((p.tail_coeff(2) - c1 * c1).norm() < 1e-16);
    }

    #[test]
    fn laurent_identity_and_pure_w() {
        let s = LaurentAtInfinity::new(ONE, c(0.1), vec![c(0.5), c(-0.25), c(0.125)]);
        let one = LaurentAtInfinity::one(4);
        let p = s.truncated_product(&one, 3).unwrap();
        assert_eq!(p, s);
        let w = LaurentAtInfinity::new(ONE, ZERO, vec![]);
        let w2 = w.truncated_product(&w, 0).unwrap();
        assert_eq!(w2.positive(), &Poly::monomial(2));
        assert!(w2.tail().is_empty());
    }

    #[test]
    fn laurent_rejects_orders_beyond_available() {
        let s = LaurentAtInfinity::new(ONE, ZERO, vec![c(0.5), c(0.1)]);
        let err = s.truncated_product(&s, 2).unwrap_err();
        assert!(matches!(
            err,
            FwError::InsufficientTruncation {
                needed: 2,
                available: 1
            }
        ));
    }
}
