//! Chebyshev/monomial basis changes and the Goursat transform, generic over
//! exact and ball coefficients.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::evalnum::CertReal;
use crate::poly::IntPolynomial;

/// Coefficient arithmetic needed by the basis changes.
pub trait Ring: Clone + Debug {
    fn zero() -> Self;
    fn from_int(n: i64) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
}

/// Exact halving, needed to go from monomials to Chebyshev polynomials.
pub trait Halve: Ring {
    fn half(&self) -> Self;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

impl Halve for BigRational {
    fn half(&self) -> Self {
        self / BigRational::from_integer(2.into())
    }
}

impl Ring for CertReal {
    fn zero() -> Self {
        CertReal::exact(0.0)
    }
    fn from_int(n: i64) -> Self {
        CertReal::exact(n as f64)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

impl Halve for CertReal {
    fn half(&self) -> Self {
        CertReal::new(self.value * 0.5, self.err * 0.5)
    }
}

fn scale<T: Ring>(p: &[T], c: &T) -> Vec<T> {
    p.iter().map(|a| a.times(c)).collect()
}

fn add_into<T: Ring>(acc: &mut Vec<T>, p: &[T]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), T::zero());
    }
    for (a, b) in acc.iter_mut().zip(p) {
        *a = a.plus(b);
    }
}

fn mul_poly<T: Ring>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].plus(&x.times(y));
        }
    }
    out
}

/// Monomial coefficients of `T_0, ..., T_n` from `T_{n+1} = 2x T_n - T_{n-1}`.
fn chebyshev_t<T: Ring>(n: usize) -> Vec<Vec<T>> {
    let mut t: Vec<Vec<T>> = vec![vec![T::from_int(1)]];
    if n >= 1 {
        t.push(vec![T::zero(), T::from_int(1)]);
    }
    for k in 2..=n {
        let mut next = vec![T::zero()];
        next.extend(t[k - 1].iter().map(|a| a.times(&T::from_int(2))));
        let prev = &t[k - 2];
        for (i, a) in prev.iter().enumerate() {
            next[i] = next[i].minus(a);
        }
        t.push(next);
    }
    t
}

/// `sum c_n T_n(x)` in the Chebyshev basis of the first kind.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebyshevPoly<T> {
    pub coeffs: Vec<T>,
}

impl<T: Ring> ChebyshevPoly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        ChebyshevPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Ascending monomial coefficients.
    pub fn to_monomial(&self) -> Vec<T> {
        if self.coeffs.is_empty() {
            return Vec::new();
        }
        let t = chebyshev_t::<T>(self.degree());
        let mut out = Vec::new();
        for (c, tn) in self.coeffs.iter().zip(&t) {
            add_into(&mut out, &scale(tn, c));
        }
        out
    }

    pub fn eval(&self, x: &T) -> T {
        poly_eval(&self.to_monomial(), x)
    }
}

impl<T: Halve> ChebyshevPoly<T> {
    /// Expand ascending monomial coefficients using `x T_0 = T_1` and
    /// `x T_k = (T_{k+1} + T_{k-1}) / 2`.
    pub fn from_monomial(p: &[T]) -> Self {
        let n = p.len();
        let mut out = vec![T::zero(); n];
        let mut power = vec![T::from_int(1)];
        for (i, c) in p.iter().enumerate() {
            for (k, a) in power.iter().enumerate() {
                out[k] = out[k].plus(&a.times(c));
            }
            if i + 1 == n {
                break;
            }
            let mut next = vec![T::zero(); power.len() + 1];
            for (k, a) in power.iter().enumerate() {
                if k == 0 {
                    next[1] = next[1].plus(a);
                } else {
                    let h = a.half();
                    next[k + 1] = next[k + 1].plus(&h);
                    next[k - 1] = next[k - 1].plus(&h);
                }
            }
            power = next;
        }
        ChebyshevPoly { coeffs: out }
    }
}

/// Horner evaluation of ascending coefficients.
pub fn poly_eval<T: Ring>(p: &[T], x: &T) -> T {
    p.iter().rev().fold(T::zero(), |acc, c| acc.times(x).plus(c))
}

pub fn poly_derivative<T: Ring>(p: &[T]) -> Vec<T> {
    p.iter().enumerate().skip(1).map(|(i, c)| c.times(&T::from_int(i as i64))).collect()
}

/// `(1 + z)^d P((1 - z) / (1 + z))` with `d = len - 1`. For `z >= 0` its sign
/// is the sign of `P` at the matching point of `(-1, 1]`.
pub fn goursat_transform<T: Ring>(p: &[T]) -> Vec<T> {
    if p.is_empty() {
        return Vec::new();
    }
    let d = p.len() - 1;
    let one_minus = [T::from_int(1), T::from_int(-1)];
    let one_plus = [T::from_int(1), T::from_int(1)];
    let mut minus_pows = vec![vec![T::from_int(1)]];
    let mut plus_pows = vec![vec![T::from_int(1)]];
    for i in 1..=d {
        minus_pows.push(mul_poly(&minus_pows[i - 1], &one_minus));
        plus_pows.push(mul_poly(&plus_pows[i - 1], &one_plus));
    }
    let mut out = vec![T::zero(); d + 1];
    for (i, a) in p.iter().enumerate() {
        let term = mul_poly(&minus_pows[i], &plus_pows[d - i]);
        add_into(&mut out, &scale(&term, a));
    }
    out
}

/// [`goursat_transform`] of an integer polynomial, over its true degree.
pub fn goursat_int(p: &IntPolynomial) -> IntPolynomial {
    IntPolynomial::new(goursat_transform(p.coeffs()))
}

/// Rational image of `(1 - z) / (1 + z)`.
pub fn goursat_point(z: &BigRational) -> BigRational {
    (BigRational::one() - z) / (BigRational::one() + z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn chebyshev_basics() {
        let t3 = ChebyshevPoly::new(vec![q(0), q(0), q(0), q(1)]);
        assert_eq!(t3.to_monomial(), vec![q(0), q(-3), q(0), q(4)]);
        let back = ChebyshevPoly::from_monomial(&[q(0), q(-3), q(0), q(4)]);
        assert_eq!(back.coeffs, vec![q(0), q(0), q(0), q(1)]);
    }

    #[test]
    fn goursat_examples() {
        assert_eq!(goursat_transform(&[q(0), q(1)]), vec![q(1), q(-1)]);
        assert_eq!(goursat_transform(&[q(1)]), vec![q(1)]);
        let p = IntPolynomial::from_i64(&[1, 2, 3]);
        let g = goursat_int(&p);
        // P(-1) = 2 is the leading coefficient
        assert_eq!(g.leading(), BigInt::from(2));
    }
}
