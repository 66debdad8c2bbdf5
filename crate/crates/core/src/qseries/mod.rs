//! Truncated q-expansions with exact rational coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^lead ..= q^trunc`; everything
//! above `trunc` is unknown. Every operation computes the truncation order it
//! can actually prove, so precision loss is visible in the result instead of
//! silently assumed away.

mod forms;
mod serial;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use forms::{
    bernoulli, delta, delta_from_eisenstein, eisenstein, eta_product, jfunction,
    ramanujan_derivative_check, RamanujanResiduals,
};

/// A truncated Laurent q-expansion `sum_{n=lead}^{trunc} a(n) q^n + O(q^{trunc+1})`.
///
/// The zero series is stored with `lead = trunc + 1` and no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    lead: i64,
    trunc: i64,
    coeffs: Vec<BigRational>,
}

impl QSeries {
    /// Build from coefficients of `q^lead, q^{lead+1}, ...`; entries past
    /// `trunc` are dropped, missing ones are zero.
    pub fn new(lead: i64, mut coeffs: Vec<BigRational>, trunc: i64) -> Self {
        let len = (trunc - lead + 1).max(0) as usize;
        coeffs.resize(len, BigRational::zero());
        let mut s = QSeries { lead, trunc, coeffs };
        s.normalize();
        s
    }

    pub fn from_ints<T: Into<BigInt> + Clone>(lead: i64, coeffs: &[T], trunc: i64) -> Self {
        let coeffs = coeffs.iter().map(|c| BigRational::from_integer(c.clone().into())).collect();
        Self::new(lead, coeffs, trunc)
    }

    pub fn zero(trunc: i64) -> Self {
        QSeries { lead: trunc + 1, trunc, coeffs: Vec::new() }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(0, BigRational::one(), trunc)
    }

    /// `c q^n + O(q^{trunc+1})`.
    pub fn monomial(n: i64, c: BigRational, trunc: i64) -> Self {
        Self::new(n, vec![c], trunc)
    }

    /// Lowest exponent carrying a nonzero coefficient (`trunc + 1` for zero).
    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// Coefficients of `q^lead ..= q^trunc`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`, or `None` when `n` lies past the truncation.
    pub fn coeff(&self, n: i64) -> Option<BigRational> {
        if n > self.trunc {
            None
        } else if n < self.lead {
            Some(BigRational::zero())
        } else {
            Some(self.coeffs[(n - self.lead) as usize].clone())
        }
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.first()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients of `q^lead ..= q^trunc`, if all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    fn normalize(&mut self) {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip > 0 {
            self.coeffs.drain(..skip);
            self.lead += skip as i64;
        }
        if self.coeffs.is_empty() {
            self.lead = self.trunc + 1;
        }
    }

    /// Forget every coefficient above `n`.
    pub fn truncate(&self, n: i64) -> Self {
        if n >= self.trunc {
            return self.clone();
        }
        let keep = (n - self.lead + 1).max(0) as usize;
        Self::new(self.lead, self.coeffs[..keep.min(self.coeffs.len())].to_vec(), n)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries { lead: self.lead + k, trunc: self.trunc + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        QSeries {
            lead: self.lead,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `q d/dq`, i.e. `(1/2 pi i) d/dtau`.
    pub fn q_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * BigRational::from_integer(BigInt::from(self.lead + i as i64)))
            .collect();
        Self::new(self.lead, coeffs, self.trunc)
    }

    /// Common denominator and the integer numerators over it.
    fn scaled(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| {
                if c.denom().is_one() && den.is_one() {
                    c.numer().clone()
                } else {
                    c.numer() * (&den / c.denom())
                }
            })
            .collect();
        (nums, den)
    }

    pub fn add_series(&self, other: &Self) -> Self {
        let lead = self.lead.min(other.lead);
        let trunc = self.trunc.min(other.trunc);
        if trunc < lead {
            return Self::zero(trunc);
        }
        let coeffs = (lead..=trunc)
            .map(|n| {
                let a = self.coeff_ref(n);
                let b = other.coeff_ref(n);
                match (a, b) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => BigRational::zero(),
                }
            })
            .collect();
        Self::new(lead, coeffs, trunc)
    }

    fn coeff_ref(&self, n: i64) -> Option<&BigRational> {
        if n < self.lead || n > self.trunc {
            None
        } else {
            self.coeffs.get((n - self.lead) as usize)
        }
    }

    /// Cauchy product; the result is known up to
    /// `min(a.trunc + b.lead, b.trunc + a.lead)`.
    pub fn mul_series(&self, other: &Self) -> Self {
        let lead = self.lead + other.lead;
        let trunc = (self.trunc + other.lead).min(other.trunc + self.lead);
        if self.is_zero() || other.is_zero() || trunc < lead {
            return Self::zero(trunc);
        }
        let (a, da) = self.scaled();
        let (b, db) = other.scaled();
        let prod = convolve(&a, &b, (trunc - lead + 1) as usize);
        let den = da * db;
        let coeffs = prod
            .into_iter()
            .map(|c| if den.is_one() { BigRational::from_integer(c) } else { BigRational::new(c, den.clone()) })
            .collect();
        Self::new(lead, coeffs, trunc)
    }

    /// `self^e` by repeated squaring; `self^0 = 1` at the relative precision of `self`.
    pub fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return Self::one(self.trunc - self.lead);
        }
        let mut result: Option<QSeries> = None;
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul_series(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul_series(&base);
        }
        result.expect("e > 0")
    }

    /// Multiplicative inverse. The result has `lead = -self.lead` and the same
    /// number of known terms past the lead.
    pub fn recip(&self) -> Result<Self> {
        let a0 = self.leading_coefficient().ok_or(Error::ZeroLeading)?;
        if a0.is_zero() {
            return Err(Error::ZeroLeading);
        }
        let rel = (self.trunc - self.lead) as usize;
        let (a, den) = self.scaled();
        // 1/A = q^{-lead} sum B_n / A0^{n+1} q^n with B_n = -sum_{i>=1} A_i B_{n-i} A0^{i-1}
        let a0 = a[0].clone();
        let mut a0_pows = vec![BigInt::one()];
        for i in 1..=rel + 1 {
            let next = &a0_pows[i - 1] * &a0;
            a0_pows.push(next);
        }
        let mut b: Vec<BigInt> = Vec::with_capacity(rel + 1);
        b.push(BigInt::one());
        for n in 1..=rel {
            let mut acc = BigInt::zero();
            for i in 1..=n.min(a.len() - 1) {
                if a[i].is_zero() {
                    continue;
                }
                let t = &a[i] * &b[n - i];
                if a0_pows[i - 1].is_one() {
                    acc += t;
                } else {
                    acc += t * &a0_pows[i - 1];
                }
            }
            b.push(-acc);
        }
        let unit = a0.abs().is_one();
        let coeffs = b
            .into_iter()
            .enumerate()
            .map(|(n, bn)| {
                let num = bn * &den;
                if unit {
                    let s = if a0.is_negative() && n % 2 == 0 { -num } else { num };
                    BigRational::from_integer(s)
                } else {
                    BigRational::new(num, a0_pows[n + 1].clone())
                }
            })
            .collect();
        let lead = -self.lead;
        Ok(Self::new(lead, coeffs, lead + rel as i64))
    }
}

/// First `len` coefficients of the product of two integer sequences.
pub(crate) fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.add_series(rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.add_series(&-rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { lead: self.lead, trunc: self.trunc, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for QSeries {
    type Output = QSeries;
    fn add(self, rhs: QSeries) -> QSeries {
        &self + &rhs
    }
}

impl Sub for QSeries {
    type Output = QSeries;
    fn sub(self, rhs: QSeries) -> QSeries {
        &self - &rhs
    }
}

impl Mul for QSeries {
    type Output = QSeries;
    fn mul(self, rhs: QSeries) -> QSeries {
        &self * &rhs
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.lead + i as i64;
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match n {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{n}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        if first {
            write!(f, "O(q^{})", self.trunc + 1)
        } else {
            write!(f, " + O(q^{})", self.trunc + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(lead: i64, c: &[i64], trunc: i64) -> QSeries {
        QSeries::from_ints(lead, c, trunc)
    }

    #[test]
    fn add_cancels_leading_terms() {
        let r = &s(0, &[1, 1], 5) + &s(0, &[-1, 1], 5);
        assert_eq!(r.lead(), 1);
        assert_eq!(r.trunc(), 5);
        assert_eq!(r.coeff(1).unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(r, s(1, &[2], 5));
    }

    #[test]
    fn add_laurent_and_constant() {
        let r = &s(-1, &[1], 3) + &s(0, &[744], 3);
        assert_eq!(r.lead(), -1);
        assert_eq!(r.trunc(), 3);
        assert_eq!(r.to_string(), "q^-1 + 744 + O(q^4)");
    }

    #[test]
    fn add_takes_min_truncation() {
        let r = &s(0, &[1, 2, 3], 2) + &s(0, &[1], 7);
        assert_eq!(r.trunc(), 2);
    }

    #[test]
    fn additive_inverse_is_zero() {
        let e4 = eisenstein(4, 10).unwrap();
        let z = &e4 - &e4;
        assert!(z.is_zero());
        assert_eq!(z.trunc(), 10);
        assert_eq!(z.lead(), 11);
    }

    #[test]
    fn mul_simple() {
        let r = &s(0, &[1, 1], 6) * &s(0, &[1, -1], 6);
        assert_eq!(r, s(0, &[1, 0, -1], 6));
    }

    #[test]
    fn mul_truncation_rule() {
        // (q + O(q^4)) * (q^-1 + O(q^2)) -> known to min(3 - 1, 1 + 1) = 2
        let r = &s(1, &[1], 3) * &s(-1, &[1], 1);
        assert_eq!(r.trunc(), 2);
        assert_eq!(r.lead(), 0);
    }

    #[test]
    fn pow_basics() {
        let x = s(0, &[1, 1], 10);
        assert_eq!(x.pow(0), QSeries::one(10));
        assert_eq!(x.pow(3), s(0, &[1, 3, 3, 1], 10));
        let d = delta(10);
        assert_eq!(d.pow(2).lead(), 2);
    }

    #[test]
    fn recip_geometric() {
        let r = s(0, &[1, -1], 8).recip().unwrap();
        assert_eq!(r, s(0, &[1; 9], 8));
    }

    #[test]
    fn recip_of_delta() {
        // Long division of 1 by q - 24 q^2 + 252 q^3 - 1472 q^4 + 4830 q^5:
        // q^-1 (1 + 24 q + 324 q^2 + 3200 q^3 + 25650 q^4)
        let d = s(1, &[1, -24, 252, -1472, 4830], 5);
        let r = d.recip().unwrap();
        assert_eq!(r.lead(), -1);
        assert_eq!(r.trunc(), 3);
        assert_eq!(r, s(-1, &[1, 24, 324, 3200, 25650], 3));
        assert_eq!(delta(5).recip().unwrap(), r);
    }

    #[test]
    fn recip_rational_leading() {
        let a = QSeries::new(
            0,
            vec![BigRational::new(2.into(), 3.into()), BigRational::from_integer(5.into())],
            6,
        );
        let prod = &a * &a.recip().unwrap();
        assert_eq!(prod, QSeries::one(6));
    }

    #[test]
    fn recip_zero_errors() {
        assert_eq!(QSeries::zero(4).recip(), Err(Error::ZeroLeading));
    }

    #[test]
    fn recip_involution() {
        let e4 = eisenstein(4, 12).unwrap();
        assert_eq!(e4.recip().unwrap().recip().unwrap(), e4);
    }

    #[test]
    fn q_derivative_scales_by_exponent() {
        let x = s(-1, &[1, 744, 5], 1);
        assert_eq!(x.q_derivative(), s(-1, &[-1, 0, 5], 1));
    }

    #[test]
    fn truncate_and_shift() {
        let x = s(0, &[1, 2, 3, 4], 3);
        assert_eq!(x.truncate(1), s(0, &[1, 2], 1));
        assert_eq!(x.shift(2), s(2, &[1, 2, 3, 4], 5));
    }

    #[test]
    fn display_format() {
        assert_eq!(eisenstein(4, 2).unwrap().to_string(), "1 + 240*q + 2160*q^2 + O(q^3)");
        assert_eq!(eisenstein(6, 2).unwrap().to_string(), "1 - 504*q - 16632*q^2 + O(q^3)");
    }
}
