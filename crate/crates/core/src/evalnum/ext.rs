//! Floating point with a separate 64-bit exponent, for products such as
//! `Delta^ell` and `F(j)` that leave the `f64` range at large weight.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::ball::{up, U};

/// Split a finite nonzero `x` into `m * 2^e` with `0.5 <= |m| < 1`.
pub(crate) fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    if exp == 0 {
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, exp - 1022)
}

/// `x * 2^e` with saturation to zero or infinity.
pub(crate) fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

/// Real number `m * 2^e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XReal {
    m: f64,
    e: i64,
}

impl XReal {
    pub const ZERO: XReal = XReal { m: 0.0, e: 0 };

    pub fn new(m: f64, e: i64) -> Self {
        let (mm, ee) = frexp(m);
        if mm == 0.0 {
            return Self::ZERO;
        }
        XReal { m: mm, e: e + ee }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0)
    }

    /// Nearest representable value of a big integer (relative error below `U`).
    pub fn from_bigint(x: &BigInt) -> Self {
        let bits = x.bits() as i64;
        if bits <= 1000 {
            return Self::from_f64(bigint_to_f64(x));
        }
        let shifted: BigInt = x >> (bits - 64) as usize;
        Self::new(bigint_to_f64(&shifted), bits - 64)
    }

    pub fn mantissa(&self) -> f64 {
        self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn to_f64(&self) -> f64 {
        ldexp(self.m, self.e)
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    pub fn abs(&self) -> Self {
        XReal { m: self.m.abs(), e: self.e }
    }

    pub fn signum(&self) -> f64 {
        if self.m == 0.0 {
            0.0
        } else {
            self.m.signum()
        }
    }

    /// Natural logarithm of `|self|`.
    pub fn ln_abs(&self) -> f64 {
        self.m.abs().ln() + self.e as f64 * std::f64::consts::LN_2
    }

    /// `exp(l)` for any finite `l`.
    pub fn exp(l: f64) -> Self {
        let e = (l / std::f64::consts::LN_2).floor();
        Self::new((l - e * std::f64::consts::LN_2).exp(), e as i64)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.m * o.m, self.e + o.e)
    }

    pub fn div(&self, o: &Self) -> Self {
        Self::new(self.m / o.m, self.e - o.e)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.m * c, self.e)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return *o;
        }
        if o.is_zero() {
            return *self;
        }
        let (big, small) = if self.e >= o.e { (self, o) } else { (o, self) };
        let d = big.e - small.e;
        if d > 1100 {
            return *big;
        }
        Self::new(big.m + ldexp(small.m, -d), big.e)
    }

    pub fn neg(&self) -> Self {
        XReal { m: -self.m, e: self.e }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// `self^n` by repeated squaring; relative rounding error below `2 n U`.
    pub fn powi(&self, n: u64) -> Self {
        let mut acc = Self::from_f64(1.0);
        let mut base = *self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Round a nonnegative radius up to cover the rounding of its computation.
    pub fn up(&self) -> Self {
        Self::new(up(self.m), self.e)
    }

    pub fn max(self, o: Self) -> Self {
        if self.partial_cmp(&o) == Some(Ordering::Less) {
            o
        } else {
            self
        }
    }
}

impl PartialOrd for XReal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        let (sa, sb) = (self.signum(), o.signum());
        if sa != sb {
            return sa.partial_cmp(&sb);
        }
        if sa == 0.0 {
            return Some(Ordering::Equal);
        }
        let mag = if self.e != o.e { self.e.cmp(&o.e) } else { self.m.abs().partial_cmp(&o.m.abs())? };
        Some(if sa > 0.0 { mag } else { mag.reverse() })
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_f64();
        if v != 0.0 && v.is_finite() || self.is_zero() {
            return write!(f, "{v:e}");
        }
        let l10 = self.ln_abs() / std::f64::consts::LN_10;
        let p = l10.floor();
        write!(f, "{}{}e{}", if self.m < 0.0 { "-" } else { "" }, 10f64.powf(l10 - p), p as i64)
    }
}

impl Serialize for XReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = self.to_f64();
        if v.is_finite() && (v != 0.0 || self.is_zero()) {
            s.serialize_f64(v)
        } else {
            s.serialize_str(&self.to_string())
        }
    }
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(if x.sign() == Sign::Minus { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Complex number `(re + i im) * 2^e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XComplex {
    re: f64,
    im: f64,
    e: i64,
}

impl XComplex {
    pub fn new(z: Complex64, e: i64) -> Self {
        let scale = z.re.abs().max(z.im.abs());
        if scale == 0.0 {
            return XComplex { re: 0.0, im: 0.0, e: 0 };
        }
        let (_, se) = frexp(scale);
        XComplex { re: ldexp(z.re, -se), im: ldexp(z.im, -se), e: e + se }
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z, 0)
    }

    pub fn from_real(x: XReal) -> Self {
        Self::new(Complex64::new(x.mantissa(), 0.0), x.exponent())
    }

    pub fn from_parts(re: XReal, im: XReal) -> Self {
        let e = re.exponent().max(im.exponent());
        Self::new(Complex64::new(ldexp(re.mantissa(), re.exponent() - e), ldexp(im.mantissa(), im.exponent() - e)), e)
    }

    pub fn re(&self) -> XReal {
        XReal::new(self.re, self.e)
    }

    pub fn im(&self) -> XReal {
        XReal::new(self.im, self.e)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(ldexp(self.re, self.e), ldexp(self.im, self.e))
    }

    pub fn abs(&self) -> XReal {
        XReal::new(self.re.hypot(self.im), self.e)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let z = Complex64::new(self.re, self.im) * Complex64::new(o.re, o.im);
        Self::new(z, self.e + o.e)
    }

    pub fn scale(&self, c: &XReal) -> Self {
        Self::new(Complex64::new(self.re * c.mantissa(), self.im * c.mantissa()), self.e + c.exponent())
    }

    pub fn add(&self, o: &Self) -> Self {
        let e = self.e.max(o.e);
        let a = Complex64::new(ldexp(self.re, self.e - e), ldexp(self.im, self.e - e));
        let b = Complex64::new(ldexp(o.re, o.e - e), ldexp(o.im, o.e - e));
        Self::new(a + b, e)
    }

    pub fn powi(&self, n: u64) -> Self {
        let mut acc = Self::from_complex(Complex64::new(1.0, 0.0));
        let mut base = *self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

/// Relative rounding allowance for `n` chained extended operations.
pub(crate) fn chain_rel(n: u64) -> f64 {
    up(4.0 * (n as f64 + 1.0) * U)
}
