//! Midpoint-radius values. Every operation adds the rounding error of the
//! midpoint computation to the radius and rounds the radius upward.

use num_complex::Complex64;
use serde::Serialize;

use super::ext::{chain_rel, XComplex, XReal};
use crate::error::{Error, Result};

/// Unit used for rounding allowances (twice the unit roundoff).
pub const U: f64 = f64::EPSILON;

/// Inflate a nonnegative bound to absorb the rounding of its own computation.
pub fn up(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (1.0 + 4.0 * U) + f64::MIN_POSITIVE
    }
}

/// Real value with a rigorous error radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertReal {
    pub value: f64,
    pub err: f64,
}

impl CertReal {
    pub fn new(value: f64, err: f64) -> Self {
        debug_assert!(err >= 0.0 && err.is_finite(), "bad radius {err}");
        CertReal { value, err }
    }

    pub fn exact(value: f64) -> Self {
        CertReal { value, err: 0.0 }
    }

    /// A value produced by one correctly rounded (or libm) operation.
    pub fn rounded(value: f64) -> Self {
        CertReal { value, err: up(value.abs() * U) }
    }

    pub fn lo(&self) -> f64 {
        self.value - self.err
    }

    pub fn hi(&self) -> f64 {
        self.value + self.err
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.value - x).abs() <= self.err
    }

    /// Sign when the ball excludes zero.
    pub fn sign(&self) -> Option<i32> {
        if self.value.abs() > self.err {
            Some(if self.value > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }

    /// Certified upper bound on `|x|`.
    pub fn abs_hi(&self) -> f64 {
        up(self.value.abs() + self.err)
    }

    /// Certified lower bound on `|x|` (zero if the ball meets zero).
    pub fn abs_lo(&self) -> f64 {
        ((self.value.abs() - self.err) * (1.0 - 4.0 * U)).max(0.0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let v = self.value + o.value;
        Self::new(v, up(self.err + o.err + v.abs() * U))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CertReal { value: -self.value, err: self.err }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let v = self.value * o.value;
        let e = self.value.abs() * o.err + o.value.abs() * self.err + self.err * o.err + v.abs() * U;
        Self::new(v, up(e))
    }

    pub fn scale(&self, c: f64) -> Self {
        let v = self.value * c;
        Self::new(v, up(self.err * c.abs() + v.abs() * U))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let den = o.value.abs() - o.err;
        if den <= 0.0 {
            return Err(Error::DomainError(format!("division by a ball containing zero: {o:?}")));
        }
        let v = self.value / o.value;
        let e = (self.err + v.abs() * o.err) / (den * (1.0 - 4.0 * U)) + v.abs() * U;
        Ok(Self::new(v, up(e)))
    }

    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return Self::exact(1.0);
        }
        let a = self.value.abs();
        let v = self.value.powi(n as i32);
        let prop = if a > 0.0 {
            a.powi(n as i32) * (n as f64 * (self.err / a).ln_1p()).exp_m1()
        } else {
            self.err.powi(n as i32)
        };
        Self::new(v, up(prop * (1.0 + 8.0 * U) + v.abs() * 2.0 * n as f64 * U))
    }

    pub fn exp(&self) -> Self {
        let v = self.value.exp();
        Self::new(v, up(v * self.err.exp_m1() * (1.0 + 8.0 * U) + 2.0 * v * U))
    }

    pub fn widen(&self, extra: f64) -> Self {
        Self::new(self.value, up(self.err + extra))
    }

    pub fn to_ext(&self) -> ExtCertReal {
        ExtCertReal { value: XReal::from_f64(self.value), err: XReal::from_f64(self.err) }
    }
}

/// Complex value with a rigorous error radius (a disc).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertValue {
    pub value: Complex64,
    pub err: f64,
}

impl Serialize for CertValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CertValue", 3)?;
        st.serialize_field("re", &self.value.re)?;
        st.serialize_field("im", &self.value.im)?;
        st.serialize_field("err", &self.err)?;
        st.end()
    }
}

impl CertValue {
    pub fn new(value: Complex64, err: f64) -> Self {
        debug_assert!(err >= 0.0 && err.is_finite(), "bad radius {err}");
        CertValue { value, err }
    }

    pub fn exact(value: Complex64) -> Self {
        CertValue { value, err: 0.0 }
    }

    pub fn from_real(x: CertReal) -> Self {
        CertValue { value: Complex64::new(x.value, 0.0), err: x.err }
    }

    /// `e^{i phi}` for an exact `phi`.
    pub fn cis(phi: f64) -> Self {
        let v = Complex64::new(phi.cos(), phi.sin());
        CertValue { value: v, err: up(4.0 * U) }
    }

    pub fn abs_hi(&self) -> f64 {
        up(self.value.norm() + self.err)
    }

    pub fn abs_lo(&self) -> f64 {
        ((self.value.norm() - self.err) * (1.0 - 4.0 * U)).max(0.0)
    }

    pub fn conj(&self) -> Self {
        CertValue { value: self.value.conj(), err: self.err }
    }

    pub fn add(&self, o: &Self) -> Self {
        let v = self.value + o.value;
        Self::new(v, up(self.err + o.err + v.norm() * U))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&CertValue { value: -o.value, err: o.err })
    }

    pub fn mul(&self, o: &Self) -> Self {
        let v = self.value * o.value;
        let (a, b) = (self.value.norm(), o.value.norm());
        let e = a * o.err + b * self.err + self.err * o.err + 3.0 * a * b * U;
        Self::new(v, up(e))
    }

    pub fn scale(&self, c: f64) -> Self {
        let v = self.value * c;
        Self::new(v, up(self.err * c.abs() + v.norm() * U))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let n = o.value.norm();
        let den = n - o.err;
        if den <= 0.0 {
            return Err(Error::DomainError("division by a disc containing zero".into()));
        }
        let v = self.value / o.value;
        let e = (self.err + v.norm() * o.err) / (den * (1.0 - 4.0 * U)) + 6.0 * v.norm() * U;
        Ok(Self::new(v, up(e)))
    }

    pub fn powi(&self, n: u32) -> Self {
        if n == 0 {
            return Self::exact(Complex64::new(1.0, 0.0));
        }
        let a = self.value.norm();
        let v = self.value.powi(n as i32);
        let prop = if a > 0.0 {
            a.powi(n as i32) * (n as f64 * (self.err / a).ln_1p()).exp_m1()
        } else {
            self.err.powi(n as i32)
        };
        Self::new(v, up(prop * (1.0 + 8.0 * U) + v.norm() * 4.0 * n as f64 * U))
    }

    /// Real part, after checking the imaginary part vanishes within the radius.
    pub fn real(&self) -> Result<CertReal> {
        if self.value.im.abs() > self.err {
            return Err(Error::NotReal { imag: self.value.im, err: self.err });
        }
        Ok(CertReal::new(self.value.re, self.err))
    }

    pub fn to_ext(&self) -> ExtCert {
        ExtCert { value: XComplex::from_complex(self.value), err: XReal::from_f64(self.err) }
    }
}

/// Extended-range real ball.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExtCertReal {
    pub value: XReal,
    pub err: XReal,
}

impl ExtCertReal {
    pub fn sign(&self) -> Option<i32> {
        (self.value.abs() > self.err).then(|| if self.value.signum() > 0.0 { 1 } else { -1 })
    }

    pub fn mul(&self, o: &Self) -> Self {
        let v = self.value.mul(&o.value);
        let e = self
            .value
            .abs()
            .mul(&o.err)
            .add(&o.value.abs().mul(&self.err))
            .add(&self.err.mul(&o.err))
            .add(&v.abs().scale(chain_rel(1)));
        ExtCertReal { value: v, err: e.up() }
    }

    /// `self^n` with the exact propagation `(|v| + e)^n - |v|^n`.
    pub fn powi(&self, n: u64) -> Self {
        let v = self.value.powi(n);
        let a = self.value.abs();
        let rel = if a.is_zero() {
            f64::INFINITY
        } else {
            self.err.div(&a).to_f64()
        };
        let prop = if rel.is_finite() {
            v.abs().scale((n as f64 * rel.ln_1p()).exp_m1() * (1.0 + 8.0 * U))
        } else {
            self.err.powi(n)
        };
        ExtCertReal { value: v, err: prop.add(&v.abs().scale(chain_rel(2 * n))).up() }
    }

    /// Convert to `f64`; fails if the value or radius leaves the `f64` range.
    pub fn to_cert(&self) -> Option<CertReal> {
        let v = self.value.to_f64();
        let e = self.err.to_f64();
        (v.is_finite() && e.is_finite() && (v != 0.0 || self.value.is_zero()))
            .then(|| CertReal::new(v, up(e + v.abs() * U)))
    }
}

/// Extended-range complex ball.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtCert {
    pub value: XComplex,
    pub err: XReal,
}

impl ExtCert {
    pub fn mul(&self, o: &Self) -> Self {
        let v = self.value.mul(&o.value);
        let e = self
            .value
            .abs()
            .mul(&o.err)
            .add(&o.value.abs().mul(&self.err))
            .add(&self.err.mul(&o.err))
            .add(&v.abs().scale(chain_rel(1)));
        ExtCert { value: v, err: e.up() }
    }

    pub fn powi(&self, n: u64) -> Self {
        let v = self.value.powi(n);
        let a = self.value.abs();
        let prop = if a.is_zero() {
            self.err.powi(n)
        } else {
            let rel = self.err.div(&a).to_f64();
            v.abs().scale((n as f64 * rel.ln_1p()).exp_m1() * (1.0 + 8.0 * U))
        };
        ExtCert { value: v, err: prop.add(&v.abs().scale(chain_rel(2 * n))).up() }
    }

    pub fn to_cert(&self) -> Option<CertValue> {
        let v = self.value.to_complex();
        let e = self.err.to_f64();
        (v.re.is_finite() && v.im.is_finite() && e.is_finite()).then(|| CertValue::new(v, up(e + v.norm() * U)))
    }

    /// Real part after the imaginary-part check.
    pub fn real(&self) -> Result<ExtCertReal> {
        let im = self.value.im();
        if im.abs() > self.err {
            return Err(Error::NotReal { imag: im.to_f64(), err: self.err.to_f64() });
        }
        Ok(ExtCertReal { value: self.value.re(), err: self.err })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_ops_enclose() {
        let a = CertReal::new(1.5, 1e-3);
        let b = CertReal::new(-0.25, 1e-4);
        let p = a.mul(&b);
        for (x, y) in [(1.501, -0.2501), (1.499, -0.2499), (1.5, -0.25)] {
            assert!(p.contains(x * y));
            assert!(a.add(&b).contains(x + y));
            assert!(a.div(&b).unwrap().contains(x / y));
        }
        assert!(a.powi(5).contains(1.501f64.powi(5)));
        assert!(CertReal::new(0.0, 1.0).div(&CertReal::new(0.5, 1.0)).is_err());
    }

    #[test]
    fn complex_real_part_check() {
        let z = CertValue::new(Complex64::new(1.0, 1e-12), 1e-10);
        assert_eq!(z.real().unwrap().value, 1.0);
        let w = CertValue::new(Complex64::new(1.0, 1e-8), 1e-10);
        assert!(matches!(w.real(), Err(Error::NotReal { .. })));
    }

    #[test]
    fn ext_power_matches_f64() {
        let a = CertReal::new(0.9, 1e-12);
        let p = a.to_ext().powi(7).to_cert().unwrap();
        let q = a.powi(7);
        assert!((p.value - q.value).abs() < 1e-15);
        assert!(p.err >= 7.0 * 0.9f64.powi(6) * 1e-12);
    }
}
