//! Exact evaluation of integer polynomials at floating-point balls.
//!
//! The centre `x0` of the ball is a dyadic rational, so `p(x0)` and the
//! Taylor coefficients of `p` at `x0` are computed exactly over the (Gaussian)
//! integers. The radius then only enters through `sum_n |t_n| r^n`, which
//! avoids the cancellation that makes Horner's rule useless for Faber
//! polynomials of large degree.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::ball::{CertReal, CertValue, ExtCert, ExtCertReal, U};
use super::ext::{XComplex, XReal};
use crate::poly::IntPolynomial;

/// `(mantissa, exponent)` with `x = mantissa * 2^exponent` exactly.
fn decode(x: f64) -> (i64, i64) {
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1 << 52) - 1)) as i64;
    let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
    (sign * m, e)
}

/// Gaussian integer `A = a + b i` with `x0 = A / 2^s`.
struct Dyadic {
    re: BigInt,
    im: BigInt,
    s: u64,
}

fn dyadic(z: Complex64) -> Dyadic {
    let (mr, er) = decode(z.re);
    let (mi, ei) = decode(z.im);
    let s = [0, if mr != 0 { -er } else { 0 }, if mi != 0 { -ei } else { 0 }].into_iter().max().unwrap() as u64;
    let shift = |m: i64, e: i64| -> BigInt {
        let b = BigInt::from(m);
        let k = e + s as i64;
        if m == 0 {
            b
        } else {
            b << k as usize
        }
    };
    Dyadic { re: shift(mr, er), im: shift(mi, ei), s }
}

/// Incremental Taylor expansion of `G(y) = 2^{sD} p(y / 2^s)` at `y = A`.
struct Taylor {
    re: Vec<BigInt>,
    im: Vec<BigInt>,
    a: Dyadic,
    real: bool,
}

impl Taylor {
    fn new(p: &IntPolynomial, a: Dyadic) -> Self {
        let d = p.degree().max(0) as u64;
        let re: Vec<BigInt> = p.coeffs().iter().enumerate().map(|(i, c)| c << (a.s * (d - i as u64)) as usize).collect();
        let real = a.im.is_zero();
        let im = if real { Vec::new() } else { vec![BigInt::zero(); re.len()] };
        Taylor { re, im, a, real }
    }

    /// Divide the current polynomial by `(y - A)` and return the remainder,
    /// which is the next Taylor coefficient.
    fn next(&mut self) -> Option<(BigInt, BigInt)> {
        let n = self.re.len();
        if n == 0 {
            return None;
        }
        let (mut br, mut bi) = (BigInt::zero(), BigInt::zero());
        let mut qre = vec![BigInt::zero(); n - 1];
        let mut qim = if self.real { Vec::new() } else { vec![BigInt::zero(); n - 1] };
        for i in (0..n).rev() {
            // b <- g_i + A b
            let (nr, ni) = if self.real {
                (&self.re[i] + &self.a.re * &br, BigInt::zero())
            } else {
                let r = &self.re[i] + &self.a.re * &br - &self.a.im * &bi;
                let m = &self.im[i] + &self.a.re * &bi + &self.a.im * &br;
                (r, m)
            };
            br = nr;
            bi = ni;
            if i > 0 {
                qre[i - 1] = br.clone();
                if !self.real {
                    qim[i - 1] = bi.clone();
                }
            }
        }
        self.re = qre;
        self.im = qim;
        Some((br, bi))
    }
}

/// `T / 2^shift` as an extended complex number, relative error below `2U`.
fn scaled(t: &(BigInt, BigInt), shift: u64) -> XComplex {
    let re = XReal::from_bigint(&t.0);
    let im = XReal::from_bigint(&t.1);
    let sh = -(shift as i64);
    XComplex::from_parts(XReal::new(re.mantissa(), re.exponent() + sh), XReal::new(im.mantissa(), im.exponent() + sh))
}

/// `sum_{i > n} |c_i| C(i, n+1) r^{n+1} (|x0| + r)^{i-n-1}`, which bounds the
/// Taylor remainder past order `n`.
fn taylor_tail(p: &IntPolynomial, n: usize, x0: f64, r: f64) -> XReal {
    let d = p.degree().max(0) as usize;
    if n >= d || r == 0.0 {
        return XReal::ZERO;
    }
    let lr = r.ln();
    let lx = (x0 + r).ln();
    let mut total = XReal::ZERO;
    let mut ln_binom = 0.0; // ln C(i, n+1) starting at i = n+1
    for i in n + 1..=d {
        if i > n + 1 {
            ln_binom += (i as f64).ln() - ((i - n - 1) as f64).ln();
        }
        let c = &p.coeffs()[i];
        if c.is_zero() {
            continue;
        }
        let l = XReal::from_bigint(c).abs().ln_abs() + ln_binom + (n + 1) as f64 * lr + (i - n - 1) as f64 * lx;
        total = total.add(&XReal::exp(l));
    }
    total.scale(1.0 + 1e-9).up()
}

/// Certified `p(x)` for a complex ball `x`.
pub fn eval_poly_ball(p: &IntPolynomial, x: &CertValue) -> ExtCert {
    let d = p.degree().max(0) as u64;
    if p.is_zero() {
        return ExtCert { value: XComplex::from_complex(Complex64::new(0.0, 0.0)), err: XReal::ZERO };
    }
    let a = dyadic(x.value);
    let s = a.s;
    let mut taylor = Taylor::new(p, a);
    let t0 = taylor.next().expect("nonzero polynomial");
    let value = scaled(&t0, s * d);
    let mut err = value.abs().scale(3.0 * U);
    if x.err == 0.0 {
        return ExtCert { value, err: err.up() };
    }
    let r = XReal::from_f64(x.err);
    let x0 = x.value.norm();
    let mut rn = r;
    let mut n = 0usize;
    let mut target = 12usize.min(d as usize);
    loop {
        while n < target {
            n += 1;
            let t = taylor.next().expect("degree not exceeded");
            let tn = scaled(&t, s * (d - n as u64)).abs().scale(1.0 + 4.0 * U);
            err = err.add(&tn.mul(&rn));
            rn = rn.mul(&r);
        }
        let tail = taylor_tail(p, n, x0, x.err);
        if n as u64 >= d || tail <= err.scale(1e-6) {
            err = err.add(&tail);
            break;
        }
        target = (2 * n).min(d as usize);
    }
    ExtCert { value, err: err.scale(1.0 + 8.0 * U).up() }
}

/// Certified `p(x)` for a real ball `x`.
pub fn eval_poly_real(p: &IntPolynomial, x: &CertReal) -> ExtCertReal {
    let z = eval_poly_ball(p, &CertValue::from_real(*x));
    ExtCertReal { value: z.value.re(), err: z.err }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn f48() -> IntPolynomial {
        IntPolynomial::from_i64(&[-24903328, 931860, -2136, 1])
    }

    #[test]
    fn decode_is_exact() {
        for x in [1.0, 0.1, -1728.0, 28.5703, 1e-310, 3.5e10] {
            let (m, e) = decode(x);
            assert_eq!(m as f64 * 2f64.powi(e as i32), x);
        }
    }

    #[test]
    fn exact_center_value() {
        let x = 0.1f64;
        let exact = f48().eval_rational(&BigRational::from_float(x).unwrap());
        let v = eval_poly_real(&f48(), &CertReal::exact(x));
        let expect = exact.to_f64().unwrap();
        assert!((v.value.to_f64() - expect).abs() <= 1e-15 * expect.abs());
    }

    #[test]
    fn ball_encloses_perturbed_values() {
        let p = f48();
        let ball = CertReal::new(565.0, 0.5);
        let v = eval_poly_real(&p, &ball);
        for x in [564.5, 564.8, 565.0, 565.3, 565.5] {
            let fx = p.eval_f64(x);
            assert!((fx - v.value.to_f64()).abs() <= v.err.to_f64(), "{x}");
        }
        // the radius is close to sup |p'| r, not the Horner overestimate
        assert!(v.err.to_f64() < 2.0 * 0.5 * 1_000_000.0);
    }

    #[test]
    fn complex_evaluation() {
        let p = IntPolynomial::from_i64(&[1, 0, 1]); // t^2 + 1
        let v = eval_poly_ball(&p, &CertValue::new(Complex64::new(0.0, 1.0), 1e-3));
        assert!(v.value.abs().to_f64() < 1e-300);
        assert!(v.err.to_f64() >= 2e-3 && v.err.to_f64() < 2.1e-3);
    }

    #[test]
    fn high_degree_tail_is_used() {
        // (t - 1)^40 around 1 with a tiny radius
        let mut p = IntPolynomial::one();
        for _ in 0..40 {
            p = p.mul(&IntPolynomial::from_i64(&[-1, 1]));
        }
        let v = eval_poly_real(&p, &CertReal::new(1.0, 1e-3));
        assert!(v.value.is_zero());
        assert!(v.err.to_f64() >= 1e-120 && v.err.to_f64() < 1e-100);
    }

    use num_traits::ToPrimitive;
}
