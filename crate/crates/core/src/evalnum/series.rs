use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::ball::{up, CertReal, CertValue, U};
use crate::error::{Error, Result};
use crate::qseries::{bernoulli, delta, eisenstein, jfunction, QSeries};

/// Lowest admissible `Im(tau)`.
pub const MIN_HEIGHT: f64 = 0.4;

/// Truncation used by the cached evaluation kernels.
pub const KERNEL_TRUNC: i64 = 60;

/// Pentagonal terms used by default in [`eval_delta_eta`].
pub const ETA_TERMS: usize = 12;

/// How to bound the coefficients past the truncation of a series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum TailBound {
    /// The series is exact: nothing past the truncation.
    Finite,
    /// `1 <= c(n) <= e^{4 pi sqrt n} / (sqrt 2 n^{3/4})` for the coefficients of `j`.
    JCoeff,
    /// `|gamma_k sigma_{k-1}(n)| <= |gamma_k| n^k`.
    EisensteinCoeff { k: i64 },
    /// `q^shift prod (1 - q^n)^power`, dominated by `prod (1 + x^n)^power`.
    EtaProduct { power: u32, shift: i64 },
    /// `|a(n)| <= c ratio^n`.
    Geometric { c: f64, ratio: f64 },
}

/// Closed-form bound on `sum_{n > m} c(n) e^{-2 pi a n}`; needs `m > 1/a^2`.
pub fn j_tail_bound(m: i64, a: f64) -> Result<f64> {
    let mf = m as f64;
    if a <= 0.0 || mf <= 1.0 / (a * a) {
        return Err(Error::DomainError(format!("j tail bound needs M > 1/a^2 (M = {m}, a = {a})")));
    }
    let s = mf.sqrt();
    let expo = 2.0 * PI * (1.0 / a - a * (s - 1.0 / a).powi(2));
    let v = expo.exp() / (2.0 * 2f64.sqrt() * PI * (mf + 1.0).powf(0.75)) * s / (a * s - 1.0);
    Ok(up(v * (1.0 + 1e-12)))
}

fn tail_value(tail: TailBound, trunc: i64, r: f64, height: f64) -> Result<f64> {
    let n1 = (trunc + 1) as f64;
    let v = match tail {
        TailBound::Finite => 0.0,
        TailBound::JCoeff => j_tail_bound(trunc, height)?,
        TailBound::EisensteinCoeff { k } => {
            if k == 0 {
                return Ok(0.0);
            }
            let gamma = eisenstein_gamma_abs(k);
            let kf = k as f64;
            let ratio = ((n1 + 1.0) / n1).powf(kf) * r;
            if trunc < 0 || ratio >= 1.0 {
                return Err(Error::TailUnbounded(format!("Eisenstein tail ratio {ratio} at trunc {trunc}")));
            }
            (gamma.ln() + kf * n1.ln() + n1 * r.ln()).exp() / (1.0 - ratio)
        }
        TailBound::EtaProduct { power, shift } => {
            if trunc < shift {
                return Err(Error::TailUnbounded("eta product truncated below its lead".into()));
            }
            let r0 = r.sqrt();
            let log_b = power as f64 * r0 / (1.0 - r0);
            let n = (trunc - shift + 1) as f64;
            (shift as f64 * r.ln() + log_b + n * r0.ln()).exp() / (1.0 - r0)
        }
        TailBound::Geometric { c, ratio } => {
            let t = ratio * r;
            if !(0.0..1.0).contains(&t) {
                return Err(Error::TailUnbounded(format!("geometric ratio {t}")));
            }
            c * t.powf(n1) / (1.0 - t)
        }
    };
    Ok(up(v * (1.0 + 1e-12)))
}

/// `|2k / B_k|`, rounded up.
pub fn eisenstein_gamma_abs(k: i64) -> f64 {
    let b = bernoulli(k as usize);
    let g = (num_rational::BigRational::from_integer((2 * k).into()) / b).abs();
    up(g.to_f64().expect("gamma_k is finite"))
}

/// `f64` images of exact coefficients, with their conversion error folded into
/// the per-term rounding allowance.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub lead: i64,
    pub trunc: i64,
    pub coeffs: Vec<f64>,
    pub tail: TailBound,
}

impl Kernel {
    pub fn from_series(s: &QSeries, tail: TailBound) -> Self {
        Kernel {
            lead: s.lead(),
            trunc: s.trunc(),
            coeffs: s.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect(),
            tail,
        }
    }

    pub fn eval(&self, tau: &CertValue) -> Result<CertValue> {
        eval_coeffs(self.lead, &self.coeffs, self.trunc, tau, self.tail)
    }
}

/// Series whose kernels are cached for repeated evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Known {
    E(i64),
    J,
    Delta,
}

/// Cached kernel for a standard series, truncated at [`KERNEL_TRUNC`].
pub fn kernel(which: Known) -> &'static Kernel {
    static CELLS: [OnceLock<Kernel>; 9] = [const { OnceLock::new() }; 9];
    let (slot, build): (usize, fn() -> Kernel) = match which {
        Known::E(2) => (0, || eis_kernel(2)),
        Known::E(4) => (1, || eis_kernel(4)),
        Known::E(6) => (2, || eis_kernel(6)),
        Known::E(8) => (3, || eis_kernel(8)),
        Known::E(10) => (4, || eis_kernel(10)),
        Known::E(14) => (5, || eis_kernel(14)),
        Known::E(0) => (6, || Kernel::from_series(&QSeries::one(0), TailBound::Finite)),
        Known::J => (7, || Kernel::from_series(&jfunction(KERNEL_TRUNC), TailBound::JCoeff)),
        Known::Delta => {
            (8, || Kernel::from_series(&delta(KERNEL_TRUNC), TailBound::EtaProduct { power: 24, shift: 1 }))
        }
        Known::E(k) => panic!("no cached kernel for E_{k}"),
    };
    CELLS[slot].get_or_init(build)
}

fn eis_kernel(k: i64) -> Kernel {
    Kernel::from_series(&eisenstein(k, KERNEL_TRUNC).expect("even weight"), TailBound::EisensteinCoeff { k })
}

/// `q^n` at the ball `tau`, with a relative rounding allowance and the
/// perturbation caused by the radius of `tau`.
struct QPow {
    value: Complex64,
    abs: f64,
    rel_round: f64,
    pert: f64,
}

fn q_pow(n: i64, tau: &CertValue) -> QPow {
    if n == 0 {
        return QPow { value: Complex64::new(1.0, 0.0), abs: 1.0, rel_round: 0.0, pert: 0.0 };
    }
    let nf = n as f64;
    let (x, y) = (tau.value.re, tau.value.im);
    let arg = 2.0 * PI * nf * x;
    let mag_arg = -2.0 * PI * nf * y;
    let abs = mag_arg.exp();
    let value = Complex64::from_polar(abs, arg);
    let rel_round = (6.0 * (arg.abs() + mag_arg.abs()) + 10.0) * U;
    let pert = abs * (2.0 * PI * nf.abs() * tau.err).exp_m1();
    QPow { value, abs, rel_round, pert }
}

fn check_height(tau: &CertValue) -> Result<f64> {
    let h = tau.value.im - tau.err;
    if h < MIN_HEIGHT {
        return Err(Error::OutsideRegion(format!("Im(tau) = {} below {MIN_HEIGHT}", tau.value.im)));
    }
    Ok(h)
}

pub(crate) fn eval_coeffs(lead: i64, coeffs: &[f64], trunc: i64, tau: &CertValue, tail: TailBound) -> Result<CertValue> {
    let height = check_height(tau)?;
    let r = up((-2.0 * PI * height).exp());
    let nterms = coeffs.iter().filter(|a| **a != 0.0).count() as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut round = 0.0;
    let mut pert = 0.0;
    for (i, &a) in coeffs.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let q = q_pow(lead + i as i64, tau);
        sum += q.value * a;
        let mag = a.abs() * q.abs;
        let conv = if a.fract() == 0.0 && a.abs() < 9e15 { 0.0 } else { U };
        round += mag * (q.rel_round + conv + (nterms - 1.0) * 2.0 * U);
        pert += a.abs() * q.pert;
    }
    let t = tail_value(tail, trunc, r, height)?;
    Ok(CertValue::new(sum, up(up(round) + up(pert) + t)))
}

/// Certified value of `s` at `tau` (`Im tau >= 0.4`).
pub fn eval_series(s: &QSeries, tau: Complex64, tail: TailBound) -> Result<CertValue> {
    eval_series_ball(s, &CertValue::exact(tau), tail)
}

/// As [`eval_series`] with `tau` known only up to a radius.
pub fn eval_series_ball(s: &QSeries, tau: &CertValue, tail: TailBound) -> Result<CertValue> {
    Kernel::from_series(s, tail).eval(tau)
}

/// `Delta(tau) = q (sum_k (-1)^k q^{k(3k-1)/2})^24`, summing `|k| <= terms`.
pub fn eval_delta_eta(tau: Complex64, terms: usize) -> Result<CertValue> {
    eval_delta_eta_ball(&CertValue::exact(tau), terms)
}

pub fn eval_delta_eta_ball(tau: &CertValue, terms: usize) -> Result<CertValue> {
    let height = check_height(tau)?;
    let r = up((-2.0 * PI * height).exp());
    let kk = terms as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut round = 0.0;
    let mut pert = 0.0;
    for k in -kk..=kk {
        let e = k * (3 * k - 1) / 2;
        let q = q_pow(e, tau);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += q.value * sign;
        round += q.abs * (q.rel_round + (2.0 * kk as f64 + 4.0) * U);
        pert += q.pert;
    }
    // exponents k(3k +- 1)/2 for k > terms are distinct and at least (K+1)(3K+2)/2
    let e0 = ((kk + 1) * (3 * kk + 2) / 2) as f64;
    let rem = up(2.0 * (e0 * r.ln()).exp() / (1.0 - r));
    let phi = CertValue::new(sum, up(up(round) + up(pert) + rem));
    let q1 = q_pow(1, tau);
    let q = CertValue::new(q1.value, up(q1.abs * q1.rel_round + q1.pert));
    Ok(q.mul(&phi.powi(24)))
}

/// `E_k` at a ball `tau` via the cached kernel.
pub fn eval_eisenstein(k: i64, tau: &CertValue) -> Result<CertValue> {
    if !matches!(k, 0 | 2 | 4 | 6 | 8 | 10 | 14) {
        let s = eisenstein(k, KERNEL_TRUNC)?;
        return eval_series_ball(&s, tau, TailBound::EisensteinCoeff { k });
    }
    kernel(Known::E(k)).eval(tau)
}

/// `j` at a ball `tau` via the cached kernel.
pub fn eval_j(tau: &CertValue) -> Result<CertValue> {
    kernel(Known::J).eval(tau)
}

/// Real ball for `|q|` at height `y`.
pub fn q_abs(y: f64) -> CertReal {
    CertReal::rounded((-2.0 * PI * y).exp()).widen(2.0 * PI * y * U * (-2.0 * PI * y).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::QSeries;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_series_is_exact() {
        let v = eval_series(&QSeries::one(3), c(0.1, 0.7), TailBound::Finite).unwrap();
        assert_eq!(v.value, c(1.0, 0.0));
        assert_eq!(v.err, 0.0);
    }

    #[test]
    fn height_is_enforced() {
        assert!(matches!(
            eval_series(&QSeries::one(3), c(0.0, 0.3), TailBound::Finite),
            Err(Error::OutsideRegion(_))
        ));
    }

    #[test]
    fn delta_at_i() {
        let d = eval_delta_eta(c(0.0, 1.0), ETA_TERMS).unwrap();
        assert!((d.value.re - 0.00178537).abs() < 1e-6);
        assert!(d.value.im.abs() <= d.err);
        assert!(d.err < 1e-15);
        let d2 = eval_series(&delta(KERNEL_TRUNC), c(0.0, 1.0), TailBound::EtaProduct { power: 24, shift: 1 }).unwrap();
        assert!((d.value - d2.value).norm() <= d.err + d2.err);
    }

    #[test]
    fn j_at_i_and_rho() {
        let j = eval_j(&CertValue::exact(c(0.0, 1.0))).unwrap();
        assert!((j.value.re - 1728.0).abs() <= j.err + 1e-9);
        let rho = c(-0.5, 3f64.sqrt() / 2.0);
        let j = eval_j(&CertValue::exact(rho)).unwrap();
        assert!(j.value.norm() < 1e-8, "{j:?}");
    }

    #[test]
    fn tails_reject_slow_cases() {
        assert!(matches!(j_tail_bound(6, 0.4), Err(Error::DomainError(_))));
        assert!(j_tail_bound(7, 0.4).is_ok());
        assert!(tail_value(TailBound::Geometric { c: 1.0, ratio: 20.0 }, 10, 0.06, 0.45).is_err());
        assert!(tail_value(TailBound::EisensteinCoeff { k: 14 }, 2, 0.08, 0.4).is_err());
    }

    #[test]
    fn j_tail_dominates_true_tail() {
        let j = jfunction(80);
        for (m, a) in [(5i64, 0.75), (7, 0.65), (12, 0.5)] {
            let bound = j_tail_bound(m, a).unwrap();
            let r = (-2.0 * PI * a).exp();
            let true_tail: f64 = (m + 1..=80).map(|n| j.coeff(n).unwrap().to_f64().unwrap() * r.powi(n as i32)).sum();
            assert!(true_tail <= bound, "M={m} a={a}: {true_tail} > {bound}");
        }
    }
}
