use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::QSeries;
use crate::error::{Error, Result};

fn bernoulli_cache() -> &'static Mutex<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

/// Bernoulli number `B_n` (convention `B_1 = -1/2`), cached across calls.
pub fn bernoulli(n: usize) -> BigRational {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let m = cache.len();
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * &binom;
            }
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        cache.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    cache[n].clone()
}

/// `sigma_{e}(n)` for `1 <= n <= big_n`, index 0 unused.
fn divisor_sums(e: u32, big_n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); big_n + 1];
    for d in 1..=big_n {
        let p: BigInt = BigInt::from(d).pow(e);
        let mut n = d;
        while n <= big_n {
            out[n] += &p;
            n += d;
        }
    }
    out
}

/// Normalized Eisenstein series `E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n`
/// to `O(q^{trunc+1})`. `k = 0` gives the constant 1.
pub fn eisenstein(k: i64, trunc: i64) -> Result<QSeries> {
    if k < 0 || k % 2 != 0 {
        return Err(Error::UnsupportedWeight(k));
    }
    if k == 0 {
        return Ok(QSeries::one(trunc));
    }
    let b = bernoulli(k as usize);
    let gamma = BigRational::from_integer(BigInt::from(2 * k)) / b;
    let n = trunc.max(0) as usize;
    let sig = divisor_sums((k - 1) as u32, n);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(BigRational::one());
    for s in sig.into_iter().skip(1) {
        coeffs.push(-(&gamma * s));
    }
    Ok(QSeries::new(0, coeffs, trunc))
}

/// `prod_{n>=1} (1 - q^n)^power` to `O(q^{trunc+1})`, starting from the
/// pentagonal number expansion.
pub fn eta_product(power: u64, trunc: i64) -> QSeries {
    let n = trunc.max(0);
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = BigInt::one();
    let mut j: i64 = 1;
    loop {
        let a = j * (3 * j - 1) / 2;
        if a > n {
            break;
        }
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        coeffs[a as usize] += &sign;
        let b = j * (3 * j + 1) / 2;
        if b <= n {
            coeffs[b as usize] += &sign;
        }
        j += 1;
    }
    QSeries::from_ints(0, &coeffs, trunc).pow(power)
}

/// The discriminant `q prod (1 - q^n)^24` to `O(q^{trunc+1})`.
pub fn delta(trunc: i64) -> QSeries {
    eta_product(24, trunc - 1).shift(1)
}

/// `(E_4^3 - E_6^2) / 1728`, an independent route to the discriminant.
pub fn delta_from_eisenstein(trunc: i64) -> QSeries {
    let e4 = eisenstein(4, trunc).expect("weight 4");
    let e6 = eisenstein(6, trunc).expect("weight 6");
    let diff = &e4.pow(3) - &e6.pow(2);
    diff.scale(&BigRational::new(BigInt::one(), BigInt::from(1728)))
}

/// Klein's `j = E_4^3 / Delta = q^{-1} + 744 + 196884 q + ...` to `O(q^{trunc+1})`.
pub fn jfunction(trunc: i64) -> QSeries {
    let e4 = eisenstein(4, trunc + 1).expect("weight 4");
    let d = delta(trunc + 2);
    let j = &e4.pow(3) * &d.recip().expect("delta has leading coefficient 1");
    j.truncate(trunc)
}

/// Residuals of the three derivative identities for `E_2`, `E_4` and `Delta`.
#[derive(Clone, Debug)]
pub struct RamanujanResiduals {
    pub e2: QSeries,
    pub e4: QSeries,
    pub delta: QSeries,
}

impl RamanujanResiduals {
    pub fn all_zero(&self) -> bool {
        self.e2.is_zero() && self.e4.is_zero() && self.delta.is_zero()
    }
}

/// Residuals of `q E_2' = (E_2^2 - E_4)/12`, `q E_4' = (E_2 E_4 - E_6)/3`
/// and `q Delta' = E_2 Delta`, each to `O(q^{trunc+1})`.
pub fn ramanujan_derivative_check(trunc: i64) -> RamanujanResiduals {
    let e2 = eisenstein(2, trunc).expect("weight 2");
    let e4 = eisenstein(4, trunc).expect("weight 4");
    let e6 = eisenstein(6, trunc).expect("weight 6");
    let d = delta(trunc);
    let third = |s: QSeries, den: i64| s.scale(&BigRational::new(BigInt::one(), BigInt::from(den)));
    RamanujanResiduals {
        e2: &e2.q_derivative() - &third(&(&e2 * &e2) - &e4, 12),
        e4: &e4.q_derivative() - &third(&(&e2 * &e4) - &e6, 3),
        delta: &d.q_derivative() - &(&e2 * &d),
    }
}
