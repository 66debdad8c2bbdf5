//! Dense polynomials over the integers.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Polynomial with big-integer coefficients in ascending order. The leading
/// coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c t^n`.
    pub fn monomial(n: usize, c: BigInt) -> Self {
        let mut v = vec![BigInt::zero(); n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let (n, d) = (x.numer(), x.denom());
        BigRational::new(self.homogeneous(n, d), d.pow(self.degree().max(0) as u32))
    }

    /// `sum c_i n^i d^{deg - i}`, i.e. `d^deg p(n/d)`.
    fn homogeneous(&self, n: &BigInt, d: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        acc
    }

    /// Sign of `p(x)` as -1, 0 or 1, computed exactly.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        sign_of(&self.homogeneous(x.numer(), x.denom()))
    }

    /// Sign as `t -> +inf` (`inf = true`) or `t -> -inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> i32 {
        let s = sign_of(&self.leading());
        if positive || self.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Gcd of the coefficients, positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder `r` with `|lc(b)|^{deg a - deg b + 1} a = q b + r`.
    /// Using the absolute value keeps `r` a positive multiple of the true
    /// remainder, which Sturm sequences rely on.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "pseudo-remainder by zero");
        if self.degree() < b.degree() {
            return self.clone();
        }
        let lc = b.leading();
        let lc_abs = lc.abs();
        let db = b.degree() as usize;
        let mut r = self.coeffs.clone();
        let steps = self.degree() - b.degree() + 1;
        for _ in 0..steps {
            let dr = r.len() - 1;
            let top = r[dr].clone();
            let shift = dr - db;
            // r <- |lc| r - sign(lc) top t^shift b
            for c in r.iter_mut() {
                *c *= &lc_abs;
            }
            let factor = if lc.is_negative() { -top } else { top };
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * bc;
            }
            debug_assert!(r[dr].is_zero());
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            if r.len() < b.coeffs.len() {
                // Remaining steps would only multiply by |lc|; keep the sign
                // and skip the magnitude growth.
                break;
            }
        }
        Self::new(r)
    }

    /// Exact quotient when `other` divides `self` over the integers.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.degree() < other.degree() {
            return self.is_zero().then(Self::zero);
        }
        let mut r = self.coeffs.clone();
        let db = other.degree() as usize;
        let lc = other.leading();
        let mut q = vec![BigInt::zero(); r.len() - db];
        for shift in (0..q.len()).rev() {
            let top = &r[shift + db];
            let (qc, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in other.coeffs.iter().enumerate() {
                r[shift + i] -= &qc * bc;
            }
            q[shift] = qc;
        }
        r.iter().all(|c| c.is_zero()).then(|| Self::new(q))
    }

    /// Primitive gcd via the primitive remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.degree() <= 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part().div_exact(&g).expect("gcd divides").primitive_part()
    }

    /// Multiplicity of `x` as a root.
    pub fn root_multiplicity(&self, x: &BigRational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::new(vec![-x.numer().clone(), x.denom().clone()]);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.div_exact(&lin) {
            m += 1;
            p = q;
            if p.degree() < 1 {
                break;
            }
        }
        m
    }

    /// Human-readable form in the variable `var`, highest degree first, e.g.
    /// `t^3 - 2136t^2 + 931860t - 24903328`.
    pub fn to_pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty("t"))
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(de)?;
        v.iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}
