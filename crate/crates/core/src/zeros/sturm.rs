//! Real root isolation over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::poly::IntPolynomial;

/// `(lo, hi]` containing exactly one root, or the exact root when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn point(x: BigRational) -> Self {
        RootInterval { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    /// Closed-interval intersection test.
    pub fn meets(&self, lo: &BigRational, hi: &BigRational) -> bool {
        &self.lo <= hi && lo <= &self.hi
    }
}

impl Serialize for RootInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootInterval", 3)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("approx", &self.midpoint())?;
        st.end()
    }
}

/// Divide by the positive content without touching the sign.
fn normalize(p: &IntPolynomial) -> IntPolynomial {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    IntPolynomial::new(p.coeffs().iter().map(|a| a / &c).collect())
}

/// Sturm sequence of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Self {
        let sf = p.squarefree_part();
        let mut chain = vec![sf.clone()];
        if sf.degree() >= 1 {
            chain.push(normalize(&sf.derivative()));
            loop {
                let n = chain.len();
                let r = chain[n - 2].pseudo_rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(normalize(&r.neg()));
            }
        }
        SturmChain { chain }
    }

    pub fn squarefree(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false).saturating_sub(self.variations_at_infinity(true))
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Isolating intervals for the distinct real roots of `p` in `[lo, hi]`, in
/// increasing order.
pub fn sturm_isolate(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Vec<RootInterval> {
    let chain = SturmChain::new(p);
    isolate_with(&chain, lo, hi)
}

pub fn isolate_with(chain: &SturmChain, lo: &BigRational, hi: &BigRational) -> Vec<RootInterval> {
    let sf = chain.squarefree();
    let mut out = Vec::new();
    if sf.degree() < 1 || lo > hi {
        return out;
    }
    if sf.sign_at(lo) == 0 {
        out.push(RootInterval::point(lo.clone()));
    }
    let mut stack = vec![(lo.clone(), hi.clone(), chain.variations_at(lo), chain.variations_at(hi))];
    while let Some((a, b, va, vb)) = stack.pop() {
        let n = va.saturating_sub(vb);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(if sf.sign_at(&b) == 0 { RootInterval::point(b) } else { RootInterval { lo: a, hi: b } });
            continue;
        }
        let m = (&a + &b) * half();
        let vm = chain.variations_at(&m);
        stack.push((m.clone(), b, vm, vb));
        stack.push((a, m, va, vm));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo).then(x.hi.cmp(&y.hi)));
    out
}

/// Shrink an isolating interval of the square-free `sf` to width at most `width`.
pub fn refine(sf: &IntPolynomial, iv: &RootInterval, width: &BigRational) -> RootInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let (mut a, mut b) = (iv.lo.clone(), iv.hi.clone());
    let mut sa = sf.sign_at(&a);
    let sb = sf.sign_at(&b);
    if sb == 0 {
        return RootInterval::point(b);
    }
    if sa == 0 {
        // the left end is a different root; step inside first
        let chain = SturmChain::new(sf);
        let vb = chain.variations_at(&b);
        loop {
            let m = (&a + &b) * half();
            if chain.variations_at(&m) > vb {
                a = m;
                sa = sf.sign_at(&a);
                if sa != 0 {
                    break;
                }
            } else {
                b = m;
            }
        }
    }
    while &b - &a > *width {
        let m = (&a + &b) * half();
        let sm = sf.sign_at(&m);
        if sm == 0 {
            return RootInterval::point(m);
        }
        if sm == sa {
            a = m;
        } else {
            b = m;
        }
    }
    RootInterval { lo: a, hi: b }
}

/// If `p` changes sign `deg p` times across the increasing `points`, every
/// root is real and simple and each gap holds exactly one.
pub fn sign_change_certificate(p: &IntPolynomial, points: &[BigRational]) -> Option<Vec<RootInterval>> {
    let d = p.degree();
    if d < 1 {
        return Some(Vec::new());
    }
    let signs: Vec<i32> = points.iter().map(|x| p.sign_at(x)).collect();
    if signs.contains(&0) || points.windows(2).any(|w| w[0] >= w[1]) {
        return None;
    }
    let out: Vec<RootInterval> = signs
        .windows(2)
        .zip(points.windows(2))
        .filter(|(s, _)| s[0] != s[1])
        .map(|(_, x)| RootInterval { lo: x[0].clone(), hi: x[1].clone() })
        .collect();
    (out.len() as i64 == d).then_some(out)
}

/// Real-root census relative to an interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OffInterval {
    pub real_total: usize,
    pub real_inside: usize,
    pub real_outside: usize,
    pub complex_pairs: usize,
    /// `deg p - deg squarefree(p)`.
    pub squarefree_defect: usize,
}

/// Count real roots of `p` outside `[lo, hi]` and pairs of non-real roots,
/// all counted without multiplicity.
pub fn count_off(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> OffInterval {
    let chain = SturmChain::new(p);
    let sf = chain.squarefree();
    let total = chain.count_real();
    let inside = chain.count(lo, hi) + usize::from(sf.sign_at(lo) == 0);
    let dsf = sf.degree().max(0) as usize;
    OffInterval {
        real_total: total,
        real_inside: inside,
        real_outside: total - inside,
        complex_pairs: (dsf - total) / 2,
        squarefree_defect: (p.degree() - sf.degree()).max(0) as usize,
    }
}

/// [`count_off`] for `[0, 1728]`, the image of the arc under `j`.
pub fn count_off_interval(p: &IntPolynomial) -> OffInterval {
    count_off(p, &BigRational::zero(), &BigRational::from_integer(1728.into()))
}

pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn linear() {
        let iv = sturm_isolate(&p(&[-1, 1]), &q(0), &q(1728));
        assert_eq!(iv.len(), 1);
        assert!(iv[0].meets(&q(1), &q(1)));
    }

    #[test]
    fn counts() {
        assert_eq!(count_off_interval(&p(&[1, 0, 1])), OffInterval {
            real_total: 0,
            real_inside: 0,
            real_outside: 0,
            complex_pairs: 1,
            squarefree_defect: 0
        });
        // (t + 1)(t - 2)(t - 2000)
        let f = p(&[-1, 0, 0, 1]).mul(&p(&[0, 1])); // t^4 - t, roots 0 and 1 plus a complex pair
        let c = count_off_interval(&f);
        assert_eq!((c.real_total, c.real_inside, c.complex_pairs), (2, 2, 1));
        let g = p(&[1, 1]).mul(&p(&[-2, 1])).mul(&p(&[-2000, 1]));
        let c = count_off_interval(&g);
        assert_eq!((c.real_inside, c.real_outside), (1, 2));
    }

    #[test]
    fn repeated_roots() {
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[-5, 1]));
        let iv = sturm_isolate(&f, &q(0), &q(10));
        assert_eq!(iv.len(), 2);
        assert_eq!(count_off_interval(&f).squarefree_defect, 1);
    }

    #[test]
    fn endpoint_roots_are_exact() {
        let f = p(&[0, -1728, 1]); // t (t - 1728)
        let iv = sturm_isolate(&f, &q(0), &q(1728));
        assert_eq!(iv, vec![RootInterval::point(q(0)), RootInterval::point(q(1728))]);
    }

    #[test]
    fn refine_and_certificate() {
        let f = p(&[-2, 0, 1]);
        let iv = sturm_isolate(&f, &q(0), &q(2));
        let r = refine(&f, &iv[0], &BigRational::new(1.into(), 1_000_000.into()));
        assert!((r.midpoint() - 2f64.sqrt()).abs() < 1e-6);
        let pts = [q(-2), q(0), q(2)];
        let c = sign_change_certificate(&f, &pts).unwrap();
        assert_eq!(c.len(), 2);
        assert!(sign_change_certificate(&f, &[q(0), q(2)]).is_none());
    }

    #[test]
    fn chain_ignores_negative_leading_coefficient() {
        let f = p(&[2, 0, -1]); // -(t^2 - 2)
        assert_eq!(sturm_isolate(&f, &q(-2), &q(2)).len(), 2);
    }
}
