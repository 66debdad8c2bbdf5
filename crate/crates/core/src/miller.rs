//! Miller basis `g_{k,m} = q^m + O(q^{ell+1})` and Faber polynomials.
//!
//! Two independent routes produce `F_{k,m}`:
//!
//! * [`miller_basis`] row-reduces the raw basis `e_{k,m} = Delta^ell E_{k'} j^{ell-m}`
//!   and carries the same row operations on the polynomials `t^{ell-m}`;
//! * [`faber_polynomial`] reads `F_{k,m}(j)` off the polar part of
//!   `q^m / (Delta^ell E_{k'})`, which is all that is needed for large weights.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formid::{split_weight, FormId};
use crate::poly::IntPolynomial;
use crate::qseries::{delta, eisenstein, jfunction, QSeries};

/// A Miller basis element with its Faber polynomial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MillerForm {
    pub id: FormId,
    pub series: QSeries,
    pub faber: IntPolynomial,
}

/// `Delta^ell E_{k'}` with at least `rel` known terms past its lead.
fn delta_eis_factor(ell: i64, kprime: i64, rel: i64) -> QSeries {
    let d = delta(rel + 1).pow(ell as u64);
    let e = eisenstein(kprime, rel).expect("kprime is a supported weight");
    &d * &e
}

/// `e_{k,m} = Delta^ell E_{k'} j^{ell-m}` to `O(q^{trunc+1})`.
pub fn raw_basis(id: FormId, trunc: i64) -> Result<QSeries> {
    if id.m < 0 || id.m > id.ell {
        return Err(Error::BadIndex { m: id.m, ell: id.ell });
    }
    let rel = (trunc - id.m).max(0);
    let base = delta_eis_factor(id.ell, id.kprime, rel);
    let jp = jfunction(rel - 1).pow((id.ell - id.m) as u64);
    Ok((&base * &jp).truncate(trunc))
}

/// Evaluate an integer polynomial at a series by summing precomputed powers.
fn poly_of_series(p: &IntPolynomial, powers: &[QSeries]) -> QSeries {
    let trunc = powers.iter().map(|s| s.trunc()).min().unwrap_or(0);
    let mut acc = QSeries::zero(trunc);
    for (i, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &powers[i].scale(&BigRational::from_integer(c.clone()));
        }
    }
    acc
}

/// `j^0, ..., j^d`, each known at least up to `q^upto`.
fn j_powers(d: i64, upto: i64) -> Vec<QSeries> {
    let j = jfunction(upto + d.max(1) - 1);
    let mut out = Vec::with_capacity(d as usize + 1);
    out.push(QSeries::one(upto + d));
    for i in 1..=d as usize {
        let next = &out[i - 1] * &j;
        out.push(next);
    }
    out.into_iter().map(|s| s.truncate(upto)).collect()
}

/// `Delta^ell E_{k'} F(j)` to `O(q^{trunc+1})`.
pub fn reconstruct(id: FormId, faber: &IntPolynomial, trunc: i64) -> QSeries {
    let deg = faber.degree().max(0);
    let upto = trunc - id.ell;
    let base = delta_eis_factor(id.ell, id.kprime, upto + deg);
    let fj = poly_of_series(faber, &j_powers(deg, upto));
    (&base * &fj).truncate(trunc)
}

/// Elimination order used by [`miller_basis_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    /// Reduce `e_{k,m}` against the already reduced `g_{k,n}`, `n > m`.
    Reduced,
    /// Reduce `e_{k,m}` directly against the raw `e_{k,n}`, lowest `n` first.
    Raw,
}

/// Miller basis of weight `k` for `m = 1..=ell` (and `m = 0` when
/// `include_gap`), series to `O(q^{trunc+1})`.
pub fn miller_basis(k: i64, trunc: i64, include_gap: bool) -> Result<Vec<MillerForm>> {
    miller_basis_with(k, trunc, include_gap, Pivot::Reduced)
}

pub fn miller_basis_with(k: i64, trunc: i64, include_gap: bool, pivot: Pivot) -> Result<Vec<MillerForm>> {
    let (ell, _) = split_weight(k)?;
    let trunc = trunc.max(ell + 1);
    let ids: Vec<FormId> = (0..=ell).map(|m| FormId::new(k, m)).collect::<Result<_>>()?;
    let raw: Vec<QSeries> = ids.iter().map(|&id| raw_basis(id, trunc)).collect::<Result<_>>()?;
    // polynomials carried as rational coefficient vectors of t^0..t^ell
    let mono = |m: i64| {
        let mut v = vec![BigRational::zero(); ell as usize + 1];
        v[(ell - m) as usize] = BigRational::one();
        v
    };
    let axpy = |y: &mut Vec<BigRational>, c: &BigRational, x: &[BigRational]| {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi -= c * xi;
        }
    };

    let mut rows: Vec<Option<(QSeries, Vec<BigRational>)>> = vec![None; ell as usize + 1];
    for m in (0..=ell).rev() {
        let mut s = raw[m as usize].clone();
        let mut p = mono(m);
        for n in m + 1..=ell {
            let c = s.coeff(n).expect("trunc > ell");
            if c.is_zero() {
                continue;
            }
            let (other_s, other_p) = match pivot {
                Pivot::Reduced => {
                    let (gs, gp) = rows[n as usize].as_ref().expect("higher rows first");
                    (gs.clone(), gp.clone())
                }
                Pivot::Raw => (raw[n as usize].clone(), mono(n)),
            };
            s = &s - &other_s.scale(&c);
            axpy(&mut p, &c, &other_p);
        }
        rows[m as usize] = Some((s, p));
    }

    let first = if include_gap { 0 } else { 1 };
    (first..=ell)
        .map(|m| {
            let (series, p) = rows[m as usize].take().expect("row built");
            let faber = integral_poly(&p)?;
            Ok(MillerForm { id: ids[m as usize], series, faber })
        })
        .collect()
}

fn integral_poly(p: &[BigRational]) -> Result<IntPolynomial> {
    p.iter()
        .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NonIntegral(c.to_string())) })
        .collect::<Result<Vec<_>>>()
        .map(IntPolynomial::new)
}

/// The polynomial `F` with `f = Delta^ell E_{k'} F(j)`, found by cancelling the
/// lowest term of `f` against `e_{k,n}` for `n = ord(f), ..., ell`.
pub fn faber_of(form: &QSeries, id: FormId) -> Result<IntPolynomial> {
    let ell = id.ell;
    if form.trunc() < ell + 1 {
        return Err(Error::NotInSpace {
            k: id.k,
            exponent: form.trunc() + 1,
            residual: "series too short to decide".into(),
        });
    }
    let mut r = form.clone();
    let mut p = vec![BigRational::zero(); ell as usize + 1];
    if r.lead() < 0 {
        return Err(Error::NotInSpace { k: id.k, exponent: r.lead(), residual: r.coeffs()[0].to_string() });
    }
    for n in r.lead().max(0)..=ell {
        let c = r.coeff(n).expect("n <= trunc");
        if c.is_zero() {
            continue;
        }
        let e = raw_basis(FormId { m: n, ..id }, form.trunc())?;
        r = &r - &e.scale(&c);
        p[(ell - n) as usize] += c;
    }
    if !r.is_zero() {
        return Err(Error::NotInSpace {
            k: id.k,
            exponent: r.lead(),
            residual: r.leading_coefficient().map(|c| c.to_string()).unwrap_or_default(),
        });
    }
    integral_poly(&p)
}

/// `F_{k,m}` from the polar part of `q^m / (Delta^ell E_{k'})`: subtract
/// `c j^d` for the top remaining pole until only `O(q)` is left.
pub fn faber_polynomial(id: FormId) -> Result<IntPolynomial> {
    if id.m < 0 || id.m > id.ell {
        return Err(Error::BadIndex { m: id.m, ell: id.ell });
    }
    let d = id.degree();
    let base = delta_eis_factor(id.ell, id.kprime, d);
    // q^m / (Delta^ell E) = q^{-d} (1 + ...), known through q^0
    let polar = base.recip()?.shift(id.m).truncate(0);
    let powers = j_powers(d, 0);
    let mut r = polar.integer_coeffs().ok_or_else(|| Error::NonIntegral("polar part".into()))?;
    // r[i] is the coefficient of q^{i-d}
    let mut f = vec![BigInt::zero(); d as usize + 1];
    for deg in (0..=d).rev() {
        let idx = (d - deg) as usize;
        let c = r.get(idx).cloned().unwrap_or_default();
        if c.is_zero() {
            continue;
        }
        let jp = powers[deg as usize].integer_coeffs().expect("j has integer coefficients");
        // j^deg starts at q^{-deg}, i.e. index d - deg of r
        for (t, a) in jp.iter().enumerate() {
            if let Some(slot) = r.get_mut(idx + t) {
                *slot -= &c * a;
            }
        }
        f[deg as usize] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    Ok(IntPolynomial::new(f))
}

/// `g_{k,m}` via [`faber_polynomial`], with its series to `O(q^{trunc+1})`.
/// For `trunc <= ell` the series is `q^m` without further work; otherwise it
/// is rebuilt from `F` and checked against the defining shape.
pub fn miller_form(id: FormId, trunc: i64) -> Result<MillerForm> {
    let faber = faber_polynomial(id)?;
    let series = if trunc <= id.ell {
        QSeries::monomial(id.m, BigRational::one(), trunc.max(id.m))
    } else {
        let s = reconstruct(id, &faber, trunc);
        let shape_ok = s.lead() == id.m
            && s.leading_coefficient().is_some_and(|c| c.is_one())
            && (id.m + 1..=id.ell).all(|n| s.coeff(n).is_some_and(|c| c.is_zero()));
        if !shape_ok {
            return Err(Error::CertificateFailure(format!("{id}: rebuilt series is not q^m + O(q^(ell+1))")));
        }
        s
    };
    Ok(MillerForm { id, series, faber })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(k: i64, m: i64) -> FormId {
        FormId::new(k, m).unwrap()
    }

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn raw_basis_examples() {
        assert_eq!(raw_basis(id(12, 1), 4).unwrap(), delta(4));
        let e = raw_basis(id(16, 1), 2).unwrap();
        assert_eq!(e, QSeries::from_ints(1, &[1, 216], 2));
        for ell in 0..=6 {
            for kp in crate::formid::KPRIMES {
                let k = 12 * ell + kp;
                if k == 0 {
                    continue;
                }
                for m in 0..=ell {
                    let e = raw_basis(id(k, m), ell + 2).unwrap();
                    assert_eq!(e.lead(), m);
                    assert!(e.leading_coefficient().unwrap().is_one());
                    assert_eq!(e.trunc(), ell + 2);
                }
            }
        }
        assert!(matches!(raw_basis(FormId { k: 12, ell: 1, kprime: 0, m: 2 }, 3), Err(Error::BadIndex { .. })));
    }

    #[test]
    fn weight_12() {
        let b = miller_basis(12, 4, false).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].series, delta(4));
        assert_eq!(b[0].faber, IntPolynomial::one());
    }

    #[test]
    fn weight_48_cubic() {
        let expect = IntPolynomial::from_i64(&[-24903328, 931860, -2136, 1]);
        let b = miller_basis(48, 6, false).unwrap();
        assert_eq!(b[0].faber, expect);
        assert_eq!(faber_polynomial(id(48, 1)).unwrap(), expect);
        assert_eq!(faber_of(&b[0].series, id(48, 1)).unwrap(), expect);
    }

    #[test]
    fn weight_124_coefficients() {
        // Frozen from an independent integer-only elimination.
        let f = faber_polynomial(id(124, 1)).unwrap();
        let expect = [
            "-21437679033112542661656",
            "5718177043459037019999",
            "-188671766710386398400",
            "1942806055074346280",
            "-8750844530401680",
            "20207360640402",
            "-25703594848",
            "18182340",
            "-6696",
            "1",
        ];
        assert_eq!(f.coeffs(), expect.map(big).as_slice());
        assert_eq!(miller_basis(124, 12, false).unwrap()[0].faber, f);
    }

    #[test]
    fn faber_of_trivial_forms() {
        let id22 = id(22, 1);
        let f = &(&eisenstein(4, 6).unwrap() * &eisenstein(6, 6).unwrap()) * &delta(6);
        assert_eq!(faber_of(&f, id22).unwrap(), IntPolynomial::one());
        let base = raw_basis(id(40, 3), 8).unwrap();
        assert_eq!(faber_of(&base, id(40, 3)).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn faber_of_rejects_foreign_series() {
        // weight 4 series tested against weight 16
        let e4 = eisenstein(4, 6).unwrap();
        assert!(matches!(faber_of(&e4, id(16, 0)), Err(Error::NotInSpace { .. })));
    }

    #[test]
    fn pivot_orders_agree() {
        for k in [24, 36, 52, 70, 98] {
            let a = miller_basis_with(k, 14, true, Pivot::Reduced).unwrap();
            let b = miller_basis_with(k, 14, true, Pivot::Raw).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn fast_route_matches_elimination() {
        for k in [26, 60, 94, 120] {
            for g in miller_basis(k, 0, true).unwrap() {
                assert_eq!(faber_polynomial(g.id).unwrap(), g.faber, "{}", g.id);
                let fast = miller_form(g.id, g.series.trunc()).unwrap();
                assert_eq!(fast.series, g.series);
            }
        }
    }
}
