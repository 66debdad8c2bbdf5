//! `Delta` on the arc and on horizontal lines.

use num_complex::Complex64;

use super::{dec, exact_dec, exp_ball, max_by_hi, min_by_lo, pi, BoundLedgerEntry, Method, Relation, SuiteReport};
use crate::error::{Error, Result};
use crate::evalnum::{
    arc_functions, arc_grid, eval_delta_eta, lemniscate_constants, up, ArcPoint, CertReal, ETA_TERMS, U,
};

const GROUP: &str = "delta";

fn entry(name: &str, claimed: f64, computed: CertReal, relation: Relation, method: Method) -> BoundLedgerEntry {
    BoundLedgerEntry::check(GROUP, name, claimed, computed, relation, method)
}

fn r_of(y: f64) -> CertReal {
    exp_ball(&pi().scale(-2.0 * y))
}

/// `r (1 - r - r^2 - 2 r^2 / (1 - r))^24` with `r = e^{-2 pi y}`; a lower
/// bound for `|Delta(x + y i)|` when `r <= 1/3`.
pub fn pentagonal_lower(y: f64) -> Result<CertReal> {
    let r = r_of(y);
    if r.hi() > 1.0 / 3.0 {
        return Err(Error::DomainError(format!("pentagonal lower bound needs e^(-2 pi y) <= 1/3 (y = {y})")));
    }
    let one = CertReal::exact(1.0);
    let r2 = r.mul(&r);
    let inner = one.sub(&r).sub(&r2).sub(&r2.scale(2.0).div(&one.sub(&r))?);
    Ok(r.mul(&inner.powi(24)))
}

/// `r (1 + 2 r + 2 r^4 / (1 - r^2))^24`, an upper bound for `|Delta(x + y i)|`.
pub fn pentagonal_upper(y: f64) -> Result<CertReal> {
    let r = r_of(y);
    let one = CertReal::exact(1.0);
    let r2 = r.mul(&r);
    let inner = one.add(&r.scale(2.0)).add(&r2.mul(&r2).scale(2.0).div(&one.sub(&r2))?);
    Ok(r.mul(&inner.powi(24)))
}

fn delta_abs(x: f64, y: f64) -> Result<CertReal> {
    let d = eval_delta_eta(Complex64::new(x, y), ETA_TERMS)?;
    Ok(CertReal::new(d.value.norm(), up(d.err + d.value.norm() * U)))
}

/// Values and extrema of `Delta` on the arc, the pentagonal bounds on lines,
/// and the ratio bounds `|Delta(e^{i theta}) / Delta(x + a i)| < 1/2, 7/10`.
pub fn delta_ledger() -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    let w = |tol| Relation::Within { tol };
    let lem = lemniscate_constants();
    let p = pi();

    let at_i = arc_functions(ArcPoint::new(ArcPoint::START)?)?;
    let at_rho = arc_functions(ArcPoint::new(ArcPoint::END)?)?;
    let di = at_i.delta.neg();
    let drho = at_rho.delta.neg();
    let di_closed = lem.varpi.div(&dec(2f64.sqrt()).mul(&p))?.powi(12);
    let drho_closed = lem.varpi_prime.div(&p)?.powi(12).scale(27.0 / 256.0);
    r.entries.push(entry("|Delta(i)|", 0.00178537, di, w(1e-7), Method::ClosedForm));
    r.entries.push(entry("|Delta(i)| = (varpi / (sqrt 2 pi))^12", 0.00178537, di_closed, w(1e-7), Method::ClosedForm));
    r.entries.push(entry("|Delta(rho)|", 0.00480514, drho, w(1e-7), Method::ClosedForm));
    r.entries.push(entry("|Delta(rho)| = 27/256 (varpi' / pi)^12", 0.00480514, drho_closed, w(1e-7), Method::ClosedForm));
    r.entries.push(entry("|Delta(i)| two routes agree", 0.0, di.sub(&di_closed), w(1e-12), Method::ClosedForm));
    r.entries.push(entry("|Delta(rho)| two routes agree", 0.0, drho.sub(&drho_closed), w(1e-12), Method::ClosedForm));

    // delta < 0 and d delta / d theta = -2 pi e2 delta < 0 inside the arc, so
    // |Delta| runs monotonically from |Delta(i)| to |Delta(rho)|
    let grid = arc_grid(1e-3);
    let vals: Vec<_> = grid.iter().map(|&pt| arc_functions(pt)).collect::<Result<_>>()?;
    let sampled = Method::Sampled { points: vals.len() };
    let neg_delta = min_by_lo(vals.iter().map(|v| v.delta.neg())).expect("points");
    r.entries.push(entry("-delta > 0 on the arc", 0.0, neg_delta, Relation::Gt, sampled));
    let inner = &vals[1..vals.len() - 1];
    let slope = min_by_lo(inner.iter().map(|v| p.scale(2.0).mul(&v.e2).mul(&v.delta))).expect("points");
    r.entries.push(entry(
        "-d delta/d theta = 2 pi e2 delta > 0 on the open arc",
        0.0,
        slope,
        Relation::Gt,
        Method::Sampled { points: inner.len() },
    ));
    let arc_max = max_by_hi(vals.iter().map(|v| v.delta.neg())).expect("points");
    r.diagnostics.push(entry("max |Delta| over the arc grid", 0.005, arc_max, Relation::Lt, sampled));
    r.entries.push(entry("|Delta(e^(i theta))| < 0.005", 0.005, drho, Relation::Lt, Method::ClosedForm));
    r.entries.push(entry("|Delta(e^(i theta))| < 0.00481", 0.00481, drho, Relation::Lt, Method::ClosedForm));

    // pentagonal bounds
    for (y, claim) in [(0.65, 0.01), (0.75, 0.007)] {
        let lo = pentagonal_lower(y)?;
        r.entries.push(entry(&format!("pentagonal lower bound at height {y}"), claim, lo, Relation::Gt, Method::ClosedForm));
        let ratio_claim = if y == 0.65 { 0.5 } else { 0.7 };
        let ratio = drho.div(&lo)?;
        r.entries.push(
            entry(
                &format!("|Delta(e^(i theta)) / Delta(x + {y}i)|"),
                ratio_claim,
                ratio,
                Relation::Lt,
                Method::ClosedForm,
            )
            .with_detail("|Delta(rho)| over the pentagonal lower bound"),
        );
        // 0.005 / 0.007 > 0.7, so the 0.75 route needs |Delta(rho)| < 0.00481
        let arc_bound = if y == 0.65 { 0.005 } else { 0.00481 };
        r.entries.push(BoundLedgerEntry::exact(
            GROUP,
            format!("{arc_bound} / {claim} <= {ratio_claim}"),
            ratio_claim,
            Relation::Le,
            exact_dec(arc_bound) / exact_dec(claim),
        ));
        // direct: max over the arc grid over min over an x grid
        let xs: Vec<f64> = (0..=100).map(|i| i as f64 * 0.005).collect();
        let line_min = min_by_lo(xs.iter().map(|&x| delta_abs(x, y)).collect::<Result<Vec<_>>>()?).expect("points");
        r.diagnostics.push(entry(
            &format!("sampled max ratio at height {y}"),
            ratio_claim,
            CertReal::new(arc_max.hi() / line_min.lo(), 0.0),
            Relation::Lt,
            Method::Sampled { points: xs.len() * vals.len() },
        ));
    }

    // pentagonal bounds against direct evaluation on a tau grid
    let ys = [0.5, 0.6, 0.65, 0.7, 0.75, 0.8, 0.866, 1.0, 1.25, 1.5];
    let mut lower_gap: Option<CertReal> = None;
    let mut upper_gap: Option<CertReal> = None;
    let mut count = 0;
    for &y in &ys {
        let (lo, hi) = (pentagonal_lower(y)?, pentagonal_upper(y)?);
        for i in 0..=10 {
            let d = delta_abs(i as f64 * 0.05, y)?;
            count += 1;
            lower_gap = min_by_lo(lower_gap.into_iter().chain([d.sub(&lo).scale(1.0 / lo.value)]));
            upper_gap = min_by_lo(upper_gap.into_iter().chain([hi.sub(&d).scale(1.0 / hi.value)]));
        }
    }
    let sampled = Method::Sampled { points: count };
    r.entries.push(entry(
        "pentagonal lower bound <= |Delta| on the tau grid (relative gap)",
        0.0,
        lower_gap.expect("points"),
        Relation::Ge,
        sampled,
    ));
    r.entries.push(entry(
        "|Delta| <= pentagonal upper bound on the tau grid (relative gap)",
        0.0,
        upper_gap.expect("points"),
        Relation::Ge,
        sampled,
    ));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagonal_values() {
        assert!((pentagonal_lower(0.65).unwrap().value - 0.0109693).abs() < 1e-7);
        assert!((pentagonal_lower(0.75).unwrap().value - 0.0071915).abs() < 1e-7);
        assert!((pentagonal_upper(0.65).unwrap().value - 0.037287).abs() < 1e-6);
        assert!(pentagonal_lower(0.1).is_err());
    }

    #[test]
    fn ledger_holds() {
        let r = delta_ledger().unwrap();
        assert!(r.all_satisfied(), "{:?}", r.failures());
        let e = r.find("|Delta(rho)|").unwrap();
        assert!((e.computed - 0.004805138377).abs() < 1e-10);
    }
}
