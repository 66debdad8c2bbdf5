//! Machine checks of the quantitative bounds behind the zero-location
//! theorem: values and extrema of `Delta`, `E_4`, `E_6` and `j` on the arc and
//! on the lines `Im tau = 0.65, 0.75`, the truncated-`j` approximations and
//! their Chebyshev/Goursat certificates, the `H` table and the constants
//! `c_1, B_1, B_2, c_2`.
//!
//! Every check produces a [`BoundLedgerEntry`]; a suite is satisfied when all
//! of its entries are. Diagnostics are recorded alongside but do not count.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evalnum::{up, CertReal, U};

pub mod chebyshev;
mod constants;
mod delta;
mod eisenstein;
mod japprox;
mod mrl;

pub use chebyshev::{goursat_int, goursat_point, goursat_transform, poly_derivative, poly_eval, ChebyshevPoly, Halve, Ring};
pub use constants::{constants_ledger, h_table, ConstantsReport, HEntry};
pub use delta::{delta_ledger, pentagonal_lower, pentagonal_upper};
pub use eisenstein::{arc_eisenstein_bounds, eisenstein_line_bounds, line_spec, LineSpec};
pub use japprox::{
    j_approx, j_approx_at, j_approx_error, j_approx_ledger, j_at_angle, j_difference_bounds, magnitude_certificate_065,
    monotonicity_certificate_075, sin_min, MagnitudeCertificate, MonotonicityCertificate,
};
pub use mrl::{proposition_mrl_check, residue_term, residue_term_increasing, MrlReport};

/// The inequality an entry asserts about its computed value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
    Within { tol: f64 },
}

/// How the computed value was certified.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Ball arithmetic on the printed constants.
    Arithmetic,
    /// Ball evaluation of a closed form or of a series at a point.
    ClosedForm,
    /// Grid over a continuum with a derivative pad covering the gaps.
    Grid { step: f64 },
    /// Finite sample with no pad; evidence rather than proof.
    Sampled { points: usize },
    /// Exact sign pattern of polynomial coefficients.
    Certificate,
}

/// One checked inequality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundLedgerEntry {
    pub name: String,
    pub group: &'static str,
    pub claimed: f64,
    pub computed: f64,
    pub err: f64,
    pub relation: Relation,
    pub satisfied: bool,
    pub method: Method,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl BoundLedgerEntry {
    pub fn check(
        group: &'static str,
        name: impl Into<String>,
        claimed: f64,
        computed: CertReal,
        relation: Relation,
        method: Method,
    ) -> Self {
        let satisfied = computed.value.is_finite()
            && match relation {
                Relation::Lt => computed.hi() < claimed,
                Relation::Le => computed.hi() <= claimed,
                Relation::Gt => computed.lo() > claimed,
                Relation::Ge => computed.lo() >= claimed,
                Relation::Within { tol } => (computed.value - claimed).abs() + computed.err <= tol,
            };
        BoundLedgerEntry {
            name: name.into(),
            group,
            claimed,
            computed: computed.value,
            err: computed.err,
            relation,
            satisfied,
            method,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// An entry for arithmetic on printed decimals, decided exactly.
    pub fn exact(
        group: &'static str,
        name: impl Into<String>,
        claimed: f64,
        relation: Relation,
        computed: BigRational,
    ) -> Self {
        let c = exact_dec(claimed);
        let satisfied = match relation {
            Relation::Lt => computed < c,
            Relation::Le => computed <= c,
            Relation::Gt => computed > c,
            Relation::Ge => computed >= c,
            Relation::Within { tol } => (&computed - &c).abs() <= exact_dec(tol),
        };
        BoundLedgerEntry {
            name: name.into(),
            group,
            claimed,
            computed: computed.to_f64().unwrap_or(f64::NAN),
            err: 0.0,
            relation,
            satisfied,
            method: Method::Arithmetic,
            detail: String::new(),
        }
    }

    /// An entry for a check that could not be carried out.
    pub fn failed(group: &'static str, name: impl Into<String>, claimed: f64, relation: Relation, err: &Error) -> Self {
        BoundLedgerEntry {
            name: name.into(),
            group,
            claimed,
            computed: f64::NAN,
            err: f64::INFINITY,
            relation,
            satisfied: false,
            method: Method::ClosedForm,
            detail: err.to_string(),
        }
    }
}

/// Entries plus non-binding diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<BoundLedgerEntry>,
    pub diagnostics: Vec<BoundLedgerEntry>,
}

impl SuiteReport {
    pub fn all_satisfied(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.satisfied)
    }

    pub fn failures(&self) -> Vec<&BoundLedgerEntry> {
        self.entries.iter().filter(|e| !e.satisfied).collect()
    }

    pub fn find(&self, name: &str) -> Option<&BoundLedgerEntry> {
        self.entries.iter().chain(&self.diagnostics).find(|e| e.name == name)
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.entries.extend(other.entries);
        self.diagnostics.extend(other.diagnostics);
    }

    /// `CertificateFailure` naming the unsatisfied entries.
    pub fn require(&self) -> Result<()> {
        let bad = self.failures();
        if bad.is_empty() {
            return Ok(());
        }
        let names: Vec<&str> = bad.iter().map(|e| e.name.as_str()).collect();
        Err(Error::CertificateFailure(names.join("; ")))
    }
}

/// All groups, run in parallel and concatenated in a fixed order.
pub fn full_suite() -> SuiteReport {
    let groups: [fn() -> SuiteReport; 6] = [
        j_approx_ledger,
        || delta_ledger().unwrap_or_else(|e| failed_group("delta", &e)),
        || j_difference_bounds().unwrap_or_else(|e| failed_group("j-difference", &e)),
        || eisenstein_line_bounds().unwrap_or_else(|e| failed_group("eisenstein-line", &e)),
        || arc_eisenstein_bounds().unwrap_or_else(|e| failed_group("eisenstein-arc", &e)),
        || constants_ledger().map(|c| c.report).unwrap_or_else(|e| failed_group("constants", &e)),
    ];
    let parts: Vec<SuiteReport> = groups.par_iter().map(|g| g()).collect();
    let mut out = SuiteReport::default();
    for p in parts {
        out.extend(p);
    }
    out
}

fn failed_group(group: &'static str, e: &Error) -> SuiteReport {
    SuiteReport {
        entries: vec![BoundLedgerEntry::failed(group, format!("{group} evaluation"), 0.0, Relation::Ge, e)],
        diagnostics: Vec::new(),
    }
}

// Ball helpers for the few transcendental functions the ledger needs.

pub(crate) fn pi() -> CertReal {
    CertReal::new(PI, up(PI * U))
}

/// Image of a ball under a monotone function, from its values at the ends.
pub(crate) fn monotone(x: &CertReal, f: impl Fn(f64) -> f64) -> CertReal {
    let (a, b) = (f(x.lo()), f(x.hi()));
    let mid = 0.5 * (a + b);
    CertReal::new(mid, up(0.5 * (a - b).abs() + 4.0 * U * (a.abs() + b.abs()) + f64::MIN_POSITIVE))
}

pub(crate) fn exp_ball(x: &CertReal) -> CertReal {
    x.exp()
}

pub(crate) fn ln_ball(x: &CertReal) -> Result<CertReal> {
    if x.lo() <= 0.0 {
        return Err(Error::DomainError(format!("log of a ball meeting zero: {x:?}")));
    }
    Ok(monotone(x, f64::ln))
}

pub(crate) fn sqrt_ball(x: &CertReal) -> Result<CertReal> {
    if x.lo() < 0.0 {
        return Err(Error::DomainError(format!("sqrt of a ball meeting the negatives: {x:?}")));
    }
    Ok(monotone(x, f64::sqrt))
}

pub(crate) fn acos_ball(x: &CertReal) -> Result<CertReal> {
    if x.lo() < -1.0 || x.hi() > 1.0 {
        return Err(Error::DomainError(format!("acos outside [-1, 1]: {x:?}")));
    }
    Ok(monotone(x, f64::acos))
}

/// `sin` and `cos` are 1-Lipschitz.
pub(crate) fn sin_ball(x: &CertReal) -> CertReal {
    let v = x.value.sin();
    CertReal::new(v, up(x.err + 2.0 * U))
}

pub(crate) fn cos_ball(x: &CertReal) -> CertReal {
    let v = x.value.cos();
    CertReal::new(v, up(x.err + 2.0 * U))
}

/// A decimal constant as printed, e.g. `5.25`.
pub(crate) fn dec(x: f64) -> CertReal {
    CertReal::rounded(x)
}

/// The decimal a printed constant denotes, from its shortest `f64` spelling.
pub(crate) fn exact_dec(x: f64) -> BigRational {
    let s = format!("{x}");
    let (int, frac) = s.split_once('.').unwrap_or((&s, ""));
    let num: BigInt = format!("{int}{frac}").parse().expect("finite decimal");
    BigRational::new(num, BigInt::from(10).pow(frac.len() as u32))
}

/// Ball with the smallest lower end.
pub(crate) fn min_by_lo(xs: impl IntoIterator<Item = CertReal>) -> Option<CertReal> {
    xs.into_iter().min_by(|a, b| a.lo().total_cmp(&b.lo()))
}

/// Ball with the largest upper end.
pub(crate) fn max_by_hi(xs: impl IntoIterator<Item = CertReal>) -> Option<CertReal> {
    xs.into_iter().max_by(|a, b| a.hi().total_cmp(&b.hi()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        let x = CertReal::new(1.0, 0.1);
        let e = |r| BoundLedgerEntry::check("t", "x", 1.2, x, r, Method::Arithmetic).satisfied;
        assert!(e(Relation::Lt));
        assert!(!e(Relation::Gt));
        assert!(e(Relation::Within { tol: 0.31 }));
        assert!(!e(Relation::Within { tol: 0.29 }));
        let y = CertReal::new(1.15, 0.1);
        assert!(!BoundLedgerEntry::check("t", "y", 1.2, y, Relation::Lt, Method::Arithmetic).satisfied);
    }

    #[test]
    fn helpers() {
        let s = sqrt_ball(&CertReal::new(4.0, 1e-10)).unwrap();
        assert!(s.contains(2.0) && s.err < 1e-10);
        let a = acos_ball(&CertReal::exact(0.0)).unwrap();
        assert!(a.contains(PI / 2.0));
        assert!(ln_ball(&CertReal::new(0.0, 1.0)).is_err());
        assert_eq!(exact_dec(-0.005), BigRational::new((-1).into(), 200.into()));
        assert_eq!(exact_dec(14.26), BigRational::new(713.into(), 50.into()));
        let e = BoundLedgerEntry::exact("t", "sum", 5.25, Relation::Le, exact_dec(4.9) + exact_dec(0.35));
        assert!(e.satisfied);
    }
}
