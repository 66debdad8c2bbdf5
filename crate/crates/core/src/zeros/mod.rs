//! Zeros of Miller basis elements.
//!
//! Two independent routes find the nontrivial zeros of `g_{k,m}`: exact real
//! root isolation of the Faber polynomial `F` (zeros of `g` are the points
//! where `j` hits a root of `F`), and certified sign changes of the real
//! function `e^{ik theta/2} g(e^{i theta})` along the arc.

mod sturm;

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evalnum::{arc_form_from, arc_functions_with, ArcPoint, ExtCertReal, KERNEL_TRUNC};
use crate::formid::{FormId, KPRIMES};
use crate::miller::{faber_polynomial, miller_form, MillerForm};
use crate::poly::IntPolynomial;

pub use sturm::{
    count_off, count_off_interval, isolate_with, rational, refine, sign_change_certificate, sturm_isolate,
    OffInterval, RootInterval, SturmChain,
};

/// Number of times arc localization doubles the truncation after an
/// inconclusive sign.
pub const MAX_RETRIES: u32 = 3;

/// Default isolation width exponent: roots are reported in intervals of width
/// at most `1728 / 2^bits`.
pub const DEFAULT_PRECISION_BITS: u32 = 30;

/// `h(theta) = k theta / 2 + 2 pi m cos theta`, the phase of the leading terms
/// of `g_{k,m}` on the arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HFunction {
    pub k: i64,
    pub m: i64,
}

impl HFunction {
    pub fn new(id: FormId) -> Self {
        HFunction { k: id.k, m: id.m }
    }

    pub fn h(&self, theta: f64) -> f64 {
        self.k as f64 * theta / 2.0 + 2.0 * PI * self.m as f64 * theta.cos()
    }

    pub fn h_prime(&self, theta: f64) -> f64 {
        self.k as f64 / 2.0 - 2.0 * PI * self.m as f64 * theta.sin()
    }

    /// `h' >= (k - 4 pi m) / 2`, so `h` is increasing once `k > 4 pi m`.
    pub fn is_monotone(&self) -> bool {
        self.k as f64 > 4.0 * PI * self.m as f64
    }

    /// Least integer `n` with `pi n >= h(pi/2) = pi k / 4`.
    pub fn n0(&self) -> i64 {
        (self.k + 3).div_euclid(4)
    }

    /// The angle where `h = pi n`, by bisection on the arc.
    pub fn theta_at(&self, n: i64) -> f64 {
        let f = |t: f64| self.k as f64 * t / (2.0 * PI) + 2.0 * self.m as f64 * t.cos() - n as f64;
        let (mut lo, mut hi) = (ArcPoint::START, ArcPoint::END);
        if f(lo) >= 0.0 {
            return lo;
        }
        if f(hi) <= 0.0 {
            return hi;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if f(hi).abs() < f(lo).abs() {
            hi
        } else {
            lo
        }
    }

    /// `theta_0 < ... < theta_d` with `h(theta_j) = pi (n0 + j)`.
    pub fn thetas(&self, d: i64) -> Result<Vec<f64>> {
        if !self.is_monotone() {
            return Err(Error::DomainError(format!("h is not monotone for k = {}, m = {}", self.k, self.m)));
        }
        let n0 = self.n0();
        // pi (n0 + d) must not pass h(2 pi / 3) = pi (k/3 - m)
        if 3 * (n0 + d) > self.k - 3 * self.m {
            return Err(Error::DomainError(format!("{} multiples of pi do not fit on the arc", d + 1)));
        }
        Ok((0..=d).map(|j| self.theta_at(self.n0() + j)).collect())
    }
}

/// A closed angle interval on the arc.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleInterval {
    pub lo: f64,
    pub hi: f64,
}

impl AngleInterval {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Controls for [`arc_zero_localize_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalizeOptions {
    /// Starting truncation for the Eisenstein kernels.
    pub trunc: i64,
    /// Bisect each bracket down to this width; `0` keeps the raw brackets.
    pub refine_width: f64,
    /// Halvings of sign-constant gaps tried when fewer than `ell - m`
    /// sign changes turn up on the `theta_j` grid.
    pub max_depth: u32,
}

impl Default for LocalizeOptions {
    fn default() -> Self {
        LocalizeOptions { trunc: KERNEL_TRUNC, refine_width: 0.0, max_depth: 8 }
    }
}

/// `e^{ik theta/2} g(e^{i theta})` with its radius.
pub fn arc_value(form: &MillerForm, theta: f64, trunc: i64) -> Result<ExtCertReal> {
    let p = ArcPoint::new(theta.clamp(ArcPoint::START, ArcPoint::END))?;
    arc_form_from(form, &arc_functions_with(p, trunc)?)
}

fn certified_sign(form: &MillerForm, theta: f64, trunc: i64) -> Result<i32> {
    let v = arc_value(form, theta, trunc)?;
    v.sign().ok_or(Error::InconclusiveSign { theta, value: v.value.abs().to_f64(), err: v.err.to_f64() })
}

/// Signs at the grid; an inconclusive end point of the arc is nudged inward
/// since `g` may vanish at `i` or `rho`.
fn grid_signs(form: &MillerForm, thetas: &mut [f64], trunc: i64) -> Result<Vec<i32>> {
    let nudge = 1e-9;
    let mut out = Vec::with_capacity(thetas.len());
    for t in thetas.iter_mut() {
        match certified_sign(form, *t, trunc) {
            Ok(s) => out.push(s),
            Err(Error::InconclusiveSign { .. }) if *t <= ArcPoint::START || *t >= ArcPoint::END => {
                let moved = if *t <= ArcPoint::START { *t + nudge } else { *t - nudge };
                out.push(certified_sign(form, moved, trunc)?);
                *t = moved;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Sign-change brackets for the zeros of `g` on the arc.
pub fn arc_zero_localize(form: &MillerForm) -> Result<Vec<AngleInterval>> {
    arc_zero_localize_with(form, &LocalizeOptions::default())
}

pub fn arc_zero_localize_with(form: &MillerForm, opts: &LocalizeOptions) -> Result<Vec<AngleInterval>> {
    let d = form.id.degree();
    if d == 0 {
        return Ok(Vec::new());
    }
    let base = HFunction::new(form.id).thetas(d)?;
    let mut last = None;
    for attempt in 0..=MAX_RETRIES {
        let trunc = opts.trunc << attempt;
        let mut thetas = base.clone();
        match grid_signs(form, &mut thetas, trunc) {
            Ok(signs) => return bracket(form, thetas, signs, d as usize, trunc, opts),
            Err(e @ Error::InconclusiveSign { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn bracket(
    form: &MillerForm,
    thetas: Vec<f64>,
    signs: Vec<i32>,
    expected: usize,
    trunc: i64,
    opts: &LocalizeOptions,
) -> Result<Vec<AngleInterval>> {
    let mut pts: Vec<(f64, i32)> = thetas.into_iter().zip(signs).collect();
    let changes = |p: &[(f64, i32)]| p.windows(2).filter(|w| w[0].1 != w[1].1).count();
    let mut depth = 0;
    while changes(&pts) < expected && depth < opts.max_depth {
        let mut next = Vec::with_capacity(2 * pts.len());
        for w in pts.windows(2) {
            next.push(w[0]);
            if w[0].1 == w[1].1 {
                let mid = 0.5 * (w[0].0 + w[1].0);
                if let Ok(s) = certified_sign(form, mid, trunc) {
                    next.push((mid, s));
                }
            }
        }
        next.push(*pts.last().expect("nonempty grid"));
        pts = next;
        depth += 1;
    }
    let mut out = Vec::new();
    for w in pts.windows(2).filter(|w| w[0].1 != w[1].1) {
        let (mut lo, mut hi) = (w[0].0, w[1].0);
        let slo = w[0].1;
        while hi - lo > opts.refine_width {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            match certified_sign(form, mid, trunc) {
                Ok(s) if s == slo => lo = mid,
                Ok(_) => hi = mid,
                Err(_) => break,
            }
        }
        out.push(AngleInterval { lo, hi });
    }
    Ok(out)
}

/// Rational interval containing `j(e^{i theta})` for all `theta` in `iv`,
/// using that `j` decreases along the arc.
pub fn j_of_angle(iv: AngleInterval) -> Result<(BigRational, BigRational)> {
    let at = |t: f64| -> Result<crate::evalnum::CertReal> { arc_functions_with(ArcPoint::new(t)?, KERNEL_TRUNC)?.j() };
    let jl = at(iv.lo)?;
    let jh = at(iv.hi)?;
    Ok((rational(jh.lo()), rational(jl.hi())))
}

/// How the Faber roots were isolated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootMethod {
    Sturm,
    SignChange,
}

/// Exact root data of a Faber polynomial relative to `[0, 1728]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaberRoots {
    /// Isolating intervals for the distinct roots in `(0, 1728)`.
    pub inside: Vec<RootInterval>,
    pub off: OffInterval,
    pub mult_at_0: usize,
    pub mult_at_1728: usize,
    pub method: RootMethod,
}

fn q1728() -> BigRational {
    BigRational::from_integer(1728.into())
}

fn isolation_width(bits: u32) -> BigRational {
    BigRational::new(1728.into(), BigInt::from(2).pow(bits))
}

/// Isolate the roots of `p` in `(0, 1728)` to width `1728 / 2^bits`. When
/// `hints` (rationals believed to separate the roots) yield `deg p` sign
/// changes, that certificate replaces the Sturm sequence.
pub fn faber_roots(p: &IntPolynomial, bits: u32, hints: Option<&[BigRational]>) -> FaberRoots {
    let width = isolation_width(bits);
    let zero = BigRational::zero();
    let top = q1728();
    if let Some(h) = hints {
        let mut pts: Vec<BigRational> = h.iter().filter(|x| **x > zero && **x < top).cloned().collect();
        pts.push(zero.clone());
        pts.push(top.clone());
        pts.sort();
        pts.dedup();
        if let Some(ivs) = sign_change_certificate(p, &pts) {
            let d = ivs.len();
            return FaberRoots {
                inside: ivs.iter().map(|iv| refine(p, iv, &width)).collect(),
                off: OffInterval { real_total: d, real_inside: d, real_outside: 0, complex_pairs: 0, squarefree_defect: 0 },
                mult_at_0: 0,
                mult_at_1728: 0,
                method: RootMethod::SignChange,
            };
        }
    }
    let chain = SturmChain::new(p);
    let sf = chain.squarefree();
    let inside = isolate_with(&chain, &zero, &top)
        .into_iter()
        .filter(|iv| !(iv.is_exact() && (iv.lo == zero || iv.lo == top)))
        .map(|iv| refine(sf, &iv, &width))
        .collect();
    FaberRoots {
        inside,
        off: count_off(p, &zero, &top),
        mult_at_0: p.root_multiplicity(&zero),
        mult_at_1728: p.root_multiplicity(&top),
        method: RootMethod::Sturm,
    }
}

/// Options for [`zero_report_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroOptions {
    pub precision_bits: u32,
    /// Above this degree the Faber roots are certified from the arc brackets
    /// when possible, falling back to Sturm.
    pub sturm_max_degree: i64,
    pub localize: LocalizeOptions,
}

impl Default for ZeroOptions {
    fn default() -> Self {
        ZeroOptions { precision_bits: DEFAULT_PRECISION_BITS, sturm_max_degree: 40, localize: LocalizeOptions::default() }
    }
}

/// Everything known about the zeros of one `g_{k,m}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroReport {
    pub id: FormId,
    /// Disjoint angle brackets, each holding a sign change of the real arc function.
    pub arc_angles: Vec<AngleInterval>,
    /// Why arc localization was skipped, if it was.
    pub arc_note: Option<String>,
    pub faber_roots_in: Vec<RootInterval>,
    pub faber_roots_out: OffInterval,
    pub root_method: RootMethod,
    pub ord_infty: i64,
    pub trivial_i: i64,
    pub trivial_rho: i64,
    /// Zeros away from `i`, `rho` and the cusp, with multiplicity.
    pub nontrivial: i64,
    pub valence_ok: bool,
    /// Whether the arc brackets and the Faber intervals match one to one
    /// under `j`; `None` when some Faber root is off the arc.
    pub cross_oracle: Option<bool>,
}

impl ZeroReport {
    /// Every nontrivial zero is a simple zero on the arc.
    pub fn all_on_arc(&self) -> bool {
        let o = &self.faber_roots_out;
        o.real_outside == 0
            && o.complex_pairs == 0
            && o.squarefree_defect == 0
            && self.faber_roots_in.len() as i64 == self.nontrivial
    }

    pub fn angle_midpoints(&self) -> Vec<f64> {
        self.arc_angles.iter().map(|a| a.midpoint()).collect()
    }
}

/// `ord_infty + ord_i / 2 + ord_rho / 3 + nontrivial = k / 12`, exactly.
pub fn valence_reconcile(r: &ZeroReport) -> bool {
    let lhs = Ratio::from_integer(r.ord_infty)
        + Ratio::new(r.trivial_i, 2)
        + Ratio::new(r.trivial_rho, 3)
        + Ratio::from_integer(r.nontrivial);
    lhs == Ratio::new(r.id.k, 12)
}

pub fn zero_report(id: FormId) -> Result<ZeroReport> {
    zero_report_with(id, &ZeroOptions::default())
}

pub fn zero_report_with(id: FormId, opts: &ZeroOptions) -> Result<ZeroReport> {
    let form = miller_form(id, id.ell)?;
    let (arc_angles, arc_note) = match arc_zero_localize_with(&form, &opts.localize) {
        Ok(a) => (a, None),
        Err(Error::DomainError(s)) => (Vec::new(), Some(s)),
        Err(e) => return Err(e),
    };
    let hints = if id.degree() > opts.sturm_max_degree && !arc_angles.is_empty() {
        let mut h = Vec::with_capacity(2 * arc_angles.len());
        for a in &arc_angles {
            for t in [a.lo, a.hi] {
                h.push(rational(arc_functions_with(ArcPoint::new(t)?, KERNEL_TRUNC)?.j()?.value));
            }
        }
        Some(h)
    } else {
        None
    };
    let roots = faber_roots(&form.faber, opts.precision_bits, hints.as_deref());
    report_from(id, arc_angles, arc_note, roots)
}

fn report_from(
    id: FormId,
    arc_angles: Vec<AngleInterval>,
    arc_note: Option<String>,
    roots: FaberRoots,
) -> Result<ZeroReport> {
    let o = &roots.off;
    let extra = |m: usize| m.saturating_sub(1);
    // the square-free defect also counts the excess multiplicity at 0 and 1728
    let repeated = o.squarefree_defect - extra(roots.mult_at_0) - extra(roots.mult_at_1728);
    let nontrivial = roots.inside.len() + o.real_outside + 2 * o.complex_pairs + repeated;
    let clean = o.real_outside == 0 && o.complex_pairs == 0 && o.squarefree_defect == 0;
    let cross_oracle = if clean && arc_angles.len() == roots.inside.len() {
        let mut ok = true;
        for (a, r) in arc_angles.iter().rev().zip(&roots.inside) {
            let (lo, hi) = j_of_angle(*a)?;
            ok &= r.meets(&lo, &hi);
        }
        Some(ok)
    } else if clean {
        Some(false)
    } else {
        None
    };
    let mut r = ZeroReport {
        id,
        arc_angles,
        arc_note,
        faber_roots_in: roots.inside,
        faber_roots_out: roots.off,
        root_method: roots.method,
        ord_infty: id.m,
        trivial_i: id.trivial_order_i() + 2 * roots.mult_at_1728 as i64,
        trivial_rho: id.trivial_order_rho() + 3 * roots.mult_at_0 as i64,
        nontrivial: nontrivial as i64,
        valence_ok: false,
        cross_oracle,
    };
    r.valence_ok = valence_reconcile(&r);
    Ok(r)
}

/// One row of the `m = 1` sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremEntry {
    pub id: FormId,
    pub degree: i64,
    pub roots_in: usize,
    pub real_outside: usize,
    pub complex_pairs: usize,
    pub squarefree_defect: usize,
    pub pass: bool,
}

/// The 84 forms `g_{k,1}` with `1 <= ell <= 14`.
pub fn theorem_m1_forms() -> Vec<FormId> {
    (1..=14)
        .flat_map(|ell| KPRIMES.iter().map(move |&kp| FormId::from_parts(ell, kp, 1).expect("valid id")))
        .collect()
}

fn theorem_entry(id: FormId) -> Result<TheoremEntry> {
    let f = faber_polynomial(id)?;
    let zero = BigRational::zero();
    let off = count_off(&f, &zero, &q1728());
    let pass = off.squarefree_defect == 0
        && off.real_outside == 0
        && off.complex_pairs == 0
        && off.real_inside as i64 == id.degree();
    Ok(TheoremEntry {
        id,
        degree: f.degree().max(0),
        roots_in: off.real_inside,
        real_outside: off.real_outside,
        complex_pairs: off.complex_pairs,
        squarefree_defect: off.squarefree_defect,
        pass,
    })
}

/// Every row of the sweep, in order, whether or not it passes.
pub fn theorem_m1_table() -> Result<Vec<TheoremEntry>> {
    theorem_m1_forms().into_par_iter().map(theorem_entry).collect()
}

/// The sweep, failing on the first form whose Faber polynomial has a root
/// that is repeated, non-real, or outside `[0, 1728]`.
pub fn verify_theorem_m1() -> Result<Vec<TheoremEntry>> {
    let table = theorem_m1_table()?;
    if let Some(bad) = table.iter().find(|e| !e.pass) {
        return Err(Error::TheoremViolation {
            id: bad.id,
            reason: format!(
                "{} of {} roots in [0, 1728], {} real outside, {} complex pairs, defect {}",
                bad.roots_in, bad.degree, bad.real_outside, bad.complex_pairs, bad.squarefree_defect
            ),
        });
    }
    Ok(table)
}

/// Angle statistics for one form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormDistribution {
    pub id: FormId,
    pub count: usize,
    /// Star discrepancy against the uniform measure on the arc.
    pub discrepancy: f64,
    pub histogram: Vec<usize>,
    /// Largest `|count_b / N - 1 / bins|`, as a fraction of `1 / bins`.
    pub max_bin_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistributionReport {
    pub bins: usize,
    pub forms: Vec<FormDistribution>,
    /// Discrepancy strictly decreases along the list.
    pub decreasing: bool,
}

/// Position of `theta` on the arc, rescaled to `[0, 1]`.
fn unit(theta: f64) -> f64 {
    ((theta - ArcPoint::START) / (ArcPoint::END - ArcPoint::START)).clamp(0.0, 1.0)
}

pub fn star_discrepancy(angles: &[f64]) -> f64 {
    let mut u: Vec<f64> = angles.iter().map(|&t| unit(t)).collect();
    u.sort_by(f64::total_cmp);
    let n = u.len() as f64;
    u.iter()
        .enumerate()
        .map(|(i, &x)| ((i as f64 + 1.0) / n - x).max(x - i as f64 / n))
        .fold(0.0, f64::max)
}

pub fn histogram(angles: &[f64], bins: usize) -> Vec<usize> {
    let mut h = vec![0; bins];
    for &t in angles {
        let b = ((unit(t) * bins as f64) as usize).min(bins - 1);
        h[b] += 1;
    }
    h
}

pub fn form_distribution(id: FormId, angles: &[f64], bins: usize) -> FormDistribution {
    let hist = histogram(angles, bins);
    let n = angles.len().max(1) as f64;
    let uniform = 1.0 / bins as f64;
    let dev = hist.iter().map(|&c| (c as f64 / n - uniform).abs() / uniform).fold(0.0, f64::max);
    FormDistribution {
        id,
        count: angles.len(),
        discrepancy: star_discrepancy(angles),
        histogram: hist,
        max_bin_deviation: dev,
    }
}

/// Zero-angle statistics for each form, from refined arc brackets.
pub fn distribution_stats(ids: &[FormId], bins: usize) -> Result<DistributionReport> {
    if bins == 0 {
        return Err(Error::DomainError("bins must be positive".into()));
    }
    let opts = LocalizeOptions { refine_width: 1e-7, ..LocalizeOptions::default() };
    let forms = ids
        .par_iter()
        .map(|&id| {
            let form = miller_form(id, id.ell)?;
            let angles: Vec<f64> = arc_zero_localize_with(&form, &opts)?.iter().map(|a| a.midpoint()).collect();
            Ok(form_distribution(id, &angles, bins))
        })
        .collect::<Result<Vec<_>>>()?;
    let decreasing = forms.windows(2).all(|w| w[1].discrepancy < w[0].discrepancy);
    Ok(DistributionReport { bins, forms, decreasing })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(k: i64, m: i64) -> FormId {
        FormId::new(k, m).unwrap()
    }

    #[test]
    fn h_grid() {
        let h = HFunction::new(id(124, 1));
        let t = h.thetas(9).unwrap();
        assert_eq!(t.len(), 10);
        for (j, w) in t.windows(2).enumerate() {
            assert!(w[0] < w[1]);
            let d = h.h(w[1]) - h.h(w[0]);
            assert!((d - PI).abs() < 1e-9, "{j}: {d}");
        }
        assert!((h.h(t[0]) / PI - h.n0() as f64).abs() < 1e-9);
    }

    #[test]
    fn delta_has_no_arc_zeros() {
        let g = miller_form(id(12, 1), 1).unwrap();
        assert!(arc_zero_localize(&g).unwrap().is_empty());
        let r = zero_report(id(12, 1)).unwrap();
        assert!(r.valence_ok);
        assert_eq!(r.nontrivial, 0);
    }

    #[test]
    fn weight_48() {
        let r = zero_report(id(48, 1)).unwrap();
        assert_eq!(r.arc_angles.len(), 3);
        assert_eq!(r.cross_oracle, Some(true));
        assert!(r.valence_ok);
        let printed = [28.5703, 565.1814, 1542.2483];
        for (iv, p) in r.faber_roots_in.iter().zip(printed) {
            assert!((iv.midpoint() - p).abs() < 1e-3, "{} vs {p}", iv.midpoint());
        }
    }

    #[test]
    fn weight_124_has_rho_zero() {
        let r = zero_report(id(124, 1)).unwrap();
        assert_eq!(r.faber_roots_in.len(), 9);
        assert_eq!(r.trivial_rho, 1);
        assert!(r.valence_ok);
        assert!((r.faber_roots_in[0].midpoint() - 4.3445).abs() < 1e-3);
        assert_eq!(r.cross_oracle, Some(true));
    }

    #[test]
    fn counterexample_has_roots_off_the_interval() {
        let r = zero_report(id(132, 9)).unwrap();
        let o = &r.faber_roots_out;
        assert!(o.real_outside + o.complex_pairs > 0, "{o:?}");
        assert!(r.valence_ok);
        assert_eq!(r.cross_oracle, None);
    }

    #[test]
    fn j_images() {
        let pt = |t: f64| j_of_angle(AngleInterval { lo: t, hi: t }).unwrap();
        let (lo, hi) = pt(PI / 2.0);
        assert!(lo <= q1728() && q1728() <= hi);
        let (lo, hi) = pt(2.0 * PI / 3.0);
        assert!(lo <= BigRational::zero() && BigRational::zero() <= hi);
        let (lo, hi) = pt(1.9);
        assert!(lo >= BigRational::from_integer(271.into()) && hi <= BigRational::from_integer(272.into()));
    }

    #[test]
    fn large_degree_uses_sign_changes() {
        let r = zero_report(id(192, 1)).unwrap();
        assert_eq!(r.arc_angles.len(), 15);
        assert_eq!(r.faber_roots_in.len(), 15);
        assert!(r.valence_ok);
        let opts = ZeroOptions { sturm_max_degree: 10, ..ZeroOptions::default() };
        let r2 = zero_report_with(id(192, 1), &opts).unwrap();
        assert_eq!(r2.root_method, RootMethod::SignChange);
        assert_eq!(r2.cross_oracle, Some(true));
    }

    #[test]
    fn small_sweep() {
        for id in theorem_m1_forms().into_iter().take(24) {
            assert!(theorem_entry(id).unwrap().pass, "{id}");
        }
    }

    #[test]
    fn discrepancy_of_one_point() {
        let d = star_discrepancy(&[ArcPoint::START + 0.01]);
        assert!(d <= 1.0);
        let even: Vec<f64> = (0..10).map(|i| ArcPoint::START + (i as f64 + 0.5) * PI / 60.0).collect();
        assert!((star_discrepancy(&even) - 0.05).abs() < 1e-12);
        assert_eq!(histogram(&even, 10), vec![1; 10]);
    }
}
