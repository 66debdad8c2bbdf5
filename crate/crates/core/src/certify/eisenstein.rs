//! Bounds for `E_4` and `E_6` on the lines `Im tau = 0.65, 0.75` and on the arc.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{
    dec, exact_dec, exp_ball, max_by_hi, min_by_lo, pi, BoundLedgerEntry, Method, Relation, SuiteReport,
};
use crate::error::Result;
use crate::evalnum::{
    arc_functions, arc_grid, eisenstein_gamma_abs, eval_eisenstein, lemniscate_constants, up, ArcPoint, CertReal,
    CertValue, U,
};
use crate::qseries::eisenstein;

const GROUP_LINE: &str = "eisenstein-line";
const GROUP_ARC: &str = "eisenstein-arc";

/// Grid step for the line maxima.
pub const LINE_STEP: f64 = 1e-3;

/// The printed chain for one bound `|E_k(x + y i)| < main`: the power bound
/// `n^p e^{-pi y n} <= power` for `n >= n_start`, the tail
/// `coeff * power * sum_{n >= 3} e^{-pi y n} < tail`, the head bound `< head`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineSpec {
    pub k: i64,
    pub height: f64,
    pub n_start: u32,
    pub power: f64,
    pub tail: f64,
    pub head: f64,
    pub main: f64,
}

pub fn line_spec(k: i64, height: f64) -> Option<LineSpec> {
    let s = |n_start, power, tail, head, main| LineSpec { k, height, n_start, power, tail, head, main };
    match (k, (height * 100.0).round() as i64) {
        (4, 65) => Some(s(3, 0.3, 0.2, 5.7, 5.9)),
        (4, 75) => Some(s(3, 0.2, 0.05, 3.4, 3.45)),
        (6, 65) => Some(s(3, 1.6, 2.05, 12.21, 14.26)),
        (6, 75) => Some(s(1, 0.7, 0.35, 4.9, 5.25)),
        _ => None,
    }
}

fn line(name: String, claimed: f64, computed: CertReal, relation: Relation, method: Method) -> BoundLedgerEntry {
    BoundLedgerEntry::check(GROUP_LINE, name, claimed, computed, relation, method)
}

/// `max_{n >= n_start} n^p e^{-c n}`; the function of `n` is unimodal with
/// its peak at `p / c`.
fn power_max(p: i32, c: &CertReal, n_start: u32) -> CertReal {
    let peak = p as f64 / c.value;
    let mut cands = vec![n_start as f64];
    for n in [peak.floor(), peak.ceil()] {
        if n > n_start as f64 {
            cands.push(n);
        }
    }
    let vals = cands.into_iter().map(|n| exp_ball(&c.scale(-n)).scale(n.powi(p)));
    max_by_hi(vals).expect("nonempty")
}

/// `sup_x |d/dx E_k(x + y i)| <= 2 pi sum n |a_n| e^{-2 pi y n}`.
fn derivative_bound(k: i64, y: f64) -> Result<f64> {
    let trunc = 60;
    let s = eisenstein(k, trunc)?;
    let r = (-2.0 * PI * y).exp();
    let mut sum = 0.0;
    for n in 1..=trunc {
        let a = s.coeff(n).and_then(|c| c.to_f64()).unwrap_or(0.0).abs();
        sum += n as f64 * a * r.powi(n as i32);
    }
    // |a_n| <= gamma n^{k-1} * n, so the tail is below gamma sum_{n > trunc} n^{k+1} r^n
    let gamma = eisenstein_gamma_abs(k);
    let n1 = (trunc + 1) as f64;
    let ratio = ((n1 + 1.0) / n1).powi(k as i32 + 1) * r;
    let tail = gamma * (((k + 1) as f64) * n1.ln() + n1 * r.ln()).exp() / (1.0 - ratio);
    Ok(up(2.0 * PI * (sum * (1.0 + 1e-12) + tail)))
}

/// Certified `max_{|x| <= 1/2} |f(x + y i)|` for a function with real
/// coefficients (so `|f|` is even in `x`), given its derivative bound.
pub(crate) fn line_max(
    f: impl Fn(&CertValue) -> Result<CertValue>,
    y: f64,
    lipschitz: f64,
    step: f64,
) -> Result<(CertReal, f64)> {
    let n = (0.5 / step).ceil() as usize;
    let h = 0.5 / n as f64;
    let mut best: Option<CertReal> = None;
    for i in 0..=n {
        let x = i as f64 * h;
        let v = f(&CertValue::exact(Complex64::new(x, y)))?;
        let m = CertReal::new(v.value.norm(), up(v.err + v.value.norm() * U));
        best = max_by_hi(best.into_iter().chain([m]));
    }
    let pad = up(lipschitz * h / 2.0);
    Ok((best.expect("grid is nonempty").widen(pad), h))
}

/// The four line bounds with their printed sub-steps.
pub fn eisenstein_line_bounds() -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    for (k, y) in [(4, 0.65), (4, 0.75), (6, 0.65), (6, 0.75)] {
        let s = line_spec(k, y).expect("known line");
        let tag = format!("E{k} at height {y}");
        let c = pi().scale(y);
        let p = k as i32;
        r.entries.push(line(
            format!("{tag}: n^{p} e^(-pi {y} n) <= {} for n >= {}", s.power, s.n_start),
            s.power,
            power_max(p, &c, s.n_start),
            Relation::Le,
            Method::ClosedForm,
        ));
        // gamma_k * power * e^{-3c} / (1 - e^{-c})
        let gamma = if k == 4 { 240.0 } else { 504.0 };
        let e1 = exp_ball(&c.neg());
        let tail = dec(s.power).scale(gamma).mul(&exp_ball(&c.scale(-3.0))).div(&CertReal::exact(1.0).sub(&e1))?;
        r.entries.push(
            line(format!("{tag}: tail constant"), s.tail, tail, Relation::Lt, Method::ClosedForm)
                .with_detail(format!("{gamma} * {} * e^(-3 pi {y}) / (1 - e^(-pi {y}))", s.power)),
        );
        let q = exp_ball(&c.scale(-2.0));
        let head = if k == 4 {
            CertReal::exact(1.0).add(&q.scale(240.0)).add(&q.mul(&q).scale(2160.0))
        } else {
            let a = CertReal::exact(1.0).sub(&q.scale(252.0));
            let v = a.mul(&a).sub(&q.mul(&q).scale(80136.0));
            CertReal::new(v.value.abs(), v.err)
        };
        r.entries.push(line(format!("{tag}: head constant"), s.head, head, Relation::Lt, Method::Arithmetic));
        r.entries.push(BoundLedgerEntry::exact(
            GROUP_LINE,
            format!("{tag}: head + tail"),
            s.main,
            Relation::Le,
            exact_dec(s.head) + exact_dec(s.tail),
        ));
        if k == 6 {
            // the printed head step evaluates at x = 0 only; record the true maximum
            let lip = up(2.0 * PI * (504.0 * q.hi() + 2.0 * 16632.0 * q.hi() * q.hi()));
            let (m, h) = line_max(
                |t| {
                    let z = exp_ball(&pi().scale(-2.0 * y));
                    let ph = Complex64::new(0.0, 2.0 * PI * t.value.re).exp();
                    let v = Complex64::new(1.0, 0.0) - ph * 504.0 * z.value - ph * ph * 16632.0 * z.value * z.value;
                    Ok(CertValue::new(v, up(v.norm() * 16.0 * U + 17136.0 * z.err)))
                },
                y,
                lip,
                LINE_STEP,
            )?;
            r.diagnostics.push(line(
                format!("{tag}: max over x of the two-term head"),
                s.head,
                m,
                Relation::Lt,
                Method::Grid { step: h },
            ));
        }
        let lip = derivative_bound(k, y)?;
        let (m, h) = line_max(|t| eval_eisenstein(k, t), y, lip, LINE_STEP)?;
        r.entries.push(
            line(format!("|E{k}(x + {y}i)| < {}", s.main), s.main, m, Relation::Lt, Method::Grid { step: h })
                .with_detail(format!("derivative bound {lip:.4}")),
        );
    }
    Ok(r)
}

fn arc(name: &str, claimed: f64, computed: CertReal, relation: Relation, method: Method) -> BoundLedgerEntry {
    BoundLedgerEntry::check(GROUP_ARC, name, claimed, computed, relation, method)
}

/// Grid step for the sampled sign checks on the arc.
pub const ARC_STEP: f64 = 1e-3;

/// `E_4(i)`, `|e_4(1.9)|`, `e_6(1.9)` and `E_6(rho)` with their closed forms
/// and the rounded ingredients used in the `H` table, plus sampled sign
/// checks for the derivative identities behind the monotonicity of `|E_4|`
/// and `|E_6|` along the arc.
pub fn arc_eisenstein_bounds() -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    let w = |tol| Relation::Within { tol };
    let at_i = arc_functions(ArcPoint::new(ArcPoint::START)?)?;
    let at_19 = arc_functions(ArcPoint::new(1.9)?)?;
    let at_rho = arc_functions(ArcPoint::new(ArcPoint::END)?)?;
    let lem = lemniscate_constants();
    let p = pi();

    let e4i = at_i.e4.neg();
    let e4i_closed = lem.varpi.powi(4).scale(3.0).div(&p.powi(4))?;
    let e6rho = at_rho.e6;
    let e6rho_closed = lem.varpi_prime.powi(6).scale(13.5).div(&p.powi(6))?;
    let e4_19 = CertReal::new(at_19.e4.value.abs(), at_19.e4.err);
    let e6_19 = at_19.e6;

    r.entries.push(arc("varpi", 2.622057, lem.varpi, w(1e-5), Method::ClosedForm));
    r.entries.push(arc("E4(i)", 1.455761, e4i, w(1e-5), Method::ClosedForm));
    r.entries.push(arc("E4(i) = 3 varpi^4 / pi^4", 1.455761, e4i_closed, w(1e-5), Method::ClosedForm));
    r.entries.push(arc("|e4(1.9)|", 0.900253, e4_19, w(1e-5), Method::ClosedForm));
    r.entries.push(arc("e6(1.9)", 1.980151, e6_19, w(1e-5), Method::ClosedForm));
    r.entries.push(arc("E6(rho)", 2.881536, e6rho, w(1e-5), Method::ClosedForm));
    r.entries.push(arc("E6(rho) = 27 varpi'^6 / (2 pi^6)", 2.881536, e6rho_closed, w(1e-5), Method::ClosedForm));
    r.entries.push(arc("E4(i) two routes agree", 0.0, e4i.sub(&e4i_closed), w(1e-9), Method::ClosedForm));
    r.entries.push(arc("E6(rho) two routes agree", 0.0, e6rho.sub(&e6rho_closed), w(1e-9), Method::ClosedForm));
    r.diagnostics.push(arc("varpi' (one printing shows 2.622057)", 2.42865, lem.varpi_prime, w(1e-5), Method::ClosedForm));

    r.entries.push(arc("E4(i) <= 1.46", 1.46, e4i, Relation::Le, Method::ClosedForm));
    r.entries.push(arc("|e4(1.9)| <= 0.9022", 0.9022, e4_19, Relation::Le, Method::ClosedForm));
    r.entries.push(arc("e6(1.9) <= 1.99", 1.99, e6_19, Relation::Le, Method::ClosedForm));
    r.entries.push(arc("E6(rho) <= 2.89", 2.89, e6rho, Relation::Le, Method::ClosedForm));

    // sampled signs on the open arc; the endpoints are zeros of e2, e6 or e4
    let grid = arc_grid(ARC_STEP);
    let n = grid.len();
    let vals: Vec<_> = grid.iter().map(|&pt| arc_functions(pt)).collect::<Result<_>>()?;
    let inner = &vals[1..n - 1];
    let sampled = Method::Sampled { points: inner.len() };
    let min_of = |f: &dyn Fn(&crate::evalnum::ArcValues) -> CertReal| min_by_lo(inner.iter().map(f)).expect("points");
    let two_pi_3 = p.scale(2.0).div(&CertReal::exact(3.0))?;
    r.entries.push(arc("e6 > 0 on the open arc", 0.0, min_of(&|v| v.e6), Relation::Gt, sampled));
    r.entries.push(arc("-e4 > 0 on the open arc", 0.0, min_of(&|v| v.e4.neg()), Relation::Gt, sampled));
    r.entries.push(arc("-e2 > 0 on the open arc", 0.0, min_of(&|v| v.e2.neg()), Relation::Gt, sampled));
    r.entries.push(
        arc(
            "de4/dtheta = (2 pi / 3)(e6 - e4 e2) > 0",
            0.0,
            min_of(&|v| two_pi_3.mul(&v.e6.sub(&v.e4.mul(&v.e2)))),
            Relation::Gt,
            sampled,
        )
        .with_detail("e4 e2 > 0, so the sign is not implied by the signs of the factors"),
    );
    r.entries.push(arc(
        "de6/dtheta = pi (e4^2 - e6 e2) > 0",
        0.0,
        min_of(&|v| p.mul(&v.e4.mul(&v.e4).sub(&v.e6.mul(&v.e2)))),
        Relation::Gt,
        sampled,
    ));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_bounds() {
        let c = pi().scale(0.65);
        assert!((power_max(6, &c, 3).value - 1.592919).abs() < 1e-6);
        let c = pi().scale(0.75);
        assert!((power_max(6, &c, 1).value - 0.620699).abs() < 1e-6);
    }

    #[test]
    fn line_bounds_hold() {
        let r = eisenstein_line_bounds().unwrap();
        assert!(r.all_satisfied(), "{:?}", r.failures());
        let m = r.find("|E4(x + 0.65i)| < 5.9").unwrap();
        assert!((m.computed - 5.6873).abs() < 1e-3);
        let m = r.find("|E6(x + 0.75i)| < 5.25").unwrap();
        assert!((m.computed - 5.1057).abs() < 1e-3);
        let d = r.find("E6 at height 0.75: max over x of the two-term head").unwrap();
        assert!(!d.satisfied && (d.computed - 5.1412).abs() < 1e-3);
    }

    #[test]
    fn arc_bounds_hold() {
        let r = arc_eisenstein_bounds().unwrap();
        assert!(r.all_satisfied(), "{:?}", r.failures());
    }
}
