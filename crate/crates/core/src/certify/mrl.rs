//! The approximation `e^{i k theta/2} e^{2 pi m sin theta} g_{k,m}(e^{i theta})
//! ~ 2 cos(k theta/2 + 2 pi m cos theta)` on the arc, checked on a grid.

use rayon::prelude::*;
use serde::Serialize;

use super::{cos_ball, exp_ball, pi, sin_ball};
use crate::error::{Error, Result};
use crate::evalnum::{arc_form_from, arc_functions, arc_grid, up, CertReal, U};
use crate::formid::FormId;
use crate::miller::miller_form;

/// `e^{pi m (2 sin theta - tan(theta/2))} / (2 cos(theta/2))^k`, the size of
/// the residue contribution.
pub fn residue_term(theta: f64, k: i64, m: i64) -> f64 {
    let expo = std::f64::consts::PI * m as f64 * (2.0 * theta.sin() - (theta / 2.0).tan());
    (expo - k as f64 * (2.0 * (theta / 2.0).cos()).ln()).exp()
}

/// Whether [`residue_term`] increases along a grid of the arc; it then
/// stays below its limit 1 at `2 pi/3`.
pub fn residue_term_increasing(k: i64, m: i64, step: f64) -> bool {
    let vals: Vec<f64> = arc_grid(step).iter().map(|p| residue_term(p.theta(), k, m)).collect();
    vals.windows(2).all(|w| w[0] <= w[1] * (1.0 + 1e-12)) && vals.iter().all(|&v| v <= 1.0 + 1e-12)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MrlReport {
    pub id: FormId,
    /// `ell > 4.5 m + 9.5`.
    pub hypothesis: bool,
    pub grid_step: f64,
    pub points: usize,
    /// Largest midpoint of `|lhs - 2 cos h|` over the grid.
    pub max: f64,
    /// Largest radius over the grid.
    pub err: f64,
    pub argmax: f64,
    /// `max + err < 2`.
    pub satisfied: bool,
}

fn deviation(form: &crate::miller::MillerForm, theta: f64) -> Result<CertReal> {
    let id = form.id;
    let pt = crate::evalnum::ArcPoint::new(theta)?;
    let v = arc_functions(pt)?;
    let g = arc_form_from(form, &v)?;
    let th = CertReal::exact(theta);
    let weight = exp_ball(&pi().scale(2.0 * id.m as f64).mul(&sin_ball(&th)));
    let lhs = g
        .mul(&weight.to_ext())
        .to_cert()
        .ok_or_else(|| Error::DomainError(format!("{id}: arc value out of range at theta = {theta}")))?;
    let h = th.scale(id.k as f64 / 2.0).add(&pi().scale(2.0 * id.m as f64).mul(&cos_ball(&th)));
    let c = cos_ball(&h).scale(2.0);
    let d = lhs.sub(&c);
    Ok(CertReal::new(d.value.abs(), up(d.err + d.value.abs() * U)))
}

/// Grid maximum of `|e^{i k theta/2} e^{2 pi m sin theta} g_{k,m}(e^{i theta})
/// - 2 cos(k theta/2 + 2 pi m cos theta)|` over the arc. Violations are
/// reported, not raised.
pub fn proposition_mrl_check(id: FormId, grid_step: f64) -> Result<MrlReport> {
    let form = miller_form(id, 0)?;
    let grid = arc_grid(grid_step);
    let vals: Vec<(f64, CertReal)> = grid
        .par_iter()
        .map(|p| deviation(&form, p.theta()).map(|d| (p.theta(), d)))
        .collect::<Result<_>>()?;
    let (argmax, worst) = vals
        .iter()
        .max_by(|a, b| a.1.value.total_cmp(&b.1.value))
        .copied()
        .expect("grid is nonempty");
    let err = vals.iter().map(|v| v.1.err).fold(0.0, f64::max);
    let reach = vals.iter().map(|v| v.1.hi()).fold(0.0, f64::max);
    Ok(MrlReport {
        id,
        hypothesis: 2 * id.ell > 9 * id.m + 19,
        grid_step,
        points: grid.len(),
        max: worst.value,
        err,
        argmax,
        satisfied: reach < 2.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue() {
        let end = 2.0 * std::f64::consts::PI / 3.0;
        assert!((residue_term(end, 200, 3) - 1.0).abs() < 1e-9);
        assert!((residue_term(1.7, 24, 0) - (2.0 * 0.85f64.cos()).powi(-24)).abs() < 1e-12);
        assert!(residue_term_increasing(24, 0, 1e-2));
        // k >= 8 pi m / sqrt 3
        assert!(residue_term_increasing(15, 1, 1e-3));
        assert!(residue_term_increasing(146, 10, 1e-3));
    }

    #[test]
    fn mrl_small() {
        let r = proposition_mrl_check(FormId::new(192, 1).unwrap(), 1e-2).unwrap();
        assert!(r.hypothesis && r.satisfied, "{r:?}");
        let r = proposition_mrl_check(FormId::new(132, 9).unwrap(), 1e-2).unwrap();
        assert!(!r.hypothesis);
    }
}
