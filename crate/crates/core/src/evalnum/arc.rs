use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::ball::{up, CertReal, CertValue, ExtCert, ExtCertReal, U};
use super::faber::{eval_poly_ball, eval_poly_real};
use super::series::{
    eval_delta_eta_ball, eval_eisenstein, eval_j, eval_series_ball, TailBound, ETA_TERMS, KERNEL_TRUNC,
};
use crate::error::{Error, Result};
use crate::miller::MillerForm;
use crate::qseries::eisenstein;

/// A point `e^{i theta}` of the arc `pi/2 <= theta <= 2 pi/3`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
pub struct ArcPoint {
    theta: f64,
}

impl ArcPoint {
    pub const START: f64 = PI / 2.0;
    pub const END: f64 = 2.0 * PI / 3.0;

    pub fn new(theta: f64) -> Result<Self> {
        if !(Self::START..=Self::END).contains(&theta) {
            return Err(Error::OutsideRegion(format!("theta = {theta} is not on the arc")));
        }
        Ok(ArcPoint { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `tau = e^{i theta}` as a ball.
    pub fn tau(&self) -> CertValue {
        CertValue::new(Complex64::new(self.theta.cos(), self.theta.sin()), up(4.0 * U))
    }
}

/// `e^{i phi}` for `phi` computed in floating point from exact inputs.
fn phase(phi: f64) -> CertValue {
    let c = CertValue::cis(phi);
    CertValue::new(c.value, up(c.err + 2.0 * phi.abs() * U))
}

/// The real functions `e_2, e_4, e_6, delta` at one arc point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArcValues {
    pub theta: f64,
    pub e2: CertReal,
    pub e4: CertReal,
    pub e6: CertReal,
    pub delta: CertReal,
}

impl ArcValues {
    /// `e_{k'}(theta) = e^{i k' theta / 2} E_{k'}(e^{i theta})` from `e_4` and `e_6`.
    pub fn e_kprime(&self, kprime: i64) -> CertReal {
        let (a, b) = (self.e4, self.e6);
        match kprime {
            0 => CertReal::exact(1.0),
            4 => a,
            6 => b,
            8 => a.mul(&a),
            10 => a.mul(&b),
            14 => a.mul(&a).mul(&b),
            _ => panic!("kprime {kprime} is not a residue weight"),
        }
    }

    /// `j(e^{i theta}) = e_4^3 / delta`.
    pub fn j(&self) -> Result<CertReal> {
        self.e4.powi(3).div(&self.delta)
    }
}

/// `e^{i w theta / 2} f(e^{i theta})`, checked to be real.
fn rotate(f: &CertValue, weight: i64, theta: f64) -> Result<CertReal> {
    phase(weight as f64 * theta / 2.0).mul(f).real()
}

/// Evaluate `e_2, e_4, e_6` and `delta` at `p`; each must come out real.
pub fn arc_functions(p: ArcPoint) -> Result<ArcValues> {
    arc_functions_with(p, KERNEL_TRUNC)
}

/// [`arc_functions`] with the Eisenstein series cut at `q^trunc` and the
/// pentagonal sum lengthened in proportion.
pub fn arc_functions_with(p: ArcPoint, trunc: i64) -> Result<ArcValues> {
    let tau = p.tau();
    let th = p.theta;
    let eis = |k: i64| -> Result<CertValue> {
        if trunc == KERNEL_TRUNC {
            eval_eisenstein(k, &tau)
        } else {
            eval_series_ball(&eisenstein(k, trunc)?, &tau, TailBound::EisensteinCoeff { k })
        }
    };
    let eta_terms = (ETA_TERMS as i64 * trunc / KERNEL_TRUNC).max(ETA_TERMS as i64) as usize;
    let e2raw = phase(th).mul(&eis(2)?);
    let e2 = e2raw.add(&CertValue::new(Complex64::new(0.0, -3.0 / PI), up(3.0 / PI * U))).real()?;
    Ok(ArcValues {
        theta: th,
        e2,
        e4: rotate(&eis(4)?, 4, th)?,
        e6: rotate(&eis(6)?, 6, th)?,
        delta: rotate(&eval_delta_eta_ball(&tau, eta_terms)?, 12, th)?,
    })
}

/// `e^{i k theta / 2} g(e^{i theta})`, computed as `delta^ell e_{k'} F(j)`,
/// which is the same product with the phases distributed over the factors.
pub fn arc_form(form: &MillerForm, p: ArcPoint) -> Result<ExtCertReal> {
    let v = arc_functions(p)?;
    arc_form_from(form, &v)
}

pub fn arc_form_from(form: &MillerForm, v: &ArcValues) -> Result<ExtCertReal> {
    let id = form.id;
    let j = v.j()?;
    let fj = eval_poly_real(&form.faber, &j);
    let dl = v.delta.to_ext().powi(id.ell as u64);
    Ok(dl.mul(&v.e_kprime(id.kprime).to_ext()).mul(&fj))
}

/// `g(tau) = Delta^ell E_{k'} F(j)` at a point of the upper half-plane.
pub fn eval_form(form: &MillerForm, tau: Complex64) -> Result<ExtCert> {
    eval_form_ball(form, &CertValue::exact(tau))
}

pub fn eval_form_ball(form: &MillerForm, tau: &CertValue) -> Result<ExtCert> {
    let id = form.id;
    let d = eval_delta_eta_ball(tau, ETA_TERMS)?;
    let e = eval_eisenstein(id.kprime, tau)?;
    let j = eval_j(tau)?;
    let fj = eval_poly_ball(&form.faber, &j);
    Ok(d.to_ext().powi(id.ell as u64).mul(&e.to_ext()).mul(&fj))
}

/// Which arc function to tabulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcFunction {
    E2,
    E4,
    E6,
    Delta,
}

/// One row of an arc table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArcSample {
    pub theta: f64,
    pub value: f64,
    pub err: f64,
}

/// Equally spaced angles covering the arc with spacing at most `step`.
pub fn arc_grid(step: f64) -> Vec<ArcPoint> {
    let n = ((ArcPoint::END - ArcPoint::START) / step).ceil().max(1.0) as usize;
    (0..=n)
        .map(|i| {
            let t = if i == n { ArcPoint::END } else { ArcPoint::START + (ArcPoint::END - ArcPoint::START) * i as f64 / n as f64 };
            ArcPoint::new(t).expect("inside the arc")
        })
        .collect()
}

pub fn arc_table(f: ArcFunction, points: &[ArcPoint]) -> Result<Vec<ArcSample>> {
    points
        .iter()
        .map(|&p| {
            let v = arc_functions(p)?;
            let c = match f {
                ArcFunction::E2 => v.e2,
                ArcFunction::E4 => v.e4,
                ArcFunction::E6 => v.e6,
                ArcFunction::Delta => v.delta,
            };
            Ok(ArcSample { theta: p.theta, value: c.value, err: c.err })
        })
        .collect()
}

/// Write `theta,value,err` rows with a header.
pub fn write_csv<W: Write>(out: W, rows: &[ArcSample]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::DomainError(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::DomainError(e.to_string()))
}
