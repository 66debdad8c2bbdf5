//! Certified floating-point evaluation of the standard forms, of Miller basis
//! elements, and of the real arc functions `e_2, e_4, e_6, delta`.
//!
//! Every value carries a radius covering the truncation tail, the rounding of
//! the computation and the uncertainty in the evaluation point.

mod arc;
mod ball;
mod ext;
mod faber;
mod lemniscate;
mod series;

pub use arc::{
    arc_form, arc_form_from, arc_functions, arc_functions_with, arc_grid, arc_table, eval_form, eval_form_ball, write_csv, ArcFunction,
    ArcPoint, ArcSample, ArcValues,
};
pub use ball::{up, CertReal, CertValue, ExtCert, ExtCertReal, U};
pub use ext::{XComplex, XReal};
pub use faber::{eval_poly_ball, eval_poly_real};
pub use lemniscate::{lemniscate_constants, Lemniscate};
pub use series::{
    eisenstein_gamma_abs, eval_delta_eta, eval_delta_eta_ball, eval_eisenstein, eval_j, eval_series, eval_series_ball,
    j_tail_bound, kernel, q_abs, Kernel, Known, TailBound, ETA_TERMS, KERNEL_TRUNC, MIN_HEIGHT,
};
