use thiserror::Error;

use crate::formid::FormId;

/// Errors raised by the series, basis, evaluation and certification layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series has a zero leading coefficient and cannot be inverted")]
    ZeroLeading,
    #[error("unsupported weight {0}: expected an even non-negative integer")]
    UnsupportedWeight(i64),
    #[error("index m = {m} outside 0..={ell}")]
    BadIndex { m: i64, ell: i64 },
    #[error("series is not in the weight-{k} space: residual at q^{exponent} is {residual}")]
    NotInSpace { k: i64, exponent: i64, residual: String },
    #[error("elimination produced a non-integral coefficient {0}")]
    NonIntegral(String),
    #[error("no tail bound applies: {0}")]
    TailUnbounded(String),
    #[error("value expected real but imaginary part {imag:e} exceeds error radius {err:e}")]
    NotReal { imag: f64, err: f64 },
    #[error("point outside the evaluation region: {0}")]
    OutsideRegion(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("certificate failed: {0}")]
    CertificateFailure(String),
    #[error("sign at theta = {theta} inconclusive: |value| = {value:e} <= err = {err:e}")]
    InconclusiveSign { theta: f64, value: f64, err: f64 },
    #[error("theorem check failed for {id}: {reason}")]
    TheoremViolation { id: FormId, reason: String },
    #[error("invalid form id: {0}")]
    InvalidForm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
