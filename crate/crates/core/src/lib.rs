//! Miller bases, Faber polynomials and certified zero localization for
//! modular forms on the full modular group.

pub mod certify;
pub mod cli;
pub mod error;
pub mod evalnum;
pub mod formid;
pub mod miller;
pub mod poly;
pub mod qseries;
pub mod zeros;

pub use error::{Error, Result};
pub use formid::FormId;
