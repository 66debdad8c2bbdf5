use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The residues a weight can leave after removing multiples of 12.
pub const KPRIMES: [i64; 6] = [0, 4, 6, 8, 10, 14];

/// A Miller basis element `g_{k,m}` addressed by its weight decomposition
/// `k = 12 ell + kprime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormId {
    pub k: i64,
    pub ell: i64,
    pub kprime: i64,
    pub m: i64,
}

/// Split an even weight into `(ell, kprime)`.
pub fn split_weight(k: i64) -> Result<(i64, i64)> {
    if k < 0 || k % 2 != 0 || k == 2 {
        return Err(Error::UnsupportedWeight(k));
    }
    let (ell, kprime) = if k % 12 == 2 { (k / 12 - 1, 14) } else { (k / 12, k % 12) };
    Ok((ell, kprime))
}

impl FormId {
    pub fn new(k: i64, m: i64) -> Result<Self> {
        let (ell, kprime) = split_weight(k)?;
        if m < 0 || m > ell {
            return Err(Error::BadIndex { m, ell });
        }
        Ok(FormId { k, ell, kprime, m })
    }

    /// Build from the decomposition directly; validates the invariants.
    pub fn from_parts(ell: i64, kprime: i64, m: i64) -> Result<Self> {
        if ell < 0 || !KPRIMES.contains(&kprime) {
            return Err(Error::InvalidForm(format!("ell = {ell}, kprime = {kprime}")));
        }
        Self::new(12 * ell + kprime, m)
    }

    /// Number of nontrivial zeros, `ell - m`.
    pub fn degree(&self) -> i64 {
        self.ell - self.m
    }

    /// Hypothesis of the effective zero-location theorem.
    pub fn meets_effective_bound(&self) -> bool {
        2 * self.ell > 9 * self.m + 19
    }

    /// Order of the trivial zero at `i` forced by `E_{k'}`.
    pub fn trivial_order_i(&self) -> i64 {
        match self.kprime {
            6 | 10 | 14 => 1,
            _ => 0,
        }
    }

    /// Order of the trivial zero at `rho` forced by `E_{k'}`.
    pub fn trivial_order_rho(&self) -> i64 {
        match self.kprime {
            4 | 10 => 1,
            8 | 14 => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g_{{{},{}}} (ell={}, k'={})", self.k, self.m, self.ell, self.kprime)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition() {
        assert_eq!(split_weight(12).unwrap(), (1, 0));
        assert_eq!(split_weight(14).unwrap(), (0, 14));
        assert_eq!(split_weight(26).unwrap(), (1, 14));
        assert_eq!(split_weight(124).unwrap(), (10, 4));
        assert_eq!(split_weight(132).unwrap(), (11, 0));
        assert!(split_weight(2).is_err());
        assert!(split_weight(7).is_err());
        assert!(split_weight(-4).is_err());
        for k in (0..400).step_by(2).filter(|&k| k != 2) {
            let (ell, kp) = split_weight(k).unwrap();
            assert_eq!(12 * ell + kp, k);
            assert!(KPRIMES.contains(&kp));
        }
    }

    #[test]
    fn bounds_on_m() {
        assert!(FormId::new(48, 4).is_ok());
        assert_eq!(FormId::new(48, 5), Err(Error::BadIndex { m: 5, ell: 4 }));
        assert!(FormId::new(48, -1).is_err());
    }

    #[test]
    fn effective_bound_hypothesis() {
        // ell > 4.5 m + 9.5
        assert!(FormId::new(192, 1).unwrap().meets_effective_bound());
        assert!(!FormId::new(168, 1).unwrap().meets_effective_bound());
        assert!(FormId::new(240, 2).unwrap().meets_effective_bound());
        assert!(!FormId::new(132, 9).unwrap().meets_effective_bound());
    }
}
