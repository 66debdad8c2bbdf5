use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::QSeries;

#[derive(Serialize, Deserialize)]
struct Wire {
    lead: i64,
    trunc: i64,
    coeffs: Vec<String>,
}

/// Parse `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        None => s.trim().parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (q != BigInt::from(0)).then(|| BigRational::new(p, q))
        }
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        Wire { lead: self.lead, trunc: self.trunc, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
            .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(de)?;
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| de::Error::custom(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let expected = (w.trunc - w.lead + 1).max(0) as usize;
        if coeffs.len() != expected {
            return Err(de::Error::custom(format!(
                "expected {expected} coefficients for lead {} and trunc {}, got {}",
                w.lead,
                w.trunc,
                coeffs.len()
            )));
        }
        Ok(QSeries::new(w.lead, coeffs, w.trunc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::eisenstein;

    #[test]
    fn json_round_trip() {
        let e12 = eisenstein(12, 3).unwrap();
        let s = serde_json::to_string(&e12).unwrap();
        assert_eq!(s, r#"{"lead":0,"trunc":3,"coeffs":["1","65520/691","134250480/691","11606736960/691"]}"#);
        let back: QSeries = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e12);
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(serde_json::from_str::<QSeries>(r#"{"lead":0,"trunc":3,"coeffs":["1"]}"#).is_err());
        assert!(serde_json::from_str::<QSeries>(r#"{"lead":0,"trunc":0,"coeffs":["1/0"]}"#).is_err());
    }
}
