use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u128, gcd_u64};
use crate::error::{Error, Result};

/// A rational point of projective space, stored as its primitive integer
/// representative with the first nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint {
    coords: Vec<i64>,
}

impl ProjPoint {
    /// The unique primitive, sign-normalized representative of the class of `v`.
    pub fn normalize(v: &[i64]) -> Result<Self> {
        let g = v.iter().fold(0u64, |g, &c| gcd_u64(g, c.unsigned_abs()));
        if g == 0 {
            return Err(Error::InvalidPoint("zero vector".into()));
        }
        let lead = v.iter().find(|&&c| c != 0).copied().unwrap_or(0);
        let sign: i128 = if lead < 0 { -1 } else { 1 };
        let coords = v
            .iter()
            .map(|&c| i64::try_from(sign * c as i128 / g as i128))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Overflow("normalized coordinate exceeds i64".into()))?;
        Ok(ProjPoint { coords })
    }

    /// Like [`ProjPoint::normalize`] for wide intermediate vectors.
    pub fn normalize_i128(v: &[i128]) -> Result<Self> {
        let g = v.iter().fold(0u128, |g, &c| gcd_u128(g, c.unsigned_abs()));
        if g == 0 {
            return Err(Error::InvalidPoint("zero vector".into()));
        }
        let lead = v.iter().find(|&&c| c != 0).copied().unwrap_or(0);
        let coords = v
            .iter()
            .map(|&c| {
                let q = (c.unsigned_abs() / g) as i128 * c.signum();
                i64::try_from(if lead < 0 { -q } else { q })
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Overflow("normalized coordinate exceeds i64".into()))?;
        Ok(ProjPoint { coords })
    }

    /// Wraps coordinates already known to be primitive and normalized.
    pub(crate) fn from_normalized(coords: Vec<i64>) -> Self {
        debug_assert!(Self::is_normalized(&coords));
        ProjPoint { coords }
    }

    pub fn is_normalized(v: &[i64]) -> bool {
        let g = v.iter().fold(0u64, |g, &c| gcd_u64(g, c.unsigned_abs()));
        g == 1 && v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Number of homogeneous coordinates (`n + 1`).
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn sup_norm(&self) -> u64 {
        self.coords.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
