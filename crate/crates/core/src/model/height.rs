use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::point::ProjPoint;
use crate::error::{Error, Result};

/// Weighted sup-norm height `max(λ|x_0|, |x_1|, ..., |x_n|)^e` on primitive
/// representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightSpec {
    exponent: u32,
    lambda: Ratio<i64>,
}

impl HeightSpec {
    pub fn new(exponent: u32, lambda: Ratio<i64>) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::param("exponent", "must be at least 1"));
        }
        if *lambda.numer() <= 0 || *lambda.denom() <= 0 {
            return Err(Error::param("lambda", "must be positive"));
        }
        Ok(HeightSpec { exponent, lambda })
    }

    pub fn undeformed(exponent: u32) -> Result<Self> {
        HeightSpec::new(exponent, Ratio::from_integer(1))
    }

    pub fn with_lambda(&self, lambda: Ratio<i64>) -> Result<Self> {
        HeightSpec::new(self.exponent, lambda)
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn lambda(&self) -> Ratio<i64> {
        self.lambda
    }

    /// `(p, q)` with `λ = p / q` in lowest terms.
    pub(crate) fn weights(&self) -> (u128, u128) {
        (*self.lambda.numer() as u128, *self.lambda.denom() as u128)
    }

    /// `q * max(λ|x_0|, |x_1|, ...)`, an integer.
    #[inline]
    pub fn scaled_sup(&self, x: &[i64]) -> u128 {
        let (p, q) = self.weights();
        let mut m = p * x[0].unsigned_abs() as u128;
        for c in &x[1..] {
            m = m.max(q * c.unsigned_abs() as u128);
        }
        m
    }

    pub fn height(&self, p: &ProjPoint) -> BigRational {
        self.height_of_scaled_sup(self.scaled_sup(p.coords()))
    }

    pub fn height_of_scaled_sup(&self, m: u128) -> BigRational {
        let (_, q) = self.weights();
        let r = BigRational::new(BigInt::from(m), BigInt::from(q));
        num_traits::pow(r, self.exponent as usize)
    }

    /// Largest scaled sup `M` with `(M / q)^e <= bound`.
    pub fn sup_threshold(&self, bound: &BigRational) -> Result<u128> {
        if bound.is_negative() {
            return Err(Error::param("B", "must be nonnegative"));
        }
        let (_, q) = self.weights();
        let scaled = bound * BigRational::from_integer(BigInt::from(q).pow(self.exponent));
        let floor = scaled.floor().to_integer();
        let root: BigUint = floor.to_biguint().expect("nonnegative").nth_root(self.exponent);
        root.to_u128().ok_or_else(|| Error::TooLarge(format!("height bound {bound} too large")))
    }

    /// Coordinate radii of the weighted box for a scaled-sup threshold.
    pub fn radii(&self, threshold: u128, num_vars: usize) -> Result<Vec<i64>> {
        let (p, q) = self.weights();
        let conv = |v: u128| {
            i64::try_from(v).map_err(|_| Error::TooLarge("box radius exceeds i64".into()))
        };
        let mut r = vec![conv(threshold / q)?; num_vars];
        r[0] = conv(threshold / p)?;
        Ok(r)
    }
}

/// Parses `7`, `-3/4`, `2.5` or `1e4` as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::param("rational", format!("cannot parse `{s}`"));
    if let Some((a, b)) = s.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| err())?;
        let den: BigInt = b.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    if exp.unsigned_abs() > 1000 {
        return Err(err());
    }
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    if matches!(digits.as_str(), "" | "-" | "+") {
        return Err(err());
    }
    let num: BigInt = digits.parse().map_err(|_| err())?;
    let ten = BigInt::from(10);
    let shift = exp - frac_part.len() as i32;
    let r = if shift >= 0 {
        BigRational::from_integer(num * ten.pow(shift as u32))
    } else {
        BigRational::new(num, ten.pow((-shift) as u32))
    };
    Ok(r)
}

/// Parses a positive rational that fits in `i64` components.
pub fn parse_lambda(s: &str) -> Result<Ratio<i64>> {
    let r = parse_rational(s)?;
    let (n, d) = (r.numer().to_i64(), r.denom().to_i64());
    match (n, d) {
        (Some(n), Some(d)) if n > 0 => Ok(Ratio::new(n, d)),
        _ => Err(Error::param("lambda", format!("`{s}` is not a positive rational of moderate size"))),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
