//! Numerical criteria for linear subspaces on complete intersections, the
//! monomial-count inequality behind them, and the Fermat plane constructions.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::model::{CompleteIntersection, Form, LinearSubspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoCriterion {
    pub n: u64,
    pub r: u64,
    pub degrees: Vec<u64>,
    /// `(r+1)(n-r) - Σ C(d_i + r, r)`.
    #[serde(with = "bigint_string")]
    pub expected_dim: BigInt,
    /// `n - 2r - s`.
    pub slack: i64,
    pub general_nonempty: bool,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn check(n: u64, degrees: &[u64], r: u64) -> Result<()> {
    if degrees.is_empty() {
        return Err(Error::param("degrees", "need at least one degree"));
    }
    if degrees.contains(&0) {
        return Err(Error::param("degrees", "degrees must be positive"));
    }
    if r >= n {
        return Err(Error::param("r", format!("need r < n, got r = {r}, n = {n}")));
    }
    Ok(())
}

/// `(r+1)(n-r) - Σ C(d_i + r, r)`, possibly negative.
pub fn expected_dimension(n: u64, degrees: &[u64], r: u64) -> Result<BigInt> {
    check(n, degrees, r)?;
    let grass = BigInt::from(r + 1) * BigInt::from(n - r);
    let conditions: BigInt = degrees.iter().map(|&d| BigInt::from(binomial(d + r, r))).sum();
    Ok(grass - conditions)
}

pub fn general_nonempty(n: u64, degrees: &[u64], r: u64) -> Result<FanoCriterion> {
    let expected_dim = expected_dimension(n, degrees, r)?;
    let slack = n as i64 - 2 * r as i64 - degrees.len() as i64;
    let general_nonempty = expected_dim >= BigInt::from(0) && slack >= 0;
    Ok(FanoCriterion { n, r, degrees: degrees.to_vec(), expected_dim, slack, general_nonempty })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomInequality {
    pub d: u64,
    pub r: u64,
    #[serde(with = "bigint_string")]
    pub lhs: BigInt,
    #[serde(with = "bigint_string")]
    pub rhs: BigInt,
    pub equal: bool,
}

/// `C(d+r, r)` against `d(r+1)`, the number of monomials of degree `d` in
/// `r+1` variables against the cyclic family `x_i^a x_{i+1}^(d-a)`.
pub fn binom_inequality(d: u64, r: u64) -> Result<BinomInequality> {
    if d < 2 || r < 2 {
        return Err(Error::param("d, r", "both must be at least 2"));
    }
    let lhs = BigInt::from(binomial(d + r, r));
    let rhs = BigInt::from(d) * BigInt::from(r + 1);
    debug_assert!(lhs >= rhs);
    Ok(BinomInequality { d, r, equal: lhs == rhs, lhs, rhs })
}

/// All `(d, r)` with `2 <= d, r <= max`, in row-major order.
pub fn binom_scan(max: u64) -> Vec<BinomInequality> {
    (2..=max)
        .flat_map(|d| (2..=max).map(move |r| binom_inequality(d, r).expect("in range")))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlaneClass {
    PlaneForGeneral,
    NoPlaneForGeneral,
    /// Even `n` and `n/2 - 1` quadrics: the equality case of the monomial
    /// count, where a general member does contain planes.
    QuadricsBoundaryCase,
}

/// Whether a general complete intersection with these degrees contains an
/// `(n-d)`-plane, for `d_i >= 2` and `d < n - 1`.
pub fn contains_plane_general(n: u64, degrees: &[u64]) -> Result<PlaneClass> {
    if degrees.is_empty() || degrees.iter().any(|&d| d < 2) {
        return Err(Error::OutOfRegime("all degrees must be at least 2".into()));
    }
    let d: u64 = degrees.iter().sum();
    if d + 1 >= n {
        return Err(Error::OutOfRegime(format!("need d < n - 1, got d = {d}, n = {n}")));
    }
    let s = degrees.len() as u64;
    if n.is_multiple_of(2) && degrees.iter().all(|&e| e == 2) && 2 * (s + 1) == n {
        return Ok(PlaneClass::QuadricsBoundaryCase);
    }
    let crit = general_nonempty(n, degrees, n - d)?;
    Ok(if crit.general_nonempty { PlaneClass::PlaneForGeneral } else { PlaneClass::NoPlaneForGeneral })
}

/// `n >= σ + (d-1) 2^d`.
pub fn birch_bound(n: u64, d: u32, sigma: u64) -> bool {
    match 1u64.checked_shl(d).and_then(|p| p.checked_mul(d.saturating_sub(1) as u64)) {
        Some(t) => t.checked_add(sigma).is_some_and(|b| n >= b),
        None => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionRow {
    pub s: u64,
    pub e: u64,
    #[serde(with = "bigint_string")]
    pub lhs: BigInt,
    #[serde(with = "bigint_string")]
    pub rhs: BigInt,
    pub holds: bool,
}

/// `(d-1) 2^d >= s(s+1)(e-1) 2^(e-1)` with `d = s e`, for `1 <= s, e <= max`.
pub fn induction_scan(max: u64) -> Vec<InductionRow> {
    let two = BigInt::from(2);
    let mut out = Vec::new();
    for s in 1..=max {
        for e in 1..=max {
            let d = s * e;
            let lhs = BigInt::from(d - 1) * num_traits::pow(two.clone(), d as usize);
            let rhs = BigInt::from(s * (s + 1) * (e - 1)) * num_traits::pow(two.clone(), (e - 1) as usize);
            out.push(InductionRow { s, e, holds: lhs >= rhs, lhs, rhs });
        }
    }
    out
}

/// `x_0^d + ... + x_r^d - x_(r+1)^d - ... - x_n^d` with `r = floor(n/2)`.
pub fn fermat_form(n: usize, d: u32) -> Result<Form> {
    if n < 1 || d < 1 {
        return Err(Error::param("n, d", "need n >= 1 and d >= 1"));
    }
    let r = n / 2;
    let coeffs: Vec<i64> = (0..=n).map(|i| if i <= r { 1 } else { -1 }).collect();
    Form::diagonal(d, &coeffs)
}

pub fn fermat_hypersurface(n: usize, d: u32) -> Result<CompleteIntersection> {
    CompleteIntersection::new(n, vec![fermat_form(n, d)?])
}

/// The full plane on the Fermat hypersurface: for `n = 2r+1` the `r`-plane
/// `x_i = x_(i+r+1)`, `i = 0..=r`; for `n = 2r` the `(r-1)`-plane `x_0 = 0`,
/// `x_i = x_(i+r)`, `i = 1..=r`.
pub fn fermat_plane_full(n: usize) -> Result<LinearSubspace> {
    if n < 2 {
        return Err(Error::param("n", "need n >= 2"));
    }
    let r = n / 2;
    let rows: Vec<Vec<i64>> = if n % 2 == 1 {
        (0..=r).map(|i| unit_pair(n + 1, i, i + r + 1)).collect()
    } else {
        (1..=r).map(|i| unit_pair(n + 1, i, i + r)).collect()
    };
    LinearSubspace::new(rows)
}

/// An `(n-d)`-plane on the Fermat hypersurface of degree `d`, obtained from
/// the full plane by keeping its first `n-d+1` diagonal pairs (the others
/// are set to zero).
pub fn fermat_plane(n: usize, d: u32) -> Result<LinearSubspace> {
    let d = d as usize;
    let min_d = if n % 2 == 1 { n.div_ceil(2) } else { n / 2 + 1 };
    if !(n > d && d >= min_d) || d < 2 {
        return Err(Error::param("n, d", format!("need n > d >= {min_d} and d >= 2, got n = {n}, d = {d}")));
    }
    let full = fermat_plane_full(n)?;
    let plane = LinearSubspace::new(full.basis()[..n - d + 1].to_vec())?;
    debug_assert!(plane.is_contained_in(&fermat_hypersurface(n, d as u32)?).unwrap_or(false));
    Ok(plane)
}

fn unit_pair(len: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; len];
    v[i] = 1;
    v[j] = 1;
    v
}

/// Degree multisets (nondecreasing, entries `>= 2`) with the given sum.
pub fn degree_partitions(total: u64) -> Vec<Vec<u64>> {
    fn rec(rest: u64, min: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for d in min..=rest {
            cur.push(d);
            rec(rest - d, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= 2 {
        rec(total, 2, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn expected_dimensions() {
        assert_eq!(expected_dimension(4, &[3], 1).unwrap(), big(2));
        assert_eq!(expected_dimension(5, &[2, 2], 1).unwrap(), big(2));
        assert_eq!(expected_dimension(6, &[2, 2, 2], 2).unwrap(), big(-6));
        assert!(expected_dimension(4, &[3], 4).is_err());
        let c = general_nonempty(4, &[3], 1).unwrap();
        assert!(c.general_nonempty && c.slack == 1);
        assert!(!general_nonempty(4, &[3], 2).unwrap().general_nonempty);
    }

    #[test]
    fn monomial_inequality() {
        let b = binom_inequality(2, 2).unwrap();
        assert_eq!((b.lhs, b.rhs, b.equal), (big(6), big(6), true));
        let b = binom_inequality(3, 2).unwrap();
        assert_eq!((b.lhs, b.rhs, b.equal), (big(10), big(9), false));
        let b = binom_inequality(2, 3).unwrap();
        assert_eq!((b.lhs, b.rhs, b.equal), (big(10), big(8), false));
        assert!(binom_inequality(1, 5).is_err());
    }

    #[test]
    fn plane_classification() {
        assert_eq!(contains_plane_general(6, &[2, 2]).unwrap(), PlaneClass::QuadricsBoundaryCase);
        assert_eq!(contains_plane_general(7, &[2, 3]).unwrap(), PlaneClass::NoPlaneForGeneral);
        assert_eq!(contains_plane_general(8, &[2, 2, 2]).unwrap(), PlaneClass::QuadricsBoundaryCase);
        assert!(matches!(contains_plane_general(4, &[3]), Err(Error::OutOfRegime(_))));
        assert!(matches!(contains_plane_general(9, &[1, 2]), Err(Error::OutOfRegime(_))));
    }

    #[test]
    fn birch() {
        assert!(birch_bound(17, 3, 1));
        assert!(!birch_bound(16, 3, 1));
        assert!(!birch_bound(10, 70, 0));
    }

    #[test]
    fn fermat_planes() {
        let p = fermat_plane(5, 3).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.basis()[0], vec![1, 0, 0, 1, 0, 0]);
        assert!(p.is_contained_in(&fermat_hypersurface(5, 3).unwrap()).unwrap());
        let l = fermat_plane(4, 3).unwrap();
        assert_eq!(l.basis(), &[vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 1]]);
        let t = fermat_plane(7, 5).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(t.is_contained_in(&fermat_hypersurface(7, 5).unwrap()).unwrap());
        assert!(fermat_plane(4, 2).is_err());
        assert!(fermat_plane(4, 4).is_err());
    }

    #[test]
    fn partitions() {
        assert_eq!(degree_partitions(6), vec![vec![2, 2, 2], vec![2, 4], vec![3, 3], vec![6]]);
        assert!(degree_partitions(1).is_empty());
    }
}
