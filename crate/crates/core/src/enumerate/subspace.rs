//! Points of bounded height on a linear subspace.
//!
//! Every ambient point `x` of `L` satisfies `w = x_S · adj(A_S)` for a
//! nonsingular maximal minor `A_S` of the basis, and is the class of `w · A`.
//! Enumerating primitive `w` in the box this implies and filtering by exact
//! ambient height visits each point once, since `w ↦ [w · A]` is injective
//! on projective classes.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{bin_index, for_each_primitive, EnumStrategy, PointPredicate};
use crate::error::{Error, Result};
use crate::model::{HeightSpec, LinearSubspace, ProjPoint};
use crate::series::{validate_grid, CountSeries};

pub(crate) fn visit<F: FnMut(&ProjPoint, u128)>(l: &LinearSubspace, h: &HeightSpec, threshold: u128, mut f: F) -> Result<()> {
    let radii = h.radii(threshold, l.ambient_vars())?;
    let (cols, adj, _) = l.invertible_minor();
    let k = l.basis().len();
    let mut params = vec![0i64; k];
    for (j, pj) in params.iter_mut().enumerate() {
        let mut acc: i128 = 0;
        for (i, &c) in cols.iter().enumerate() {
            let a = adj[i][j].to_i128().ok_or_else(|| Error::Overflow("adjugate entry".into()))?;
            acc = acc
                .checked_add((radii[c] as i128).checked_mul(a.abs()).ok_or_else(|| Error::Overflow("parameter radius".into()))?)
                .ok_or_else(|| Error::Overflow("parameter radius".into()))?;
        }
        *pj = i64::try_from(acc).map_err(|_| Error::TooLarge("parameter radius exceeds i64".into()))?;
    }
    let basis: Vec<Vec<i128>> = l.basis().iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let n = l.ambient_vars();
    let mut y = vec![0i128; n];
    let mut err = None;
    for_each_primitive(&params, |w| {
        if err.is_some() {
            return;
        }
        y.iter_mut().for_each(|c| *c = 0);
        for (wi, row) in w.iter().zip(&basis) {
            if *wi == 0 {
                continue;
            }
            for (yc, &b) in y.iter_mut().zip(row) {
                *yc += *wi as i128 * b;
            }
        }
        match ProjPoint::normalize_i128(&y) {
            Ok(p) => {
                let m = h.scaled_sup(p.coords());
                if m <= threshold {
                    f(&p, m);
                }
            }
            // Coordinates past i64 are far outside any feasible box.
            Err(Error::Overflow(_)) => {}
            Err(e) => err = Some(e),
        }
    });
    err.map_or(Ok(()), Err)
}

/// Ambient points of `l` with `height(h, p) <= bound`.
pub fn enumerate_subspace(
    l: &LinearSubspace,
    h: &HeightSpec,
    bound: &BigRational,
    strategy: EnumStrategy,
) -> Result<Vec<ProjPoint>> {
    if let EnumStrategy::Sharded(_, 0) = strategy {
        return Err(Error::param("workers", "must be at least 1"));
    }
    let threshold = h.sup_threshold(bound)?;
    let mut out = Vec::new();
    visit(l, h, threshold, |p, _| out.push(p.clone()))?;
    Ok(out)
}

/// Counts of `l` (minus points failing `predicate`) along `grid`.
pub fn subspace_series(
    l: &LinearSubspace,
    h: &HeightSpec,
    grid: &[BigRational],
    predicate: Option<&PointPredicate>,
    region: &str,
) -> Result<CountSeries> {
    validate_grid(grid)?;
    let thresholds = grid.iter().map(|b| h.sup_threshold(b)).collect::<Result<Vec<_>>>()?;
    let mut bins = vec![0u64; grid.len()];
    visit(l, h, *thresholds.last().expect("nonempty"), |p, m| {
        if predicate.is_none_or(|f| f(p.coords())) {
            if let Some(k) = bin_index(&thresholds, m) {
                bins[k] += 1;
            }
        }
    })?;
    Ok(CountSeries::from_bins(grid.to_vec(), &bins, region))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CompleteIntersection;
    use num_bigint::BigInt;
    use num_rational::Ratio;
    use std::collections::BTreeSet;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    /// Oracle: ambient enumeration filtered by membership.
    fn ambient(l: &LinearSubspace, h: &HeightSpec, b: i64) -> BTreeSet<ProjPoint> {
        let pn = CompleteIntersection::projective_space(l.ambient_vars() - 1);
        super::super::enumerate_points(&pn, h, &int(b), EnumStrategy::Naive)
            .unwrap()
            .into_iter()
            .filter(|p| l.contains_point(p))
            .collect()
    }

    #[test]
    fn hyperplane_in_p2() {
        let l = LinearSubspace::new(vec![vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let h = HeightSpec::undeformed(1).unwrap();
        assert_eq!(enumerate_subspace(&l, &h, &int(1), EnumStrategy::Naive).unwrap().len(), 4);
    }

    #[test]
    fn skew_subspaces_match_ambient_filter() {
        let h = HeightSpec::new(1, Ratio::new(3, 2)).unwrap();
        for basis in [
            vec![vec![1, 2, 3, 4]],
            vec![vec![2, 0, 1, 1], vec![0, 3, 1, -1]],
            vec![vec![1, 1, 0, 0], vec![0, 2, 2, 0], vec![0, 0, 3, 3]],
            vec![vec![6, 4, 2, 0], vec![1, -1, 1, -1]],
        ] {
            let l = LinearSubspace::new(basis).unwrap();
            let got: Vec<_> = enumerate_subspace(&l, &h, &int(12), EnumStrategy::Naive).unwrap();
            let set: BTreeSet<_> = got.iter().cloned().collect();
            assert_eq!(set.len(), got.len(), "duplicate emission");
            assert_eq!(set, ambient(&l, &h, 12));
        }
    }

    #[test]
    fn series_is_lambda_invariant_off_x0() {
        let l = LinearSubspace::new(vec![vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 1]]).unwrap();
        let grid: Vec<_> = [1, 4, 16, 64, 256].iter().map(|&b| int(b)).collect();
        let base = subspace_series(&l, &HeightSpec::undeformed(2).unwrap(), &grid, None, "L").unwrap();
        for lam in [10, 100] {
            let h = HeightSpec::new(2, Ratio::from_integer(lam)).unwrap();
            assert_eq!(subspace_series(&l, &h, &grid, None, "L").unwrap().counts, base.counts);
        }
    }
}
