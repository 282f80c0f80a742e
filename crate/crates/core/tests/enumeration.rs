use std::collections::BTreeSet;

use manin_core::enumerate::{
    count, count_series, enumerate_parametrized_curve, enumerate_points, enumerate_subspace, subspace_series,
    BaseStrategy, EnumStrategy, ParametrizedCurve,
};
use manin_core::fano::{fermat_hypersurface, fermat_plane};
use manin_core::model::{CompleteIntersection, Form, HeightSpec, LinearSubspace};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use proptest::prelude::*;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Normalized primitive vectors with `max(p|x0|, q|xi|)^e <= B q^e` on
/// `Σ c_i x_i^d = 0`, by a plain box scan.
fn brute_diagonal(coeffs: &[i64], d: u32, e: u32, (p, q): (i64, i64), b: i64) -> BTreeSet<Vec<i64>> {
    let n = coeffs.len();
    let limit = b as i128 * (q as i128).pow(e);
    let root = (b as f64).powf(1.0 / e as f64);
    let radii: Vec<i64> =
        (0..n).map(|i| if i == 0 { (root * q as f64 / p as f64).ceil() as i64 + 1 } else { root.ceil() as i64 + 1 }).collect();
    let mut out = BTreeSet::new();
    let mut x: Vec<i64> = radii.iter().map(|r| -r).collect();
    loop {
        let g = x.iter().fold(0, |g, &v| gcd(g, v));
        let lead = x.iter().find(|&&v| v != 0).copied().unwrap_or(0);
        if g == 1 && lead > 0 {
            let m = x.iter().enumerate().map(|(i, &v)| v.abs() as i128 * if i == 0 { p } else { q } as i128).max().unwrap();
            let value: i128 = x.iter().zip(coeffs).map(|(&v, &c)| c as i128 * (v as i128).pow(d)).sum();
            if value == 0 && m.pow(e) <= limit {
                out.insert(x.clone());
            }
        }
        let mut i = 0;
        while i < n && x[i] == radii[i] {
            x[i] = -radii[i];
            i += 1;
        }
        if i == n {
            return out;
        }
        x[i] += 1;
    }
}

fn as_set(points: Vec<manin_core::model::ProjPoint>) -> BTreeSet<Vec<i64>> {
    points.into_iter().map(|p| p.coords().to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn strategies_match_brute_force(
        coeffs in prop::collection::vec(prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), 4),
        d in 2u32..=3,
        lam in prop::sample::select(vec![(1i64, 1i64), (3, 1), (1, 2), (5, 3)]),
        b in 1i64..=12,
    ) {
        let x = CompleteIntersection::new(3, vec![Form::diagonal(d, &coeffs).unwrap()]).unwrap();
        let h = HeightSpec::new(1, Ratio::new(lam.0, lam.1)).unwrap();
        let expected = brute_diagonal(&coeffs, d, 1, lam, b);
        for s in [
            EnumStrategy::Naive,
            EnumStrategy::SolveLast,
            EnumStrategy::Sharded(BaseStrategy::Naive, 3),
            EnumStrategy::Sharded(BaseStrategy::SolveLast, 2),
        ] {
            prop_assert_eq!(&as_set(enumerate_points(&x, &h, &int(b), s).unwrap()), &expected, "{}", s);
        }
    }

    #[test]
    fn series_is_consistent_with_single_counts(b0 in 1i64..20, steps in 1usize..6) {
        let x = fermat_hypersurface(3, 2).unwrap();
        let h = HeightSpec::new(2, Ratio::from_integer(2)).unwrap();
        let grid: Vec<BigRational> = (0..steps).map(|k| int(b0 << (2 * k))).collect();
        let series = count_series(&x, &h, &grid, EnumStrategy::SolveLast, None, "X").unwrap();
        prop_assert!(series.is_nondecreasing());
        for (b, &n) in grid.iter().zip(&series.counts) {
            prop_assert_eq!(count(&x, &h, b, EnumStrategy::Naive, None).unwrap(), n);
        }
    }

    #[test]
    fn lambda_does_not_change_counts_on_x0_zero(p in 1i64..200, q in 1i64..7, top in 4i64..400) {
        let line = fermat_plane(4, 3).unwrap();
        let grid: Vec<BigRational> = [top / 4 + 1, top / 2 + 2, top + 3].iter().map(|&v| int(v)).collect();
        let base = subspace_series(&line, &HeightSpec::undeformed(2).unwrap(), &grid, None, "L").unwrap();
        let deformed = subspace_series(&line, &HeightSpec::new(2, Ratio::new(p, q)).unwrap(), &grid, None, "L").unwrap();
        prop_assert_eq!(base.counts, deformed.counts);
    }

    #[test]
    fn subspace_points_match_ambient_filter(
        rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 2),
        b in 1i64..=15,
    ) {
        let l = match LinearSubspace::new(rows) {
            Ok(l) => l,
            Err(_) => return Ok(()),
        };
        let h = HeightSpec::undeformed(1).unwrap();
        let got = as_set(enumerate_subspace(&l, &h, &int(b), EnumStrategy::Naive).unwrap());
        let ambient = CompleteIntersection::projective_space(3);
        let expected: BTreeSet<Vec<i64>> = enumerate_points(&ambient, &h, &int(b), EnumStrategy::Naive)
            .unwrap()
            .into_iter()
            .filter(|pt| l.contains_point(pt))
            .map(|pt| pt.coords().to_vec())
            .collect();
        prop_assert_eq!(got, expected);
    }
}

#[test]
fn conic_image_matches_ambient_count() {
    // (u^2, uv, v^2) is the conic x0 x2 = x1^2.
    let c = ParametrizedCurve::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let x = CompleteIntersection::new(
        2,
        vec![Form::from_terms(3, vec![(vec![1, 0, 1], 1), (vec![0, 2, 0], -1)]).unwrap()],
    )
    .unwrap();
    assert!(c.is_contained_in(&x).unwrap());
    let h = HeightSpec::undeformed(1).unwrap();
    for b in [1, 7, 50, 300] {
        let on_curve = as_set(enumerate_parametrized_curve(&c, &h, &int(b)).unwrap());
        let ambient = as_set(enumerate_points(&x, &h, &int(b), EnumStrategy::Naive).unwrap());
        assert_eq!(on_curve, ambient, "B={b}");
    }
}

#[test]
fn ct_quadrics_contains_its_line_points() {
    let x = manin_core::builtins::ct_quadrics().unwrap();
    let l = manin_core::builtins::ct_quadrics_line().unwrap();
    let h = HeightSpec::undeformed(2).unwrap();
    let on_line = as_set(enumerate_subspace(&l, &h, &int(100), EnumStrategy::Naive).unwrap());
    let on_x = as_set(enumerate_points(&x, &h, &int(100), EnumStrategy::SolveLast).unwrap());
    assert!(!on_line.is_empty());
    assert!(on_line.is_subset(&on_x));
}
