//! Exact enumeration of rational points of bounded height.
//!
//! Points are visited as primitive integer vectors with first nonzero
//! coordinate positive, so every projective point is produced exactly once.
//! The iteration box is `max(λ|x_0|, |x_1|, ..., |x_n|) <= B^(1/e)`, with the
//! λ-weighted coordinate outermost.

mod curve;
mod engine;
mod projective;
mod subspace;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use curve::{enumerate_parametrized_curve, parametrized_curve_series, ParametrizedCurve};
pub use subspace::{enumerate_subspace, subspace_series};
pub(crate) use curve::visit as visit_curve;
pub(crate) use subspace::visit as visit_subspace;

use crate::arith::gcd_u64;
use crate::error::{Error, Result};
use crate::model::{CompleteIntersection, HeightSpec, ProjPoint};
use crate::series::{validate_grid, CountSeries};
use engine::{log2_bound, Engine, Shard};

/// Point filter applied to normalized coordinates.
pub type PointPredicate = dyn Fn(&[i64]) -> bool + Sync;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseStrategy {
    /// Scan the whole box.
    Naive,
    /// Scan all but the last coordinate and solve for it from the last form,
    /// which must be diagonal in that coordinate.
    SolveLast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumStrategy {
    Naive,
    SolveLast,
    /// Splits the outermost coordinate range across worker threads.
    Sharded(BaseStrategy, usize),
}

impl EnumStrategy {
    pub fn base(self) -> BaseStrategy {
        match self {
            EnumStrategy::Naive => BaseStrategy::Naive,
            EnumStrategy::SolveLast => BaseStrategy::SolveLast,
            EnumStrategy::Sharded(b, _) => b,
        }
    }

    pub fn workers(self) -> usize {
        match self {
            EnumStrategy::Sharded(_, w) => w.max(1),
            _ => 1,
        }
    }

    /// Checks that the strategy can run on `x`.
    pub fn validate(self, x: &CompleteIntersection) -> Result<()> {
        if let EnumStrategy::Sharded(_, 0) = self {
            return Err(Error::param("workers", "must be at least 1"));
        }
        if self.base() == BaseStrategy::SolveLast {
            match x.forms().last() {
                None => {
                    return Err(Error::StrategyUnsupported(
                        "solve-last needs at least one form".into(),
                    ))
                }
                Some(f) if f.diagonal_last_coefficient().is_none() => {
                    return Err(Error::StrategyUnsupported(format!(
                        "last form `{f}` is not diagonal in x{}",
                        x.n()
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

impl fmt::Display for BaseStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseStrategy::Naive => "naive",
            BaseStrategy::SolveLast => "solve-last",
        })
    }
}

impl fmt::Display for EnumStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumStrategy::Naive => write!(f, "naive"),
            EnumStrategy::SolveLast => write!(f, "solve-last"),
            EnumStrategy::Sharded(b, w) => write!(f, "sharded:{b}:{w}"),
        }
    }
}

impl FromStr for BaseStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(BaseStrategy::Naive),
            "solve-last" => Ok(BaseStrategy::SolveLast),
            _ => Err(Error::param("strategy", format!("unknown strategy `{s}`"))),
        }
    }
}

impl FromStr for EnumStrategy {
    type Err = Error;
    /// `naive`, `solve-last`, or `sharded:<base>:<workers>`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("sharded:") {
            let (base, w) = rest
                .rsplit_once(':')
                .ok_or_else(|| Error::param("strategy", "expected sharded:<base>:<workers>"))?;
            let w: usize =
                w.parse().map_err(|_| Error::param("strategy", format!("invalid worker count `{w}`")))?;
            if w == 0 {
                return Err(Error::param("strategy", "worker count must be positive"));
            }
            return Ok(EnumStrategy::Sharded(base.parse()?, w));
        }
        match s.parse::<BaseStrategy>()? {
            BaseStrategy::Naive => Ok(EnumStrategy::Naive),
            BaseStrategy::SolveLast => Ok(EnumStrategy::SolveLast),
        }
    }
}

/// Visits every point of `x` with height at most the given scaled-sup
/// threshold, passing coordinates and scaled sup. Shards run on separate
/// threads; their outputs are replayed in shard order.
pub(crate) fn visit<F>(
    x: &CompleteIntersection,
    h: &HeightSpec,
    threshold: u128,
    strategy: EnumStrategy,
    mut emit: F,
) -> Result<()>
where
    F: FnMut(&[i64], u128),
{
    strategy.validate(x)?;
    if x.n() == 0 {
        return Err(Error::param("n", "ambient dimension must be at least 1"));
    }
    let radii = h.radii(threshold, x.num_vars())?;
    let solve = strategy.base() == BaseStrategy::SolveLast;
    let workers = strategy.workers();
    let bound = log2_bound(x, &radii);
    if workers == 1 {
        run_shard(x, h, &radii, solve, bound, Shard::ALL, &mut emit);
        return Ok(());
    }
    let buffers: Vec<Vec<(Vec<i64>, u128)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|index| {
                let radii = &radii;
                s.spawn(move || {
                    let mut out = Vec::new();
                    let shard = Shard { index, count: workers };
                    run_shard(x, h, radii, solve, bound, shard, &mut |c: &[i64], m| {
                        out.push((c.to_vec(), m))
                    });
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for buf in buffers {
        for (c, m) in buf {
            emit(&c, m);
        }
    }
    Ok(())
}

fn run_shard<F: FnMut(&[i64], u128)>(
    x: &CompleteIntersection,
    h: &HeightSpec,
    radii: &[i64],
    solve: bool,
    log2_bound: f64,
    shard: Shard,
    emit: &mut F,
) {
    if log2_bound < 62.0 {
        Engine::<i64>::new(x, h, radii.to_vec(), solve).run(shard, emit);
    } else if log2_bound < 126.0 {
        Engine::<i128>::new(x, h, radii.to_vec(), solve).run(shard, emit);
    } else {
        wide_fallback(x, h, radii, shard, emit);
    }
}

/// Arbitrary-precision path for boxes where no fixed-width bound holds.
fn wide_fallback<F: FnMut(&[i64], u128)>(
    x: &CompleteIntersection,
    h: &HeightSpec,
    radii: &[i64],
    shard: Shard,
    emit: &mut F,
) {
    let n = radii.len();
    let mut coords = vec![0i64; n];
    fn rec<F: FnMut(&[i64], u128)>(
        lvl: usize,
        g: u64,
        lead: bool,
        radii: &[i64],
        coords: &mut [i64],
        x: &CompleteIntersection,
        h: &HeightSpec,
        shard: Shard,
        emit: &mut F,
    ) {
        if lvl == radii.len() {
            if g == 1 && x.forms().iter().all(|f| num_traits::Zero::is_zero(&f.evaluate_slice(coords))) {
                emit(coords, h.scaled_sup(coords));
            }
            return;
        }
        let r = radii[lvl];
        for v in (if lead { 0 } else { -r })..=r {
            if lvl == 0 && (v as usize) % shard.count != shard.index {
                continue;
            }
            coords[lvl] = v;
            rec(lvl + 1, gcd_u64(g, v.unsigned_abs()), lead && v == 0, radii, coords, x, h, shard, emit);
        }
    }
    rec(0, 0, true, radii, &mut coords, x, h, shard, emit);
}

/// Visits every primitive vector of the box `|w_i| <= radii[i]` whose first
/// nonzero entry is positive.
pub(crate) fn for_each_primitive<F: FnMut(&[i64])>(radii: &[i64], mut f: F) {
    fn rec<F: FnMut(&[i64])>(lvl: usize, g: u64, lead: bool, radii: &[i64], w: &mut [i64], f: &mut F) {
        if lvl == radii.len() {
            if g == 1 {
                f(w);
            }
            return;
        }
        let r = radii[lvl];
        for v in (if lead { 0 } else { -r })..=r {
            w[lvl] = v;
            rec(lvl + 1, gcd_u64(g, v.unsigned_abs()), lead && v == 0, radii, w, f);
        }
    }
    let mut w = vec![0i64; radii.len()];
    rec(0, 0, true, radii, &mut w, &mut f);
}

/// All points of `x` with `height(h, p) <= bound`.
pub fn enumerate_points(
    x: &CompleteIntersection,
    h: &HeightSpec,
    bound: &BigRational,
    strategy: EnumStrategy,
) -> Result<Vec<ProjPoint>> {
    let mut out = Vec::new();
    for_each_point(x, h, bound, strategy, |p| out.push(p.clone()))?;
    Ok(out)
}

pub fn for_each_point<F: FnMut(&ProjPoint)>(
    x: &CompleteIntersection,
    h: &HeightSpec,
    bound: &BigRational,
    strategy: EnumStrategy,
    mut f: F,
) -> Result<()> {
    let threshold = h.sup_threshold(bound)?;
    visit(x, h, threshold, strategy, |c, _| f(&ProjPoint::from_normalized(c.to_vec())))
}

/// `N(X, H, B)`, optionally restricted to points satisfying `predicate`.
pub fn count(
    x: &CompleteIntersection,
    h: &HeightSpec,
    bound: &BigRational,
    strategy: EnumStrategy,
    predicate: Option<&PointPredicate>,
) -> Result<u64> {
    let s = count_series(x, h, std::slice::from_ref(bound), strategy, predicate, "")?;
    Ok(s.counts[0])
}

/// Counts at every bound of `grid` from a single enumeration at the largest
/// bound, binning each point by its exact height.
pub fn count_series(
    x: &CompleteIntersection,
    h: &HeightSpec,
    grid: &[BigRational],
    strategy: EnumStrategy,
    predicate: Option<&PointPredicate>,
    region: &str,
) -> Result<CountSeries> {
    validate_grid(grid)?;
    strategy.validate(x)?;
    let thresholds = grid.iter().map(|b| h.sup_threshold(b)).collect::<Result<Vec<_>>>()?;
    let top = *thresholds.last().expect("nonempty grid");
    if x.forms().is_empty() && predicate.is_none() {
        let counts = projective::count_cumulative(x.num_vars(), h, &thresholds)?;
        return CountSeries::new(grid.to_vec(), counts, region);
    }
    let mut bins = vec![0u64; grid.len()];
    visit(x, h, top, strategy, |c, m| {
        if predicate.is_none_or(|p| p(c)) {
            bins[thresholds.partition_point(|&t| t < m)] += 1;
        }
    })?;
    Ok(CountSeries::from_bins(grid.to_vec(), &bins, region))
}

/// Bins a stream of scaled sups into per-threshold cumulative counts.
pub(crate) fn bin_index(thresholds: &[u128], m: u128) -> Option<usize> {
    let k = thresholds.partition_point(|&t| t < m);
    (k < thresholds.len()).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Form;
    use num_bigint::BigInt;
    use num_rational::Ratio;
    use std::collections::BTreeSet;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn x2() -> CompleteIntersection {
        CompleteIntersection::new(4, vec![Form::diagonal(3, &[1, 1, 1, -1, -1]).unwrap()]).unwrap()
    }

    fn hs(e: u32, l: i64) -> HeightSpec {
        HeightSpec::new(e, Ratio::from_integer(l)).unwrap()
    }

    /// Independent brute force: every integer vector in a cube, normalized
    /// and collected into a set.
    fn brute(x: &CompleteIntersection, h: &HeightSpec, b: i64, cube: i64) -> BTreeSet<ProjPoint> {
        let n = x.num_vars();
        let mut out = BTreeSet::new();
        let mut v = vec![-cube; n];
        loop {
            if v.iter().any(|&c| c != 0) {
                let p = ProjPoint::normalize(&v).unwrap();
                if h.height(&p) <= int(b) && x.contains(&p).unwrap() {
                    out.insert(p);
                }
            }
            let mut i = 0;
            while i < n && v[i] == cube {
                v[i] = -cube;
                i += 1;
            }
            if i == n {
                break;
            }
            v[i] += 1;
        }
        out
    }

    #[test]
    fn p1_at_bound_one() {
        let p1 = CompleteIntersection::projective_space(1);
        let pts = enumerate_points(&p1, &hs(1, 1), &int(1), EnumStrategy::Naive).unwrap();
        let set: BTreeSet<_> = pts.iter().map(|p| p.coords().to_vec()).collect();
        let want: BTreeSet<Vec<i64>> = [vec![0, 1], vec![1, 0], vec![1, 1], vec![1, -1]].into();
        assert_eq!(set, want);
        assert_eq!(count(&p1, &hs(1, 1), &int(1), EnumStrategy::Naive, None).unwrap(), 4);
    }

    #[test]
    fn p2_matches_brute_force() {
        let p2 = CompleteIntersection::projective_space(2);
        let want = brute(&p2, &hs(1, 1), 10, 10);
        let got = enumerate_points(&p2, &hs(1, 1), &int(10), EnumStrategy::Naive).unwrap();
        assert_eq!(got.len(), want.len());
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), want);
        assert_eq!(count(&p2, &hs(1, 1), &int(10), EnumStrategy::Naive, None).unwrap(), want.len() as u64);
    }

    #[test]
    fn weighted_projective_counts_match_visits() {
        let p3 = CompleteIntersection::projective_space(3);
        let h = HeightSpec::new(2, Ratio::new(5, 2)).unwrap();
        let grid: Vec<_> = [3, 10, 40, 90].iter().map(|&b| int(b)).collect();
        let fast = count_series(&p3, &h, &grid, EnumStrategy::Naive, None, "").unwrap();
        let always = |_: &[i64]| true;
        let slow = count_series(&p3, &h, &grid, EnumStrategy::Naive, Some(&always), "").unwrap();
        assert_eq!(fast.counts, slow.counts);
    }

    #[test]
    fn cubic_threefold_strategies_agree_with_brute_force() {
        let x = x2();
        let h = hs(2, 1);
        let want = brute(&x, &h, 36, 6);
        for s in [EnumStrategy::Naive, EnumStrategy::SolveLast, EnumStrategy::Sharded(BaseStrategy::SolveLast, 3)] {
            let got: BTreeSet<_> = enumerate_points(&x, &h, &int(36), s).unwrap().into_iter().collect();
            assert_eq!(got, want, "{s}");
        }
    }

    #[test]
    fn solve_last_rejects_non_diagonal() {
        let f = Form::new(3, 2, vec![(vec![1, 0, 1], 1), (vec![0, 2, 0], 1)]).unwrap();
        let x = CompleteIntersection::new(2, vec![f]).unwrap();
        let e = enumerate_points(&x, &hs(1, 1), &int(5), EnumStrategy::SolveLast).unwrap_err();
        assert!(matches!(e, Error::StrategyUnsupported(_)));
        let p2 = CompleteIntersection::projective_space(2);
        assert!(count(&p2, &hs(1, 1), &int(5), EnumStrategy::SolveLast, None).is_err());
    }

    #[test]
    fn even_degree_solve_and_partition() {
        // x0^2 + x1^2 - x2^2 - x3^2
        let x = CompleteIntersection::new(3, vec![Form::diagonal(2, &[1, 1, -1, -1]).unwrap()]).unwrap();
        let h = hs(2, 1);
        let a: BTreeSet<_> = enumerate_points(&x, &h, &int(400), EnumStrategy::Naive).unwrap().into_iter().collect();
        let b: BTreeSet<_> = enumerate_points(&x, &h, &int(400), EnumStrategy::SolveLast).unwrap().into_iter().collect();
        assert_eq!(a, b);
        let on = |c: &[i64]| c[0] == 0;
        let off = |c: &[i64]| c[0] != 0;
        let total = count(&x, &h, &int(400), EnumStrategy::SolveLast, None).unwrap();
        let n_on = count(&x, &h, &int(400), EnumStrategy::SolveLast, Some(&on)).unwrap();
        let n_off = count(&x, &h, &int(400), EnumStrategy::SolveLast, Some(&off)).unwrap();
        assert_eq!(n_on + n_off, total);
    }

    #[test]
    fn deformation_shrinks_point_sets() {
        let x = x2();
        let small: BTreeSet<_> =
            enumerate_points(&x, &hs(2, 10), &int(100), EnumStrategy::SolveLast).unwrap().into_iter().collect();
        let large: BTreeSet<_> =
            enumerate_points(&x, &hs(2, 1), &int(100), EnumStrategy::SolveLast).unwrap().into_iter().collect();
        assert!(small.is_subset(&large));
        assert!(small.len() < large.len());
    }

    #[test]
    fn series_is_monotone_and_respects_predicates() {
        let x = x2();
        let grid: Vec<_> = [4, 16, 64, 256].iter().map(|&b| int(b)).collect();
        let s = count_series(&x, &hs(2, 1), &grid, EnumStrategy::SolveLast, None, "all").unwrap();
        assert!(s.is_nondecreasing());
        let never = |_: &[i64]| false;
        let z = count_series(&x, &hs(2, 1), &grid, EnumStrategy::SolveLast, Some(&never), "none").unwrap();
        assert!(z.counts.iter().all(|&c| c == 0));
        for (b, c) in grid.iter().zip(&s.counts) {
            assert_eq!(*c, count(&x, &hs(2, 1), b, EnumStrategy::Naive, None).unwrap());
        }
    }

    #[test]
    fn wide_fallback_agrees() {
        let x = x2();
        let h = hs(2, 1);
        let radii = h.radii(h.sup_threshold(&int(49)).unwrap(), 5).unwrap();
        let mut a = BTreeSet::new();
        wide_fallback(&x, &h, &radii, Shard::ALL, &mut |c: &[i64], _| {
            a.insert(c.to_vec());
        });
        let b: BTreeSet<_> = enumerate_points(&x, &h, &int(49), EnumStrategy::Naive)
            .unwrap()
            .into_iter()
            .map(|p| p.coords().to_vec())
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn strategy_strings() {
        for s in ["naive", "solve-last", "sharded:solve-last:4", "sharded:naive:1"] {
            assert_eq!(s.parse::<EnumStrategy>().unwrap().to_string(), s);
        }
        assert!("sharded:naive:0".parse::<EnumStrategy>().is_err());
        assert!("fast".parse::<EnumStrategy>().is_err());
    }
}
