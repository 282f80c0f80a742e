//! Growth fits, the Schanuel reference count and saturation reports.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::enumerate::{visit, visit_curve, visit_subspace, EnumStrategy, ParametrizedCurve, PointPredicate};
use crate::error::{Error, Result};
use crate::model::{CompleteIntersection, HeightSpec, LinearSubspace};
use crate::series::{validate_grid, CountSeries};

/// Least-squares fit of `N(B) ≈ c · B^a · (log B)^b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub exponent: f64,
    pub log_power: u32,
    pub constant: f64,
    /// Root mean square of the residuals of `log N`.
    pub residual_rms: f64,
    pub grid_used: Vec<f64>,
}

pub const DEFAULT_DROP_LOW: usize = 2;

/// Fits `log N - b log log B = a log B + log c` over the grid with the
/// `drop_low` smallest bounds removed.
pub fn fit_growth(series: &CountSeries, b: u32, drop_low: usize) -> Result<GrowthFit> {
    if b > 1 {
        return Err(Error::param("b", "log power must be 0 or 1"));
    }
    let grid = series.grid_f64();
    if series.len() < drop_low + 4 {
        return Err(Error::FitError(format!(
            "need at least 4 points after dropping {drop_low}, have {}",
            series.len().saturating_sub(drop_low)
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&bound, &n) in grid.iter().zip(&series.counts).skip(drop_low) {
        if n == 0 {
            return Err(Error::FitError(format!("zero count at B = {bound}")));
        }
        let lb = bound.ln();
        if b == 1 && lb <= 0.0 {
            return Err(Error::FitError(format!("log model needs B > 1, got {bound}")));
        }
        xs.push(lb);
        ys.push((n as f64).ln() - if b == 1 { lb.ln() } else { 0.0 });
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx <= 0.0 {
        return Err(Error::FitError("grid bounds are not distinct".into()));
    }
    let a = sxy / sxx;
    let log_c = my - a * mx;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - a * x - log_c).powi(2)).sum();
    Ok(GrowthFit {
        exponent: a,
        log_power: b,
        constant: log_c.exp(),
        residual_rms: (rss / k).sqrt(),
        grid_used: grid[drop_low..].to_vec(),
    })
}

/// Riemann zeta for real `s > 1`, partial sums plus an Euler–Maclaurin tail.
pub fn zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta needs s > 1");
    let k = 10_000u32;
    let head: f64 = (1..k).rev().map(|j| (j as f64).powf(-s)).sum();
    let kf = k as f64;
    let t = kf.powf(-s);
    head + kf * t / (s - 1.0) + t / 2.0 + s * t / (12.0 * kf) - s * (s + 1.0) * (s + 2.0) * t / (720.0 * kf.powi(3))
}

/// `(2^n / ζ(n+1)) · B^(n+1)`, the leading term of the count of points of
/// `P^n(Q)` with sup-norm height at most `B`.
pub fn schanuel_reference(n: u32, b: f64) -> f64 {
    2f64.powi(n as i32) / zeta(n as f64 + 1.0) * b.powi(n as i32 + 1)
}

/// A proper subvariety whose points are counted separately.
#[derive(Clone, Debug)]
pub enum Subvariety {
    Linear(LinearSubspace),
    Curve(ParametrizedCurve),
}

impl Subvariety {
    fn is_contained_in(&self, x: &CompleteIntersection) -> Result<bool> {
        match self {
            Subvariety::Linear(l) => l.is_contained_in(x),
            Subvariety::Curve(c) => c.is_contained_in(x),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Stratum {
    pub name: String,
    pub series: CountSeries,
    pub fit: Option<GrowthFit>,
    pub fit_error: Option<String>,
    /// Min and max of `N / (B (log B)^b)` over the top half of the grid.
    pub normalized_interval: Option<(f64, f64)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SaturationReport {
    pub log_power: u32,
    pub whole: Stratum,
    /// One stratum per subvariety, with excluded points removed.
    pub subvarieties: Vec<Stratum>,
    /// Points of `X` on none of the subvariety strata.
    pub complement: Stratum,
    /// `shares[i][k] = N(Y_i°, B_k) / N(X, B_k)`.
    pub shares: Vec<Vec<f64>>,
    pub complement_shares: Vec<f64>,
}

pub struct SaturationInput<'a> {
    pub x: &'a CompleteIntersection,
    pub subvarieties: &'a [(String, Subvariety)],
    pub excluded: &'a [&'a PointPredicate],
    pub height: &'a HeightSpec,
    pub grid: &'a [BigRational],
    pub picard_rank: u32,
    pub strategy: EnumStrategy,
    pub drop_low: usize,
}

/// Counts `X`, each `Y°` and the complement on a shared grid and fits each
/// with log power `ρ - 1`.
pub fn saturation_report(input: &SaturationInput<'_>) -> Result<SaturationReport> {
    let SaturationInput { x, subvarieties, excluded, height: h, grid, picard_rank, strategy, drop_low } = *input;
    if picard_rank == 0 || picard_rank > 2 {
        return Err(Error::param("picard_rank", "must be 1 or 2"));
    }
    let b = picard_rank - 1;
    validate_grid(grid)?;
    for (name, y) in subvarieties {
        if !y.is_contained_in(x)? {
            return Err(Error::NotContained(name.clone()));
        }
    }
    let thresholds = grid.iter().map(|v| h.sup_threshold(v)).collect::<Result<Vec<_>>>()?;
    let top = *thresholds.last().expect("nonempty");
    let keep = |c: &[i64]| !excluded.iter().any(|p| p(c));
    let mut union: HashSet<Vec<i64>> = HashSet::new();
    let mut sub_series = Vec::new();
    for (name, y) in subvarieties {
        let mut bins = vec![0u64; grid.len()];
        let mut record = |c: &[i64], m: u128| {
            if keep(c) {
                bins[thresholds.partition_point(|&t| t < m)] += 1;
                union.insert(c.to_vec());
            }
        };
        match y {
            Subvariety::Linear(l) => visit_subspace(l, h, top, |p, m| record(p.coords(), m))?,
            Subvariety::Curve(cv) => visit_curve(cv, h, top, |p, m| record(p.coords(), m))?,
        }
        sub_series.push(CountSeries::from_bins(grid.to_vec(), &bins, name.as_str()));
    }
    let mut whole_bins = vec![0u64; grid.len()];
    let mut rest_bins = vec![0u64; grid.len()];
    visit(x, h, top, strategy, |c, m| {
        let k = thresholds.partition_point(|&t| t < m);
        whole_bins[k] += 1;
        if !union.contains(c) {
            rest_bins[k] += 1;
        }
    })?;
    let whole = CountSeries::from_bins(grid.to_vec(), &whole_bins, "X");
    let rest = CountSeries::from_bins(grid.to_vec(), &rest_bins, "U");
    let share = |s: &CountSeries| -> Vec<f64> {
        s.counts
            .iter()
            .zip(&whole.counts)
            .map(|(&n, &t)| if t == 0 { 0.0 } else { n as f64 / t as f64 })
            .collect()
    };
    let shares = sub_series.iter().map(share).collect();
    let complement_shares = share(&rest);
    let stratum = |s: CountSeries| stratum(s, b, drop_low);
    Ok(SaturationReport {
        log_power: b,
        shares,
        complement_shares,
        subvarieties: sub_series.into_iter().map(stratum).collect(),
        complement: stratum(rest),
        whole: stratum(whole),
    })
}

fn stratum(series: CountSeries, b: u32, drop_low: usize) -> Stratum {
    let (fit, fit_error) = match fit_growth(&series, b, drop_low) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let normalized_interval = normalized_interval(&series, b);
    Stratum { name: series.region.clone(), series, fit, fit_error, normalized_interval }
}

/// Min and max of `N(B) / (B (log B)^b)` over the upper half of the grid.
pub fn normalized_interval(series: &CountSeries, b: u32) -> Option<(f64, f64)> {
    let start = series.len() / 2;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (bound, &n) in series.grid.iter().zip(&series.counts).skip(start) {
        let bf = bound.to_f64()?;
        let norm = bf * bf.ln().powi(b as i32);
        if norm <= 0.0 {
            return None;
        }
        let v = n as f64 / norm;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo <= hi).then_some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn grid(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&b| BigRational::from_integer(BigInt::from(b))).collect()
    }

    #[test]
    fn synthetic_power_laws() {
        let g = grid(&[10, 20, 40, 80, 160, 320, 640]);
        let counts = g.iter().map(|b| (7.0 * b.to_f64().unwrap().powi(2)).round() as u64).collect();
        let s = CountSeries::new(g.clone(), counts, "").unwrap();
        let f = fit_growth(&s, 0, 2).unwrap();
        assert!((f.exponent - 2.0).abs() < 1e-6, "{f:?}");
        assert!((f.constant - 7.0).abs() < 1e-4);
        assert!(f.residual_rms < 1e-9);

        let counts = g
            .iter()
            .map(|b| {
                let b = b.to_f64().unwrap();
                (3.0 * b * b.ln() * 1e6).round() as u64
            })
            .collect();
        let s = CountSeries::new(g, counts, "").unwrap();
        let f = fit_growth(&s, 1, 0).unwrap();
        assert!((f.exponent - 1.0).abs() < 1e-6);
        assert!((f.constant / 3e6 - 1.0).abs() < 1e-4);
    }

    #[test]
    fn fit_rejects_short_and_zero_series() {
        let s = CountSeries::new(grid(&[1, 2, 4, 8, 16]), vec![1, 2, 3, 4, 5], "").unwrap();
        assert!(matches!(fit_growth(&s, 0, 2), Err(Error::FitError(_))));
        let s = CountSeries::new(grid(&[1, 2, 4, 8, 16, 32]), vec![0, 0, 0, 1, 2, 3], "").unwrap();
        assert!(matches!(fit_growth(&s, 0, 2), Err(Error::FitError(_))));
    }

    #[test]
    fn zeta_values() {
        let pi = std::f64::consts::PI;
        assert!((zeta(2.0) - pi * pi / 6.0).abs() < 1e-12);
        assert!((zeta(4.0) - pi.powi(4) / 90.0).abs() < 1e-12);
        assert!((zeta(3.0) - 1.202_056_903_159_594_2).abs() < 1e-12);
        assert!((schanuel_reference(1, 1.0) - 1.215_854_203_7).abs() < 1e-9);
    }

    #[test]
    fn line_is_not_saturated_in_the_plane() {
        let x = CompleteIntersection::projective_space(2);
        let l = LinearSubspace::new(vec![vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let subs = vec![("L".to_string(), Subvariety::Linear(l))];
        let g = grid(&[4, 8, 16, 32, 64, 128]);
        let h = HeightSpec::undeformed(1).unwrap();
        let r = saturation_report(&SaturationInput {
            x: &x,
            subvarieties: &subs,
            excluded: &[],
            height: &h,
            grid: &g,
            picard_rank: 1,
            strategy: EnumStrategy::Naive,
            drop_low: 2,
        })
        .unwrap();
        for k in 0..g.len() {
            assert_eq!(r.subvarieties[0].series.counts[k] + r.complement.series.counts[k], r.whole.series.counts[k]);
            assert!((r.shares[0][k] + r.complement_shares[k] - 1.0).abs() < 1e-12);
        }
        assert!(r.shares[0].windows(2).all(|w| w[1] < w[0]));
        let fl = r.subvarieties[0].fit.as_ref().unwrap().exponent;
        let fx = r.whole.fit.as_ref().unwrap().exponent;
        assert!((fl - 2.0).abs() < 0.1 && (fx - 3.0).abs() < 0.1, "{fl} {fx}");
    }

    #[test]
    fn containment_is_checked() {
        let x = CompleteIntersection::new(2, vec![crate::model::Form::diagonal(2, &[1, 1, -1]).unwrap()]).unwrap();
        let l = LinearSubspace::new(vec![vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let subs = vec![("L".to_string(), Subvariety::Linear(l))];
        let h = HeightSpec::undeformed(1).unwrap();
        let g = grid(&[1, 2]);
        let e = saturation_report(&SaturationInput {
            x: &x,
            subvarieties: &subs,
            excluded: &[],
            height: &h,
            grid: &g,
            picard_rank: 1,
            strategy: EnumStrategy::Naive,
            drop_low: 0,
        })
        .unwrap_err();
        assert!(matches!(e, Error::NotContained(_)));
    }
}
