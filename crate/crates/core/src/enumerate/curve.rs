//! Image points of a parametrized rational curve `P^1 → P^n`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{bin_index, for_each_primitive};
use crate::arith::resultant;
use crate::error::{Error, Result};
use crate::model::{CompleteIntersection, Form, HeightSpec, Poly, ProjPoint};
use crate::series::{validate_grid, CountSeries};

/// Binary forms `g_0, ..., g_n` of a common degree `m`; each is stored as
/// `[c_m, ..., c_0]` with `c_k` the coefficient of `u^k v^(m-k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParametrizedCurve {
    degree: u32,
    coeffs: Vec<Vec<i64>>,
}

impl ParametrizedCurve {
    pub fn new(coeffs: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::DegenerateCurve("no coordinate forms".into()));
        };
        if first.len() < 2 {
            return Err(Error::DegenerateCurve("degree must be at least 1".into()));
        }
        if let Some(g) = coeffs.iter().find(|g| g.len() != first.len()) {
            return Err(Error::DimensionError { expected: first.len(), got: g.len() });
        }
        if coeffs.iter().all(|g| g.iter().all(|&c| c == 0)) {
            return Err(Error::DegenerateCurve("all coordinate forms vanish".into()));
        }
        let curve = ParametrizedCurve { degree: first.len() as u32 - 1, coeffs };
        if curve.min_resultant().is_none() {
            return Err(Error::DegenerateCurve("no pair of coordinate forms is coprime".into()));
        }
        Ok(curve)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[Vec<i64>] {
        &self.coeffs
    }

    /// `(g_0(u, v), ..., g_n(u, v))`.
    pub fn evaluate(&self, u: i64, v: i64) -> Vec<BigInt> {
        let (u, v) = (BigInt::from(u), BigInt::from(v));
        let m = self.degree as usize;
        self.coeffs
            .iter()
            .map(|g| {
                g.iter()
                    .enumerate()
                    .map(|(i, &c)| {
                        let k = m - i;
                        BigInt::from(c) * num_traits::pow(u.clone(), k) * num_traits::pow(v.clone(), m - k)
                    })
                    .sum()
            })
            .collect()
    }

    /// Symbolic containment: every form of `x` vanishes identically on the
    /// parametrization.
    pub fn is_contained_in(&self, x: &CompleteIntersection) -> Result<bool> {
        if self.num_vars() != x.num_vars() {
            return Err(Error::DimensionError { expected: x.num_vars(), got: self.num_vars() });
        }
        let m = self.degree;
        let subs = self
            .coeffs
            .iter()
            .map(|g| {
                let terms: Vec<(Vec<u32>, i64)> =
                    g.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (vec![m - i as u32, i as u32], c)).collect();
                if terms.is_empty() {
                    Ok(Poly::zero(2))
                } else {
                    Form::from_terms(2, terms).map(|f| Poly::from_form(&f))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        for f in x.forms() {
            if !f.compose(&subs)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest nonzero `|Res(g_i, g_j)|` over pairs; it bounds the common
    /// factor of the coordinates at any primitive parameter. The Sylvester
    /// matrix at formal degree `m` gives the homogeneous resultant.
    fn min_resultant(&self) -> Option<BigInt> {
        let forms: Vec<Vec<BigInt>> = self.coeffs.iter().map(|g| g.iter().map(|&c| BigInt::from(c)).collect()).collect();
        let mut best: Option<BigInt> = None;
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                let r = resultant(&forms[i], &forms[j]).abs();
                if !r.is_zero() && best.as_ref().is_none_or(|b| &r < b) {
                    best = Some(r);
                }
            }
        }
        best
    }

    /// A certified lower bound for `max_i |g_i(u, v)|` on `max(|u|, |v|) = 1`.
    fn boundary_minimum(&self) -> f64 {
        let m = self.degree as usize;
        let lipschitz = self
            .coeffs
            .iter()
            .map(|g| g.iter().map(|&c| (c as f64).abs()).sum::<f64>() * m as f64)
            .fold(0.0, f64::max);
        let eval = |u: f64, v: f64| {
            self.coeffs
                .iter()
                .map(|g| {
                    g.iter().enumerate().map(|(i, &c)| c as f64 * u.powi((m - i) as i32) * v.powi(i as i32)).sum::<f64>().abs()
                })
                .fold(0.0, f64::max)
        };
        let mut samples = 1024usize;
        loop {
            let step = 2.0 / samples as f64;
            let mut low = f64::INFINITY;
            for s in 0..=samples {
                let t = -1.0 + step * s as f64;
                low = low.min(eval(t, 1.0)).min(eval(1.0, t));
            }
            let certified = (low - lipschitz * step / 2.0) * (1.0 - 1e-9);
            if certified >= low / 2.0 || samples >= 1 << 22 {
                return certified;
            }
            samples *= 2;
        }
    }

    /// Parameter radius beyond which no image point has sup-norm `<= sup`.
    fn parameter_radius(&self, sup: u128) -> Result<i64> {
        let d = self.min_resultant().expect("validated").to_f64().unwrap_or(f64::INFINITY);
        let c = self.boundary_minimum();
        if c <= 0.0 {
            return Err(Error::DegenerateCurve("common real zero of the coordinate forms".into()));
        }
        let p = (d * sup as f64 / c).powf(1.0 / self.degree as f64).floor() + 1.0;
        if p > 1e9 {
            return Err(Error::TooLarge(format!("parameter radius {p:e}")));
        }
        Ok(p as i64)
    }
}

pub(crate) fn visit<F: FnMut(&ProjPoint, u128)>(c: &ParametrizedCurve, h: &HeightSpec, threshold: u128, mut f: F) -> Result<()> {
    let radii = h.radii(threshold, c.num_vars())?;
    let sup = radii.iter().copied().max().unwrap_or(0).max(0) as u128;
    let p = c.parameter_radius(sup)?;
    let mut seen = HashSet::new();
    let mut buf = Vec::with_capacity(c.num_vars());
    for_each_primitive(&[p, p], |w| {
        buf.clear();
        for y in c.evaluate(w[0], w[1]) {
            match y.to_i128() {
                Some(v) => buf.push(v),
                None => return,
            }
        }
        if buf.iter().all(|&v| v == 0) {
            return;
        }
        let Ok(pt) = ProjPoint::normalize_i128(&buf) else { return };
        let m = h.scaled_sup(pt.coords());
        if m <= threshold && seen.insert(pt.clone()) {
            f(&pt, m);
        }
    });
    Ok(())
}

/// Image points of `c` with `height(h, p) <= bound`, each once.
pub fn enumerate_parametrized_curve(c: &ParametrizedCurve, h: &HeightSpec, bound: &BigRational) -> Result<Vec<ProjPoint>> {
    let threshold = h.sup_threshold(bound)?;
    let mut out = Vec::new();
    visit(c, h, threshold, |p, _| out.push(p.clone()))?;
    Ok(out)
}

pub fn parametrized_curve_series(
    c: &ParametrizedCurve,
    h: &HeightSpec,
    grid: &[BigRational],
    region: &str,
) -> Result<CountSeries> {
    validate_grid(grid)?;
    let thresholds = grid.iter().map(|b| h.sup_threshold(b)).collect::<Result<Vec<_>>>()?;
    let mut bins = vec![0u64; grid.len()];
    visit(c, h, *thresholds.last().expect("nonempty"), |_, m| {
        if let Some(k) = bin_index(&thresholds, m) {
            bins[k] += 1;
        }
    })?;
    Ok(CountSeries::from_bins(grid.to_vec(), &bins, region))
}
