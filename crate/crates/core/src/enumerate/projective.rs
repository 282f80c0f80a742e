//! Point counts on projective space without visiting the last coordinate.
//!
//! For a fixed prefix `(x_0, ..., x_{n-1})` with gcd `g`, the admissible
//! values of `x_n` are the integers in `[-L, L]` coprime to `g`, counted by
//! Möbius inversion over the squarefree divisors of `g`.

use std::collections::HashMap;

use crate::arith::{coprime_count, gcd_u64, mobius_divisors};
use crate::error::{Error, Result};
use crate::model::HeightSpec;

/// Cumulative counts of points of `P^(num_vars-1)` with scaled sup at most
/// each threshold (thresholds nondecreasing).
pub(crate) fn count_cumulative(num_vars: usize, h: &HeightSpec, thresholds: &[u128]) -> Result<Vec<u64>> {
    if num_vars < 2 {
        return Err(Error::param("n", "ambient dimension must be at least 1"));
    }
    let top = *thresholds.last().expect("nonempty");
    let radii = h.radii(top, num_vars)?;
    let (_, q) = h.weights();
    let limits: Vec<u64> = thresholds.iter().map(|&t| (t / q).min(radii[num_vars - 1] as u128) as u64).collect();
    let mut ctx = Ctx { h, radii: &radii, thresholds, limits: &limits, divisors: HashMap::new(), totals: vec![0; thresholds.len()] };
    ctx.rec(0, 0, true, 0);
    Ok(ctx.totals)
}

struct Ctx<'a> {
    h: &'a HeightSpec,
    radii: &'a [i64],
    thresholds: &'a [u128],
    limits: &'a [u64],
    divisors: HashMap<u64, Vec<(u64, i64)>>,
    totals: Vec<u64>,
}

impl Ctx<'_> {
    fn rec(&mut self, lvl: usize, g: u64, lead: bool, sup: u128) {
        let last = self.radii.len() - 1;
        if lvl == last {
            self.close(g, lead, sup);
            return;
        }
        let (p, q) = self.h.weights();
        let weight = if lvl == 0 { p } else { q };
        let r = self.radii[lvl];
        for v in (if lead { 0 } else { -r })..=r {
            let m = sup.max(weight * v.unsigned_abs() as u128);
            self.rec(lvl + 1, gcd_u64(g, v.unsigned_abs()), lead && v == 0, m);
        }
    }

    fn close(&mut self, g: u64, lead: bool, sup: u128) {
        let first = self.thresholds.partition_point(|&t| t < sup);
        for k in first..self.thresholds.len() {
            let l = self.limits[k];
            let c = if lead {
                u64::from(l >= 1)
            } else if g == 1 {
                2 * l + 1
            } else {
                let divs = self.divisors.entry(g).or_insert_with(|| mobius_divisors(g));
                2 * coprime_count(l, divs)
            };
            self.totals[k] += c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    /// Closed form for P^2 with the plain sup height:
    /// `N = (1/2) * sum_k mu(k) ((2 floor(R/k) + 1)^3 - 1)`.
    fn mobius_p2(r: i64) -> u64 {
        let mut total = 0i64;
        for k in 1..=r.max(1) {
            let mu = {
                let f = crate::arith::prime_factors(k as u64);
                let mut sq = false;
                let mut m = k as u64;
                for &p in &f {
                    m /= p;
                    if m.is_multiple_of(p) {
                        sq = true;
                    }
                }
                if sq {
                    0
                } else if f.len().is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            };
            let a = 2 * (r / k) + 1;
            total += mu * (a * a * a - 1);
        }
        (total / 2) as u64
    }

    #[test]
    fn p2_closed_form() {
        let h = HeightSpec::undeformed(1).unwrap();
        let ts: Vec<u128> = vec![1, 2, 5, 17, 64, 100];
        let got = count_cumulative(3, &h, &ts).unwrap();
        for (t, c) in ts.iter().zip(got) {
            assert_eq!(c, mobius_p2(*t as i64), "R={t}");
        }
    }

    #[test]
    fn p1_small() {
        let h = HeightSpec::undeformed(1).unwrap();
        assert_eq!(count_cumulative(2, &h, &[1, 2]).unwrap(), vec![4, 8]);
        let h = HeightSpec::new(1, Ratio::new(3, 2)).unwrap();
        // scaled sup max(3|x0|, 2|x1|) <= 2: only (0:1).
        assert_eq!(count_cumulative(2, &h, &[2]).unwrap(), vec![1]);
    }
}
