//! The diagonal quadric bundle `x_0 y_0^2 + x_1 y_1^2 + x_2 y_2^2 + x_3 y_3^2 = 0`
//! in `P^3 × P^3` with height `H(x)^3 H(y)^2`.
//!
//! Counting walks the primitive `x` with `H(x)^3 <= B` and counts each fiber
//! `S_x` exactly. Coordinates with `x_i = 0` are free in the fiber and are
//! counted in closed form by Möbius inversion; the remaining equation in
//! absolute values `a_i = |y_i|` is solved by a sorted meet-in-the-middle
//! join. A tuple of absolute values with `z` nonzero entries stands for
//! `2^(z-1)` projective points.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, iroot_floor_u128, is_square_i128, isqrt_u128, mobius_divisors};
use crate::error::{Error, Result};
use crate::model::ProjPoint;
use crate::series::{validate_grid, CountSeries};

pub const DEFAULT_POINT_SEARCH_BOUND: u64 = 50;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiProjPoint {
    pub x: ProjPoint,
    pub y: ProjPoint,
}

impl BiProjPoint {
    pub fn new(x: ProjPoint, y: ProjPoint) -> Result<Self> {
        for p in [&x, &y] {
            if p.len() != 4 {
                return Err(Error::DimensionError { expected: 4, got: p.len() });
            }
        }
        Ok(BiProjPoint { x, y })
    }

    /// `Σ x_i y_i^2 = 0`.
    pub fn is_on_bundle(&self) -> bool {
        bundle_form(self.x.coords(), self.y.coords()) == 0
    }
}

fn bundle_form(x: &[i64], y: &[i64]) -> i128 {
    x.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128 * b as i128).sum()
}

/// `H_0(x)^3 · H_0(y)^2`.
pub fn bundle_height(p: &BiProjPoint) -> u128 {
    let hx = p.x.sup_norm() as u128;
    let hy = p.y.sup_norm() as u128;
    hx * hx * hx * hy * hy
}

/// On `x_i = x_j = x_k = y_l = 0` for some `{i, j, k, l} = {0, 1, 2, 3}`.
pub fn accumulating_locus_member(p: &BiProjPoint) -> bool {
    let (x, y) = (p.x.coords(), p.y.coords());
    (0..4).any(|l| y[l] == 0 && (0..4).all(|i| i == l || x[i] == 0))
}

fn nonzero_square_product(x: &[i64]) -> bool {
    let prod = x.iter().fold(Some(1i128), |acc, &v| acc.and_then(|a| a.checked_mul(v as i128)));
    match prod {
        Some(v) => v != 0 && is_square_i128(v),
        // Coordinates are bounded by i64, so a product overflowing i128
        // cannot occur for four entries; treat defensively as not square.
        None => false,
    }
}

/// `x_0 x_1 x_2 x_3` is a nonzero square.
pub fn thin_set_member(p: &BiProjPoint) -> bool {
    nonzero_square_product(p.x.coords())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SplitWitness {
    /// `x_0, x_1, -x_2, -x_3` are all squares.
    SquareCoefficients,
    Point { y: ProjPoint },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Obstruction {
    NonsquareDiscriminant { product: i128 },
    Definite,
    /// No primitive solution modulo `modulus`.
    Local { modulus: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FiberClass {
    SplitCertified { witness: SplitWitness },
    NotSplit { obstruction: Obstruction },
    Undetermined { degenerate: bool },
}

impl FiberClass {
    pub fn is_split(&self) -> bool {
        matches!(self, FiberClass::SplitCertified { .. })
    }
}

/// Residue classes of `x mod m` admitting a primitive zero of the fiber
/// form modulo `m` (`m` a prime power `p^k`).
struct LocalTable {
    modulus: u32,
    solvable: Vec<bool>,
}

impl LocalTable {
    fn new(prime: u32, modulus: u32) -> Self {
        let m = modulus as usize;
        let squares: Vec<usize> = (0..m).map(|v| v * v % m).collect();
        let mut solvable = vec![false; m * m * m * m];
        for (idx, slot) in solvable.iter_mut().enumerate() {
            let x = [idx % m, idx / m % m, idx / (m * m) % m, idx / (m * m * m)];
            'search: for y in 0..m * m * m * m {
                let ys = [y % m, y / m % m, y / (m * m) % m, y / (m * m * m)];
                if ys.iter().all(|&v| v % prime as usize == 0) {
                    continue;
                }
                let s: usize = (0..4).map(|i| x[i] * squares[ys[i]]).sum();
                if s.is_multiple_of(m) {
                    *slot = true;
                    break 'search;
                }
            }
        }
        LocalTable { modulus, solvable }
    }

    fn solvable(&self, x: &[i64]) -> bool {
        let m = self.modulus as i64;
        let idx = x.iter().rev().fold(0usize, |acc, &v| acc * m as usize + v.rem_euclid(m) as usize);
        self.solvable[idx]
    }
}

fn local_tables() -> &'static [LocalTable; 2] {
    static TABLES: OnceLock<[LocalTable; 2]> = OnceLock::new();
    TABLES.get_or_init(|| [LocalTable::new(2, 8), LocalTable::new(3, 9)])
}

/// Classifies the fiber `S_x`; `point_search_bound` caps `H_0(y)` in the
/// search for a rational point.
pub fn fiber_class(x: &ProjPoint, point_search_bound: u64) -> FiberClass {
    classify(x.coords(), |c| search_point(c, point_search_bound))
}

fn classify(x: &[i64], find_point: impl FnOnce(&[i64]) -> Option<ProjPoint>) -> FiberClass {
    if x.contains(&0) {
        return FiberClass::Undetermined { degenerate: true };
    }
    if !nonzero_square_product(x) {
        let product = x.iter().map(|&v| v as i128).product();
        return FiberClass::NotSplit { obstruction: Obstruction::NonsquareDiscriminant { product } };
    }
    if x.iter().all(|&v| v > 0) || x.iter().all(|&v| v < 0) {
        return FiberClass::NotSplit { obstruction: Obstruction::Definite };
    }
    for t in local_tables() {
        if !t.solvable(x) {
            return FiberClass::NotSplit { obstruction: Obstruction::Local { modulus: t.modulus } };
        }
    }
    let square = |v: i64| v >= 0 && is_square_i128(v as i128);
    if square(x[0]) && square(x[1]) && square(-x[2]) && square(-x[3]) {
        return FiberClass::SplitCertified { witness: SplitWitness::SquareCoefficients };
    }
    match find_point(x) {
        Some(y) => FiberClass::SplitCertified { witness: SplitWitness::Point { y } },
        None => FiberClass::Undetermined { degenerate: false },
    }
}

/// A nonzero point of the fiber with sup-norm at most `bound`.
fn search_point(x: &[i64], bound: u64) -> Option<ProjPoint> {
    let mut found = None;
    solutions(x, &[0, 1, 2, 3], bound, &mut Scratch::default(), |a| {
        if found.is_none() && a.iter().any(|&v| v != 0) {
            // Only squares appear, so the absolute values are a solution.
            let y: Vec<i64> = a.iter().map(|&v| v as i64).collect();
            found = ProjPoint::normalize(&y).ok();
        }
    });
    found
}

/// Reusable buffers for [`solutions`]; half-tuples are packed 16 bits per
/// coordinate next to their partial sums.
#[derive(Default)]
struct Scratch {
    left: Vec<(i128, u64)>,
    right: Vec<(i128, u64)>,
    tmp: Vec<(i128, u64)>,
}

/// Largest `y` radius per fiber; the half-sum tables hold up to
/// `(radius + 1)^2` entries each.
pub const MAX_FIBER_RADIUS: u64 = 4096;

fn check_fiber_radius(r: u128) -> Result<()> {
    if r > MAX_FIBER_RADIUS as u128 {
        return Err(Error::TooLarge(format!("fiber radius {r} exceeds {MAX_FIBER_RADIUS}")));
    }
    Ok(())
}

fn half_sums(x: &[i64], idx: &[usize], bound: u64, sign: i128, out: &mut Vec<(i128, u64)>, tmp: &mut Vec<(i128, u64)>) {
    out.clear();
    out.push((0, 0));
    for (pos, &i) in idx.iter().enumerate() {
        tmp.clear();
        let c = sign * x[i] as i128;
        for &(s, t) in out.iter() {
            for v in 0..=bound {
                tmp.push((s + c * (v * v) as i128, t | v << (16 * pos)));
            }
        }
        std::mem::swap(out, tmp);
    }
}

/// Calls `f` with every tuple `a ∈ [0, bound]^active` (indexed like
/// `active`) satisfying `Σ x_i a_i^2 = 0` over the active indices.
fn solutions<F: FnMut(&[u64])>(x: &[i64], active: &[usize], bound: u64, sc: &mut Scratch, mut f: F) {
    assert!(bound <= MAX_FIBER_RADIUS, "fiber radius {bound} too large");
    let k = active.len();
    let split = k / 2;
    let (left, right) = active.split_at(split);
    half_sums(x, left, bound, 1, &mut sc.left, &mut sc.tmp);
    half_sums(x, right, bound, -1, &mut sc.right, &mut sc.tmp);
    sc.right.sort_unstable_by_key(|e| e.0);
    let mut buf = [0u64; 4];
    let unpack = |t: u64, out: &mut [u64]| {
        for (pos, o) in out.iter_mut().enumerate() {
            *o = t >> (16 * pos) & 0xffff;
        }
    };
    for &(s, t) in &sc.left {
        let start = sc.right.partition_point(|e| e.0 < s);
        for &(s2, t2) in &sc.right[start..] {
            if s2 != s {
                break;
            }
            unpack(t, &mut buf[..split]);
            unpack(t2, &mut buf[split..k]);
            f(&buf[..k]);
        }
    }
}

/// Signed count of `f ∈ [-y, y]^free` with `gcd(g, f) = 1`, each vector
/// counted once (`g = 0` requires `f` nonzero and primitive).
struct FreeCounter {
    free: u32,
    cache: HashMap<(u64, u64), u128>,
}

impl FreeCounter {
    fn new(free: u32) -> Self {
        FreeCounter { free, cache: HashMap::new() }
    }

    fn count(&mut self, g: u64, y: u64) -> u128 {
        if self.free == 0 {
            return u128::from(g == 1);
        }
        let free = self.free;
        *self.cache.entry((g, y)).or_insert_with(|| {
            let cube = |d: u64| (1 + 2 * (y / d) as u128).pow(free);
            if g == 0 {
                let mut total: i128 = 0;
                for d in 1..=y.max(1) {
                    let mu = mobius(d);
                    if mu != 0 {
                        total += mu as i128 * (cube(d) as i128 - 1);
                    }
                }
                total as u128
            } else {
                let mut total: i128 = 0;
                for (d, mu) in mobius_divisors(g) {
                    total += mu as i128 * cube(d) as i128;
                }
                total as u128
            }
        })
    }
}

fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut mu = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if m > 1 {
        mu = -mu;
    }
    mu
}

/// Cumulative point counts of the fiber over `x` with `H_0(y) <= ymax[k]`
/// (`ymax` nondecreasing). Panics if a radius exceeds [`MAX_FIBER_RADIUS`].
pub fn fiber_counts(x: &[i64], ymax: &[u64]) -> Vec<u64> {
    fiber_counts_with(x, ymax, &mut Scratch::default())
}

fn fiber_counts_with(x: &[i64], ymax: &[u64], scratch: &mut Scratch) -> Vec<u64> {
    let mut out = vec![0u64; ymax.len()];
    let Some(&top) = ymax.last() else { return out };
    let active: Vec<usize> = (0..4).filter(|&i| x[i] != 0).collect();
    let free = (4 - active.len()) as u32;
    if free == 0 && (x.iter().all(|&v| v > 0) || x.iter().all(|&v| v < 0)) {
        return out;
    }
    let mut counter = FreeCounter::new(free);
    let mut signed = vec![0u128; ymax.len()];
    solutions(x, &active, top, scratch, |a| {
        let g = a.iter().fold(0u64, |g, &v| gcd_u64(g, v));
        let m = a.iter().copied().max().unwrap_or(0);
        let nz = a.iter().filter(|&&v| v != 0).count() as u32;
        let first = ymax.partition_point(|&y| y < m);
        for k in first..ymax.len() {
            signed[k] += (1u128 << nz) * counter.count(g, ymax[k]);
        }
    });
    for (o, s) in out.iter_mut().zip(signed) {
        *o = (s / 2) as u64;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleRow {
    #[serde(with = "crate::series::rational_string")]
    pub b: BigRational,
    pub total: u64,
    pub on_split_certified: u64,
    pub on_not_split: u64,
    pub on_undetermined: u64,
    pub on_accumulating: u64,
    pub thin_members: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleReport {
    pub exclude_accumulating: bool,
    pub rows: Vec<BundleRow>,
    /// Fibers with at least one point at the top bound.
    pub fibers_with_points: u64,
    /// Split-certified fibers whose discriminant is not a nonzero square.
    pub split_without_square_discriminant: u64,
    /// Fibers where the thin-set test and the discriminant verdict disagree.
    pub thin_discriminant_disagreements: u64,
}

/// Integer bounds `B_k` (as `u128`) of a grid of rationals, floored; the
/// height takes integer values so flooring is exact.
fn integer_bounds(grid: &[BigRational]) -> Result<Vec<u128>> {
    grid.iter()
        .map(|b| {
            let f = b.floor().to_integer();
            u128::try_from(f).map_err(|_| Error::param("B", "must be a nonnegative bound below 2^128"))
        })
        .collect()
}

/// Stratified counts of bundle points with `H_0(x)^3 H_0(y)^2 <= B` along
/// `grid`, optionally without the four accumulating fibers `x = e_l`.
pub fn bundle_count(grid: &[BigRational], exclude_accumulating: bool) -> Result<BundleReport> {
    validate_grid(grid)?;
    let bounds = integer_bounds(grid)?;
    let top = *bounds.last().expect("nonempty");
    check_fiber_radius(isqrt_u128(top))?;
    let xr = iroot_floor_u128(top, 3) as i64;
    let len = grid.len();
    let mut total = vec![0u64; len];
    let mut split = vec![0u64; len];
    let mut not_split = vec![0u64; len];
    let mut undetermined = vec![0u64; len];
    let mut accumulating = vec![0u64; len];
    let mut thin = vec![0u64; len];
    let mut fibers = 0u64;
    let mut violations = 0u64;
    let mut disagreements = 0u64;
    let mut ymax = vec![0u64; len];
    let mut scratch = Scratch::default();
    crate::enumerate::for_each_primitive(&[xr; 4], |x| {
        let h = x.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as u128;
        let h3 = h * h * h;
        let on_locus = x.iter().filter(|&&v| v != 0).count() == 1;
        if on_locus && exclude_accumulating {
            return;
        }
        for (y, &b) in ymax.iter_mut().zip(&bounds) {
            *y = if h3 > b { 0 } else { isqrt_u128(b / h3) as u64 };
        }
        if ymax[len - 1] == 0 {
            return;
        }
        let counts = fiber_counts_with(x, &ymax, &mut scratch);
        if counts[len - 1] == 0 {
            return;
        }
        fibers += 1;
        // A point of the fiber exists, so it serves as the witness.
        let class = classify(x, |_| Some(ProjPoint::from_normalized(vec![0, 0, 0, 1])));
        let is_thin = nonzero_square_product(x);
        let disc_square = x.iter().all(|&v| v != 0) && {
            let prod: i128 = x.iter().map(|&v| v as i128).product();
            prod > 0 && isqrt_u128(prod as u128).pow(2) == prod as u128
        };
        if class.is_split() && !disc_square {
            violations += 1;
        }
        let disagrees = match &class {
            FiberClass::SplitCertified { .. } => !is_thin,
            FiberClass::NotSplit { obstruction: Obstruction::NonsquareDiscriminant { .. } } => is_thin,
            _ => false,
        } || is_thin != disc_square;
        if disagrees {
            disagreements += 1;
        }
        let slot = match class {
            FiberClass::SplitCertified { .. } => &mut split,
            FiberClass::NotSplit { .. } => &mut not_split,
            FiberClass::Undetermined { .. } => &mut undetermined,
        };
        for k in 0..len {
            total[k] += counts[k];
            slot[k] += counts[k];
            if on_locus {
                accumulating[k] += counts[k];
            }
            if is_thin {
                thin[k] += counts[k];
            }
        }
    });
    let rows = (0..len)
        .map(|k| BundleRow {
            b: grid[k].clone(),
            total: total[k],
            on_split_certified: split[k],
            on_not_split: not_split[k],
            on_undetermined: undetermined[k],
            on_accumulating: accumulating[k],
            thin_members: thin[k],
        })
        .collect();
    Ok(BundleReport {
        exclude_accumulating,
        rows,
        fibers_with_points: fibers,
        split_without_square_discriminant: violations,
        thin_discriminant_disagreements: disagreements,
    })
}

/// Point counts of the single fiber over `x` along `grid`, with the bundle
/// height `H_0(x)^3 H_0(y)^2`.
pub fn fiber_series(x: &ProjPoint, grid: &[BigRational]) -> Result<CountSeries> {
    if x.len() != 4 {
        return Err(Error::DimensionError { expected: 4, got: x.len() });
    }
    validate_grid(grid)?;
    let bounds = integer_bounds(grid)?;
    let h = x.sup_norm() as u128;
    let ymax: Vec<u128> = bounds.iter().map(|&b| isqrt_u128(b / (h * h * h))).collect();
    check_fiber_radius(*ymax.last().expect("nonempty"))?;
    let ymax: Vec<u64> = ymax.into_iter().map(|y| y as u64).collect();
    let counts = fiber_counts(x.coords(), &ymax);
    CountSeries::new(grid.to_vec(), counts, format!("fiber {x}"))
}

/// Every bundle point with height at most `b`, by scanning the full `y`
/// box of each fiber. Intended as a reference at small `b`.
pub fn enumerate_bundle_points(b: u64, exclude_accumulating: bool) -> Vec<BiProjPoint> {
    let b = b as u128;
    let xr = iroot_floor_u128(b, 3) as i64;
    let mut out = Vec::new();
    crate::enumerate::for_each_primitive(&[xr; 4], |x| {
        let h = x.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as u128;
        if h == 0 || h * h * h > b {
            return;
        }
        let px = ProjPoint::from_normalized(x.to_vec());
        let yr = isqrt_u128(b / (h * h * h)) as i64;
        crate::enumerate::for_each_primitive(&[yr; 4], |y| {
            if bundle_form(x, y) == 0 {
                let p = BiProjPoint { x: px.clone(), y: ProjPoint::from_normalized(y.to_vec()) };
                if !(exclude_accumulating && accumulating_locus_member(&p)) {
                    out.push(p);
                }
            }
        });
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use std::collections::BTreeSet;

    fn pt(v: &[i64]) -> ProjPoint {
        ProjPoint::normalize(v).unwrap()
    }

    fn bp(x: &[i64], y: &[i64]) -> BiProjPoint {
        BiProjPoint::new(pt(x), pt(y)).unwrap()
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn heights_and_membership() {
        let p = bp(&[1, 1, -1, -1], &[1, 0, 1, 0]);
        assert!(!bp(&[1, 1, -1, -1], &[1, 1, 0, 0]).is_on_bundle());
        assert!(p.is_on_bundle());
        assert_eq!(bundle_height(&p), 1);
        let q = bp(&[2, 1, -1, -1], &[1, 0, 1, 1]);
        assert!(q.is_on_bundle());
        assert_eq!(bundle_height(&q), 8);
        assert_eq!(bundle_height(&bp(&[4, 2, -2, -2], &[3, 0, 3, 3])), 8);
    }

    #[test]
    fn loci_and_thin_sets() {
        assert!(accumulating_locus_member(&bp(&[1, 0, 0, 0], &[0, 1, 1, 0])));
        assert!(!accumulating_locus_member(&bp(&[1, 1, -1, -1], &[1, 1, 0, 0])));
        let off = bp(&[1, 0, 0, 0], &[1, 0, 0, 0]);
        assert!(!off.is_on_bundle());
        assert!(!accumulating_locus_member(&off));
        assert!(thin_set_member(&bp(&[1, 1, -1, -1], &[1, 1, 0, 0])));
        assert!(!thin_set_member(&bp(&[1, 2, -1, -1], &[1, 0, 1, 1])));
    }

    #[test]
    fn fiber_verdicts() {
        assert_eq!(
            fiber_class(&pt(&[1, 1, -1, -1]), 50),
            FiberClass::SplitCertified { witness: SplitWitness::SquareCoefficients }
        );
        assert_eq!(fiber_class(&pt(&[1, 1, 1, 1]), 50), FiberClass::NotSplit { obstruction: Obstruction::Definite });
        assert!(matches!(
            fiber_class(&pt(&[1, 2, -1, -1]), 50),
            FiberClass::NotSplit { obstruction: Obstruction::NonsquareDiscriminant { product: 2 } }
        ));
        let c = fiber_class(&pt(&[1, -1, 1, -1]), 50);
        assert!(matches!(c, FiberClass::SplitCertified { witness: SplitWitness::Point { .. } }), "{c:?}");
        assert_eq!(fiber_class(&pt(&[1, 0, -1, 2]), 50), FiberClass::Undetermined { degenerate: true });
        // y0^2 + y1^2 = 3(y2^2 + y3^2) has no primitive zero mod 8.
        assert_eq!(
            fiber_class(&pt(&[1, 1, -3, -3]), 50),
            FiberClass::NotSplit { obstruction: Obstruction::Local { modulus: 8 } }
        );
        assert_eq!(
            fiber_class(&pt(&[1, -8, -6, 3]), 50),
            FiberClass::NotSplit { obstruction: Obstruction::Local { modulus: 9 } }
        );
    }

    #[test]
    fn counts_match_reference_enumeration() {
        for &b in &[1i64, 8, 30, 100] {
            for exclude in [false, true] {
                let pts = enumerate_bundle_points(b as u64, exclude);
                let set: BTreeSet<_> = pts.iter().cloned().collect();
                assert_eq!(set.len(), pts.len());
                let r = bundle_count(&[int(b)], exclude).unwrap();
                let row = &r.rows[0];
                assert_eq!(row.total as usize, pts.len(), "B={b} exclude={exclude}");
                let acc = pts.iter().filter(|p| accumulating_locus_member(p) && p.x.coords().iter().filter(|&&v| v != 0).count() == 1).count();
                assert_eq!(row.on_accumulating as usize, acc);
                assert_eq!(row.thin_members as usize, pts.iter().filter(|p| thin_set_member(p)).count());
                assert_eq!(row.on_split_certified + row.on_not_split + row.on_undetermined, row.total);
                assert_eq!(r.split_without_square_discriminant, 0);
                assert_eq!(r.thin_discriminant_disagreements, 0);
            }
        }
    }

    #[test]
    fn series_cumulative_and_fiber_counts() {
        let grid: Vec<_> = [4, 16, 64, 256].iter().map(|&b| int(b)).collect();
        let r = bundle_count(&grid, true).unwrap();
        for (row, b) in r.rows.iter().zip([4, 16, 64, 256]) {
            assert_eq!(row.total, bundle_count(&[int(b)], true).unwrap().rows[0].total);
        }
        let x = pt(&[1, -1, 1, -1]);
        let s = fiber_series(&x, &grid).unwrap();
        for (c, b) in s.counts.iter().zip([4u64, 16, 64, 256]) {
            let want = enumerate_bundle_points(b, true).into_iter().filter(|p| p.x == x).count();
            assert_eq!(*c as usize, want);
        }
    }
}
