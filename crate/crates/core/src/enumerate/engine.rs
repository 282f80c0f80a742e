//! Box enumeration over primitive sign-normalized integer vectors with
//! forms specialized one coordinate at a time.
//!
//! Every form is stored as coefficient arrays indexed by the monomial
//! "tails" that survive once a prefix of coordinates is fixed, so fixing
//! `x_i` costs one multiply-add per monomial tail instead of a full
//! re-evaluation. The innermost coordinate is either scanned (naive) or
//! solved from a form that is diagonal in it.

use std::ops::{Add, AddAssign, Mul, Neg};

use num_traits::Zero;

use crate::arith::{exact_roots, gcd_u64, PowerResidues};
use crate::model::{CompleteIntersection, Form, HeightSpec};

pub(crate) trait EngineInt:
    Copy
    + Send
    + Sync
    + PartialEq
    + Zero
    + Add<Output = Self>
    + AddAssign
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn to_i128(self) -> i128;
    fn residue_ok(self, table: &PowerResidues) -> bool;
    fn div_exact(self, c: Self) -> Option<Self>;
}

impl EngineInt for i64 {
    #[inline]
    fn from_i64(v: i64) -> Self {
        v
    }
    #[inline]
    fn to_i128(self) -> i128 {
        self as i128
    }
    #[inline]
    fn residue_ok(self, table: &PowerResidues) -> bool {
        table.may_be_power(self)
    }
    #[inline]
    fn div_exact(self, c: Self) -> Option<Self> {
        match c {
            1 => Some(self),
            -1 => Some(-self),
            _ if self % c == 0 => Some(self / c),
            _ => None,
        }
    }
}

impl EngineInt for i128 {
    #[inline]
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    #[inline]
    fn to_i128(self) -> i128 {
        self
    }
    #[inline]
    fn residue_ok(self, table: &PowerResidues) -> bool {
        table.may_be_power(self.rem_euclid(crate::arith::RESIDUE_MODULUS as i128) as i64)
    }
    #[inline]
    fn div_exact(self, c: Self) -> Option<Self> {
        match c {
            1 => Some(self),
            -1 => Some(-self),
            _ if self % c == 0 => Some(self / c),
            _ => None,
        }
    }
}

/// Substitution map from the coefficient array at one level to the next.
struct LevelMap {
    /// `(source tail, target tail, power of the fixed coordinate)`
    entries: Vec<(usize, usize, u32)>,
    next_len: usize,
}

struct FormPlan<T> {
    initial: Vec<T>,
    levels: Vec<LevelMap>,
    /// Powers of the last coordinate for the tails at the final level.
    last_powers: Vec<u32>,
}

impl<T: EngineInt> FormPlan<T> {
    fn new(form: &Form) -> Self {
        let num_vars = form.num_vars();
        let mut tails: Vec<Vec<u32>> = form.terms().map(|(e, _)| e.to_vec()).collect();
        let initial = form.terms().map(|(_, c)| T::from_i64(c)).collect();
        let mut levels = Vec::with_capacity(num_vars.saturating_sub(1));
        for _ in 0..num_vars.saturating_sub(1) {
            let mut next: Vec<Vec<u32>> = tails.iter().map(|t| t[1..].to_vec()).collect();
            next.sort();
            next.dedup();
            let entries = tails
                .iter()
                .enumerate()
                .map(|(src, t)| {
                    let dst = next.binary_search(&t[1..].to_vec()).expect("tail present");
                    (src, dst, t[0])
                })
                .collect();
            levels.push(LevelMap { entries, next_len: next.len() });
            tails = next;
        }
        let last_powers = tails.iter().map(|t| t[0]).collect();
        FormPlan { initial, levels, last_powers }
    }
}

/// Diagonal last form `c0 + coeff * x_last^degree` used by the solver.
struct SolvePlan<T> {
    form_index: usize,
    coeff: T,
    degree: u32,
    /// Position of the `x_last^0` tail in the final coefficient array.
    constant_tail: Option<usize>,
    residues: PowerResidues,
}

pub(crate) struct Engine<'a, T> {
    num_vars: usize,
    radii: Vec<i64>,
    height: &'a HeightSpec,
    forms: Vec<FormPlan<T>>,
    max_degree: u32,
    solve: Option<SolvePlan<T>>,
}

/// Which values of the outermost coordinate a run covers.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    pub const ALL: Shard = Shard { index: 0, count: 1 };
}

impl<'a, T: EngineInt> Engine<'a, T> {
    pub fn new(x: &CompleteIntersection, height: &'a HeightSpec, radii: Vec<i64>, solve_last: bool) -> Self {
        let forms: Vec<FormPlan<T>> = x.forms().iter().map(FormPlan::new).collect();
        let solve = if solve_last {
            let idx = x.forms().len() - 1;
            let f = &x.forms()[idx];
            let coeff = f.diagonal_last_coefficient().expect("strategy validated");
            let constant_tail = forms[idx].last_powers.iter().position(|&k| k == 0);
            Some(SolvePlan {
                form_index: idx,
                coeff: T::from_i64(coeff),
                degree: f.degree(),
                constant_tail,
                residues: PowerResidues::new(f.degree()),
            })
        } else {
            None
        };
        Engine {
            num_vars: x.num_vars(),
            radii,
            height,
            max_degree: x.forms().iter().map(Form::degree).max().unwrap_or(0),
            forms,
            solve,
        }
    }

    pub fn run<F: FnMut(&[i64], u128)>(&self, shard: Shard, emit: &mut F) {
        let n = self.num_vars;
        debug_assert!(n >= 2);
        // bufs[level][form] holds the coefficient array at that level; each
        // recursion step sees the suffix starting at its own level.
        let mut bufs: Vec<Vec<Vec<T>>> = (0..n)
            .map(|lvl| {
                self.forms
                    .iter()
                    .map(|f| {
                        let len = if lvl == 0 { f.initial.len() } else { f.levels[lvl - 1].next_len };
                        vec![T::zero(); len]
                    })
                    .collect()
            })
            .collect();
        for (buf, f) in bufs[0].iter_mut().zip(&self.forms) {
            buf.copy_from_slice(&f.initial);
        }
        let mut coords = vec![0i64; n];
        let mut pows = vec![T::zero(); self.max_degree as usize + 1];
        self.level(0, 0, true, 0, &mut bufs, &mut coords, &mut pows, shard, emit);
    }

    #[allow(clippy::too_many_arguments)]
    fn level<F: FnMut(&[i64], u128)>(
        &self,
        lvl: usize,
        g: u64,
        lead: bool,
        sup: u128,
        bufs: &mut [Vec<Vec<T>>],
        coords: &mut [i64],
        pows: &mut [T],
        shard: Shard,
        emit: &mut F,
    ) {
        let n = self.num_vars;
        if lvl == n - 1 {
            self.last(g, lead, sup, &bufs[0], coords, emit);
            return;
        }
        let r = self.radii[lvl];
        let lo = if lead { 0 } else { -r };
        let (p, q) = self.height.weights();
        let weight = if lvl == 0 { p } else { q };
        let (cur, rest) = bufs.split_at_mut(1);
        let cur = &cur[0];
        for v in lo..=r {
            if lvl == 0 && (v as usize) % shard.count != shard.index {
                continue;
            }
            coords[lvl] = v;
            pows[0] = T::one_();
            let tv = T::from_i64(v);
            for k in 1..pows.len() {
                pows[k] = pows[k - 1] * tv;
            }
            for (fi, f) in self.forms.iter().enumerate() {
                let map = &f.levels[lvl];
                let next = &mut rest[0][fi];
                next.iter_mut().for_each(|c| *c = T::zero());
                let src = &cur[fi];
                for &(s, d, k) in &map.entries {
                    next[d] += src[s] * pows[k as usize];
                }
            }
            let sup = sup.max(weight * v.unsigned_abs() as u128);
            self.level(
                lvl + 1,
                gcd_u64(g, v.unsigned_abs()),
                lead && v == 0,
                sup,
                rest,
                coords,
                pows,
                shard,
                emit,
            );
        }
    }

    fn last<F: FnMut(&[i64], u128)>(
        &self,
        g: u64,
        lead: bool,
        sup: u128,
        coeffs: &[Vec<T>],
        coords: &mut [i64],
        emit: &mut F,
    ) {
        let n = self.num_vars;
        let r = self.radii[n - 1];
        let (_, q) = self.height.weights();
        let mut accept = |v: i64, coords: &mut [i64], skip: Option<usize>| {
            if gcd_u64(g, v.unsigned_abs()) != 1 {
                return;
            }
            let tv = T::from_i64(v);
            for (fi, f) in self.forms.iter().enumerate() {
                if Some(fi) == skip {
                    continue;
                }
                let mut acc = T::zero();
                for (c, &k) in coeffs[fi].iter().zip(&f.last_powers) {
                    let mut t = *c;
                    for _ in 0..k {
                        t = t * tv;
                    }
                    acc += t;
                }
                if acc != T::zero() {
                    return;
                }
            }
            coords[n - 1] = v;
            emit(coords, sup.max(q * v.unsigned_abs() as u128));
        };
        if lead {
            // Only (0, ..., 0, 1) remains.
            if r >= 1 {
                accept(1, coords, None);
            }
            return;
        }
        match &self.solve {
            None => {
                for v in -r..=r {
                    accept(v, coords, None);
                }
            }
            Some(sp) => {
                let c0 = sp.constant_tail.map_or(T::zero(), |i| coeffs[sp.form_index][i]);
                let Some(t) = (-c0).div_exact(sp.coeff) else { return };
                if !t.residue_ok(&sp.residues) {
                    return;
                }
                let (roots, count) = exact_roots(t.to_i128(), sp.degree);
                for &root in &roots[..count] {
                    if root.unsigned_abs() > r as u128 {
                        continue;
                    }
                    accept(root as i64, coords, Some(sp.form_index));
                }
            }
        }
    }
}

trait OneExt {
    fn one_() -> Self;
}

impl<T: EngineInt> OneExt for T {
    #[inline]
    fn one_() -> Self {
        T::from_i64(1)
    }
}

/// Certified magnitude bound (log2) for all intermediate values.
pub(crate) fn log2_bound(x: &CompleteIntersection, radii: &[i64]) -> f64 {
    let r = radii.iter().copied().max().unwrap_or(1).max(1) as f64;
    x.forms()
        .iter()
        .map(|f| f.coefficient_mass().log2() + f.degree() as f64 * r.log2())
        .fold(0.0, f64::max)
}
