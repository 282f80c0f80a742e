//! Small exact-arithmetic helpers shared by the enumerators and certificates.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Floor of the square root.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

pub fn is_square_i128(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = isqrt_u128(n as u128);
    r * r == n as u128
}

/// `base^exp` if it fits in an `i128`.
pub fn checked_pow_i128(base: i128, exp: u32) -> Option<i128> {
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Floor of the `d`-th root of a nonnegative integer.
pub fn iroot_floor_u128(n: u128, d: u32) -> u128 {
    assert!(d >= 1);
    if d == 1 || n < 2 {
        return n;
    }
    let mut x = (n as f64).powf(1.0 / d as f64).round() as u128;
    let fits = |x: u128| checked_pow_i128(x as i128, d).is_some_and(|v| (v as u128) <= n);
    while x > 0 && !fits(x) {
        x -= 1;
    }
    while fits(x + 1) {
        x += 1;
    }
    x
}

/// Exact integer `d`-th roots of `t`: the integers `r` with `r^d = t`.
/// Returns at most two values (`±r` for even `d`).
pub fn exact_roots(t: i128, d: u32) -> ([i128; 2], usize) {
    debug_assert!(d >= 1);
    if d == 1 {
        return ([t, 0], 1);
    }
    if t == 0 {
        return ([0, 0], 1);
    }
    if d.is_multiple_of(2) {
        if t < 0 {
            return ([0, 0], 0);
        }
        let r = iroot_floor_u128(t as u128, d) as i128;
        if checked_pow_i128(r, d) == Some(t) {
            return ([r, -r], 2);
        }
        ([0, 0], 0)
    } else {
        let r = iroot_floor_u128(t.unsigned_abs(), d) as i128;
        if checked_pow_i128(r, d) == Some(t.abs()) {
            return ([if t < 0 { -r } else { r }, 0], 1);
        }
        ([0, 0], 0)
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Signed squarefree divisors `(d, μ(d))` of `n`.
pub fn mobius_divisors(n: u64) -> Vec<(u64, i64)> {
    let primes = prime_factors(n);
    let mut out = vec![(1u64, 1i64)];
    for p in primes {
        let len = out.len();
        for i in 0..len {
            let (d, mu) = out[i];
            out.push((d * p, -mu));
        }
    }
    out
}

/// Number of `t` in `1..=limit` coprime to `g` (`g >= 1`).
pub fn coprime_count(limit: u64, divisors: &[(u64, i64)]) -> u64 {
    let s: i64 = divisors.iter().map(|&(d, mu)| mu * (limit / d) as i64).sum();
    s as u64
}

/// Determinant by fraction-free Gaussian elimination (Bareiss).
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rank of an integer matrix (rows of equal length).
pub fn rank(matrix: &[Vec<BigInt>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            for j in c..cols {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = v;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Resultant of two polynomials given by coefficient lists of formal
/// degrees `f.len() - 1` and `g.len() - 1` (highest degree first).
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(&rows)
}

/// `a mod m` in `0..m` for a possibly negative `BigInt`.
pub fn big_mod_u64(a: &BigInt, m: u64) -> u64 {
    let r = a % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    u64::try_from(r).expect("residue fits")
}

/// Modulus used for the perfect-power residue filter: 2^6 * 3^2 * 5 * 7 * 13.
pub const RESIDUE_MODULUS: i64 = 262_080;

/// Table of `d`-th power residues modulo [`RESIDUE_MODULUS`].
#[derive(Debug, Clone)]
pub struct PowerResidues {
    table: Vec<bool>,
}

impl PowerResidues {
    pub fn new(d: u32) -> Self {
        let m = RESIDUE_MODULUS as u64;
        let mut table = vec![false; m as usize];
        for y in 0..m {
            let mut acc = 1u64;
            for _ in 0..d {
                acc = acc * y % m;
            }
            table[acc as usize] = true;
        }
        PowerResidues { table }
    }

    #[inline]
    pub fn may_be_power(&self, t: i64) -> bool {
        self.table[t.rem_euclid(RESIDUE_MODULUS) as usize]
    }
}
