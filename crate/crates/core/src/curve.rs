//! Genus-2 curves `y^2 = f(x)` over finite fields: point counts over `F_p`
//! and `F_{p^2}`, the Frobenius characteristic polynomial, and an
//! irreducibility test for monic integer quartics.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{big_mod_u64, is_prime_u64, isqrt_u128, resultant};
use crate::error::{Error, Result};

/// Largest field size `q` accepted by the point counter.
pub const MAX_FIELD_SIZE: u64 = 10_000_000;

/// `y^2 = f(x)` with `deg f = 5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperellipticCurve {
    /// Coefficients of `f`, leading coefficient first.
    coeffs: Vec<i64>,
}

impl HyperellipticCurve {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != 6 || coeffs[0] == 0 {
            return Err(Error::param("f", "need exactly six coefficients with nonzero leading term"));
        }
        Ok(HyperellipticCurve { coeffs })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    /// `disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)` with `n = 5`.
    pub fn discriminant(&self) -> BigInt {
        let f: Vec<BigInt> = self.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let df: Vec<BigInt> = self.coeffs[..5].iter().enumerate().map(|(i, &c)| BigInt::from(c) * BigInt::from(5 - i)).collect();
        // n(n-1)/2 = 10 is even.
        resultant(&f, &df) / &f[0]
    }

    fn reduce(&self, p: u64) -> Vec<u64> {
        self.coeffs.iter().map(|&c| big_mod_u64(&BigInt::from(c), p)).collect()
    }
}

impl fmt::Display for HyperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 =")?;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = 5 - i;
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.unsigned_abs();
            let mono = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            let body = if a == 1 && k > 0 { mono } else { format!("{a}{mono}") };
            if first {
                write!(f, " {sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p.is_multiple_of(2) || !is_prime_u64(p) {
        return Err(Error::param("p", format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// `disc(f) ≢ 0 (mod p)` and `p` does not divide the leading coefficient.
pub fn verify_good_reduction(c: &HyperellipticCurve, p: u64) -> Result<bool> {
    check_odd_prime(p)?;
    Ok(c.coeffs[0].rem_euclid(p as i64) != 0 && big_mod_u64(&c.discriminant(), p) != 0)
}

/// `F_p[t] / (t^2 - c)` with `c` the least quadratic nonresidue.
#[derive(Clone, Copy, Debug)]
pub struct Fp2 {
    p: u64,
    c: u64,
}

impl Fp2 {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let c = (2..p).find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1).expect("odd prime has a nonresidue");
        Ok(Fp2 { p, c })
    }

    pub fn nonresidue(&self) -> u64 {
        self.c
    }

    #[inline]
    pub fn mul(&self, (a, b): (u64, u64), (x, y): (u64, u64)) -> (u64, u64) {
        let p = self.p as u128;
        let (a, b, x, y) = (a as u128, b as u128, x as u128, y as u128);
        let re = (a * x + self.c as u128 * (b * y % p)) % p;
        let im = (a * y + b * x) % p;
        (re as u64, im as u64)
    }

    #[inline]
    pub fn add(&self, (a, b): (u64, u64), (x, y): (u64, u64)) -> (u64, u64) {
        ((a + x) % self.p, (b + y) % self.p)
    }

    /// `a^2 - c b^2`, which lies in `F_p`.
    #[inline]
    pub fn norm(&self, (a, b): (u64, u64)) -> u64 {
        let p = self.p as u128;
        let (a, b) = (a as u128, b as u128);
        ((a * a % p + p - self.c as u128 * (b * b % p) % p) % p) as u64
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut b2 = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b2 % m as u128;
        }
        b2 = b2 * b2 % m as u128;
        e >>= 1;
    }
    r as u64
}

/// Quadratic character table of `F_p`: `chi[v] ∈ {-1, 0, 1}`.
fn character_table(p: u64) -> Vec<i8> {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for x in 1..p.div_ceil(2) {
        chi[(x * x % p) as usize] = 1;
    }
    chi
}

/// `#C(F_q)` for `q = p^ext`, `ext ∈ {1, 2}`: `Σ_x (1 + χ(f(x))) + 1`, the
/// last term for the single point at infinity.
pub fn hyperelliptic_count(c: &HyperellipticCurve, p: u64, ext: u32) -> Result<u64> {
    check_odd_prime(p)?;
    if !(1..=2).contains(&ext) {
        return Err(Error::param("extension_degree", "must be 1 or 2"));
    }
    let q = p.checked_pow(ext).filter(|&q| q <= MAX_FIELD_SIZE);
    if q.is_none() {
        return Err(Error::TooLarge(format!("field of size {p}^{ext} exceeds {MAX_FIELD_SIZE}")));
    }
    if !verify_good_reduction(c, p)? {
        return Err(Error::BadReduction(p));
    }
    let f = c.reduce(p);
    let chi = character_table(p);
    let mut total: i64 = 0;
    if ext == 1 {
        for x in 0..p {
            let v = f.iter().fold(0u128, |acc, &a| (acc * x as u128 + a as u128) % p as u128);
            total += 1 + chi[v as usize] as i64;
        }
    } else {
        let k = Fp2::new(p)?;
        for a in 0..p {
            for b in 0..p {
                let x = (a, b);
                let v = f.iter().fold((0u64, 0u64), |acc, &co| k.add(k.mul(acc, x), (co, 0)));
                let chi2 = if v == (0, 0) { 0 } else { chi[k.norm(v) as usize] as i64 };
                total += 1 + chi2;
            }
        }
    }
    Ok(total as u64 + 1)
}

/// `T^4 - a1 T^3 + a2 T^2 - p a1 T + p^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusCharpoly {
    pub p: u64,
    pub a1: i64,
    pub a2: i64,
}

impl FrobeniusCharpoly {
    /// `[c3, c2, c1, c0]` of the monic quartic.
    pub fn tail(&self) -> [i64; 4] {
        let p = self.p as i64;
        [-self.a1, self.a2, -p * self.a1, p * p]
    }

    /// Point counts `(N1, N2)` recovered from the power sums of the roots.
    pub fn point_counts(&self) -> (i64, i64) {
        let p = self.p as i64;
        let s1 = self.a1;
        let s2 = self.a1 * self.a1 - 2 * self.a2;
        (p + 1 - s1, p * p + 1 - s2)
    }
}

impl fmt::Display for FrobeniusCharpoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T^4")?;
        for (c, mono) in self.tail().iter().zip(["T^3", "T^2", "T", ""]) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else { "+" };
            let a = c.unsigned_abs();
            if a == 1 && !mono.is_empty() {
                write!(f, " {sign} {mono}")?;
            } else {
                write!(f, " {sign} {a}{mono}")?;
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial of Frobenius from `N1 = #C(F_p)` and
/// `N2 = #C(F_{p^2})`.
pub fn frobenius_charpoly(n1: u64, n2: u64, p: u64) -> Result<FrobeniusCharpoly> {
    check_odd_prime(p)?;
    let (pi, n1, n2) = (p as i64, n1 as i64, n2 as i64);
    let a1 = pi + 1 - n1;
    let s2 = pi * pi + 1 - n2;
    let twice = a1 * a1 - s2;
    if twice % 2 != 0 {
        return Err(Error::InconsistentCounts(format!("a2 = {twice}/2 is not an integer")));
    }
    let a2 = twice / 2;
    if a1 * a1 > 16 * pi {
        return Err(Error::InconsistentCounts(format!("|a1| = {} exceeds 4 sqrt(p)", a1.abs())));
    }
    if 4 * a2.abs() > 8 * pi + a1 * a1 {
        return Err(Error::InconsistentCounts(format!("|a2| = {} exceeds 2p + a1^2/4", a2.abs())));
    }
    Ok(FrobeniusCharpoly { p, a1, a2 })
}

fn signed_divisors(n: i128) -> Vec<i128> {
    let n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as i128);
            if d * d != n {
                out.push((n / d) as i128);
            }
        }
        d += 1;
    }
    let neg: Vec<i128> = out.iter().map(|d| -d).collect();
    out.extend(neg);
    out
}

/// Irreducibility over `Q` of `T^4 + c3 T^3 + c2 T^2 + c1 T + c0`, by
/// searching for integer linear factors and monic quadratic factor pairs.
pub fn is_irreducible_quartic_over_q(tail: [i64; 4]) -> bool {
    let [c3, c2, c1, c0] = tail.map(i128::from);
    if c0 == 0 {
        return false;
    }
    let eval = |t: i128| (((t + c3) * t + c2) * t + c1) * t + c0;
    let divisors = signed_divisors(c0);
    if divisors.iter().any(|&t| eval(t) == 0) {
        return false;
    }
    // (T^2 + aT + b)(T^2 + cT + d): bd = c0, a + c = c3, ac = c2 - b - d,
    // ad + bc = c1.
    for &b in &divisors {
        let d = c0 / b;
        let prod = c2 - b - d;
        let disc = c3 * c3 - 4 * prod;
        if disc < 0 {
            continue;
        }
        let root = isqrt_u128(disc as u128) as i128;
        if root * root != disc {
            continue;
        }
        for sign in [1, -1] {
            let twice_a = c3 + sign * root;
            if twice_a % 2 != 0 {
                continue;
            }
            let a = twice_a / 2;
            let c = c3 - a;
            if a * d + b * c == c1 {
                return false;
            }
        }
    }
    true
}

/// Irreducibility of the charpoly over `Q`.
pub fn charpoly_is_irreducible(cp: &FrobeniusCharpoly) -> bool {
    is_irreducible_quartic_over_q(cp.tail())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub struct CurveCertificate {
    #[serde(rename = "N1")]
    pub n1: u64,
    #[serde(rename = "N2")]
    pub n2: u64,
    pub a1: i64,
    pub a2: i64,
    pub irreducible: bool,
    pub good_reduction: bool,
}

/// Counts, charpoly and irreducibility at `p` in one record.
pub fn certificate(c: &HyperellipticCurve, p: u64) -> Result<CurveCertificate> {
    let good_reduction = verify_good_reduction(c, p)?;
    if !good_reduction {
        return Err(Error::BadReduction(p));
    }
    let n1 = hyperelliptic_count(c, p, 1)?;
    let n2 = hyperelliptic_count(c, p, 2)?;
    let cp = frobenius_charpoly(n1, n2, p)?;
    Ok(CurveCertificate { n1, n2, a1: cp.a1, a2: cp.a2, irreducible: charpoly_is_irreducible(&cp), good_reduction })
}
