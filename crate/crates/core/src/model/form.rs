use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::point::ProjPoint;
use crate::error::{Error, Result};

/// A homogeneous integer polynomial stored sparsely by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Form {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl Form {
    /// Builds a form, merging repeated monomials and dropping zero
    /// coefficients. Every exponent vector must have length `num_vars` and
    /// total degree `degree`.
    pub fn new(
        num_vars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(Error::DimensionError { expected: num_vars, got: exps.len() });
            }
            let deg: u32 = exps.iter().sum();
            if deg != degree {
                return Err(Error::param(
                    "form",
                    format!("monomial of degree {deg} in a form of degree {degree}"),
                ));
            }
            let entry = map.entry(exps).or_insert(0);
            *entry = entry
                .checked_add(c)
                .ok_or_else(|| Error::Overflow("coefficient exceeds i64".into()))?;
        }
        map.retain(|_, c| *c != 0);
        if map.is_empty() {
            return Err(Error::param("form", "zero polynomial"));
        }
        if degree == 0 {
            return Err(Error::param("form", "degree must be positive"));
        }
        Ok(Form { num_vars, degree, terms: map })
    }

    /// Builds a form whose degree is read off its first term.
    pub fn from_terms(num_vars: usize, terms: Vec<(Vec<u32>, i64)>) -> Result<Self> {
        let degree = terms
            .first()
            .map(|(e, _)| e.iter().sum())
            .ok_or_else(|| Error::param("form", "no terms"))?;
        Form::new(num_vars, degree, terms)
    }

    /// `sum_i coeffs[i] * x_i^degree`.
    pub fn diagonal(degree: u32, coeffs: &[i64]) -> Result<Self> {
        let n = coeffs.len();
        Form::new(
            n,
            degree,
            coeffs.iter().enumerate().map(|(i, &c)| {
                let mut e = vec![0; n];
                e[i] = degree;
                (e, c)
            }),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> + '_ {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Sum of absolute values of the coefficients.
    pub fn coefficient_mass(&self) -> f64 {
        self.terms.values().map(|c| c.unsigned_abs() as f64).sum()
    }

    pub fn evaluate(&self, p: &ProjPoint) -> Result<BigInt> {
        if p.len() != self.num_vars {
            return Err(Error::DimensionError { expected: self.num_vars, got: p.len() });
        }
        Ok(self.evaluate_slice(p.coords()))
    }

    /// Exact value at an integer vector; `i128` when a static bound certifies
    /// it, arbitrary precision otherwise.
    pub fn evaluate_slice(&self, x: &[i64]) -> BigInt {
        debug_assert_eq!(x.len(), self.num_vars);
        let sup = x.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0).max(1) as f64;
        let bound = self.coefficient_mass().log2() + self.degree as f64 * sup.log2();
        if bound < 125.0 {
            let mut acc: i128 = 0;
            for (exps, &c) in &self.terms {
                let mut t = c as i128;
                for (&xi, &e) in x.iter().zip(exps) {
                    for _ in 0..e {
                        t *= xi as i128;
                    }
                }
                acc += t;
            }
            BigInt::from(acc)
        } else {
            let mut acc = BigInt::zero();
            for (exps, &c) in &self.terms {
                let mut t = BigInt::from(c);
                for (&xi, &e) in x.iter().zip(exps) {
                    t *= BigInt::from(xi).pow(e);
                }
                acc += t;
            }
            acc
        }
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(exps, &c)| {
                exps.iter().zip(x).fold(c as f64, |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }

    /// If the last variable occurs only in a single pure power `c * x_n^degree`,
    /// returns `c`.
    pub fn diagonal_last_coefficient(&self) -> Option<i64> {
        let last = self.num_vars.checked_sub(1)?;
        let mut coeff = None;
        for (exps, &c) in &self.terms {
            if exps[last] == 0 {
                continue;
            }
            if exps[last] != self.degree || coeff.is_some() {
                return None;
            }
            coeff = Some(c);
        }
        coeff
    }

    /// Substitutes `x_i -> subs[i]` symbolically.
    pub fn compose(&self, subs: &[Poly]) -> Result<Poly> {
        if subs.len() != self.num_vars {
            return Err(Error::DimensionError { expected: self.num_vars, got: subs.len() });
        }
        let target_vars = subs.first().map(|p| p.num_vars).unwrap_or(0);
        let mut acc = Poly::zero(target_vars);
        for (exps, &c) in &self.terms {
            let mut t = Poly::constant(target_vars, BigInt::from(c));
            for (s, &e) in subs.iter().zip(exps) {
                for _ in 0..e {
                    t = t.mul(s);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Highest monomials first, matching how forms are usually written.
        for (i, (exps, &c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c < 0 { ("-", c.unsigned_abs()) } else { ("+", c as u64) };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut first = true;
            if mag != 1 {
                write!(f, "{mag}")?;
                first = false;
            }
            for (v, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{v}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with arbitrary-precision coefficients,
/// used for symbolic containment checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(num_vars: usize) -> Self {
        Poly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: BigInt) -> Self {
        let mut p = Poly::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    /// The linear form `sum_j coeffs[j] * t_j`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; n];
                e[j] = 1;
                p.terms.insert(e, BigInt::from(c));
            }
        }
        p
    }

    /// Embeds a form as a polynomial in the same variables.
    pub fn from_form(f: &Form) -> Self {
        Poly {
            num_vars: f.num_vars,
            terms: f.terms.iter().map(|(e, &c)| (e.clone(), BigInt::from(c))).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Exact value at an integer point.
    pub fn evaluate(&self, x: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                t *= xi.pow(k);
            }
            acc += t;
        }
        acc
    }

    /// Coefficients of a binary form of degree `m` as `[c_m, ..., c_0]`
    /// where `c_k` multiplies `u^k v^(m-k)`.
    pub fn binary_coefficients(&self, m: u32) -> Vec<BigInt> {
        assert_eq!(self.num_vars, 2);
        (0..=m)
            .rev()
            .map(|k| self.terms.get(&vec![k, m - k]).cloned().unwrap_or_else(BigInt::zero))
            .collect()
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }
}
