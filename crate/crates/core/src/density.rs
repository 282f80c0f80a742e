//! Local densities: Monte-Carlo archimedean densities on the λ-weighted box
//! and exact p-adic densities by full enumeration.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::model::{CompleteIntersection, Form};
use crate::series::rational_string;

pub const MIN_SAMPLES: u64 = 10_000;
/// Largest residue box `p^(k(n+1))` enumerated by [`padic_density`].
pub const PADIC_LIMIT: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    #[serde(with = "ratio_string")]
    pub lambda: Ratio<i64>,
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub epsilon: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicDensity {
    pub p: u64,
    pub k: u32,
    #[serde(with = "rational_string")]
    pub value: BigRational,
}

mod ratio_string {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let s = String::deserialize(d)?;
        crate::model::parse_lambda(&s).map_err(serde::de::Error::custom)
    }
}

/// Monomials of a form as `(coefficient, exponents)` for fast float evaluation.
struct FloatForm {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl FloatForm {
    fn new(f: &Form) -> Self {
        let terms = f
            .terms()
            .map(|(e, c)| {
                let powers = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k as i32)).collect();
                (c as f64, powers)
            })
            .collect();
        FloatForm { terms }
    }

    #[inline]
    fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(c, p)| p.iter().fold(*c, |acc, &(i, k)| acc * x[i].powi(k))).sum()
    }
}

/// Fills `x` with a uniform sample of `W_λ = {max(λ|x_0|, |x_1|, ...) <= 1}`.
#[inline]
fn sample_box(rng: &mut ChaCha8Rng, inv_lambda: f64, x: &mut [f64]) {
    x[0] = rng.random_range(-1.0..=1.0) * inv_lambda;
    for v in &mut x[1..] {
        *v = rng.random_range(-1.0..=1.0);
    }
}

/// Default slab half-width: `1e-3 · max |F_i|` over `10^4` uniform probes of
/// the unit box.
pub fn default_epsilon(x: &CompleteIntersection, seed: u64) -> f64 {
    let forms: Vec<FloatForm> = x.forms().iter().map(FloatForm::new).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut buf = vec![0.0; x.num_vars()];
    let mut best = 0f64;
    for _ in 0..10_000 {
        sample_box(&mut rng, 1.0, &mut buf);
        for f in &forms {
            best = best.max(f.eval(&buf).abs());
        }
    }
    1e-3 * best
}

/// Monte-Carlo estimate of `vol{x ∈ W_λ : |F_i(x)| <= ε ∀i} / (2ε)^s`.
///
/// Worker `w` draws its share of the samples from the ChaCha stream `w` of
/// `seed`; results depend on `(seed, samples, epsilon, lambda, workers)`.
pub fn archimedean_density(
    x: &CompleteIntersection,
    lambda: Ratio<i64>,
    epsilon: f64,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<DensityEstimate> {
    let s = x.forms().len();
    if s == 0 {
        return Err(Error::param("forms", "need at least one form"));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::param("epsilon", "must be positive"));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::param("samples", format!("must be at least {MIN_SAMPLES}")));
    }
    if *lambda.numer() <= 0 || *lambda.denom() <= 0 {
        return Err(Error::param("lambda", "must be positive"));
    }
    if workers == 0 {
        return Err(Error::param("workers", "must be at least 1"));
    }
    let lam = *lambda.numer() as f64 / *lambda.denom() as f64;
    let forms: Vec<FloatForm> = x.forms().iter().map(FloatForm::new).collect();
    let n = x.num_vars();
    let run = |w: usize| -> u64 {
        let share = samples / workers as u64 + u64::from((w as u64) < samples % workers as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(w as u64);
        let mut buf = vec![0.0; n];
        let mut hits = 0u64;
        for _ in 0..share {
            sample_box(&mut rng, 1.0 / lam, &mut buf);
            if forms.iter().all(|f| f.eval(&buf).abs() <= epsilon) {
                hits += 1;
            }
        }
        hits
    };
    let hits: u64 = if workers == 1 {
        run(0)
    } else {
        std::thread::scope(|sc| {
            let handles: Vec<_> = (0..workers).map(|w| sc.spawn(move || run(w))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
        })
    };
    let volume = 2f64.powi(n as i32) / lam;
    let scale = volume / (2.0 * epsilon).powi(s as i32);
    let nf = samples as f64;
    let mean = hits as f64 / nf;
    let var = mean * (1.0 - mean) * nf / (nf - 1.0);
    Ok(DensityEstimate {
        lambda,
        value: scale * mean,
        std_error: scale * (var / nf).sqrt(),
        samples,
        epsilon,
        seed,
    })
}

/// `splitmix64`, used to derive per-λ sub-seeds.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Densities along an increasing λ grid starting at 1, sharing `epsilon`
/// (defaulted from the unit box when `None`), with sub-seed
/// `splitmix64(seed + i)` for the `i`-th λ.
pub fn density_decay_scan(
    x: &CompleteIntersection,
    lambdas: &[Ratio<i64>],
    epsilon: Option<f64>,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<Vec<DensityEstimate>> {
    if lambdas.first() != Some(&Ratio::from_integer(1)) {
        return Err(Error::param("lambda", "grid must start at 1"));
    }
    if lambdas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::param("lambda", "grid must be strictly increasing"));
    }
    let eps = epsilon.unwrap_or_else(|| default_epsilon(x, seed));
    lambdas
        .iter()
        .enumerate()
        .map(|(i, &l)| archimedean_density(x, l, eps, samples, splitmix64(seed.wrapping_add(i as u64)), workers))
        .collect()
}

/// `#{x ∈ (Z/p^k)^(n+1) : F_i(x) ≡ 0 ∀i} / p^(k(n+1-s))`, exactly.
pub fn padic_density(x: &CompleteIntersection, p: u64, k: u32) -> Result<PadicDensity> {
    if !is_prime_u64(p) {
        return Err(Error::param("p", format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::param("k", "must be at least 1"));
    }
    let n = x.num_vars() as u32;
    let modulus = p.checked_pow(k).ok_or_else(|| Error::TooLarge(format!("{p}^{k}")))?;
    let total = modulus
        .checked_pow(n)
        .filter(|&t| t <= PADIC_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("{p}^({k}*{n}) residue vectors exceed {PADIC_LIMIT}")))?;
    let m = modulus as u128;
    let max_deg = x.forms().iter().map(Form::degree).max().unwrap_or(0) as usize;
    // powers[v][e] = v^e mod m
    let powers: Vec<Vec<u128>> = (0..m)
        .map(|v| {
            let mut row = vec![1u128 % m; max_deg + 1];
            for e in 1..=max_deg {
                row[e] = row[e - 1] * v % m;
            }
            row
        })
        .collect();
    let forms: Vec<Vec<(u128, Vec<u32>)>> = x
        .forms()
        .iter()
        .map(|f| f.terms().map(|(e, c)| ((c as i128).rem_euclid(m as i128) as u128, e.to_vec())).collect())
        .collect();
    let mut v = vec![0usize; n as usize];
    let mut count: u64 = 0;
    for _ in 0..total {
        let zero = forms.iter().all(|terms| {
            let mut acc = 0u128;
            for (c, e) in terms {
                let mut t = *c;
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        t = t * powers[v[i]][k as usize] % m;
                    }
                }
                acc = (acc + t) % m;
            }
            acc == 0
        });
        count += u64::from(zero);
        for slot in v.iter_mut() {
            *slot += 1;
            if *slot as u128 == m {
                *slot = 0;
            } else {
                break;
            }
        }
    }
    let s = x.forms().len() as u32;
    let denom_exp = k as i64 * (n as i64 - s as i64);
    let value = if denom_exp >= 0 {
        BigRational::new(BigInt::from(count), num_traits::pow(BigInt::from(p), denom_exp as usize))
    } else {
        BigRational::from_integer(BigInt::from(count) * num_traits::pow(BigInt::from(p), (-denom_exp) as usize))
    };
    Ok(PadicDensity { p, k, value })
}

/// Monte-Carlo parameters shared by [`truncated_leading_factor`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McParams {
    pub epsilon: f64,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeadingFactor {
    pub archimedean: DensityEstimate,
    pub padic: Vec<PadicDensity>,
    /// Archimedean density times the listed p-adic densities; a truncation
    /// of the Euler product, not a leading constant.
    pub value: f64,
}

pub fn truncated_leading_factor(
    x: &CompleteIntersection,
    lambda: Ratio<i64>,
    primes: &[u64],
    k: u32,
    mc: McParams,
) -> Result<LeadingFactor> {
    let archimedean = archimedean_density(x, lambda, mc.epsilon, mc.samples, mc.seed, mc.workers)?;
    let padic = primes.iter().map(|&p| padic_density(x, p, k)).collect::<Result<Vec<_>>>()?;
    let product = padic.iter().fold(BigRational::from_integer(BigInt::from(1)), |acc, d| acc * &d.value);
    let value = if product.is_zero() { 0.0 } else { archimedean.value * product.to_f64().unwrap_or(f64::NAN) };
    Ok(LeadingFactor { archimedean, padic, value })
}
