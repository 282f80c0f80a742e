//! Count series over a grid of height bounds, and their CSV form.

use std::io::{Read, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{format_rational, parse_rational};

/// Geometric grid `B_k = B_0 * factor^k`, `k = 0..steps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricGrid {
    #[serde(with = "rational_string")]
    pub b0: BigRational,
    #[serde(with = "rational_string")]
    pub factor: BigRational,
    pub steps: usize,
}

impl GeometricGrid {
    pub const MAX_STEPS: usize = 64;

    pub fn new(b0: BigRational, factor: BigRational, steps: usize) -> Result<Self> {
        if !b0.is_positive() {
            return Err(Error::param("grid", "B0 must be positive"));
        }
        if factor <= BigRational::one() {
            return Err(Error::param("grid", "factor must exceed 1"));
        }
        if steps == 0 || steps > Self::MAX_STEPS {
            return Err(Error::param("grid", format!("steps must be in 1..={}", Self::MAX_STEPS)));
        }
        Ok(GeometricGrid { b0, factor, steps })
    }

    /// Parses `B0:factor:steps`.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::param("grid", format!("expected B0:factor:steps, got `{spec}`")));
        }
        let steps = parts[2]
            .trim()
            .parse()
            .map_err(|_| Error::param("grid", format!("invalid step count `{}`", parts[2])))?;
        GeometricGrid::new(parse_rational(parts[0])?, parse_rational(parts[1])?, steps)
    }

    pub fn bounds(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.steps);
        let mut b = self.b0.clone();
        for _ in 0..self.steps {
            out.push(b.clone());
            b = &b * &self.factor;
        }
        out
    }
}

impl std::fmt::Display for GeometricGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", format_rational(&self.b0), format_rational(&self.factor), self.steps)
    }
}

/// Point counts `N(B)` at each bound of an increasing grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSeries {
    #[serde(with = "rational_vec")]
    pub grid: Vec<BigRational>,
    pub counts: Vec<u64>,
    pub region: String,
}

impl CountSeries {
    pub fn new(grid: Vec<BigRational>, counts: Vec<u64>, region: impl Into<String>) -> Result<Self> {
        if grid.len() != counts.len() {
            return Err(Error::DimensionError { expected: grid.len(), got: counts.len() });
        }
        check_increasing(&grid)?;
        Ok(CountSeries { grid, counts, region: region.into() })
    }

    /// Builds a cumulative series from per-bin counts (`bins[k]` counts the
    /// points whose height lies in `(B_{k-1}, B_k]`).
    pub fn from_bins(grid: Vec<BigRational>, bins: &[u64], region: impl Into<String>) -> Self {
        let mut acc = 0;
        let counts = bins
            .iter()
            .map(|b| {
                acc += b;
                acc
            })
            .collect();
        CountSeries { grid, counts, region: region.into() }
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn grid_f64(&self) -> Vec<f64> {
        self.grid.iter().map(|b| b.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] <= w[1])
    }

    /// Writes `B,count,region` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["B", "count", "region"]).map_err(io_err)?;
        for (b, c) in self.grid.iter().zip(&self.counts) {
            wr.write_record([format_rational(b), c.to_string(), self.region.clone()])
                .map_err(io_err)?;
        }
        wr.flush().map_err(|e| Error::Io(e.to_string()))
    }

    /// Reads any CSV with `B` and `count` columns; `#` lines are comments.
    /// The region is taken from a `region` column when present.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(r);
        let headers = rd.headers().map_err(io_err)?.clone();
        let col = |name: &str| headers.iter().position(|h| h == name);
        let b_col = col("B").ok_or_else(|| Error::param("csv", "missing `B` column"))?;
        let c_col = col("count").ok_or_else(|| Error::param("csv", "missing `count` column"))?;
        let r_col = col("region");
        let mut grid = Vec::new();
        let mut counts = Vec::new();
        let mut region = String::new();
        for (i, rec) in rd.records().enumerate() {
            let rec = rec.map_err(io_err)?;
            let field = |c: usize| {
                rec.get(c).ok_or_else(|| Error::Parse { line: i + 2, message: "short row".into() })
            };
            grid.push(parse_rational(field(b_col)?)?);
            counts.push(field(c_col)?.parse().map_err(|_| Error::Parse {
                line: i + 2,
                message: "count is not a nonnegative integer".into(),
            })?);
            if let Some(rc) = r_col {
                region = field(rc)?.to_string();
            }
        }
        CountSeries::new(grid, counts, region)
    }
}

fn check_increasing(grid: &[BigRational]) -> Result<()> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("grid", "bounds must be strictly increasing"));
    }
    Ok(())
}

pub(crate) fn validate_grid(grid: &[BigRational]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::param("grid", "empty grid"));
    }
    if grid[0] < BigRational::from_integer(BigInt::from(0)) {
        return Err(Error::param("grid", "bounds must be nonnegative"));
    }
    check_increasing(grid)
}

fn io_err(e: csv::Error) -> Error {
    if e.is_io_error() {
        return Error::Io(e.to_string());
    }
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse { line, message: e.to_string() }
}

pub(crate) mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::model::format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        crate::model::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod rational_vec {
    use num_rational::BigRational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&crate::model::format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| crate::model::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
