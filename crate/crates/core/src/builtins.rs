//! Named varieties with fixed integer coefficients.
//!
//! | name             | object                                              |
//! |------------------|-----------------------------------------------------|
//! | `fermat:n:d`     | diagonal hypersurface of degree `d` in `P^n`        |
//! | `ct-quadrics`    | intersection of two quadrics in `P^5`               |
//! | `ct-quadrics-curve` | genus-2 curve attached to the pencil of `ct-quadrics` |
//! | `paper-bundle`   | `x0 y0^2 + x1 y1^2 + x2 y2^2 + x3 y3^2` in `P^3 x P^3` |

use std::fmt;
use std::str::FromStr;

use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::fano::{fermat_hypersurface, fermat_plane};
use crate::model::{CompleteIntersection, Form, LinearSubspace};

/// Coefficients of `y^2 = x^5 - x^4 - 2x^3 + 18x^2 + x - 17`, leading first.
pub const CT_CURVE_COEFFS: [i64; 6] = [1, -1, -2, 18, 1, -17];

/// Text form of the bundle equation.
pub const BUNDLE_EQUATION: &str = "x0*y0^2 + x1*y1^2 + x2*y2^2 + x3*y3^2";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Fermat { n: usize, d: u32 },
    CtQuadrics,
    CtQuadricsCurve,
    PaperBundle,
}

impl Builtin {
    /// All builtins with a projective complete intersection model, for
    /// small Fermat parameters.
    pub fn varieties() -> Vec<Builtin> {
        vec![Builtin::Fermat { n: 2, d: 2 }, Builtin::Fermat { n: 4, d: 3 }, Builtin::CtQuadrics]
    }

    pub fn variety(&self) -> Result<CompleteIntersection> {
        match *self {
            Builtin::Fermat { n, d } => fermat_hypersurface(n, d),
            Builtin::CtQuadrics => ct_quadrics(),
            _ => Err(Error::param("builtin", format!("`{self}` is not a complete intersection in P^n"))),
        }
    }

    /// The distinguished linear subspace, when there is one.
    pub fn subspace(&self) -> Result<LinearSubspace> {
        match *self {
            Builtin::Fermat { n, d } => fermat_plane(n, d),
            Builtin::CtQuadrics => ct_quadrics_line(),
            _ => Err(Error::param("builtin", format!("`{self}` has no distinguished linear subspace"))),
        }
    }

    pub fn curve(&self) -> Result<HyperellipticCurve> {
        match *self {
            Builtin::CtQuadricsCurve | Builtin::CtQuadrics => ct_quadrics_curve(),
            _ => Err(Error::param("builtin", format!("`{self}` has no attached curve"))),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Fermat { n, d } => write!(f, "fermat:{n}:{d}"),
            Builtin::CtQuadrics => f.write_str("ct-quadrics"),
            Builtin::CtQuadricsCurve => f.write_str("ct-quadrics-curve"),
            Builtin::PaperBundle => f.write_str("paper-bundle"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ct-quadrics" => return Ok(Builtin::CtQuadrics),
            "ct-quadrics-curve" => return Ok(Builtin::CtQuadricsCurve),
            "paper-bundle" => return Ok(Builtin::PaperBundle),
            _ => {}
        }
        let unknown = || Error::param("builtin", format!("unknown builtin `{s}`"));
        let mut parts = s.split(':');
        if parts.next() != Some("fermat") {
            return Err(unknown());
        }
        let n: usize = parts.next().and_then(|t| t.parse().ok()).ok_or_else(unknown)?;
        let d: u32 = parts.next().and_then(|t| t.parse().ok()).ok_or_else(unknown)?;
        if parts.next().is_some() {
            return Err(unknown());
        }
        if !(1..=crate::model::MAX_AMBIENT_DIM).contains(&n) || !(1..=crate::model::MAX_EXPONENT).contains(&d) {
            return Err(Error::param("builtin", format!("fermat parameters out of range in `{s}`")));
        }
        Ok(Builtin::Fermat { n, d })
    }
}

/// `x0^2 + x1^2 = x2^2 + x3^2 + x4^2 + x5^2 + 8 x0 x5` and
/// `2 x0 x1 = 2 x2 x3 + x5^2`.
pub fn ct_quadrics() -> Result<CompleteIntersection> {
    let m = |pairs: &[(usize, u32)]| {
        let mut e = vec![0u32; 6];
        for &(i, k) in pairs {
            e[i] += k;
        }
        e
    };
    let f1 = Form::from_terms(
        6,
        vec![
            (m(&[(0, 2)]), 1),
            (m(&[(1, 2)]), 1),
            (m(&[(2, 2)]), -1),
            (m(&[(3, 2)]), -1),
            (m(&[(4, 2)]), -1),
            (m(&[(5, 2)]), -1),
            (m(&[(0, 1), (5, 1)]), -8),
        ],
    )?;
    let f2 = Form::from_terms(6, vec![(m(&[(0, 1), (1, 1)]), 2), (m(&[(2, 1), (3, 1)]), -2), (m(&[(5, 2)]), -1)])?;
    CompleteIntersection::new(5, vec![f1, f2])
}

/// The line `x0 = x2, x1 = x3, x4 = x5 = 0`.
pub fn ct_quadrics_line() -> Result<LinearSubspace> {
    LinearSubspace::new(vec![vec![1, 0, 1, 0, 0, 0], vec![0, 1, 0, 1, 0, 0]])
}

pub fn ct_quadrics_curve() -> Result<HyperellipticCurve> {
    HyperellipticCurve::new(CT_CURVE_COEFFS.to_vec())
}
