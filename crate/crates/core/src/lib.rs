//! Exact enumeration of rational points of bounded height on explicit Fano
//! varieties over the rationals, together with the numerical and exact tools
//! used to study saturated subvarieties:
//!
//! - [`model`]: projective points, forms, varieties and deformed heights;
//! - [`enumerate`]: point enumeration on varieties, subspaces and curves;
//! - [`asymptotics`]: growth-exponent fitting and saturation reports;
//! - [`density`]: archimedean and p-adic local densities;
//! - [`fano`]: numerical criteria for planes on complete intersections;
//! - [`curve`]: genus-two point counts and Frobenius polynomials;
//! - [`bundle`]: the diagonal quadric bundle in `P^3 x P^3`.

pub mod arith;
pub mod asymptotics;
pub mod builtins;
pub mod bundle;
pub mod curve;
pub mod density;
pub mod enumerate;
mod error;
pub mod fano;
pub mod model;
pub mod series;

pub use error::{Error, Result};
