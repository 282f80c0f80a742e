//! Exact representations of projective points, forms, varieties, linear
//! subspaces and deformed heights over the rationals.

mod form;
mod height;
mod parse;
mod point;
mod variety;

pub use form::{Form, Poly};
pub use height::{format_rational, parse_lambda, parse_rational, HeightSpec};
pub use parse::{format_variety, parse_form, parse_variety, MAX_AMBIENT_DIM, MAX_EXPONENT};
pub use point::ProjPoint;
pub use variety::{CompleteIntersection, LinearSubspace};
