//! Exact scalars and dense exact linear algebra over the rationals.

mod matrix;
mod scalar;

pub use matrix::RatMatrix;
pub use scalar::{
    format_rational, gaussian, parse_rational, rat, rat_frac, GaussianRational, Rational, RationalString,
};
