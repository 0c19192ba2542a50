//! Sparse exterior algebra over `R^{4n}` with orthonormal generators.

mod blade;
mod form;

pub use blade::{blade_basis, merge_sign, Blade, DegreeBasis, MAX_DIM};
pub(crate) use form::check_n;
pub use form::{Form, LinearMap};

#[cfg(test)]
mod tests;
