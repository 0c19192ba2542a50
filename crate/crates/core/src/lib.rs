//! Exact quaternionic exterior calculus.
//!
//! The crate builds the Kraines 4-form on `H^n`, the Lefschetz-type operators
//! `L` and `Λ`, the effective-form decomposition, and exact checks of the
//! basic-cohomology statements on flat transverse models and finite torus
//! quotients `T^{4q}/Γ`. Every computation is carried out over the rationals.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod flat_model;
pub mod io;
pub mod lefschetz;
pub mod multivector;
pub mod quaternionic;
pub mod report;
pub mod sampling;
pub mod suite;
pub mod symmetry;

pub use error::{Error, Result};
