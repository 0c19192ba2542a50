//! Flat models: linear quaternionic foliations on tori, their orbifold
//! quotients `T^{4q}/Γ`, and a truncated Fourier basic Hodge theory.
//!
//! Basic forms of the flat foliation are the constant forms on `R^{4q}`, so
//! basic cohomology is `Λ^*(R^{4q})*` with zero differential. The Fourier
//! model keeps every frequency in a box `|ξ|_∞ ≤ cutoff`; `d`, `δ` and `Δ`
//! preserve frequencies, so truncation is exact.

mod checks;
mod cohomology;
mod fourier;

#[cfg(test)]
mod tests;

pub use checks::{
    adjointness, chern_commutation, d_squared, delta_squared, harmonic_decomposition, harmonic_dimensions,
    laplacian_mode_matrix, laplacian_mode_scalar, lichnerowicz, weitzenbock, Projector, WSelector,
    EXHAUSTIVE_MODES,
};
pub use cohomology::{
    basic_betti_numbers, kraines_inequalities, Certificate, ChainCheck, CohomologyReport, FlatFoliationSpec,
    FlatModel, OrbifoldQuotient,
};
pub use fourier::{frequency_box, quadratic_certificate_modes, FourierForm, Freq};
