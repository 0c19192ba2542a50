//! Exact elements of `Sp(n)·Sp(1)`, rational sampling by Cayley transforms,
//! finite subgroups and averaging projectors onto invariant forms.

mod group;
mod quaternion;

pub use group::{realize_matrix, sample_element, FiniteGroup, GroupElement};
pub use quaternion::{QuatMatrix, Quaternion, UnitQuaternion};
