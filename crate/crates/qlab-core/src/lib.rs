//! Exact-arithmetic workbench for quantum and braided Lie algebras built
//! from skew-invertible Hecke and involutive symmetries.
//!
//! The crate verifies, over the field Q(q) with zero tolerance, the algebraic
//! identities tying together braidings, their dual extensions, Young
//! projector banks on tensor powers, the modified reflection equation
//! algebra and its equivariant representations, the quantum Lie bracket, and
//! the sl-type reduction by the central element Tr_R L.

pub mod braiding;
pub mod error;
pub mod matrix;
pub mod mrea;
pub mod pairframe;
pub mod qlie;
pub mod report;
pub mod scalar;
pub mod schur_weyl;
pub mod sl_reduction;
pub mod suite;
pub mod symbolic;

pub use error::{Error, Result};
