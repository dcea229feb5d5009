//! Exact computation in the Lie algebra W(Γ) with basis `L(α, i)`, α ∈ Γ,
//! i ≥ 0, and bracket
//!
//! ```text
//! [L(α,i), L(β,j)] = (β − α) L(α+β, i+j) + (j − i) L(α+β, i+j+1)
//! ```
//!
//! together with its central extension, ideals, derivations, automorphisms
//! and 2-cocycles. Γ is modelled as ℤ^r with symbolic generators; every
//! scalar is an exact element of ℚ(g1, …, gr).

pub mod automorphism;
pub mod cli;
pub mod cohomology;
pub mod derivation;
pub mod dsl;
pub mod error;
pub mod ground;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod residual;
pub mod structure;
pub mod window;

pub use error::{Error, Result};
