//! Exact scalars and the lattice model of Γ.

pub mod gamma;
pub mod group;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod scale;

pub use gamma::{Gamma, GammaConfig};
pub use group::{GroupElement, GroupOrder};
pub use poly::Poly;
pub use rational::Q;
pub use scalar::Scalar;
pub use scale::ScaleMap;
