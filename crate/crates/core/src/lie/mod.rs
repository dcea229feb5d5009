//! Basis indices, sparse elements, bracket rules and the completion.

pub mod bracket;
pub mod completion;
pub mod element;
pub mod views;

pub use bracket::{bracket, bracket_basis, jacobi_residual, jacobi_sweep, BracketRule};
pub use completion::{completion_bracket, CompletionElement, Series, Validity};
pub use element::{compare_indices, BasisIndex, Element};
