//! Filtration, ideals, nested-bracket spans and the ad-finiteness probe.

pub mod adprobe;
pub mod ideal;
pub mod span;

pub use adprobe::{ad_probe, grading_independence_witness, AdProbe, HighestTerm};
pub use ideal::{
    filtration_level, ideal_generated, reduce_to_basis, theta_apply, IdealReport, ReductionStep,
    StepKind, WindowCheck,
};
pub use span::nested_bracket_span_check;
