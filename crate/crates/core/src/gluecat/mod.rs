//! Global sections over the exit-path quiver: curve objects, compilation to
//! stalk families, Hom as the fiber of the comparison map, Euler forms, and
//! gauge and framing covariance.

mod curve;
mod hom;
mod section;

pub use curve::{curve_from_json, curve_to_json, read_curve, CurveFile, CurveKind, CurveObject, LocalSystem, Step};
pub use hom::{embedding_for, euler_form, hom_global, hom_global_with, EdgeKey, GlobalHomComplex, VertexKey};
pub use section::{
    apply_gauge_to_section, apply_reframe, compile, compile_with, holonomy_step, reframe, step_shifts, CompileOptions, EdgeSummand,
    GlobalSection, MatchingBlock, ReframePrescription, SummandLabel, VertexSummand,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GlueError {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("shift constraints around the curve are unsatisfiable")]
    ParityObstruction,
    #[error("window {0} is too small to certify any stable degree")]
    WindowTooSmall(u32),
    #[error("Hom dimensions have not stabilized at window {0}")]
    NotStabilized(u32),
    #[error("not a framing change: {0}")]
    NotAFraming(String),
}

#[cfg(test)]
mod tests;
