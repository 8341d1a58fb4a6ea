//! Sheaves of matrix-factorization categories on decorated trivalent graphs.

pub mod gluecat;
pub mod cover;
pub mod graph;
pub mod hmscheck;
pub mod linalg;
pub mod localrestrict;
pub mod mfcore;
pub mod ncingest;
pub mod scalars;
pub mod surface;
