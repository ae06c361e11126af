//! Functional data analysis for sparse, irregular, error-prone longitudinal
//! measurements.
//!
//! The crate provides three estimation backbones:
//!
//! - local-linear kernel smoothing in one and two dimensions with GCV
//!   bandwidth selection ([`smooth`]),
//! - sparse functional principal component analysis with conditional-
//!   expectation scoring ([`fpca`]),
//! - linear mixed-effect models over polynomial and spline time bases with
//!   BLUP prediction ([`lmm`]).
//!
//! Everything numeric is generic over the scalar type via [`Real`];
//! `f64` aliases for the main types are exported at the crate root.

pub mod basis;
pub mod data;
pub mod error;
pub mod fpca;
pub mod grid;
pub mod lmm;
pub mod modelio;
pub mod optim;
pub mod scalar;
pub mod smooth;

pub use error::{CoreError, Result};
pub use scalar::Real;

// Concrete f64 aliases are re-enabled as the modules land.
