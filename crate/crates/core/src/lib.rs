//! Taste prediction for multi-ingredient recipes treated as N-phase composites.
//!
//! The crate is organised bottom-up:
//!
//! * [`dataset`] loads and validates the ingredient reference table and the
//!   recipe decompositions.
//! * [`bounds`] computes Reuss, Voigt and multi-phase Hashin–Shtrikman bounds
//!   per taste dimension.
//! * [`chemistry`] derives the eight processing-chemistry proxy features from
//!   an ingredient list.
//! * [`lasso`] and [`hybrid`] fit the per-dimension correction models and the
//!   two Lasso baselines.
//! * [`evaluation`] runs the cross-validated comparison and bound-coverage
//!   analysis and assembles the report.
//! * [`inverse`] searches for formulations that hit a target taste profile
//!   with a constrained Differential Evolution optimizer.
//!
//! Data-parallel loops go through [`par::Execution`]; with the default
//! `parallel` feature they run on rayon, otherwise sequentially.

pub mod bounds;
pub mod chemistry;
pub mod dataset;
pub mod evaluation;
pub mod forward;
pub mod hybrid;
pub mod inverse;
pub mod lasso;
pub mod par;
pub mod stats;
pub mod synth;
pub mod taste;

mod error;

pub use error::{Error, Result};
pub use taste::{Dimension, TasteVector};
