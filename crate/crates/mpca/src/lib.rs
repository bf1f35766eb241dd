//! Multiscale principal component analysis.
//!
//! Classical PCA maximizes the sum of squared pairwise distances between
//! data projections, which lets large distances (and outliers) dominate.
//! This crate restricts that sum to pairs whose mutual distance falls in a
//! chosen interval, turning PCA into a function of scale. On top of the
//! core algorithm it provides:
//!
//! * projector representation of PCA structures and the Frobenius metric
//!   between them ([`projector`]);
//! * sweeps over the triangle of admissible scales with agglomerative
//!   clustering of the resulting structures ([`scalespace`]);
//! * scale-selection diagnostics: ratio of distortion, exempted-pairs
//!   percentage, and component angles ([`criteria`]);
//! * seeded synthetic generators for benchmarking ([`datagen`]);
//! * CSV ingestion and a structured report format ([`io`]), driven by the
//!   `mpca` binary.

pub mod commands;
pub mod core;
pub mod criteria;
pub mod datagen;
pub mod error;
pub mod io;
pub mod projector;
pub mod scalespace;

pub use error::{Error, Result};
