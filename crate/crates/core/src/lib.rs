//! Distance Laplacian spectra and energies of connected graphs.
//!
//! The crate builds graphs (named families, joins, parsed files, exhaustive
//! small-order enumeration), computes shortest-path metrics and the distance
//! Laplacian, solves for spectra with a cyclic Jacobi eigensolver, and checks
//! closed-form spectra and energy bounds against those numeric spectra.

pub mod analysis;
pub mod closed_form;
pub mod eigen;
pub mod energy;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod search;
pub mod theorems;

pub use error::{Error, Result};
pub use analysis::Analysis;
pub use graph::{FamilyKind, FamilySpec, Graph};
