//! Exact all-terminal network reliability.
//!
//! Cut counting, reliability polynomials, chain decompositions of subdivided
//! cubic graphs and a small catalog of named 8-vertex cubic graphs.

pub mod catalog;
pub mod chains;
pub mod combinatorics;
pub mod cuts;
pub mod error;
pub mod graph;
pub mod reliability;
pub mod verify;

pub use combinatorics::Budget;
pub use cuts::{cut_spectrum, CutSpectrum};
pub use error::{Error, Result};
pub use graph::{EdgeId, EdgeSet, MultiGraph, Vertex};
pub use reliability::{polynomial_from_spectrum, ReliabilityPolynomial};
pub use verify::{verify_paper, VerificationReport};
