//! Exact Littlewood-Richardson-type structure constants for Grassmannians and
//! partial flag varieties: puzzles in several theories, the Mondrian tableau
//! game, the quantum-to-classical reduction, and classical oracles.

pub mod coeff;
pub mod engine;
pub mod error;
pub mod mondrian;
pub mod og;
pub mod oracle;
pub mod pieces;
pub mod quantum;
pub mod render;
pub mod schubert;
pub mod sweep;
pub mod trace;

pub use error::{Error, Result};
