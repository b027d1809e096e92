//! Classical computations used to validate the puzzle rules.

mod flag;
mod lr;

pub use flag::{flag_structure_constants, FlagOracle};
pub use lr::{giambelli_expand, lr_expand, lr_tableaux, pieri_apply, pieri_multiply, product_via_giambelli, SchurExpansion};
