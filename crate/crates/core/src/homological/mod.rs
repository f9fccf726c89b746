//! Graded free complexes, minimal resolutions, Betti tables, homology, Ext and module
//! invariants.

mod free;
mod homology;
mod invariants;
mod resolution;

pub use free::{column_degree, FreeComplex, GradedFreeModule, GradedMap, ModulePresentation};
pub use homology::{dualize, ext_module, homology_at};
pub(crate) use invariants::finite_length_hilbert;
pub use invariants::{
    is_regular_element, module_dimension, module_invariants, quotient_by_linear_regular,
    regularity_finite_length_oracle, ModuleInvariants,
};
pub use resolution::{minimal_free_resolution, minimalize, BettiTable, Resolution};

/// `max { j - i : b_ij != 0 }`, `None` for −∞.
pub fn regularity(b: &BettiTable) -> Option<i64> {
    b.regularity()
}

/// `t_i = max { j : b_ij != 0 }`, `None` for −∞.
pub fn t_index(b: &BettiTable, i: usize) -> Option<i64> {
    b.t_index(i)
}
