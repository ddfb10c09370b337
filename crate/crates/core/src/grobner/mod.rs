//! Buchberger-style Gröbner engine for ideals in `k[z]` and submodules of
//! the free row module `k[z]^(1 x m)`, with cofactor tracking, module
//! intersection and elimination.
//!
//! Module terms are compared position-over-term (`e_0 > e_1 > ...`) on top
//! of the active monomial order; for elimination orders the eliminated
//! block is compared before the position, so that basis elements free of
//! the tag variable cut out exactly the eliminated submodule.

mod element;
mod engine;


pub use element::{cmp_module_terms, ModuleElement};
pub use engine::{
    buchberger_certify, ideal_intersect, ideal_reduced_gb, lift, lift_with_order, module_equal,
    module_intersect, module_proper_subset, module_reduced_gb, module_reduced_gb_tracked,
    module_subset, normal_form, IdealGB, LiftContext, SubmoduleGB,
};
