//! The maximality theorem for full-rank graded subalgebras: hypothesis checks,
//! the dual lattices behind its proof, and an exhaustive oracle over the
//! intermediate lattices at small index.

mod check;
mod oracle;
mod sandwich;
pub mod search;
mod ser;

pub use check::{
    check_condition_a, check_condition_b, check_form, elementary_divisors_by_degree, index_primes, is_full_rank,
    run_main_theorem_check, CheckOptions, CheckReport, CondAVerdict, CondBVerdict, FormVerdict, KernelSplit, CERTIFIED,
};
pub use oracle::{
    dual_in_degree, dual_lattice_objects, intermediate_oracle, pairing_gram, DualObjects, Intermediate, OracleReport,
    SymmetryAtPrime, DEFAULT_SUBGROUP_CAP,
};
pub use sandwich::{GradedSandwich, SandwichDoc};
