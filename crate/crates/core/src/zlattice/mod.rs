//! Exact integer lattices: Hermite normal form, membership, comparison,
//! congruence kernels, residue sets modulo 2^a and short-vector enumeration.

mod cosets;
mod enumerate;
mod hnf;
mod vector;

pub use cosets::{
    cosets_of_lattice, cosets_of_lattice_with_limit, is_subgroup, lattice_from_cosets,
    subgroup_closure, subgroup_closure_with_limit, CosetSet, Residue, SubgroupCheck, MAX_CLOSURE,
};
pub use enumerate::{shortest_vector, MinimalVectors, MAX_SVP_DIM};
pub(crate) use hnf::HnfBuilder;
pub use hnf::{congruence_kernel, hnf, lattice_sum, Comparison, Lattice};
pub use vector::IntVector;
