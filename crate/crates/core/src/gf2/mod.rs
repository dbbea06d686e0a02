//! Exact linear algebra over F2: vectors, codes, nested chains, Schur
//! products and the basis choices used by Constructions D and D′.

mod bitvec;
mod chain;
mod code;

pub use bitvec::{psi, BitVector, MAX_LEN};
pub(crate) use bitvec::{mask, Span};
pub use chain::{
    chain_basis, check_distance_conditions, is_schur_closed, parity_chain_basis,
    schur_closure_chain, ChainBasis, DistanceVariant, LevelDistance, NestedChain,
    ParityChainBasis, SchurCheck, SchurWitness, MAX_LEVELS,
};
pub use code::{reed_muller, rref, BinaryCode, MAX_ENUM_DIM};
