//! Lattices from nested binary codes and from codes over F2[u]/u^a.
//!
//! Everything is exact: codes live in F2^n with n ≤ 64, lattices are held in
//! Hermite normal form, and the non-lattice point sets of the code formula
//! and of Construction A′ are held as residue sets modulo 2^a.

pub mod catalog;
pub mod constructions;
pub mod error;
pub mod formats;
pub mod gf2;
pub mod random;
pub mod ua_codes;
pub mod zlattice;

pub use error::{Error, Result};
