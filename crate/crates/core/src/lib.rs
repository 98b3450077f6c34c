//! Exact character theory for small finite groups.
//!
//! Groups are fully enumerated permutation groups; all character values live
//! in a prime field `F_P` chosen so that every predicate the library answers
//! (equalities, inner products, kernels) is exact. On top of the engine sit
//! monomiality classification, structural invariants, and a batch harness
//! that checks a suite of character-theoretic statements over a catalog of
//! small groups.

pub mod catalog;
pub mod cache;
pub mod charfn;
pub mod engine;
pub mod error;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod modular;
pub mod monomial;
pub mod perm;
pub mod render;
pub mod structure;
pub mod table;
pub mod util;

pub use error::{Error, Result};
