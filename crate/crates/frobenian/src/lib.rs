//! Linear recurrent sequences, Galois class functions, and Frobenian prime sets.
//!
//! The library converts a rational linear recurrence `(a_n)` into Galois-theoretic
//! data: the splitting field of its characteristic roots, a class function `g` on
//! the Galois group with `a_p ≡ g(φ_p) mod p` for all large primes `p`, the
//! annihilating polynomial of the residue sequence, and a certificate describing
//! `{p : a_p ≡ 0 mod p}` as a Frobenian set with an explicit exceptional bound.
//! The inverse direction builds a recurrence realizing any union of conjugacy
//! classes, and everything is cross-checked by direct modular sweeps.

pub mod exact_arith;
pub mod number_field;
pub mod recurrence;
pub mod class_function;
pub mod certificate;
pub mod frobenius_op;
pub mod density;
pub mod corpus;
pub mod acceptance;
pub mod cli;

mod config;
mod error;

pub use config::{brute_force_budget, degree_cap};
pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
