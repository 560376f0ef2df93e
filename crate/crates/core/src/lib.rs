//! Pair indices of gapped quasifree (BdG) ground states on finite lattices.
//!
//! Every object is a dense complex matrix. An antiunitary real structure
//! `Γ = c ∘ conj` is stored through its unitary factor `c`, a BdG Hamiltonian
//! `H` satisfies `ΓHΓ = -H`, and a ground state is encoded by its spectral
//! flattening `J = i·sgn(H)`, a Real skew-adjoint unitary. Given two such
//! flattenings the crate computes
//!
//! - the kernel parity of `J₀ + J₁` and its Pfaffian counterpart,
//! - the Clifford-module class of `Ker(J₀ + J₁)` when extra anticommuting
//!   symmetries `κ_j` are present,
//! - the relative Cayley transform of the pair and its bounded transform,
//! - coarse-geometric locality diagnostics relative to a lattice.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, sweeps and the
//! command line live in the `qfi` crate.

#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub use error::{Error, Result};

pub mod cayley;
pub mod clifford;
pub mod indices;
pub mod linalg;
pub mod locality;
pub mod models;
pub mod sample;

pub use linalg::{CMat, RMat, RealSkewUnitary, RealStructure, C64};
