//! Mass production of quantum circuits.
//!
//! This crate compiles diagonal unitaries, multiplexed rotations, single-data-qubit
//! multiplexors, quantum states and general unitaries into gate-level circuits that
//! implement `r` parallel copies of the target, sharing most of the expensive
//! rotation layers between the copies. Every construction comes with exact CNOT
//! accounting and two simulators for checking it:
//!
//! - [`circuit`]: the gate-level IR, macro expansion, cost model and OpenQASM 2.0 text.
//! - [`sim`]: a phase-path engine for classical-reversible-plus-phase circuits and a
//!   dense statevector engine, together with equivalence and ancilla checks.
//! - [`synth`]: single-copy synthesis (gray-code multiplexed rotations, diagonal
//!   peeling, ZYZ, multiplexor demultiplexing, cosine–sine and Shannon decompositions,
//!   state preparation).
//! - [`massprod`]: the recursive copy-sharing compiler and the derived producers for
//!   rotations, multiplexors, states and unitaries.
//! - [`random`]: seeded instance generation.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod circuit;
mod error;
pub mod linalg;
pub mod massprod;
pub mod random;
pub mod sim;
pub mod synth;

pub use error::{Error, Result};
