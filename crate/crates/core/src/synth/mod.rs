//! Single-copy synthesis.
//!
//! Everything here targets one copy of an operation; [`crate::massprod`] builds
//! on these pieces. Circuits follow the rotation conventions of
//! [`crate::linalg`] and the qubit ordering of [`crate::circuit`].

mod csd;
mod demux;
mod diagonal;
mod euler;
mod multiplexed;
mod phase;
mod qsd;
mod state_prep;

pub use csd::{cosine_sine_decompose, CsdResult};
pub use demux::{demultiplex_1data, Demultiplexed, Multiplexor1};
pub use diagonal::{
    diagonal_to_multiplexed_rz, emit_diagonal, peel_diagonal, synth_diagonal, DiagonalLayers,
};
pub use euler::{zyz_decompose, ZyzAngles};
pub use multiplexed::{Axis, MultiplexedRotation};
pub use phase::{lift_bar, PhaseFunction};
pub use qsd::{qsd_factorize, qsd_synthesize, QsdFactor, QsdFactorKind};
pub use state_prep::{
    single_state_prep_cnots, state_prep_angles, synth_state_prep_single, LevelAngles,
    StatePrepAngles,
};

use crate::circuit::{Circuit, RegisterRole};

/// A circuit with one logical register per `(name, width)` pair.
pub(crate) fn circuit_with(regs: &[(&str, usize)]) -> Circuit {
    let mut c = Circuit::new();
    for &(name, width) in regs {
        c.add_register(name, width, RegisterRole::Logical)
            .expect("distinct names");
    }
    c
}
