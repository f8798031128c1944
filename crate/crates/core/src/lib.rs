//! Non-Gaussian two-mode entangled states built by applying the coherent
//! superposition `t·â + r·â†` of photon subtraction and addition to a
//! two-mode squeezed vacuum, together with their entanglement entropy, EPR
//! correlation and coherent-state teleportation fidelity.
//!
//! Parallel sweeps run on rayon when the `parallel` feature (on by default)
//! is enabled and fall back to plain iterators otherwise.

pub mod entanglement;
pub mod epr;
pub mod error;
pub mod fock;
pub mod par;
pub mod sweep;
pub mod teleport;
pub mod validation;

pub use error::{Error, Result};
pub use fock::{
    apply_ladder, apply_superposition, build_operated_state, build_reference_state, make_tmss,
    normalize, Ladder, LocalOp, Mode, ReferenceState, SqueezeParam, SuperpositionOp,
    TruncationPolicy, TwoModeState,
};
