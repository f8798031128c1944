use std::fmt;
use std::str::FromStr;

use super::{
    build_operated_state, Ladder, LocalOp, Mode, SqueezeParam, SuperpositionOp, TruncationPolicy,
    TwoModeState,
};
use crate::error::{Error, Result};

/// Named non-Gaussian operations on the two-mode squeezed vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceState {
    /// `â|TMSS⟩`
    SubA,
    /// `b̂|TMSS⟩`
    SubB,
    /// `âb̂|TMSS⟩`
    SubAB,
    /// `ââ†b̂b̂†|TMSS⟩`, addition-then-subtraction on both modes.
    AddSubAB,
    /// `(tâ + râ†)|TMSS⟩`
    CoherentA(SuperpositionOp),
    /// `(tâ + râ†)(tb̂ + rb̂†)|TMSS⟩` with the same `(t, r)` on both modes.
    CoherentAB(SuperpositionOp),
}

impl ReferenceState {
    /// Operations in application order.
    pub fn ops(&self) -> Vec<LocalOp> {
        use Ladder::*;
        use Mode::*;
        match *self {
            ReferenceState::SubA => vec![LocalOp::Ladder(A, Annihilate)],
            ReferenceState::SubB => vec![LocalOp::Ladder(B, Annihilate)],
            ReferenceState::SubAB => vec![
                LocalOp::Ladder(B, Annihilate),
                LocalOp::Ladder(A, Annihilate),
            ],
            ReferenceState::AddSubAB => vec![
                LocalOp::Ladder(B, Create),
                LocalOp::Ladder(B, Annihilate),
                LocalOp::Ladder(A, Create),
                LocalOp::Ladder(A, Annihilate),
            ],
            ReferenceState::CoherentA(op) => vec![LocalOp::Superposition(A, op)],
            ReferenceState::CoherentAB(op) => {
                vec![LocalOp::Superposition(B, op), LocalOp::Superposition(A, op)]
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ReferenceState::SubA => "sub_A",
            ReferenceState::SubB => "sub_B",
            ReferenceState::SubAB => "sub_AB",
            ReferenceState::AddSubAB => "addsub_AB",
            ReferenceState::CoherentA(_) => "coherent_A",
            ReferenceState::CoherentAB(_) => "coherent_AB",
        }
    }

    /// Parses a name; the coherent variants take `op` (photon subtraction if absent).
    pub fn parse(name: &str, op: Option<SuperpositionOp>) -> Result<Self> {
        let op = op.unwrap_or(SuperpositionOp::SUBTRACT);
        Ok(match name {
            "sub_A" => ReferenceState::SubA,
            "sub_B" => ReferenceState::SubB,
            "sub_AB" => ReferenceState::SubAB,
            "addsub_AB" | "addsub_addsub_AB" => ReferenceState::AddSubAB,
            "coherent_A" => ReferenceState::CoherentA(op),
            "coherent_AB" => ReferenceState::CoherentAB(op),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown reference state '{other}'"
                )))
            }
        })
    }
}

impl fmt::Display for ReferenceState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReferenceState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}

/// Normalized reference state, assembled through the operator pipeline.
pub fn build_reference_state(
    state: ReferenceState,
    s: SqueezeParam,
    policy: &TruncationPolicy,
) -> Result<TwoModeState> {
    build_operated_state(s, &state.ops(), policy)
}

// Closed-form normalization constants of the bare series, written without the
// squeezed-vacuum prefactor √(1−λ²) and, for subtraction, without the leading
// factor λ. The unnormalized pipeline output therefore has squared norm
// (1−λ²)λ²/m for the subtracted states and (1−λ²)/m otherwise.

/// `Σ λⁿ√(n+1)|n, n+1⟩`, i.e. `â|TMSS⟩` or `b̂†|TMSS⟩`: `(1−λ²)²`.
pub fn sub_a_norm_constant(lambda: f64) -> f64 {
    (1.0 - lambda * lambda).powi(2)
}

/// `Σ λⁿ(n+1)|n, n⟩`, i.e. `âb̂|TMSS⟩`: `(1−λ²)³/(1+λ²)`.
pub fn sub_ab_norm_constant(lambda: f64) -> f64 {
    let l2 = lambda * lambda;
    (1.0 - l2).powi(3) / (1.0 + l2)
}

/// `Σ λⁿ(n+1)²|n, n⟩`, i.e. `ââ†b̂b̂†|TMSS⟩`: `(1−λ²)⁵/(1+11λ²+11λ⁴+λ⁶)`.
pub fn addsub_norm_constant(lambda: f64) -> f64 {
    let l2 = lambda * lambda;
    (1.0 - l2).powi(5) / (1.0 + 11.0 * l2 + 11.0 * l2 * l2 + l2 * l2 * l2)
}

/// `(t_Aâ + r_Aâ†)(t_Bb̂ + r_Bb̂†)|TMSS⟩` for real amplitudes:
/// `(1−λ²)³ / (λ²(1 + (t_A r_B + r_A t_B)²) + (t_A t_B λ² + r_A r_B)²)`.
pub fn coherent_norm_constant(lambda: f64, op_a: SuperpositionOp, op_b: SuperpositionOp) -> f64 {
    let l2 = lambda * lambda;
    let cross = op_a.t() * op_b.r() + op_a.r() * op_b.t();
    let direct = op_a.t() * op_b.t() * l2 + op_a.r() * op_b.r();
    (1.0 - l2).powi(3) / (l2 * (1.0 + cross * cross) + direct * direct)
}
