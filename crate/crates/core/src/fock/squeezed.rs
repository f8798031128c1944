use num_complex::Complex64;

use super::{
    apply_ladder, normalize, Ladder, LocalOp, Mode, SqueezeParam, SuperpositionOp, TwoModeState,
};
use crate::error::Result;

/// An operated squeezed vacuum written as `Ŝ(s)|φ⟩`, with `|φ⟩` a Fock state
/// of only a few photons.
///
/// Moving the squeeze operator to the left turns every local ladder
/// operator into a Bogoliubov combination, `Ŝ†âŜ = â cosh s + b̂† sinh s`,
/// so `P(â, b̂)|TMSS⟩ = Ŝ P(â', b̂')|00⟩`. Each operation adds at most one
/// photon to the core, which therefore needs no truncation at all.
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezedCore {
    squeeze: SqueezeParam,
    core: TwoModeState,
}

impl SqueezedCore {
    /// Normalized core of `ops…|TMSS⟩` (first element of `ops` acts first).
    pub fn from_ops(squeeze: SqueezeParam, ops: &[LocalOp]) -> Result<Self> {
        let (ch, sh) = (squeeze.s().cosh(), squeeze.s().sinh());
        let mut core = TwoModeState::vacuum(0, 0);
        for op in ops {
            core = match *op {
                LocalOp::Ladder(mode, kind) => transformed_ladder(&core, mode, kind, ch, sh),
                LocalOp::Superposition(mode, op) => {
                    transformed_superposition(&core, mode, op, ch, sh)
                }
            };
        }
        let (core, _) = normalize(&core)?;
        Ok(Self { squeeze, core })
    }

    pub fn squeeze(&self) -> SqueezeParam {
        self.squeeze
    }

    pub fn core(&self) -> &TwoModeState {
        &self.core
    }
}

fn other(mode: Mode) -> Mode {
    match mode {
        Mode::A => Mode::B,
        Mode::B => Mode::A,
    }
}

/// `â' = â cosh s + b̂† sinh s`, `â'† = â† cosh s + b̂ sinh s` (and A↔B).
fn transformed_ladder(
    state: &TwoModeState,
    mode: Mode,
    kind: Ladder,
    ch: f64,
    sh: f64,
) -> TwoModeState {
    let partner = match kind {
        Ladder::Annihilate => Ladder::Create,
        Ladder::Create => Ladder::Annihilate,
    };
    let direct = apply_ladder(state, mode, kind);
    let crossed = apply_ladder(state, other(mode), partner);
    direct.linear_combination(Complex64::new(ch, 0.0), &crossed, Complex64::new(sh, 0.0))
}

fn transformed_superposition(
    state: &TwoModeState,
    mode: Mode,
    op: SuperpositionOp,
    ch: f64,
    sh: f64,
) -> TwoModeState {
    let down = transformed_ladder(state, mode, Ladder::Annihilate, ch, sh);
    let up = transformed_ladder(state, mode, Ladder::Create, ch, sh);
    down.linear_combination(
        Complex64::new(op.t(), 0.0),
        &up,
        Complex64::new(op.r(), 0.0),
    )
}
