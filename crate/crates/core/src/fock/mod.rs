//! Truncated two-mode Fock space: the two-mode squeezed vacuum, ladder
//! operators, and the coherent superposition `t·â + r·â†` of photon
//! subtraction and addition.

mod reference;
mod squeezed;
mod state;

pub use reference::{
    addsub_norm_constant, build_reference_state, coherent_norm_constant, sub_a_norm_constant,
    sub_ab_norm_constant, ReferenceState,
};
pub use squeezed::SqueezedCore;
pub use state::{
    apply_ladder, normalize, Ladder, Mode, TwoModeState, NORMALIZATION_TOL, ZERO_STATE_THRESHOLD,
};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest truncation auto-grow will try before giving up.
pub const MAX_TRUNCATION: usize = 4096;

/// Squeezing parameter `s ≥ 0` together with `λ = tanh s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParam {
    s: f64,
    lambda: f64,
}

impl SqueezeParam {
    pub fn new(s: f64) -> Result<Self> {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "squeezing parameter must be finite and non-negative, got {s}"
            )));
        }
        Ok(Self {
            s,
            lambda: s.tanh(),
        })
    }

    /// Inverse of `λ = tanh s`.
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "lambda must lie in [0, 1), got {lambda}"
            )));
        }
        Self::new(lambda.atanh())
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// The local operation `t·â + r·â†` with real, non-negative `t, r` and
/// `t² + r² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionOp {
    t: f64,
    r: f64,
}

impl SuperpositionOp {
    /// Pure photon subtraction, `r = 0`.
    pub const SUBTRACT: SuperpositionOp = SuperpositionOp { t: 1.0, r: 0.0 };
    /// Pure photon addition, `t = 0`.
    pub const ADD: SuperpositionOp = SuperpositionOp { t: 0.0, r: 1.0 };

    pub fn new(t: f64, r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) || !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidParameter(format!(
                "t and r must lie in [0, 1], got t = {t}, r = {r}"
            )));
        }
        if (t * t + r * r - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "t² + r² must equal 1, got {}",
                t * t + r * r
            )));
        }
        Ok(Self { t, r })
    }

    /// `r ∈ [0, 1]` with `t = √(1 − r²)`.
    pub fn from_r(r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidParameter(format!(
                "r must lie in [0, 1], got {r}"
            )));
        }
        Ok(Self {
            t: (1.0 - r * r).sqrt(),
            r,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub n_max: usize,
    pub tail_tol: f64,
    pub auto_grow: bool,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            n_max: 60,
            tail_tol: 1e-12,
            auto_grow: true,
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 2 {
            return Err(Error::InvalidParameter(format!(
                "n_max must be at least 2, got {}",
                self.n_max
            )));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tail_tol must be positive, got {}",
                self.tail_tol
            )));
        }
        Ok(())
    }

    /// Smallest truncation with `λ^(2n) < tail_tol`, never below `n_max`
    /// when auto-grow is on.
    fn tmss_truncation(&self, lambda: f64) -> usize {
        if lambda == 0.0 {
            return self.n_max;
        }
        let needed = (self.tail_tol.ln() / (2.0 * lambda.ln())).floor() as usize + 1;
        if self.auto_grow {
            needed.max(self.n_max)
        } else {
            self.n_max
        }
    }
}

/// `√(1−λ²) Σ λⁿ |n⟩_A|n⟩_B`, truncated according to `policy`.
pub fn make_tmss(s: SqueezeParam, policy: &TruncationPolicy) -> Result<TwoModeState> {
    policy.validate()?;
    let n_max = policy.tmss_truncation(s.lambda());
    make_tmss_at(s, n_max, policy.tail_tol)
}

fn make_tmss_at(s: SqueezeParam, n_max: usize, tail_tol: f64) -> Result<TwoModeState> {
    let lambda = s.lambda();
    let capped = n_max.min(MAX_TRUNCATION);
    // mass beyond the truncation: λ^(2(n_max+1))
    let missing = lambda.powf(2.0 * (capped as f64 + 1.0));
    if missing >= tail_tol || n_max > capped {
        return Err(Error::TruncationOverflow {
            n_max: capped,
            tail_mass: missing,
            tail_tol,
        });
    }
    let prefactor = (1.0 - lambda * lambda).sqrt();
    TwoModeState::from_real(n_max, n_max, |n, m| {
        if n == m {
            prefactor * lambda.powi(n as i32)
        } else {
            0.0
        }
    })
}

/// `t·(annihilate) + r·(create)` on one mode. Unnormalized.
///
/// The truncation of the acted-on mode grows by one only when `r ≠ 0`, so the
/// `r = 0` case coincides exactly with [`apply_ladder`] annihilation.
pub fn apply_superposition(state: &TwoModeState, mode: Mode, op: SuperpositionOp) -> TwoModeState {
    let down = apply_ladder(state, mode, Ladder::Annihilate);
    if op.r() == 0.0 {
        return down.scaled(Complex64::new(op.t(), 0.0));
    }
    let up = apply_ladder(state, mode, Ladder::Create);
    down.linear_combination(
        Complex64::new(op.t(), 0.0),
        &up,
        Complex64::new(op.r(), 0.0),
    )
}

/// One local operation in a pipeline acting on the squeezed vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalOp {
    Ladder(Mode, Ladder),
    Superposition(Mode, SuperpositionOp),
}

impl LocalOp {
    pub fn apply(&self, state: &TwoModeState) -> TwoModeState {
        match *self {
            LocalOp::Ladder(mode, kind) => apply_ladder(state, mode, kind),
            LocalOp::Superposition(mode, op) => apply_superposition(state, mode, op),
        }
    }
}

/// Applies `ops` in order (first element acts first) to the truncated TMSS,
/// returning the unnormalized result.
pub fn apply_ops_to_tmss(
    s: SqueezeParam,
    ops: &[LocalOp],
    policy: &TruncationPolicy,
) -> Result<TwoModeState> {
    let tmss = make_tmss(s, policy)?;
    Ok(ops.iter().fold(tmss, |state, op| op.apply(&state)))
}

/// Normalized `ops…|TMSS⟩`.
///
/// The truncation is grown (doubling) until the tail mass of the normalized
/// output is within `policy.tail_tol`; without auto-grow a violation is a
/// [`Error::TruncationOverflow`].
pub fn build_operated_state(
    s: SqueezeParam,
    ops: &[LocalOp],
    policy: &TruncationPolicy,
) -> Result<TwoModeState> {
    policy.validate()?;
    let mut n_max = policy.tmss_truncation(s.lambda());
    if policy.auto_grow {
        // head room for the (n+1)^k weights the operations introduce
        n_max += 2 * ops.len();
    }
    loop {
        let tmss = make_tmss_at(s, n_max, policy.tail_tol);
        let result = tmss.and_then(|tmss| {
            let raw = ops.iter().fold(tmss, |state, op| op.apply(&state));
            normalize(&raw).map(|(state, _)| state)
        });
        let overflow = match &result {
            Ok(state) => {
                let tail = state.tail_mass();
                (tail > policy.tail_tol).then_some(tail)
            }
            Err(Error::TruncationOverflow { tail_mass, .. }) => Some(*tail_mass),
            Err(_) => None,
        };
        match overflow {
            None => return result,
            Some(tail_mass) => {
                if !policy.auto_grow || n_max >= MAX_TRUNCATION {
                    return Err(Error::TruncationOverflow {
                        n_max: n_max.min(MAX_TRUNCATION),
                        tail_mass,
                        tail_tol: policy.tail_tol,
                    });
                }
                n_max = (n_max * 2).min(MAX_TRUNCATION);
            }
        }
    }
}
