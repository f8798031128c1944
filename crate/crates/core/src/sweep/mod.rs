//! Point evaluations, optimization over `r`, threshold/crossover search and
//! figure grids.

mod figures;
mod search;

pub use figures::{run_figure_sweep, FigureData, FigureId, GridSpec, PnesRecord, SweepRecord};
pub use search::{
    find_advantage_boundary, find_crossover, find_threshold, optimize_r, optimized_value, RChoice,
    ThresholdQuery, ADVANTAGE_R_TOL, CROSSOVER_TOL, R_TOL, THRESHOLD_TOL,
};

use std::fmt;
use std::str::FromStr;

use crate::entanglement::state_entropy;
use crate::epr::{epr_closed_form, state_epr};
use crate::error::{Error, Result};
use crate::fock::{
    build_operated_state, LocalOp, Mode, ReferenceState, SqueezeParam, SuperpositionOp,
    TruncationPolicy,
};
use crate::teleport::{average_fidelity, fidelity_of_ops, FidelitySettings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Tmss,
    SubA,
    SubAB,
    AddSubAB,
    CoherentA,
    CoherentAB,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Tmss,
        Strategy::SubA,
        Strategy::SubAB,
        Strategy::AddSubAB,
        Strategy::CoherentA,
        Strategy::CoherentAB,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Tmss => "tmss",
            Strategy::SubA => "sub_A",
            Strategy::SubAB => "sub_AB",
            Strategy::AddSubAB => "addsub_AB",
            Strategy::CoherentA => "coherent_A",
            Strategy::CoherentAB => "coherent_AB",
        }
    }

    /// Whether the strategy carries the coherent operation parameter `r`.
    pub fn has_r(&self) -> bool {
        matches!(self, Strategy::CoherentA | Strategy::CoherentAB)
    }

    /// Local operations for this strategy; `r` is required exactly when [`Self::has_r`].
    pub fn ops(&self, r: Option<f64>) -> Result<Vec<LocalOp>> {
        let op = match (self.has_r(), r) {
            (true, Some(r)) => Some(SuperpositionOp::from_r(r)?),
            (true, None) => {
                return Err(Error::InvalidParameter(format!(
                    "{} needs a value of r",
                    self.name()
                )))
            }
            (false, _) => None,
        };
        Ok(match self {
            Strategy::Tmss => Vec::new(),
            Strategy::SubA => ReferenceState::SubA.ops(),
            Strategy::SubAB => ReferenceState::SubAB.ops(),
            Strategy::AddSubAB => ReferenceState::AddSubAB.ops(),
            Strategy::CoherentA => ReferenceState::CoherentA(op.unwrap()).ops(),
            Strategy::CoherentAB => ReferenceState::CoherentAB(op.unwrap()).ops(),
        })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "addsub_addsub_AB" => Ok(Strategy::AddSubAB),
            _ => Strategy::ALL
                .into_iter()
                .find(|k| k.name() == s)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown strategy '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Entropy,
    Epr,
    Fidelity,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Entropy, Metric::Epr, Metric::Fidelity];

    pub fn name(&self) -> &'static str {
        match self {
            Metric::Entropy => "entropy",
            Metric::Epr => "epr",
            Metric::Fidelity => "fidelity",
        }
    }

    /// EPR is minimized, entropy and fidelity are maximized.
    pub fn maximize(&self) -> bool {
        !matches!(self, Metric::Epr)
    }

    /// Larger is better for the returned score.
    pub fn score(&self, value: f64) -> f64 {
        if self.maximize() {
            value
        } else {
            -value
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown metric '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EvalConfig {
    pub policy: TruncationPolicy,
    pub fidelity: FidelitySettings,
}

/// Metric value of `strategy` at `(s, r)`.
///
/// Entropy goes through the Schmidt spectrum of the full Fock state. EPR uses
/// the closed form for the two-mode coherent operation and Fock moments
/// otherwise. Fidelity uses the closed-form characteristic function for the
/// two-mode coherent operation and the squeezed core otherwise.
pub fn evaluate(
    metric: Metric,
    strategy: Strategy,
    s: f64,
    r: Option<f64>,
    cfg: &EvalConfig,
) -> Result<f64> {
    let sp = SqueezeParam::new(s)?;
    let ops = strategy.ops(r)?;
    let symmetric = match (strategy, r) {
        (Strategy::CoherentAB, Some(r)) => Some(SuperpositionOp::from_r(r)?),
        _ => None,
    };
    match (metric, symmetric) {
        (Metric::Entropy, _) => state_entropy(&build_operated_state(sp, &ops, &cfg.policy)?),
        (Metric::Epr, Some(op)) => epr_closed_form(sp, op, op),
        (Metric::Epr, None) => state_epr(&build_operated_state(sp, &ops, &cfg.policy)?),
        (Metric::Fidelity, Some(op)) => Ok(average_fidelity(sp, op, op, &cfg.fidelity)?.fidelity),
        (Metric::Fidelity, None) => Ok(fidelity_of_ops(sp, &ops, &cfg.fidelity)?.fidelity),
    }
}

/// Metric value of `(t_Aâ + r_Aâ†)(t_Bb̂ + r_Bb̂†)|TMSS⟩` with independent `r_A`, `r_B`.
pub fn evaluate_asymmetric(
    metric: Metric,
    s: f64,
    r_a: f64,
    r_b: f64,
    cfg: &EvalConfig,
) -> Result<f64> {
    let sp = SqueezeParam::new(s)?;
    let (op_a, op_b) = (SuperpositionOp::from_r(r_a)?, SuperpositionOp::from_r(r_b)?);
    match metric {
        Metric::Entropy => {
            let ops = [
                LocalOp::Superposition(Mode::B, op_b),
                LocalOp::Superposition(Mode::A, op_a),
            ];
            state_entropy(&build_operated_state(sp, &ops, &cfg.policy)?)
        }
        Metric::Epr => epr_closed_form(sp, op_a, op_b),
        Metric::Fidelity => Ok(average_fidelity(sp, op_a, op_b, &cfg.fidelity)?.fidelity),
    }
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros removed.
pub fn format_g(v: f64) -> String {
    const DIGITS: i32 = 12;
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-4..DIGITS).contains(&exp) {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, v);
        trim_zeros(&fixed).to_string()
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_matches_printf_g() {
        assert_eq!(format_g(0.5), "0.5");
        assert_eq!(format_g(0.0), "0");
        assert_eq!(format_g(2.0 * (-1.0f64).exp()), "0.735758882343");
        assert_eq!(format_g(1e-7), "1e-07");
        assert_eq!(format_g(-3.25e15), "-3.25e+15");
        assert_eq!(format_g(123456.0), "123456");
        assert_eq!(format_g(0.0001234), "0.0001234");
    }

    #[test]
    fn names_round_trip() {
        for k in Strategy::ALL {
            assert_eq!(k.name().parse::<Strategy>().unwrap(), k);
        }
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
        assert_eq!(
            "addsub_addsub_AB".parse::<Strategy>().unwrap(),
            Strategy::AddSubAB
        );
        assert!("nope".parse::<Strategy>().is_err());
    }

    #[test]
    fn coherent_strategies_need_r() {
        let cfg = EvalConfig::default();
        assert!(evaluate(Metric::Epr, Strategy::CoherentAB, 0.3, None, &cfg).is_err());
        assert!(evaluate(Metric::Epr, Strategy::SubAB, 0.3, None, &cfg).is_ok());
    }

    #[test]
    fn tmss_values() {
        let cfg = EvalConfig::default();
        let e = evaluate(Metric::Epr, Strategy::Tmss, 0.5, None, &cfg).unwrap();
        assert!((e - 2.0 * (-1.0f64).exp()).abs() < 1e-10);
        let f = evaluate(Metric::Fidelity, Strategy::Tmss, 0.0, None, &cfg).unwrap();
        assert!((f - 0.5).abs() < 1e-12);
        assert!(
            evaluate(Metric::Entropy, Strategy::Tmss, 0.0, None, &cfg)
                .unwrap()
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn symmetric_and_asymmetric_entry_points_agree() {
        let cfg = EvalConfig::default();
        for m in Metric::ALL {
            let a = evaluate(m, Strategy::CoherentAB, 0.25, Some(0.4), &cfg).unwrap();
            let b = evaluate_asymmetric(m, 0.25, 0.4, 0.4, &cfg).unwrap();
            assert!((a - b).abs() < 1e-9, "{m}");
        }
    }
}
