//! Two-route cross-checks and analytic oracles, runnable without any figure data.

use num_complex::Complex64;

use crate::entanglement::{state_entropy, tmss_entropy_closed_form};
use crate::epr::{epr_closed_form, quadrature_moments, state_epr};
use crate::error::Result;
use crate::fock::{
    addsub_norm_constant, apply_ladder, apply_ops_to_tmss, build_operated_state,
    coherent_norm_constant, make_tmss, sub_a_norm_constant, sub_ab_norm_constant, Ladder, LocalOp,
    Mode, ReferenceState, SqueezeParam, SuperpositionOp, TruncationPolicy, TwoModeState,
};
use crate::sweep::EvalConfig;
use crate::teleport::{
    char_fn_closed, char_fn_numeric, fidelity_of_ops, tmss_fidelity_closed_form, CharFnPoint,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, discrepancy: f64, tolerance: f64) -> Self {
        Self {
            name,
            discrepancy,
            tolerance,
            passed: discrepancy < tolerance,
        }
    }
}

/// Additive recurrence `frac(k·α)` with a different irrational per dimension.
pub fn kronecker_point(k: usize, dims: usize) -> Vec<f64> {
    // powers of the inverse of the generalized golden ratio for `dims`
    let mut phi = 2.0f64;
    for _ in 0..30 {
        phi = (1.0 + phi).powf(1.0 / (dims as f64 + 1.0));
    }
    (1..=dims)
        .map(|j| (0.5 + (k + 1) as f64 * phi.powi(-(j as i32))).fract())
        .collect()
}

fn coherent_pair(op_a: SuperpositionOp, op_b: SuperpositionOp) -> [LocalOp; 2] {
    [
        LocalOp::Superposition(Mode::B, op_b),
        LocalOp::Superposition(Mode::A, op_a),
    ]
}

/// Closed-form vs Fock-moment EPR on a 20×20 grid in `s ∈ [0.05, 1]`, `r ∈ [0, 1]`.
pub fn check_epr_routes(policy: &TruncationPolicy) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for i in 0..20 {
        let s = SqueezeParam::new(0.05 * (i + 1) as f64)?;
        for j in 0..20 {
            let op = SuperpositionOp::from_r(j as f64 / 19.0)?;
            let closed = epr_closed_form(s, op, op)?;
            let moments = state_epr(&build_operated_state(s, &coherent_pair(op, op), policy)?)?;
            worst = worst.max((closed - moments).abs());
        }
    }
    Ok(CheckResult::new("epr_closed_vs_moments", worst, 1e-9))
}

/// Closed-form vs number-basis characteristic function at 50 quasi-random
/// points with independent `r_A`, `r_B`.
pub fn check_char_fn_routes(policy: &TruncationPolicy) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for k in 0..50 {
        let u = kronecker_point(k, 7);
        let s = SqueezeParam::new(0.05 + 0.95 * u[0])?;
        let op_a = SuperpositionOp::from_r(u[1])?;
        let op_b = SuperpositionOp::from_r(u[2])?;
        let l2 = Complex64::new(2.0 * u[3] - 1.0, 2.0 * u[4] - 1.0);
        let l3 = Complex64::new(2.0 * u[5] - 1.0, 2.0 * u[6] - 1.0);
        let p = CharFnPoint::new(l2, l3, s);
        let state = build_operated_state(s, &coherent_pair(op_a, op_b), policy)?;
        let closed = char_fn_closed(s, op_a, op_b, &p)?;
        let numeric = char_fn_numeric(&state, &p)?;
        worst = worst.max((closed - numeric).norm());
    }
    Ok(CheckResult::new("char_fn_closed_vs_numeric", worst, 1e-8))
}

/// Normalization constants against the squared norm of the unnormalized
/// operated states, `(1−λ²)λ²/m` after subtraction and `(1−λ²)/m` otherwise.
pub fn check_norm_constants(policy: &TruncationPolicy) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let rel = |expected: f64, raw: &TwoModeState| (raw.norm_sqr() / expected - 1.0).abs();
    for s in [0.1, 0.3, 0.6] {
        let sp = SqueezeParam::new(s)?;
        let lambda = sp.lambda();
        let (l2, vac) = (lambda * lambda, 1.0 - lambda * lambda);
        for (state, expected) in [
            (ReferenceState::SubA, vac * l2 / sub_a_norm_constant(lambda)),
            (
                ReferenceState::SubAB,
                vac * l2 / sub_ab_norm_constant(lambda),
            ),
            (ReferenceState::AddSubAB, vac / addsub_norm_constant(lambda)),
        ] {
            worst = worst.max(rel(expected, &apply_ops_to_tmss(sp, &state.ops(), policy)?));
        }
        for i in 0..5 {
            for j in 0..5 {
                let op_a = SuperpositionOp::from_r(i as f64 / 4.0)?;
                let op_b = SuperpositionOp::from_r(j as f64 / 4.0)?;
                let raw = apply_ops_to_tmss(sp, &coherent_pair(op_a, op_b), policy)?;
                worst = worst.max(rel(vac / coherent_norm_constant(lambda, op_a, op_b), &raw));
            }
        }
    }
    Ok(CheckResult::new("norm_constants", worst, 1e-9))
}

/// Squeezed-vacuum entropy, EPR variance `2e^{−2s}` and fidelity `1/(1+e^{−2s})`.
pub fn check_tmss_oracles(cfg: &EvalConfig) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for s in [0.0, 0.25, 0.5, 1.0, 1.5] {
        let sp = SqueezeParam::new(s)?;
        let st = make_tmss(sp, &cfg.policy)?;
        worst = worst.max((state_entropy(&st)? - tmss_entropy_closed_form(s)).abs());
        worst = worst.max((state_epr(&st)? - 2.0 * (-2.0 * s).exp()).abs());
        let f = fidelity_of_ops(sp, &[], &cfg.fidelity)?.fidelity;
        worst = worst.max((f - tmss_fidelity_closed_form(s)).abs());
    }
    Ok(CheckResult::new("tmss_oracles", worst, 1e-8))
}

/// `⟨ââ†⟩ − ⟨â†â⟩ = 1` on 20 quasi-random normalized states.
pub fn check_commutator() -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for k in 0..20 {
        let (ta, tb) = (3 + k % 4, 2 + k % 5);
        let dims = 2 * (ta + 1) * (tb + 1);
        let u = kronecker_point(k, dims);
        let raw = TwoModeState::new(nalgebra::DMatrix::from_fn(ta + 1, tb + 1, |n, m| {
            let idx = 2 * (n * (tb + 1) + m);
            Complex64::new(u[idx] - 0.5, u[idx + 1] - 0.5)
        }))?;
        let (st, _) = crate::fock::normalize(&raw)?;
        let up = apply_ladder(&st, Mode::A, Ladder::Create).norm_sqr();
        let down = apply_ladder(&st, Mode::A, Ladder::Annihilate).norm_sqr();
        worst = worst.max((up - down - 1.0).abs());
    }
    Ok(CheckResult::new("commutator", worst, 1e-10))
}

/// Entropy and EPR moments unchanged when the truncation is doubled.
pub fn check_truncation_doubling(policy: &TruncationPolicy) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let doubled = TruncationPolicy {
        n_max: 2 * policy.n_max,
        ..*policy
    };
    for (s, r) in [(0.2, 0.3), (0.6, 0.5), (1.0, 0.1)] {
        let sp = SqueezeParam::new(s)?;
        let ops = ReferenceState::CoherentAB(SuperpositionOp::from_r(r)?).ops();
        let a = build_operated_state(sp, &ops, policy)?;
        let b = build_operated_state(sp, &ops, &doubled)?;
        worst = worst.max((state_entropy(&a)? - state_entropy(&b)?).abs());
        let (ma, mb) = (quadrature_moments(&a)?, quadrature_moments(&b)?);
        worst = worst
            .max((ma.n_a - mb.n_a).abs())
            .max((ma.ab - mb.ab).norm());
    }
    Ok(CheckResult::new("truncation_doubling", worst, 1e-10))
}

/// Every check, in a fixed order.
pub fn run_validation(cfg: &EvalConfig) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_epr_routes(&cfg.policy)?,
        check_char_fn_routes(&cfg.policy)?,
        check_norm_constants(&cfg.policy)?,
        check_tmss_oracles(cfg)?,
        check_commutator()?,
        check_truncation_doubling(&cfg.policy)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_points_fill_the_unit_cube() {
        for k in 0..100 {
            assert!(kronecker_point(k, 5)
                .iter()
                .all(|&x| (0.0..1.0).contains(&x)));
        }
        assert_ne!(kronecker_point(1, 3), kronecker_point(2, 3));
    }

    #[test]
    fn default_configuration_passes() {
        for check in run_validation(&EvalConfig::default()).unwrap() {
            assert!(check.passed, "{}: {:e}", check.name, check.discrepancy);
        }
    }
}
