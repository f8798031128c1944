use super::{evaluate, EvalConfig, Metric, Strategy};
use crate::error::{Error, Result};

/// Width of the final golden-section bracket in `r`.
pub const R_TOL: f64 = 1e-6;
/// Bisection width for thresholds in `s`.
pub const THRESHOLD_TOL: f64 = 1e-5;
/// Bisection width for crossovers and advantage boundaries in `s`.
pub const CROSSOVER_TOL: f64 = 1e-4;
/// An optimum closer than this to `r = 0` or `r = 1` counts as an endpoint.
pub const ADVANTAGE_R_TOL: f64 = 1e-3;

const COARSE_POINTS: usize = 101;
const MONOTONE_SAMPLES: usize = 21;
/// Step used to take the limit at an endpoint where the operated state vanishes.
const ZERO_STATE_STEP: f64 = 1e-6;
/// An endpoint this close to the target is returned as the threshold.
const ENDPOINT_TOL: f64 = 1e-4;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

fn is_zero_state(e: &Error) -> bool {
    matches!(e, Error::ZeroState { .. })
}

/// Best `r ∈ [0, 1]` for a coherent strategy: 101-point scan, then golden
/// section inside the best coarse cell. Ties go to the smaller `r`; points
/// where the state vanishes are skipped.
pub fn optimize_r(
    metric: Metric,
    s: f64,
    strategy: Strategy,
    cfg: &EvalConfig,
) -> Result<(f64, f64)> {
    if !strategy.has_r() {
        return Err(Error::InvalidParameter(format!(
            "{} has no coherent operation to optimize",
            strategy.name()
        )));
    }
    let f = |r: f64| -> Result<Option<f64>> {
        match evaluate(metric, strategy, s, Some(r), cfg) {
            Ok(v) => Ok(Some(v)),
            Err(e) if is_zero_state(&e) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let score = |v: Option<f64>| v.map_or(f64::NEG_INFINITY, |v| metric.score(v));

    let step = 1.0 / (COARSE_POINTS - 1) as f64;
    let mut best: Option<(usize, f64)> = None;
    for k in 0..COARSE_POINTS {
        if let Some(v) = f(k as f64 * step)? {
            if best.is_none_or(|(_, bv)| metric.score(v) > metric.score(bv)) {
                best = Some((k, v));
            }
        }
    }
    let (k, v_coarse) = best.ok_or(Error::ZeroState {
        norm_sqr: 0.0,
        threshold: crate::fock::ZERO_STATE_THRESHOLD,
    })?;
    let r_coarse = k as f64 * step;

    let (mut a, mut b) = (
        k.saturating_sub(1) as f64 * step,
        (k + 1).min(COARSE_POINTS - 1) as f64 * step,
    );
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > R_TOL {
        if score(fc) >= score(fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let (r_fine, v_fine) = if score(fc) >= score(fd) {
        (c, fc)
    } else {
        (d, fd)
    };
    match v_fine {
        Some(v)
            if metric.score(v) > metric.score(v_coarse) || (v == v_coarse && r_fine < r_coarse) =>
        {
            Ok((r_fine, v))
        }
        _ => Ok((r_coarse, v_coarse)),
    }
}

/// `(Some(r*), value*)` for coherent strategies, `(None, value)` otherwise.
pub fn optimized_value(
    metric: Metric,
    strategy: Strategy,
    s: f64,
    cfg: &EvalConfig,
) -> Result<(Option<f64>, f64)> {
    if strategy.has_r() {
        optimize_r(metric, s, strategy, cfg).map(|(r, v)| (Some(r), v))
    } else {
        evaluate(metric, strategy, s, None, cfg).map(|v| (None, v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RChoice {
    Fixed(f64),
    Optimize,
    /// Strategies without a coherent operation.
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdQuery {
    pub metric: Metric,
    pub strategy: Strategy,
    pub target: f64,
    pub r: RChoice,
    pub bracket: (f64, f64),
}

impl ThresholdQuery {
    fn value(&self, s: f64, cfg: &EvalConfig) -> Result<f64> {
        match self.r {
            RChoice::Fixed(r) => evaluate(self.metric, self.strategy, s, Some(r), cfg),
            RChoice::Optimize => {
                optimized_value(self.metric, self.strategy, s, cfg).map(|(_, v)| v)
            }
            RChoice::Absent => evaluate(self.metric, self.strategy, s, None, cfg),
        }
    }
}

fn check_bracket((lo, hi): (f64, f64)) -> Result<()> {
    if lo >= 0.0 && hi > lo && hi.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "invalid bracket [{lo}, {hi}]"
        )))
    }
}

/// Evaluates `g` at an endpoint, stepping inward if the state vanishes there.
fn endpoint<G: Fn(f64) -> Result<f64>>(g: &G, s: f64, inward: f64) -> Result<f64> {
    match g(s) {
        Err(e) if is_zero_state(&e) => g(s + inward * ZERO_STATE_STEP),
        other => other,
    }
}

fn bisect<G: Fn(f64) -> Result<f64>>(
    g: &G,
    (mut lo, mut hi): (f64, f64),
    mut f_lo: f64,
    tol: f64,
) -> Result<f64> {
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        let fm = g(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Squeezing at which the metric crosses `q.target`, to `|Δs| < 1e−5`.
///
/// The bracketed segment is sampled first and must be monotone.
pub fn find_threshold(q: &ThresholdQuery, cfg: &EvalConfig) -> Result<f64> {
    check_bracket(q.bracket)?;
    let (lo, hi) = q.bracket;
    let g = |s: f64| q.value(s, cfg).map(|v| v - q.target);
    let f_lo = endpoint(&g, lo, 1.0)?;
    let f_hi = endpoint(&g, hi, -1.0)?;
    if f_lo.abs() < ENDPOINT_TOL {
        return Ok(lo);
    }
    if f_hi.abs() < ENDPOINT_TOL {
        return Ok(hi);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::BracketInvalid { lo, hi, f_lo, f_hi });
    }
    let rising = f_hi > f_lo;
    let mut prev = f_lo;
    for k in 1..MONOTONE_SAMPLES {
        let s = lo + (hi - lo) * k as f64 / (MONOTONE_SAMPLES - 1) as f64;
        let v = if k == MONOTONE_SAMPLES - 1 {
            f_hi
        } else {
            g(s)?
        };
        if (rising && v < prev - 1e-12) || (!rising && v > prev + 1e-12) {
            return Err(Error::Numerical(format!(
                "{} of {} is not monotone on [{lo}, {hi}] near s = {s}",
                q.metric, q.strategy
            )));
        }
        prev = v;
    }
    bisect(&g, (lo, hi), f_lo, THRESHOLD_TOL)
}

/// Squeezing at which the optimized curves of two strategies cross, to `|Δs| < 1e−4`.
pub fn find_crossover(
    metric: Metric,
    first: Strategy,
    second: Strategy,
    bracket: (f64, f64),
    cfg: &EvalConfig,
) -> Result<f64> {
    check_bracket(bracket)?;
    let (lo, hi) = bracket;
    let g = |s: f64| -> Result<f64> {
        let (_, a) = optimized_value(metric, first, s, cfg)?;
        let (_, b) = optimized_value(metric, second, s, cfg)?;
        Ok(a - b)
    };
    let f_lo = endpoint(&g, lo, 1.0)?;
    let f_hi = endpoint(&g, hi, -1.0)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::BracketInvalid { lo, hi, f_lo, f_hi });
    }
    bisect(&g, (lo, hi), f_lo, CROSSOVER_TOL)
}

/// Whether the optimized coherent operation strictly beats both of its
/// endpoints (photon subtraction `r = 0` and addition `r = 1`) at `s`.
pub fn coherent_advantage(
    metric: Metric,
    strategy: Strategy,
    s: f64,
    cfg: &EvalConfig,
) -> Result<bool> {
    let (r, v) = optimize_r(metric, s, strategy, cfg)?;
    if r <= ADVANTAGE_R_TOL || r >= 1.0 - ADVANTAGE_R_TOL {
        return Ok(false);
    }
    for end in [0.0, 1.0] {
        match evaluate(metric, strategy, s, Some(end), cfg) {
            Ok(e) if metric.score(e) >= metric.score(v) => return Ok(false),
            Ok(_) => {}
            Err(e) if is_zero_state(&e) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// Largest squeezing below which the coherent operation beats plain
/// subtraction and addition, located by bisection to `|Δs| < 1e−4`.
pub fn find_advantage_boundary(
    metric: Metric,
    strategy: Strategy,
    bracket: (f64, f64),
    cfg: &EvalConfig,
) -> Result<f64> {
    check_bracket(bracket)?;
    let (mut lo, mut hi) = bracket;
    let p_lo = coherent_advantage(metric, strategy, lo, cfg)?;
    let p_hi = coherent_advantage(metric, strategy, hi, cfg)?;
    if !p_lo || p_hi {
        return Err(Error::BracketInvalid {
            lo,
            hi,
            f_lo: if p_lo { 1.0 } else { 0.0 },
            f_hi: if p_hi { 1.0 } else { 0.0 },
        });
    }
    while hi - lo >= CROSSOVER_TOL {
        let mid = 0.5 * (lo + hi);
        if coherent_advantage(metric, strategy, mid, cfg)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
