use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("truncation overflow: tail mass {tail_mass:.3e} exceeds tolerance {tail_tol:.3e} at n_max = {n_max}")]
    TruncationOverflow {
        n_max: usize,
        tail_mass: f64,
        tail_tol: f64,
    },

    /// The state was annihilated (or cancelled by interference) and cannot be normalized.
    #[error("zero state: squared norm {norm_sqr:.3e} is below threshold {threshold:.1e}")]
    ZeroState { norm_sqr: f64, threshold: f64 },

    #[error("displacement argument |λ|² = {abs_sqr:.3} exceeds the accuracy bound {bound}")]
    TruncationAccuracy { abs_sqr: f64, bound: f64 },

    #[error("quadrature did not converge: order {order} gave {coarse:.15}, order {fine_order} gave {fine:.15}")]
    QuadratureNonConvergence {
        order: usize,
        fine_order: usize,
        coarse: f64,
        fine: f64,
    },

    #[error(
        "bracket [{lo}, {hi}] does not straddle the target (f(lo) = {f_lo:.6}, f(hi) = {f_hi:.6})"
    )]
    BracketInvalid {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
