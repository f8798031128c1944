//! Schmidt decomposition and entropy of entanglement of pure two-mode states.

use nalgebra::{DMatrix, SVD};

use crate::error::{Error, Result};
use crate::fock::TwoModeState;

/// Schmidt coefficients at or below this are discarded before the entropy sum.
pub const SCHMIDT_CUTOFF: f64 = 1e-12;

const SVD_MAX_ITER: usize = 10_000;

/// Schmidt coefficients in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    values: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Sorts descending; rejects negative or non-finite entries.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidParameter(
                "Schmidt coefficients must be finite and non-negative".into(),
            ));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Σ cᵢ², equal to one for a normalized state.
    pub fn weight(&self) -> f64 {
        self.values.iter().map(|c| c * c).sum()
    }
}

/// Singular values of the coefficient matrix.
pub fn schmidt_decompose(state: &TwoModeState) -> Result<SchmidtSpectrum> {
    if !state.is_normalized() {
        return Err(Error::InvalidParameter(
            "Schmidt decomposition needs a normalized state".into(),
        ));
    }
    let values = if state.is_real() {
        let real = state.coeffs().map(|c| c.re);
        SVD::try_new(real, false, false, f64::EPSILON, SVD_MAX_ITER)
            .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?
            .singular_values
            .iter()
            .copied()
            .collect()
    } else {
        SVD::try_new(
            state.coeffs().clone(),
            false,
            false,
            f64::EPSILON,
            SVD_MAX_ITER,
        )
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?
        .singular_values
        .iter()
        .copied()
        .collect()
    };
    SchmidtSpectrum::new(values)
}

/// Frobenius norm of `C − U Σ V†` for the full decomposition of the coefficient matrix.
pub fn schmidt_reconstruction_residual(state: &TwoModeState) -> Result<f64> {
    let c = state.coeffs();
    let svd = SVD::try_new(c.clone(), true, true, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let rebuilt = svd
        .recompose()
        .map_err(|e| Error::Numerical(e.to_string()))?;
    Ok((c - rebuilt).norm())
}

/// `E = −Σ cᵢ² log₂ cᵢ²` in bits.
pub fn entropy_of_entanglement(spectrum: &SchmidtSpectrum) -> f64 {
    let e: f64 = spectrum
        .values()
        .iter()
        .filter(|&&c| c > SCHMIDT_CUTOFF)
        .map(|c| {
            let p = c * c;
            -p * p.log2()
        })
        .sum();
    e.max(0.0)
}

/// Entropy of a normalized state.
pub fn state_entropy(state: &TwoModeState) -> Result<f64> {
    schmidt_decompose(state).map(|spec| entropy_of_entanglement(&spec))
}

/// `cosh²s·log₂(cosh²s) − sinh²s·log₂(sinh²s)`, the entropy of the two-mode squeezed vacuum.
pub fn tmss_entropy_closed_form(s: f64) -> f64 {
    let c2 = s.cosh().powi(2);
    let s2 = s.sinh().powi(2);
    let tail = if s2 > 0.0 { s2 * s2.log2() } else { 0.0 };
    c2 * c2.log2() - tail
}

/// Permutes Fock labels of mode A (rows) and B (columns).
pub fn permute_labels(
    state: &TwoModeState,
    rows: &[usize],
    cols: &[usize],
) -> Result<TwoModeState> {
    let c = state.coeffs();
    if rows.len() != c.nrows() || cols.len() != c.ncols() {
        return Err(Error::InvalidParameter(
            "permutation length mismatch".into(),
        ));
    }
    TwoModeState::new(DMatrix::from_fn(c.nrows(), c.ncols(), |n, m| {
        c[(rows[n], cols[m])]
    }))
}
