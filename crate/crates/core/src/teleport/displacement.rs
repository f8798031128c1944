use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest `|α|²` accepted for displacement matrix elements.
pub const MAX_DISPLACEMENT_ABS2: f64 = 100.0;

/// Number-basis matrix `⟨m|D̂(α)|n⟩`, `m, n < dim`, with `D̂(α) = exp(αâ† − α*â)`.
///
/// For `m ≥ n`: `√(n!/m!) α^{m−n} e^{−|α|²/2} L_n^{(m−n)}(|α|²)`; the upper
/// triangle follows with `α^{m−n}` replaced by `(−α*)^{n−m}`. Laguerre values
/// come from the three-term recurrence in `n`, one sweep per off-diagonal.
pub fn displacement_matrix(alpha: Complex64, dim: usize) -> Result<DMatrix<Complex64>> {
    let x = alpha.norm_sqr();
    if !x.is_finite() || x > MAX_DISPLACEMENT_ABS2 {
        return Err(Error::TruncationAccuracy {
            abs_sqr: x,
            bound: MAX_DISPLACEMENT_ABS2,
        });
    }
    let mut out = DMatrix::zeros(dim, dim);
    if dim == 0 {
        return Ok(out);
    }
    let ln_fact = ln_factorials(dim);
    let abs = x.sqrt();
    let phase_lower = if abs > 0.0 {
        alpha / abs
    } else {
        Complex64::new(1.0, 0.0)
    };
    let phase_upper = -phase_lower.conj();
    let mut laguerre = vec![0.0; dim];
    for k in 0..dim {
        if k > 0 && abs == 0.0 {
            break;
        }
        laguerre_column(k, x, dim - k, &mut laguerre);
        let mut pl = Complex64::new(1.0, 0.0);
        let mut pu = Complex64::new(1.0, 0.0);
        for _ in 0..k {
            pl *= phase_lower;
            pu *= phase_upper;
        }
        let ln_abs_k = if k == 0 { 0.0 } else { k as f64 * abs.ln() };
        for n in 0..(dim - k) {
            let ln_mag = 0.5 * (ln_fact[n] - ln_fact[n + k]) + ln_abs_k - 0.5 * x;
            let mag = ln_mag.exp() * laguerre[n];
            out[(n + k, n)] = pl * mag;
            if k > 0 {
                out[(n, n + k)] = pu * mag;
            }
        }
    }
    Ok(out)
}

/// Single element `⟨m|D̂(α)|n⟩`.
pub fn displacement_element(m: usize, n: usize, alpha: Complex64) -> Result<Complex64> {
    let d = displacement_matrix(alpha, m.max(n) + 1)?;
    Ok(d[(m, n)])
}

/// `L_n^{(k)}(x)` for `n < len` into `out[..len]`.
fn laguerre_column(k: usize, x: f64, len: usize, out: &mut [f64]) {
    let k = k as f64;
    if len > 0 {
        out[0] = 1.0;
    }
    if len > 1 {
        out[1] = 1.0 + k - x;
    }
    for n in 1..len.saturating_sub(1) {
        let nf = n as f64;
        out[n + 1] = ((2.0 * nf + 1.0 + k - x) * out[n] - (nf + k) * out[n - 1]) / (nf + 1.0);
    }
}

fn ln_factorials(len: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(len);
    let mut acc = 0.0;
    v.push(0.0);
    for n in 1..len {
        acc += (n as f64).ln();
        v.push(acc);
    }
    v
}
