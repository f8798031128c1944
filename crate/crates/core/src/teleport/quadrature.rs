use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::GaussHermite;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Node pairs with `e^{−(x²+y²)}` below 1e−40 are skipped: the integrands used
/// here are polynomially bounded, and the computed weights of far-tail nodes
/// carry only absolute accuracy.
const NEGLIGIBLE_RADIUS_SQR: f64 = 92.1;

type Rule = Arc<Vec<(f64, f64)>>;

fn hermite_rule(order: usize) -> Result<Rule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    let deg = std::num::NonZeroUsize::new(order)
        .ok_or_else(|| Error::InvalidParameter("quadrature order must be positive".into()))?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache
        .lock()
        .map_err(|_| Error::Numerical("quadrature cache poisoned".into()))?;
    Ok(guard
        .entry(order)
        .or_insert_with(|| Arc::new(GaussHermite::new(deg).as_node_weight_pairs().to_vec()))
        .clone())
}

/// `∫ d²λ e^{−κ|λ|²} h(λ)` over the complex plane with a Gauss–Hermite
/// product rule of `order` nodes per axis, scaled to the envelope `κ`.
pub fn gaussian_plane_integral<F>(order: usize, kappa: f64, mut h: F) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "envelope must be positive, got {kappa}"
        )));
    }
    let rule = hermite_rule(order)?;
    let scale = kappa.sqrt().recip();
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, wx) in rule.iter() {
        for &(y, wy) in rule.iter() {
            if x * x + y * y > NEGLIGIBLE_RADIUS_SQR {
                continue;
            }
            acc += h(Complex64::new(x * scale, y * scale))? * (wx * wy);
        }
    }
    Ok(acc / kappa)
}
