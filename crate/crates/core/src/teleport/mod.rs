//! Braunstein–Kimble teleportation of coherent states with an operated
//! two-mode squeezed vacuum as the shared resource.
//!
//! With resource characteristic function `C_E(λ₂, λ₃) = ⟨D̂(λ₂) ⊗ D̂(λ₃)⟩`
//! the unity-gain output is `C_out(λ) = C_in(λ)·C_E(λ*, λ)` and the fidelity
//! for a pure input is `F = (1/π)∫d²λ C_out(λ)C_in(−λ)`. For coherent inputs
//! `C_in(λ)C_in(−λ) = e^{−|λ|²}` independently of the amplitude, so the
//! average over the alphabet equals the vacuum-input value.

mod displacement;
mod quadrature;

pub use displacement::{displacement_element, displacement_matrix, MAX_DISPLACEMENT_ABS2};
pub use quadrature::gaussian_plane_integral;

use num_complex::Complex64;

use crate::epr::EprClosedFormTerms;
use crate::error::{Error, Result};
use crate::fock::{LocalOp, SqueezeParam, SqueezedCore, SuperpositionOp, TwoModeState};

/// No-entanglement bound for teleporting coherent states.
pub const CLASSICAL_BOUND: f64 = 0.5;

/// Largest accepted difference between the base and doubled quadrature orders.
pub const QUADRATURE_REFINEMENT_TOL: f64 = 1e-9;

/// Characteristic-function arguments `(λ₂, λ₃)` with the squeezed-frame
/// images `α = λ₂cosh s − λ₃* sinh s`, `β = λ₃cosh s − λ₂* sinh s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharFnPoint {
    lambda2: Complex64,
    lambda3: Complex64,
    alpha: Complex64,
    beta: Complex64,
}

impl CharFnPoint {
    pub fn new(lambda2: Complex64, lambda3: Complex64, s: SqueezeParam) -> Self {
        let (ch, sh) = (s.s().cosh(), s.s().sinh());
        Self {
            lambda2,
            lambda3,
            alpha: lambda2 * ch - lambda3.conj() * sh,
            beta: lambda3 * ch - lambda2.conj() * sh,
        }
    }

    pub fn lambda2(&self) -> Complex64 {
        self.lambda2
    }

    pub fn lambda3(&self) -> Complex64 {
        self.lambda3
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }
}

/// Closed-form characteristic function of `(t_Aâ + r_Aâ†)(t_Bb̂ + r_Bb̂†)|TMSS⟩`.
pub fn char_fn_closed(
    s: SqueezeParam,
    op_a: SuperpositionOp,
    op_b: SuperpositionOp,
    p: &CharFnPoint,
) -> Result<Complex64> {
    let terms = EprClosedFormTerms::new(s, op_a, op_b);
    terms.ensure_normalizable()?;
    let EprClosedFormTerms { a, b, c, d, m } = terms;
    let (al, be) = (p.alpha, p.beta);
    let (xa, xb) = (al.norm_sqr(), be.norm_sqr());
    let r2 = std::f64::consts::SQRT_2;
    let real = |z: Complex64| z + z.conj();
    let bracket = Complex64::new(
        a * a * (1.0 - xa) * (1.0 - xb)
            + b * b
            + c * c * (1.0 - 2.0 * xb + 0.5 * xb * xb)
            + d * d * (1.0 - 2.0 * xa + 0.5 * xa * xa),
        0.0,
    ) + real(al * be) * (a * b)
        + real(al * be.conj()) * (a / r2 * (c * (xb - 2.0) + d * (xa - 2.0)))
        + real(be * be) * (b * c / r2)
        + real(al * al) * (b * d / r2)
        + real(al * al * be.conj() * be.conj()) * (c * d / 2.0);
    Ok(bracket * ((-0.5 * (xa + xb)).exp() / m))
}

/// `⟨ψ|D̂(λ₂) ⊗ D̂(λ₃)|ψ⟩` in the truncated number basis.
pub fn char_fn_numeric(state: &TwoModeState, p: &CharFnPoint) -> Result<Complex64> {
    fock_char_fn(state, p.lambda2, p.lambda3)
}

/// Characteristic function of `Ŝ(s)|φ⟩` evaluated on the core at `(α, β)`.
pub fn char_fn_core(
    core: &SqueezedCore,
    lambda2: Complex64,
    lambda3: Complex64,
) -> Result<Complex64> {
    let p = CharFnPoint::new(lambda2, lambda3, core.squeeze());
    fock_char_fn(core.core(), p.alpha, p.beta)
}

/// `exp(−(|α|² + |β|²)/2)`: the Gaussian characteristic function of the squeezed vacuum.
pub fn tmss_char_fn(s: SqueezeParam, lambda2: Complex64, lambda3: Complex64) -> Complex64 {
    let p = CharFnPoint::new(lambda2, lambda3, s);
    Complex64::new((-0.5 * (p.alpha.norm_sqr() + p.beta.norm_sqr())).exp(), 0.0)
}

fn fock_char_fn(state: &TwoModeState, x: Complex64, y: Complex64) -> Result<Complex64> {
    if !state.is_normalized() {
        return Err(Error::InvalidParameter(
            "characteristic function needs a normalized state".into(),
        ));
    }
    let c = state.coeffs();
    let da = displacement_matrix(x, c.nrows())?;
    let db = displacement_matrix(y, c.ncols())?;
    let moved = da * c * db.transpose();
    Ok(c.iter().zip(moved.iter()).map(|(u, v)| u.conj() * v).sum())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelitySettings {
    /// Gauss–Hermite nodes per axis; the error estimate uses twice this.
    pub order: usize,
    /// Coherent input amplitude `γ`; the fidelity does not depend on it.
    pub input_amplitude: Complex64,
}

impl Default for FidelitySettings {
    fn default() -> Self {
        Self {
            order: 40,
            input_amplitude: Complex64::new(0.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityResult {
    pub fidelity: f64,
    pub s: f64,
    /// `None` for resources without a coherent operation.
    pub r: Option<f64>,
    /// Order that produced `fidelity` (twice the base order).
    pub quadrature_order: usize,
    /// |F(order) − F(2·order)|.
    pub est_error: f64,
}

/// Gaussian envelope of `e^{−|λ|²}C_E(λ*, λ)` for a squeezed resource.
fn envelope(s: SqueezeParam) -> f64 {
    1.0 + (-2.0 * s.s()).exp()
}

fn coherent_input(gamma: Complex64, lambda: Complex64) -> Complex64 {
    (Complex64::new(-0.5 * lambda.norm_sqr(), 0.0) + lambda * gamma.conj() - lambda.conj() * gamma)
        .exp()
}

/// Runs the fidelity integral at the base and doubled order.
fn fidelity_integral<F>(settings: &FidelitySettings, kappa: f64, resource: F) -> Result<(f64, f64)>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let gamma = settings.input_amplitude;
    let eval = |order: usize| -> Result<f64> {
        let z = gaussian_plane_integral(order, kappa, |lambda| {
            let weight = coherent_input(gamma, lambda) * coherent_input(gamma, -lambda);
            Ok(resource(lambda)? * weight * (kappa * lambda.norm_sqr()).exp())
        })?;
        Ok(z.re / std::f64::consts::PI)
    };
    let coarse = eval(settings.order)?;
    let fine = eval(2 * settings.order)?;
    if (coarse - fine).abs() > QUADRATURE_REFINEMENT_TOL || !fine.is_finite() {
        return Err(Error::QuadratureNonConvergence {
            order: settings.order,
            fine_order: 2 * settings.order,
            coarse,
            fine,
        });
    }
    Ok((coarse, fine))
}

fn finish(
    s: f64,
    r: Option<f64>,
    settings: &FidelitySettings,
    (coarse, fine): (f64, f64),
) -> Result<FidelityResult> {
    if !(-1e-9..=1.0 + 1e-9).contains(&fine) {
        return Err(Error::Numerical(format!("fidelity {fine} outside [0, 1]")));
    }
    Ok(FidelityResult {
        fidelity: fine,
        s,
        r,
        quadrature_order: 2 * settings.order,
        est_error: (coarse - fine).abs(),
    })
}

/// Average fidelity with `(t_Aâ + r_Aâ†)(t_Bb̂ + r_Bb̂†)|TMSS⟩` as resource,
/// through the closed-form characteristic function.
pub fn average_fidelity(
    s: SqueezeParam,
    op_a: SuperpositionOp,
    op_b: SuperpositionOp,
    settings: &FidelitySettings,
) -> Result<FidelityResult> {
    EprClosedFormTerms::new(s, op_a, op_b).ensure_normalizable()?;
    let values = fidelity_integral(settings, envelope(s), |lambda| {
        char_fn_closed(s, op_a, op_b, &CharFnPoint::new(lambda.conj(), lambda, s))
    })?;
    let r = (op_a == op_b).then_some(op_a.r());
    finish(s.s(), r, settings, values)
}

/// Average fidelity for `ops…|TMSS⟩` through its squeezed core.
pub fn fidelity_of_ops(
    s: SqueezeParam,
    ops: &[LocalOp],
    settings: &FidelitySettings,
) -> Result<FidelityResult> {
    let core = SqueezedCore::from_ops(s, ops)?;
    let values = fidelity_integral(settings, envelope(s), |lambda| {
        char_fn_core(&core, lambda.conj(), lambda)
    })?;
    finish(s.s(), None, settings, values)
}

/// Average fidelity for an arbitrary normalized resource in the Fock basis.
///
/// `kappa` is the Gaussian envelope the quadrature is scaled to; `1 + e^{−2s}`
/// is exact for squeezed resources and 1 is a safe default otherwise.
pub fn fidelity_of_state(
    state: &TwoModeState,
    kappa: f64,
    settings: &FidelitySettings,
) -> Result<FidelityResult> {
    let values = fidelity_integral(settings, kappa, |lambda| {
        fock_char_fn(state, lambda.conj(), lambda)
    })?;
    finish(f64::NAN, None, settings, values)
}

/// `1/(1 + e^{−2s})`: the squeezed-vacuum fidelity from the Gaussian integral
/// `(1/π)∫d²λ exp(−|λ|²(1 + e^{−2s}))`.
pub fn tmss_fidelity_closed_form(s: f64) -> f64 {
    1.0 / (1.0 + (-2.0 * s).exp())
}
