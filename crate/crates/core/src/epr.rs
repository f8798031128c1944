//! EPR correlation `Δ²(x̂_A − x̂_B) + Δ²(p̂_A + p̂_B)` with `x̂ = (â + â†)/√2`,
//! `p̂ = (â − â†)/(i√2)`. Values below 2 certify entanglement.
//!
//! Two independent routes are provided: exact Fock-space moments for any
//! state, and a closed form for the coherent operation on both modes of the
//! squeezed vacuum. Photon-number entangled states (PNES) are optimized as
//! Rayleigh quotients.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{apply_ladder, Ladder, Mode, SqueezeParam, SuperpositionOp, TwoModeState};

/// Value of the EPR variance for any separable state is at least this.
pub const SEPARABLE_BOUND: f64 = 2.0;

/// First and second moments of the mode operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureMoments {
    /// ⟨â⟩
    pub mean_a: Complex64,
    /// ⟨b̂⟩
    pub mean_b: Complex64,
    /// ⟨â†â⟩
    pub n_a: f64,
    /// ⟨b̂†b̂⟩
    pub n_b: f64,
    /// ⟨â²⟩
    pub aa: Complex64,
    /// ⟨b̂²⟩
    pub bb: Complex64,
    /// ⟨âb̂⟩
    pub ab: Complex64,
    /// ⟨âb̂†⟩
    pub ab_dag: Complex64,
}

/// Exact moments of a normalized state.
pub fn quadrature_moments(state: &TwoModeState) -> Result<QuadratureMoments> {
    if !state.is_normalized() {
        return Err(Error::InvalidParameter(
            "moments need a normalized state".into(),
        ));
    }
    let down_a = apply_ladder(state, Mode::A, Ladder::Annihilate);
    let down_b = apply_ladder(state, Mode::B, Ladder::Annihilate);
    let up_b = apply_ladder(state, Mode::B, Ladder::Create);
    Ok(QuadratureMoments {
        mean_a: state.inner(&down_a),
        mean_b: state.inner(&down_b),
        n_a: down_a.norm_sqr(),
        n_b: down_b.norm_sqr(),
        aa: state.inner(&apply_ladder(&down_a, Mode::A, Ladder::Annihilate)),
        bb: state.inner(&apply_ladder(&down_b, Mode::B, Ladder::Annihilate)),
        ab: state.inner(&apply_ladder(&down_b, Mode::A, Ladder::Annihilate)),
        ab_dag: state.inner(&apply_ladder(&up_b, Mode::A, Ladder::Annihilate)),
    })
}

/// `2 + 2n_a + 2n_b − 4Re⟨âb̂⟩ − ⟨x̂_A − x̂_B⟩² − ⟨p̂_A + p̂_B⟩²`.
pub fn epr_total_variance(m: &QuadratureMoments) -> f64 {
    let x_mean = std::f64::consts::SQRT_2 * (m.mean_a - m.mean_b).re;
    let p_mean = std::f64::consts::SQRT_2 * (m.mean_a + m.mean_b).im;
    2.0 + 2.0 * m.n_a + 2.0 * m.n_b - 4.0 * m.ab.re - x_mean * x_mean - p_mean * p_mean
}

/// EPR variance of a normalized state through its moments.
pub fn state_epr(state: &TwoModeState) -> Result<f64> {
    quadrature_moments(state).map(|m| epr_total_variance(&m))
}

/// Amplitudes of `Ŝ(s)[A|11⟩ + B|00⟩ + C|02⟩ + D|20⟩]/√M`, the coherent
/// operation on both modes of the squeezed vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EprClosedFormTerms {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// `A² + B² + C² + D²`
    pub m: f64,
}

impl EprClosedFormTerms {
    pub fn new(s: SqueezeParam, op_a: SuperpositionOp, op_b: SuperpositionOp) -> Self {
        let (ch, sh) = (s.s().cosh(), s.s().sinh());
        let (ta, ra, tb, rb) = (op_a.t(), op_a.r(), op_b.t(), op_b.r());
        let a = ta * tb * sh * sh + ra * rb * ch * ch;
        let b = (ta * tb + ra * rb) * ch * sh;
        let c = std::f64::consts::SQRT_2 * ta * rb * ch * sh;
        let d = std::f64::consts::SQRT_2 * ra * tb * ch * sh;
        Self {
            a,
            b,
            c,
            d,
            m: a * a + b * b + c * c + d * d,
        }
    }

    /// Fails when the operated state vanishes (e.g. subtraction at `s = 0`).
    pub fn ensure_normalizable(&self) -> Result<()> {
        if self.m > crate::fock::ZERO_STATE_THRESHOLD {
            Ok(())
        } else {
            Err(Error::ZeroState {
                norm_sqr: self.m,
                threshold: crate::fock::ZERO_STATE_THRESHOLD,
            })
        }
    }
}

/// Closed-form EPR variance of `(t_Aâ + r_Aâ†)(t_Bb̂ + r_Bb̂†)|TMSS⟩`:
/// `2 + (4/M)[M(cosh s − sinh s)(cosh s − 2 sinh s) − (AB + B²)(cosh s − sinh s)²]`.
pub fn epr_closed_form(
    s: SqueezeParam,
    op_a: SuperpositionOp,
    op_b: SuperpositionOp,
) -> Result<f64> {
    let terms = EprClosedFormTerms::new(s, op_a, op_b);
    terms.ensure_normalizable()?;
    let (ch, sh) = (s.s().cosh(), s.s().sinh());
    let EprClosedFormTerms { a, b, m, .. } = terms;
    Ok(2.0 + 4.0 / m * (m * (ch - sh) * (ch - 2.0 * sh) - (a * b + b * b) * (ch - sh).powi(2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PnesKind {
    /// `Σ dₙ|n⟩_A|n⟩_B`
    Diagonal,
    /// `Σ eₙ|n⟩_A|n+1⟩_B`
    Ladder,
}

impl PnesKind {
    pub fn name(&self) -> &'static str {
        match self {
            PnesKind::Diagonal => "diagonal",
            PnesKind::Ladder => "ladder",
        }
    }

    fn support(&self, n: usize) -> Vec<(usize, usize)> {
        match self {
            PnesKind::Diagonal => (0..=n).map(|k| (k, k)).collect(),
            PnesKind::Ladder => (0..=n).map(|k| (k, k + 1)).collect(),
        }
    }
}

/// Photon-number entangled state with real coefficients `c₀..c_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct PnesSpec {
    kind: PnesKind,
    coeffs: Vec<f64>,
}

impl PnesSpec {
    pub fn new(kind: PnesKind, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(|&c| c == 0.0) {
            return Err(Error::InvalidParameter(
                "PNES needs at least one nonzero coefficient".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(
                "PNES coefficients must be finite".into(),
            ));
        }
        Ok(Self { kind, coeffs })
    }

    pub fn kind(&self) -> PnesKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Truncation number `N`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Normalized two-mode state.
    pub fn to_state(&self) -> Result<TwoModeState> {
        let n = self.truncation();
        let norm = self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        let raw = match self.kind {
            PnesKind::Diagonal => {
                TwoModeState::from_real(
                    n,
                    n,
                    |i, j| if i == j { self.coeffs[i] / norm } else { 0.0 },
                )?
            }
            PnesKind::Ladder => TwoModeState::from_real(n, n + 1, |i, j| {
                if j == i + 1 {
                    self.coeffs[i] / norm
                } else {
                    0.0
                }
            })?,
        };
        crate::fock::normalize(&raw).map(|(state, _)| state)
    }
}

/// EPR variance of a PNES. The diagonal class uses
/// `2 − 4 Σₙ₌₁ᴺ n(dₙ₋₁ − dₙ)dₙ / Σₙ dₙ²`; the ladder class goes through the
/// Fock moments of the assembled state.
pub fn pnes_epr_value(spec: &PnesSpec) -> Result<f64> {
    match spec.kind {
        PnesKind::Diagonal => {
            let d = &spec.coeffs;
            let num: f64 = (1..d.len())
                .map(|n| n as f64 * (d[n - 1] - d[n]) * d[n])
                .sum();
            let den: f64 = d.iter().map(|x| x * x).sum();
            Ok(2.0 - 4.0 * num / den)
        }
        PnesKind::Ladder => state_epr(&spec.to_state()?),
    }
}

/// Minimum EPR variance over real coefficients for a PNES class of truncation `n`.
///
/// The diagonal class is the Rayleigh quotient of the `(N+1)×(N+1)` symmetric
/// tridiagonal matrix with diagonal `0, −1, …, −N` and off-diagonal `n/2`:
/// the optimum is `2 − 4·λ_max` at the top eigenvector. The ladder class is
/// minimized over the quadratic form assembled from the generic moment route.
pub fn pnes_optimize(kind: PnesKind, n: usize) -> Result<(PnesSpec, f64)> {
    match kind {
        PnesKind::Diagonal => {
            let dim = n + 1;
            let q = DMatrix::from_fn(dim, dim, |i, j| {
                if i == j {
                    -(i as f64)
                } else if i.abs_diff(j) == 1 {
                    i.max(j) as f64 / 2.0
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(q);
            let top = eig.eigenvalues.imax();
            let vector = oriented(eig.eigenvectors.column(top).iter().copied().collect());
            let value = 2.0 - 4.0 * eig.eigenvalues[top];
            Ok((PnesSpec::new(kind, vector)?, value))
        }
        PnesKind::Ladder => {
            let (vector, value) = minimize_epr_on_support(&kind.support(n))?;
            Ok((PnesSpec::new(kind, vector)?, value))
        }
    }
}

/// Minimizes the EPR variance over real superpositions of the given Fock
/// basis states `|n, m⟩`.
///
/// The form `q(v) = ⟨v|Ô|v⟩` is recovered from [`state_epr`] by polarization
/// on pairs of basis states, then its lowest eigenpair is taken. This is exact
/// when quadrature means vanish on the span (true for any support where no two
/// entries differ by one photon in a single mode); the optimum is re-evaluated
/// through the moment route and a mismatch is reported as an error.
pub fn minimize_epr_on_support(support: &[(usize, usize)]) -> Result<(Vec<f64>, f64)> {
    if support.is_empty() {
        return Err(Error::InvalidParameter("empty support".into()));
    }
    let ta = support.iter().map(|p| p.0).max().unwrap_or(0);
    let tb = support.iter().map(|p| p.1).max().unwrap_or(0);
    let assemble = |v: &[f64]| -> Result<TwoModeState> {
        let mut coeffs = DMatrix::zeros(ta + 1, tb + 1);
        for (&(n, m), &x) in support.iter().zip(v) {
            coeffs[(n, m)] += Complex64::new(x, 0.0);
        }
        crate::fock::normalize(&TwoModeState::new(coeffs)?).map(|(s, _)| s)
    };
    let k = support.len();
    let unit = |i: usize| -> Vec<f64> { (0..k).map(|j| if j == i { 1.0 } else { 0.0 }).collect() };
    let diag: Vec<f64> = (0..k)
        .map(|i| state_epr(&assemble(&unit(i))?))
        .collect::<Result<_>>()?;
    let mut form = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag.clone()));
    for i in 0..k {
        for j in (i + 1)..k {
            let mut v = unit(i);
            v[j] = 1.0;
            // q(eᵢ + eⱼ) = 2·E((eᵢ + eⱼ)/√2)
            let pair = 2.0 * state_epr(&assemble(&v)?)?;
            let off = 0.5 * (pair - diag[i] - diag[j]);
            form[(i, j)] = off;
            form[(j, i)] = off;
        }
    }
    let eig = SymmetricEigen::new(form);
    let low = eig.eigenvalues.imin();
    let vector = oriented(eig.eigenvectors.column(low).iter().copied().collect());
    let value = eig.eigenvalues[low];
    let check = state_epr(&assemble(&vector)?)?;
    if (check - value).abs() > 1e-9 {
        return Err(Error::Numerical(format!(
            "EPR is not a quadratic form on this support (eigenvalue {value}, direct {check})"
        )));
    }
    Ok((vector, value))
}

/// Fixes the sign so the coefficients sum to a non-negative value.
fn oriented(mut v: Vec<f64>) -> Vec<f64> {
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{make_tmss, normalize, TruncationPolicy};

    fn product_coherent(alpha: Complex64, beta: Complex64, trunc: usize) -> TwoModeState {
        let amp = |z: Complex64, n: usize| {
            let mut c = (-0.5 * z.norm_sqr()).exp() * Complex64::new(1.0, 0.0);
            for k in 1..=n {
                c *= z / (k as f64).sqrt();
            }
            c
        };
        let coeffs = DMatrix::from_fn(trunc + 1, trunc + 1, |n, m| amp(alpha, n) * amp(beta, m));
        normalize(&TwoModeState::new(coeffs).unwrap()).unwrap().0
    }

    #[test]
    fn vacuum_moments_vanish() {
        let m = quadrature_moments(&TwoModeState::vacuum(2, 2)).unwrap();
        assert_eq!(m.n_a, 0.0);
        assert_eq!(m.ab, Complex64::new(0.0, 0.0));
        assert_eq!(epr_total_variance(&m), 2.0);
    }

    #[test]
    fn tmss_moments_match_analytic_values() {
        let s = 0.7;
        let st = make_tmss(SqueezeParam::new(s).unwrap(), &TruncationPolicy::default()).unwrap();
        let m = quadrature_moments(&st).unwrap();
        // analytic: ⟨n⟩ = sinh²s, ⟨ab⟩ = cosh s sinh s
        assert!((m.n_a - s.sinh().powi(2)).abs() < 1e-10);
        assert!((m.n_b - s.sinh().powi(2)).abs() < 1e-10);
        assert!((m.ab.re - s.cosh() * s.sinh()).abs() < 1e-10);
        assert_eq!(m.mean_a.norm(), 0.0);
        assert!((epr_total_variance(&m) - 2.0 * (-2.0 * s).exp()).abs() < 1e-10);
    }

    #[test]
    fn displaced_vacua_stay_at_the_separable_bound() {
        // mean subtraction: a product of coherent states has vacuum noise only
        let st = product_coherent(Complex64::new(0.6, -0.3), Complex64::new(-0.2, 0.5), 40);
        let m = quadrature_moments(&st).unwrap();
        assert!((m.mean_a - Complex64::new(0.6, -0.3)).norm() < 1e-12);
        assert!((epr_total_variance(&m) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn single_subtraction_has_no_first_moment() {
        let st = crate::fock::build_reference_state(
            crate::fock::ReferenceState::SubA,
            SqueezeParam::new(0.5).unwrap(),
            &TruncationPolicy::default(),
        )
        .unwrap();
        let m = quadrature_moments(&st).unwrap();
        assert_eq!(m.mean_a.norm(), 0.0);
        assert_eq!(m.mean_b.norm(), 0.0);
    }

    #[test]
    fn closed_form_terms_swap_symmetry() {
        let s = SqueezeParam::new(0.4).unwrap();
        let x = SuperpositionOp::from_r(0.2).unwrap();
        let y = SuperpositionOp::from_r(0.7).unwrap();
        let p = EprClosedFormTerms::new(s, x, y);
        let q = EprClosedFormTerms::new(s, y, x);
        assert!((p.c - q.d).abs() < 1e-15 && (p.d - q.c).abs() < 1e-15);
        assert!((p.m - q.m).abs() < 1e-15);
    }

    #[test]
    fn closed_form_at_zero_squeezing_with_subtraction_is_zero_state() {
        let s = SqueezeParam::new(0.0).unwrap();
        let op = SuperpositionOp::SUBTRACT;
        assert!(matches!(
            epr_closed_form(s, op, op),
            Err(Error::ZeroState { .. })
        ));
        // pure addition on vacuum gives |11⟩: 2 + 2 + 2
        let add = SuperpositionOp::ADD;
        assert!((epr_closed_form(s, add, add).unwrap() - 6.0).abs() < 1e-14);
    }

    #[test]
    fn pnes_trivial_values() {
        let one = PnesSpec::new(PnesKind::Diagonal, vec![1.0]).unwrap();
        assert_eq!(pnes_epr_value(&one).unwrap(), 2.0);
        let flat = PnesSpec::new(PnesKind::Diagonal, vec![1.0, 1.0]).unwrap();
        assert_eq!(pnes_epr_value(&flat).unwrap(), 2.0);
        assert!(PnesSpec::new(PnesKind::Diagonal, vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn pnes_formula_matches_moment_route() {
        let spec = PnesSpec::new(PnesKind::Diagonal, vec![0.9, -0.4, 0.3, 0.15]).unwrap();
        let by_formula = pnes_epr_value(&spec).unwrap();
        let by_moments = state_epr(&spec.to_state().unwrap()).unwrap();
        assert!((by_formula - by_moments).abs() < 1e-10);
    }

    #[test]
    fn diagonal_eigen_route_matches_generic_support_route() {
        for n in 0..6 {
            let (_, eig) = pnes_optimize(PnesKind::Diagonal, n).unwrap();
            let (_, generic) = minimize_epr_on_support(&PnesKind::Diagonal.support(n)).unwrap();
            assert!((eig - generic).abs() < 1e-10, "N = {n}");
        }
    }

    #[test]
    fn support_with_odd_photon_differences_is_rejected() {
        // |00⟩ and |10⟩ give a nonzero ⟨â⟩, so the variance is not a quadratic form
        assert!(minimize_epr_on_support(&[(0, 0), (1, 0)]).is_err());
    }
}
