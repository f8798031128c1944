use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Squared norms below this are treated as an annihilated state.
pub const ZERO_STATE_THRESHOLD: f64 = 1e-14;

/// Tolerance on Σ|c|² for a state to count as normalized.
pub const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ladder {
    Annihilate,
    Create,
}

/// Pure two-mode state in a truncated Fock basis.
///
/// `coeffs[(n, m)]` is the amplitude of `|n⟩_A|m⟩_B`; the matrix has
/// `trunc_a + 1` rows and `trunc_b + 1` columns. States produced by ladder
/// operations are flagged unnormalized so that their squared norms stay
/// observable until [`normalize`] is called.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    coeffs: DMatrix<Complex64>,
    normalized: bool,
}

impl TwoModeState {
    /// Wraps a coefficient matrix. The normalized flag is set when Σ|c|² = 1
    /// within [`NORMALIZATION_TOL`].
    pub fn new(coeffs: DMatrix<Complex64>) -> Result<Self> {
        if coeffs.nrows() == 0 || coeffs.ncols() == 0 {
            return Err(Error::InvalidParameter(
                "coefficient matrix must be at least 1x1".into(),
            ));
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidParameter(
                "coefficients must be finite".into(),
            ));
        }
        let mut state = Self {
            coeffs,
            normalized: false,
        };
        state.normalized = (state.norm_sqr() - 1.0).abs() <= NORMALIZATION_TOL;
        Ok(state)
    }

    pub fn from_real(
        trunc_a: usize,
        trunc_b: usize,
        f: impl Fn(usize, usize) -> f64,
    ) -> Result<Self> {
        Self::new(DMatrix::from_fn(trunc_a + 1, trunc_b + 1, |n, m| {
            Complex64::new(f(n, m), 0.0)
        }))
    }

    /// `|0⟩_A|0⟩_B` embedded in the given truncation.
    pub fn vacuum(trunc_a: usize, trunc_b: usize) -> Self {
        let mut coeffs = DMatrix::zeros(trunc_a + 1, trunc_b + 1);
        coeffs[(0, 0)] = Complex64::new(1.0, 0.0);
        Self {
            coeffs,
            normalized: true,
        }
    }

    pub(crate) fn unnormalized(coeffs: DMatrix<Complex64>) -> Self {
        Self {
            coeffs,
            normalized: false,
        }
    }

    pub fn coeffs(&self) -> &DMatrix<Complex64> {
        &self.coeffs
    }

    pub fn trunc_a(&self) -> usize {
        self.coeffs.nrows() - 1
    }

    pub fn trunc_b(&self) -> usize {
        self.coeffs.ncols() - 1
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Amplitude of `|n, m⟩`, zero outside the truncation.
    pub fn amplitude(&self, n: usize, m: usize) -> Complex64 {
        if n < self.coeffs.nrows() && m < self.coeffs.ncols() {
            self.coeffs[(n, m)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// True when every amplitude has a vanishing imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Probability mass in the last two rows and last two columns.
    pub fn tail_mass(&self) -> f64 {
        let (rows, cols) = self.coeffs.shape();
        let mut mass = 0.0;
        for n in 0..rows {
            for m in 0..cols {
                if n + 2 >= rows || m + 2 >= cols {
                    mass += self.coeffs[(n, m)].norm_sqr();
                }
            }
        }
        mass
    }

    /// ⟨self|other⟩, treating amplitudes outside either truncation as zero.
    pub fn inner(&self, other: &TwoModeState) -> Complex64 {
        let rows = self.coeffs.nrows().min(other.coeffs.nrows());
        let cols = self.coeffs.ncols().min(other.coeffs.ncols());
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..cols {
            for n in 0..rows {
                acc += self.coeffs[(n, m)].conj() * other.coeffs[(n, m)];
            }
        }
        acc
    }

    /// Copy embedded in a (possibly) larger truncation.
    pub fn padded(&self, trunc_a: usize, trunc_b: usize) -> TwoModeState {
        let rows = (trunc_a + 1).max(self.coeffs.nrows());
        let cols = (trunc_b + 1).max(self.coeffs.ncols());
        if (rows, cols) == self.coeffs.shape() {
            return self.clone();
        }
        let mut coeffs = DMatrix::zeros(rows, cols);
        coeffs
            .view_mut((0, 0), self.coeffs.shape())
            .copy_from(&self.coeffs);
        TwoModeState {
            coeffs,
            normalized: self.normalized,
        }
    }

    /// `a·self + b·other` on the union of both truncations. Unnormalized.
    pub fn linear_combination(
        &self,
        a: Complex64,
        other: &TwoModeState,
        b: Complex64,
    ) -> TwoModeState {
        let ta = self.trunc_a().max(other.trunc_a());
        let tb = self.trunc_b().max(other.trunc_b());
        let x = self.padded(ta, tb);
        let y = other.padded(ta, tb);
        TwoModeState::unnormalized(x.coeffs * a + y.coeffs * b)
    }

    pub fn scaled(&self, factor: Complex64) -> TwoModeState {
        TwoModeState::unnormalized(&self.coeffs * factor)
    }

    /// Swaps the roles of modes A and B.
    pub fn swapped(&self) -> TwoModeState {
        TwoModeState {
            coeffs: self.coeffs.transpose(),
            normalized: self.normalized,
        }
    }
}

/// Applies `â`/`â†` (mode A) or `b̂`/`b̂†` (mode B).
///
/// Annihilation keeps the truncation (the top row or column becomes zero);
/// creation extends the truncation of the acted-on mode by one so that no
/// amplitude is lost. The output is always flagged unnormalized.
pub fn apply_ladder(state: &TwoModeState, mode: Mode, kind: Ladder) -> TwoModeState {
    let c = state.coeffs();
    let (rows, cols) = c.shape();
    let zero = Complex64::new(0.0, 0.0);
    let coeffs = match (mode, kind) {
        (Mode::A, Ladder::Annihilate) => DMatrix::from_fn(rows, cols, |n, m| {
            if n + 1 < rows {
                c[(n + 1, m)] * ((n + 1) as f64).sqrt()
            } else {
                zero
            }
        }),
        (Mode::B, Ladder::Annihilate) => DMatrix::from_fn(rows, cols, |n, m| {
            if m + 1 < cols {
                c[(n, m + 1)] * ((m + 1) as f64).sqrt()
            } else {
                zero
            }
        }),
        (Mode::A, Ladder::Create) => DMatrix::from_fn(rows + 1, cols, |n, m| {
            if n >= 1 {
                c[(n - 1, m)] * (n as f64).sqrt()
            } else {
                zero
            }
        }),
        (Mode::B, Ladder::Create) => DMatrix::from_fn(rows, cols + 1, |n, m| {
            if m >= 1 {
                c[(n, m - 1)] * (m as f64).sqrt()
            } else {
                zero
            }
        }),
    };
    TwoModeState::unnormalized(coeffs)
}

/// Rescales to unit norm and returns the input squared norm.
pub fn normalize(state: &TwoModeState) -> Result<(TwoModeState, f64)> {
    let norm_sqr = state.norm_sqr();
    if norm_sqr.is_nan() || norm_sqr <= ZERO_STATE_THRESHOLD {
        return Err(Error::ZeroState {
            norm_sqr,
            threshold: ZERO_STATE_THRESHOLD,
        });
    }
    if state.is_normalized() && (norm_sqr - 1.0).abs() <= NORMALIZATION_TOL {
        return Ok((state.clone(), norm_sqr));
    }
    let coeffs = state.coeffs() / Complex64::new(norm_sqr.sqrt(), 0.0);
    Ok((
        TwoModeState {
            coeffs,
            normalized: true,
        },
        norm_sqr,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> TwoModeState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        TwoModeState::from_real(1, 1, |n, m| if n == m { h } else { 0.0 }).unwrap()
    }

    #[test]
    fn annihilating_vacuum_gives_zero_state() {
        let vac = TwoModeState::vacuum(3, 3);
        let out = apply_ladder(&vac, Mode::A, Ladder::Annihilate);
        assert_eq!(out.norm_sqr(), 0.0);
        assert!(!out.is_normalized());
        assert!(matches!(normalize(&out), Err(Error::ZeroState { .. })));
    }

    #[test]
    fn create_extends_only_the_acted_mode() {
        let s = bell();
        let a = apply_ladder(&s, Mode::A, Ladder::Create);
        assert_eq!((a.trunc_a(), a.trunc_b()), (2, 1));
        let b = apply_ladder(&s, Mode::B, Ladder::Create);
        assert_eq!((b.trunc_a(), b.trunc_b()), (1, 2));
        // a†|11⟩ = √2|21⟩
        assert!(
            (a.amplitude(2, 1).re - std::f64::consts::FRAC_1_SQRT_2 * 2f64.sqrt()).abs() < 1e-15
        );
    }

    #[test]
    fn normalize_is_idempotent_on_normalized_input() {
        let s = bell();
        assert!(s.is_normalized());
        let (out, n2) = normalize(&s).unwrap();
        assert_eq!(out, s);
        assert!((n2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tail_mass_counts_last_two_rows_and_columns_once() {
        let s = TwoModeState::from_real(3, 3, |_, _| 0.25).unwrap();
        // 16 entries of 1/16, 12 of them in the union of the last two rows/cols
        assert!((s.tail_mass() - 12.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn inner_product_pads_missing_amplitudes() {
        let small = TwoModeState::vacuum(0, 0);
        let big = TwoModeState::vacuum(4, 2);
        assert_eq!(small.inner(&big), Complex64::new(1.0, 0.0));
        assert!(TwoModeState::new(DMatrix::zeros(0, 3)).is_err());
    }
}
