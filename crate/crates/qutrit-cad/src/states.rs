//! Two-qutrit entangled state families, density-matrix validation and the
//! negativity entanglement monotone.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};

/// Amplitude normalization must hold to within this.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Slack used by [`validate_density`] for Hermiticity, unit trace and
/// eigenvalue positivity.
pub const DENSITY_TOL: f64 = 1e-10;

/// The two families of pure two-qutrit states under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateClass {
    /// alpha|00> + beta|11> + gamma|22>
    Class1,
    /// alpha|02> + beta|20> + gamma|11>
    Class2,
}

impl std::fmt::Display for StateClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateClass::Class1 => write!(f, "class1"),
            StateClass::Class2 => write!(f, "class2"),
        }
    }
}

/// Normalized amplitude triple (alpha, beta, gamma) with alpha real and
/// non-negative; beta and gamma may carry phases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateAmplitudes {
    alpha: f64,
    beta: Complex64,
    gamma: Complex64,
}

impl StateAmplitudes {
    /// Validates alpha >= 0 and alpha^2 + |beta|^2 + |gamma|^2 = 1 within
    /// [`NORMALIZATION_TOL`].
    pub fn new(alpha: f64, beta: Complex64, gamma: Complex64) -> Result<Self> {
        if !(0.0..=1.0 + NORMALIZATION_TOL).contains(&alpha) {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                min: 0.0,
                max: 1.0,
            });
        }
        let norm = alpha * alpha + beta.norm_sqr() + gamma.norm_sqr();
        let deviation = (norm - 1.0).abs();
        // NaN amplitudes must fail the check, hence the explicit branch.
        if deviation.is_nan() || deviation > NORMALIZATION_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: NORMALIZATION_TOL,
            });
        }
        Ok(StateAmplitudes { alpha, beta, gamma })
    }

    /// Equal weights: alpha = beta = gamma = 1/sqrt(3).
    pub fn balanced() -> Self {
        let a = 1.0 / 3f64.sqrt();
        StateAmplitudes {
            alpha: a,
            beta: Complex64::new(a, 0.0),
            gamma: Complex64::new(a, 0.0),
        }
    }

    /// Random normalized triple with phases on beta and gamma; moduli are
    /// bounded away from zero so every component genuinely participates.
    /// Used by the randomized verification sweeps.
    pub fn random(rng: &mut impl rand::Rng) -> Self {
        let u0: f64 = rng.random_range(0.1..1.0);
        let u1: f64 = rng.random_range(0.1..1.0);
        let u2: f64 = rng.random_range(0.1..1.0);
        let norm = (u0 * u0 + u1 * u1 + u2 * u2).sqrt();
        StateAmplitudes {
            alpha: u0 / norm,
            beta: Complex64::from_polar(u1 / norm, rng.random_range(0.0..std::f64::consts::TAU)),
            gamma: Complex64::from_polar(u2 / norm, rng.random_range(0.0..std::f64::consts::TAU)),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    /// The 9-component ket of this amplitude triple in the given class
    /// (composite index 3*i + j for |ij>).
    pub fn ket(&self, class: StateClass) -> [Complex64; 9] {
        let mut ket = [Complex64::ZERO; 9];
        let alpha = Complex64::new(self.alpha, 0.0);
        match class {
            StateClass::Class1 => {
                ket[0] = alpha; // |00>
                ket[4] = self.beta; // |11>
                ket[8] = self.gamma; // |22>
            }
            StateClass::Class2 => {
                ket[2] = alpha; // |02>
                ket[6] = self.beta; // |20>
                ket[4] = self.gamma; // |11>
            }
        }
        ket
    }
}

/// Density matrix |psi><psi| of the pure state picked out by `class` and
/// `amps`.
pub fn make_state(class: StateClass, amps: &StateAmplitudes) -> ComplexMatrix {
    ComplexMatrix::from_ket(&amps.ket(class))
}

/// Outcome of the three density-matrix sanity checks, with the measured
/// quantities so callers can report *how* far off an input is.
#[derive(Clone, Copy, Debug)]
pub struct ValidationReport {
    pub hermitian: bool,
    pub unit_trace: bool,
    pub positive: bool,
    pub hermiticity_defect: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.hermitian && self.unit_trace && self.positive
    }
}

/// Checks Hermiticity, unit trace and positivity of `rho` within
/// [`DENSITY_TOL`]. Positivity falls back to "false" if the eigensolve
/// itself fails (grossly non-Hermitian input).
pub fn validate_density(rho: &ComplexMatrix) -> ValidationReport {
    let hermiticity_defect = rho.hermiticity_defect();
    let trace_deviation = (rho.trace() - Complex64::ONE).norm();
    let min_eigenvalue = linalg::hermitian_eigenvalues(&rho.hermitized())
        .map(|eig| eig[0])
        .unwrap_or(f64::NEG_INFINITY);
    ValidationReport {
        hermitian: hermiticity_defect <= DENSITY_TOL,
        unit_trace: trace_deviation <= DENSITY_TOL,
        positive: min_eigenvalue >= -DENSITY_TOL,
        hermiticity_defect,
        trace_deviation,
        min_eigenvalue,
    }
}

/// Negativity N(rho) = (||rho^{T_B}||_1 - 1)/2 for a two-qutrit state,
/// clamped to be non-negative. Ranges over [0, 1], with 1 reached by the
/// maximally entangled states.
pub fn negativity(rho: &ComplexMatrix) -> Result<f64> {
    let pt = linalg::partial_transpose(rho, 3, 3)?;
    let norm = linalg::trace_norm_hermitian(&pt)?;
    Ok(((norm - 1.0) / 2.0).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn class1_with_unit_alpha_is_projector_on_00() {
        let amps = StateAmplitudes::new(1.0, Complex64::ZERO, Complex64::ZERO).unwrap();
        let rho = make_state(StateClass::Class1, &amps);
        for i in 0..9 {
            for j in 0..9 {
                let expected = if (i, j) == (0, 0) { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(rho[(i, j)].re, expected);
            }
        }
    }

    #[test]
    fn balanced_class1_populates_00_11_22_block() {
        let rho = make_state(StateClass::Class1, &StateAmplitudes::balanced());
        for &i in &[0usize, 4, 8] {
            for &j in &[0usize, 4, 8] {
                assert_abs_diff_eq!(rho[(i, j)].re, 1.0 / 3.0, epsilon = 1e-15);
            }
        }
        assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn balanced_class2_populates_02_20_11_block() {
        let rho = make_state(StateClass::Class2, &StateAmplitudes::balanced());
        for &i in &[2usize, 6, 4] {
            for &j in &[2usize, 6, 4] {
                assert_abs_diff_eq!(rho[(i, j)].re, 1.0 / 3.0, epsilon = 1e-15);
            }
        }
        assert_abs_diff_eq!(rho[(0, 0)].re, 0.0);
    }

    #[test]
    fn complex_amplitudes_reach_the_off_diagonals_conjugated() {
        let b = 1.0 / 3f64.sqrt();
        let amps = StateAmplitudes::new(b, c(0.0, b), c(b, 0.0)).unwrap();
        let rho = make_state(StateClass::Class1, &amps);
        // <00|rho|11> = alpha * conj(beta) = -i/3
        assert_abs_diff_eq!(rho[(0, 4)].im, -1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho[(0, 4)].re, 0.0);
    }

    #[test]
    fn constructor_rejects_unnormalized_amplitudes() {
        let r = StateAmplitudes::new(0.9, c(0.9, 0.0), Complex64::ZERO);
        assert!(matches!(r, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn constructor_rejects_negative_alpha() {
        let a = 1.0 / 3f64.sqrt();
        let r = StateAmplitudes::new(-a, c(a, 0.0), c(a, 0.0));
        assert!(matches!(r, Err(Error::OutOfRange { name: "alpha", .. })));
    }

    #[test]
    fn validate_accepts_proper_density_matrix() {
        let rho = make_state(StateClass::Class1, &StateAmplitudes::balanced());
        let report = validate_density(&rho);
        assert!(report.is_valid(), "{report:?}");
    }

    #[test]
    fn validate_flags_wrong_trace_and_negative_eigenvalues() {
        let report = validate_density(&ComplexMatrix::from_diag(&[
            1.5, -0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        ]));
        assert!(report.hermitian);
        assert!(report.unit_trace); // trace is still 1
        assert!(!report.positive);
        assert_abs_diff_eq!(report.min_eigenvalue, -0.5);
    }

    #[test]
    fn negativity_of_separable_state_is_zero() {
        let amps = StateAmplitudes::new(1.0, Complex64::ZERO, Complex64::ZERO).unwrap();
        let rho = make_state(StateClass::Class1, &amps);
        assert_abs_diff_eq!(negativity(&rho).unwrap(), 0.0);
    }

    #[test]
    fn negativity_of_maximally_mixed_state_is_zero() {
        let rho = ComplexMatrix::identity(9).scaled(1.0 / 9.0);
        assert_abs_diff_eq!(negativity(&rho).unwrap(), 0.0);
    }

    #[test]
    fn negativity_of_balanced_states_is_one_for_both_classes() {
        for class in [StateClass::Class1, StateClass::Class2] {
            let rho = make_state(class, &StateAmplitudes::balanced());
            assert_abs_diff_eq!(negativity(&rho).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn negativity_of_pure_state_is_sum_of_cross_products() {
        // For a pure state sum_i a_i |ii>, the partial transpose has negative
        // eigenvalues {-a_i a_j : i < j}, so N = sum_{i<j} a_i a_j.
        let (a, b, g) = ((0.5f64).sqrt(), (1.0f64 / 3.0).sqrt(), (1.0f64 / 6.0).sqrt());
        let amps = StateAmplitudes::new(a, c(b, 0.0), c(g, 0.0)).unwrap();
        let rho = make_state(StateClass::Class1, &amps);
        let expected = a * b + a * g + b * g;
        assert_abs_diff_eq!(negativity(&rho).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn negativity_is_invariant_under_amplitude_phases() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let base = negativity(&make_state(StateClass::Class1, &StateAmplitudes::balanced()))
            .unwrap();
        for _ in 0..10 {
            let (pb, pg) = (
                rng.random_range(0.0..std::f64::consts::TAU),
                rng.random_range(0.0..std::f64::consts::TAU),
            );
            let a = 1.0 / 3f64.sqrt();
            let amps = StateAmplitudes::new(
                a,
                Complex64::from_polar(a, pb),
                Complex64::from_polar(a, pg),
            )
            .unwrap();
            let n = negativity(&make_state(StateClass::Class1, &amps)).unwrap();
            assert_abs_diff_eq!(n, base, epsilon = 1e-12);
        }
    }

    #[test]
    fn negativity_of_random_product_states_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let mut a: Vec<Complex64> = (0..3)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let mut b: Vec<Complex64> = (0..3)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let na = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let nb = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            a.iter_mut().for_each(|z| *z /= na);
            b.iter_mut().for_each(|z| *z /= nb);
            let mut ket = [Complex64::ZERO; 9];
            for i in 0..3 {
                for j in 0..3 {
                    ket[3 * i + j] = a[i] * b[j];
                }
            }
            let n = negativity(&ComplexMatrix::from_ket(&ket)).unwrap();
            assert!(n < 1e-12, "product state has negativity {n}");
        }
    }
}
