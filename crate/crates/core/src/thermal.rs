//! Thermal density matrices: the generic Gibbs construction through the
//! eigensolver, the closed two-spin form, and the zero-temperature limit.
//!
//! Boltzmann weights are always evaluated after shifting the spectrum by its
//! minimum, so large energy/temperature ratios cannot overflow.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{self, EigenSystem, HermitianMatrix, Matrix};
use crate::spin::{build_hamiltonian, ModelParams};

/// Eigenvalues of a density matrix in (-CLAMP_TOL, 0) are clamped to zero and
/// the spectrum renormalized; anything more negative is rejected.
pub const CLAMP_TOL: f64 = 1e-12;

/// Energies within this distance of the minimum count as ground states.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Trace-1 positive-semidefinite Hermitian matrix with its spectral
/// decomposition cached (eigenvalues clamped to [0, 1] and renormalized).
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
    spectrum: EigenSystem,
}

impl DensityMatrix {
    /// Validates trace and positivity, then caches the clamped spectrum.
    pub fn from_matrix(matrix: HermitianMatrix) -> Result<Self> {
        let trace = matrix.trace();
        if (trace - 1.0).abs() > 1e-12 {
            return Err(Error::TraceNotOne { trace });
        }
        let eig = numerics::eigh(&matrix)?;
        let mut clamped = Vec::with_capacity(eig.dim());
        for &p in eig.values() {
            if p < -CLAMP_TOL {
                return Err(Error::NotPositiveSemidefinite { eigenvalue: p });
            }
            clamped.push(p.clamp(0.0, 1.0));
        }
        let total: f64 = clamped.iter().sum();
        for p in clamped.iter_mut() {
            *p /= total;
        }
        let spectrum = EigenSystem::from_parts(clamped, eig.vectors().clone());
        Ok(Self { matrix, spectrum })
    }

    /// Builds a state from eigenvectors of some observable and a probability
    /// assignment over them, reusing the deterministic eigenpair ordering.
    fn from_weights(basis: &EigenSystem, probabilities: Vec<f64>) -> Self {
        let (values, vectors) = crate::numerics::sort_spectrum(probabilities, basis.vectors().clone());
        let spectrum = EigenSystem::from_parts(values, vectors);
        let matrix = spectrum.reconstruction();
        Self { matrix, spectrum }
    }

    /// Projector onto a normalized state vector.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 || !norm.is_finite() {
            return Err(Error::ZeroDirection);
        }
        let dim = amplitudes.len();
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, amplitudes[i] * amplitudes[j].conj() / (norm * norm));
            }
        }
        Self::from_matrix(HermitianMatrix::from_matrix(m)?)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let p = 1.0 / dim as f64;
        Self::from_matrix(HermitianMatrix::diagonal(&vec![p; dim]))
            .expect("uniform diagonal is a valid state")
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// Cached spectral decomposition {p_i, psi_i}.
    pub fn spectrum(&self) -> &EigenSystem {
        &self.spectrum
    }

    /// Clamped, renormalized eigenvalues (ascending).
    pub fn probabilities(&self) -> &[f64] {
        self.spectrum.values()
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.matrix.matrix().max_abs_diff(other.matrix.matrix())
    }
}

/// Normalized Boltzmann weights of an energy list, shifted so the lowest
/// energy has weight 1 before normalization.
fn boltzmann_weights(energies: &[f64], temperature: f64) -> Vec<f64> {
    let lowest = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let mut weights: Vec<f64> = energies
        .iter()
        .map(|e| (-(e - lowest) / temperature).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= z;
    }
    weights
}

/// Gibbs state exp(-H/T) / Tr exp(-H/T).
pub fn gibbs_state(hamiltonian: &HermitianMatrix, temperature: f64) -> Result<DensityMatrix> {
    if temperature.is_nan() || temperature <= 0.0 {
        return Err(Error::NonPositiveTemperature { temperature });
    }
    let eig = numerics::eigh(hamiltonian)?;
    let weights = boltzmann_weights(eig.values(), temperature);
    Ok(DensityMatrix::from_weights(&eig, weights))
}

/// sinh(x)/x, continuous through x = 0.
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-5 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// The hyperbolic factors of the closed two-spin form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormFactors {
    /// cosh(gamma / T)
    pub gamma_c: f64,
    /// sinh(gamma / T)
    pub gamma_s: f64,
    /// Partition value 2 cosh(B/T) + 2 gamma_c.
    pub partition: f64,
}

impl ClosedFormFactors {
    pub fn from_params(params: &ModelParams) -> Result<Self> {
        params.validate()?;
        if params.sites != 2 {
            return Err(Error::TwoSpinsOnly {
                sites: params.sites,
            });
        }
        if params.temperature.is_nan() || params.temperature <= 0.0 {
            return Err(Error::NonPositiveTemperature {
                temperature: params.temperature,
            });
        }
        let x = params.gamma() / params.temperature;
        let gamma_c = x.cosh();
        let gamma_s = x.sinh();
        let partition = 2.0 * (params.homogeneous_field / params.temperature).cosh() + 2.0 * gamma_c;
        Ok(Self {
            gamma_c,
            gamma_s,
            partition,
        })
    }
}

/// Closed-form thermal state of the two-spin chain.
///
/// In the computational basis the state is
///
/// ```text
/// diag corners:  e^{-B/T}/Z  and  e^{B/T}/Z
/// middle block:  [ (gc - b gs/gamma)/Z      -J(1 + iD)(gs/gamma)/Z ]
///                [ -J(1 - iD)(gs/gamma)/Z   (gc + b gs/gamma)/Z    ]
/// ```
///
/// with gc = cosh(gamma/T), gs = sinh(gamma/T) and Z the partition value.
/// Every factor is evaluated with the spectrum shifted by its minimum, which
/// keeps the entries finite at any ratio gamma/T, and gs/gamma is continued
/// through gamma = 0 by its limit 1/T.
pub fn closed_form_state(params: &ModelParams) -> Result<DensityMatrix> {
    params.validate()?;
    if params.sites != 2 {
        return Err(Error::TwoSpinsOnly {
            sites: params.sites,
        });
    }
    let t = params.temperature;
    if t.is_nan() || t <= 0.0 {
        return Err(Error::NonPositiveTemperature { temperature: t });
    }
    let gamma = params.gamma();
    let field = params.homogeneous_field;
    let shift = field.abs().max(gamma);
    let weight = |energy: f64| (-(energy + shift) / t).exp();

    let w_up = weight(field); // |00> at energy +B
    let w_down = weight(-field); // |11> at energy -B
    let w_high = weight(gamma);
    let w_low = weight(-gamma);
    let z = w_up + w_down + w_high + w_low;

    let cosh_shifted = 0.5 * (w_low + w_high);
    let x = gamma / t;
    // e^{-shift/T} * sinh(gamma/T) / gamma, stable for both tiny and huge x
    let ratio = if x < 0.5 {
        (-shift / t).exp() * sinhc(x) / t
    } else {
        0.5 * (w_low - w_high) / gamma
    };

    let c = Complex64::new;
    let stagger = params.staggered_field;
    let coupling = params.coupling;
    let dm = params.dm_coupling;
    let off = c(-coupling * ratio / z, -coupling * dm * ratio / z);

    let mut m = Matrix::zeros(4);
    m.set(0, 0, c(w_up / z, 0.0));
    m.set(1, 1, c((cosh_shifted - stagger * ratio) / z, 0.0));
    m.set(2, 2, c((cosh_shifted + stagger * ratio) / z, 0.0));
    m.set(3, 3, c(w_down / z, 0.0));
    m.set(1, 2, off);
    m.set(2, 1, off.conj());
    DensityMatrix::from_matrix(HermitianMatrix::from_exact(m))
}

/// Equal-weight mixture over the lowest-energy eigenspace of the chain
/// Hamiltonian (degeneracy tolerance on the energies).
pub fn ground_state_limit(params: &ModelParams) -> Result<DensityMatrix> {
    let h = build_hamiltonian(params)?;
    let eig = numerics::eigh(&h)?;
    let lowest = eig.values()[0];
    let degenerate = eig
        .values()
        .iter()
        .filter(|&&e| e <= lowest + DEGENERACY_TOL)
        .count();
    let share = 1.0 / degenerate as f64;
    let probabilities: Vec<f64> = eig
        .values()
        .iter()
        .map(|&e| if e <= lowest + DEGENERACY_TOL { share } else { 0.0 })
        .collect();
    Ok(DensityMatrix::from_weights(&eig, probabilities))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::analytic_spectrum;

    fn params(coupling: f64, field: f64, stagger: f64, dm: f64, temperature: f64) -> ModelParams {
        ModelParams {
            coupling,
            homogeneous_field: field,
            staggered_field: stagger,
            dm_coupling: dm,
            temperature,
            sites: 2,
        }
    }

    #[test]
    fn two_level_boltzmann() {
        let h = HermitianMatrix::diagonal(&[1.0, -1.0]);
        let rho = gibbs_state(&h, 1.0).unwrap();
        let z = 1f64.exp() + (-1f64).exp();
        assert!((rho.matrix().get(0, 0).re - (-1f64).exp() / z).abs() < 1e-14);
        assert!((rho.matrix().get(1, 1).re - 1f64.exp() / z).abs() < 1e-14);
    }

    #[test]
    fn infinite_temperature_limit() {
        let h = build_hamiltonian(&params(1.3, -0.7, 0.4, 0.9, 1.0)).unwrap();
        let rho = gibbs_state(&h, 1e6).unwrap();
        let uniform = DensityMatrix::maximally_mixed(4);
        assert!(rho.max_abs_diff(&uniform) < 1e-5);
    }

    #[test]
    fn gibbs_eigenvalues_are_boltzmann_weights() {
        // two-spin exchange at T = 1: spectrum {1, 0, 0, -1}
        let p = params(1.0, 0.0, 0.0, 0.0, 1.0);
        let h = build_hamiltonian(&p).unwrap();
        let rho = gibbs_state(&h, 1.0).unwrap();
        let z = 2.0 + 2.0 * 1f64.cosh();
        let mut expected = [(-1f64).exp() / z, 1.0 / z, 1.0 / z, 1f64.exp() / z];
        expected.sort_by(f64::total_cmp);
        for (got, want) in rho.probabilities().iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-14);
        }
        // matrix exponential trace identity: sum of boltzmann weights
        let boltz = crate::numerics::mat_func(&h, |e| (-e).exp()).unwrap();
        assert!((boltz.trace() - z).abs() < 1e-11 * z);
    }

    #[test]
    fn gibbs_rejects_non_positive_temperature() {
        let h = HermitianMatrix::diagonal(&[1.0, -1.0]);
        assert!(matches!(
            gibbs_state(&h, 0.0),
            Err(Error::NonPositiveTemperature { .. })
        ));
        assert!(gibbs_state(&h, -1.0).is_err());
    }

    #[test]
    fn closed_form_corner_entries_at_zero_field() {
        let p = params(0.8, 0.0, 0.6, 1.1, 0.9);
        let rho = closed_form_state(&p).unwrap();
        let factors = ClosedFormFactors::from_params(&p).unwrap();
        let corner = 1.0 / (2.0 + 2.0 * factors.gamma_c);
        assert!((rho.matrix().get(0, 0).re - corner).abs() < 1e-13);
        assert!((rho.matrix().get(3, 3).re - corner).abs() < 1e-13);
    }

    #[test]
    fn closed_form_off_diagonal_value() {
        // J = 1, T = 1, rest zero: rho_23 = -sinh(1) / (2 (1 + cosh 1))
        let rho = closed_form_state(&params(1.0, 0.0, 0.0, 0.0, 1.0)).unwrap();
        let expect = -1f64.sinh() / (2.0 * (1.0 + 1f64.cosh()));
        assert!((rho.matrix().get(1, 2).re - expect).abs() < 1e-14);
        assert!(rho.matrix().get(1, 2).im.abs() < 1e-16);
        assert!((expect + 0.23105).abs() < 1e-5);
    }

    #[test]
    fn closed_form_matches_gibbs() {
        let cases = [
            params(1.0, 0.5, -0.3, 0.8, 0.7),
            params(-1.0, 2.0, 1.5, 0.0, 0.3),
            params(0.4, -1.2, 0.0, -2.0, 2.5),
            params(-2.5, 0.0, 2.9, 1.7, 0.05),
        ];
        for p in cases {
            let numeric = gibbs_state(&build_hamiltonian(&p).unwrap(), p.temperature).unwrap();
            let closed = closed_form_state(&p).unwrap();
            let diff = closed.max_abs_diff(&numeric);
            assert!(diff < 1e-10, "entrywise difference {diff:.3e}");
        }
    }

    #[test]
    fn closed_form_gamma_zero_limit() {
        // J = 0 and b = 0 make gamma vanish; gs/gamma continues to 1/T
        let p = params(0.0, 1.3, 0.0, 0.7, 0.8);
        let closed = closed_form_state(&p).unwrap();
        let numeric = gibbs_state(&build_hamiltonian(&p).unwrap(), p.temperature).unwrap();
        assert!(closed.max_abs_diff(&numeric) < 1e-12);
    }

    #[test]
    fn closed_form_eigenvalues_from_partition() {
        let p = params(1.4, 0.9, -0.8, 0.5, 1.1);
        let rho = closed_form_state(&p).unwrap();
        let factors = ClosedFormFactors::from_params(&p).unwrap();
        let spec = analytic_spectrum(&p).unwrap();
        let mut expected: Vec<f64> = spec
            .energies
            .iter()
            .map(|e| (-e / p.temperature).exp() / factors.partition)
            .collect();
        expected.sort_by(f64::total_cmp);
        for (got, want) in rho.probabilities().iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn ground_state_ferromagnetic_triplet() {
        let rho = ground_state_limit(&params(-1.0, 0.0, 0.0, 0.0, 1.0)).unwrap();
        // (|01> + |10>)/sqrt(2)
        let c = Complex64::new;
        let triplet = [c(0.0, 0.0), c(0.5f64.sqrt(), 0.0), c(0.5f64.sqrt(), 0.0), c(0.0, 0.0)];
        let expect = DensityMatrix::pure(&triplet).unwrap();
        assert!(rho.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn ground_state_antiferromagnetic_singlet() {
        let rho = ground_state_limit(&params(1.0, 0.0, 0.0, 0.0, 1.0)).unwrap();
        let c = Complex64::new;
        let singlet = [c(0.0, 0.0), c(0.5f64.sqrt(), 0.0), c(-(0.5f64.sqrt()), 0.0), c(0.0, 0.0)];
        let expect = DensityMatrix::pure(&singlet).unwrap();
        assert!(rho.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn ground_state_fully_degenerate() {
        let rho = ground_state_limit(&params(0.0, 0.0, 0.0, 0.0, 1.0)).unwrap();
        assert!(rho.max_abs_diff(&DensityMatrix::maximally_mixed(4)) < 1e-14);
    }

    #[test]
    fn gibbs_approaches_ground_state_at_low_temperature() {
        let p = params(-1.0, 0.4, 0.9, 0.6, 0.01);
        let cold = gibbs_state(&build_hamiltonian(&p).unwrap(), 0.01).unwrap();
        let ground = ground_state_limit(&p).unwrap();
        assert!(cold.max_abs_diff(&ground) < 1e-3);
    }

    #[test]
    fn density_matrix_rejects_bad_trace_and_negativity() {
        let m = HermitianMatrix::diagonal(&[0.7, 0.7]);
        assert!(matches!(
            DensityMatrix::from_matrix(m),
            Err(Error::TraceNotOne { .. })
        ));
        let neg = HermitianMatrix::diagonal(&[1.2, -0.2]);
        assert!(matches!(
            DensityMatrix::from_matrix(neg),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn spectrum_invariants_hold() {
        let p = params(1.7, -0.9, 1.2, -0.5, 0.4);
        let rho = closed_form_state(&p).unwrap();
        let total: f64 = rho.probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(rho.probabilities().iter().all(|&x| x >= 0.0));
        assert!((rho.matrix().trace() - 1.0).abs() < 1e-12);
        assert!(rho.spectrum().max_residual(rho.matrix()) < 1e-11);
    }
}
