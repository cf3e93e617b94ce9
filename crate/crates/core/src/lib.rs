//! Quantum Fisher information of thermal two-spin XX chains with
//! Dzyaloshinskii-Moriya interaction under homogeneous and staggered
//! magnetic fields.
//!
//! The crate builds the chain Hamiltonian, its thermal state (both through a
//! generic matrix exponential and a closed two-spin form), and the 3x3
//! correlation matrix whose largest eigenvalue gives the per-particle QFI.
//! Independent oracles (a direction-grid maximizer and a fidelity quotient)
//! cross-check the main path, parameter sweeps regenerate the reference
//! heatmaps as machine-readable tables, and [`verify`] bundles the whole
//! invariant suite behind one call.

pub mod error;
pub mod numerics;
pub mod qfi;
pub mod spin;
pub mod sweep;
pub mod thermal;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{
    eigh, fidelity, mat_func, max_eig_sym3, Axis, Complex64, EigenSystem, HermitianMatrix, Matrix,
    SymmetricMatrix3,
};
pub use qfi::{
    c_matrix, cramer_rao, direction_grid_max, fidelity_qfi_oracle, fisher_in_direction, qfi,
    qfi_zero_temperature, EstimationSetup, QfiResult,
};
pub use spin::{
    analytic_spectrum, build_hamiltonian, collective_operator, pauli_site, AnalyticSpectrum,
    Direction, ModelParams,
};
pub use sweep::{
    preset, run_sweep, run_sweep_with_workers, AxisSpec, CouplingSign, PresetName, SweepParam,
    SweepRow, SweepSpec, SweepTable,
};
pub use thermal::{closed_form_state, gibbs_state, ground_state_limit, ClosedFormFactors, DensityMatrix};
