//! Self-verification suite: every cross-check the crate is built around
//! (closed form against matrix exponential, analytic against numeric
//! spectra, three independent QFI routes, symmetries, limits, and sweep
//! determinism), runnable at full or reduced depth.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numerics::{self, max_eig_sym3, Axis};
use crate::qfi::{
    c_matrix, c_matrix_perturbed, direction_grid_max, fidelity_qfi_oracle, qfi,
};
use crate::spin::{analytic_spectrum, build_hamiltonian, Direction, ModelParams};
use crate::sweep::{preset, run_sweep, CouplingSign, PresetName, SweepSpec};
use crate::thermal::{closed_form_state, gibbs_state, ground_state_limit, DensityMatrix};

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Run the reduced-depth subset.
    pub quick: bool,
    /// Multiplies the spectral pair weights inside the oracle-agreement
    /// check; injecting a value other than zero must make that check fail.
    pub weight_fault: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl PropertyReport {
    fn pass(name: &'static str, details: String) -> Self {
        Self {
            name,
            passed: true,
            details,
        }
    }

    fn fail(name: &'static str, details: String) -> Self {
        Self {
            name,
            passed: false,
            details,
        }
    }
}

/// Runs every property and returns one report per property.
pub fn run_suite(options: &VerifyOptions) -> Vec<PropertyReport> {
    vec![
        spectrum_equivalence(options),
        state_equivalence(options),
        c_matrix_structure(options),
        zero_temperature_limits(),
        high_temperature_decay(options),
        stagger_dm_equivalence(),
        oracle_agreement(options),
        fig2_snl_separation(options),
        field_preference(),
        parity_symmetries(options),
        sweep_determinism(options),
    ]
}

fn draw_params(rng: &mut ChaCha8Rng, temperature: f64) -> ModelParams {
    ModelParams {
        coupling: rng.random_range(-3.0..=3.0),
        homogeneous_field: rng.random_range(-3.0..=3.0),
        staggered_field: rng.random_range(-3.0..=3.0),
        dm_coupling: rng.random_range(-3.0..=3.0),
        temperature,
        sites: 2,
    }
}

fn draw_params_nonzero_coupling(rng: &mut ChaCha8Rng, temperature: f64) -> ModelParams {
    loop {
        let p = draw_params(rng, temperature);
        if p.coupling != 0.0 {
            return p;
        }
    }
}

fn spectrum_equivalence(options: &VerifyOptions) -> PropertyReport {
    const NAME: &str = "spectrum-equivalence";
    let draws = if options.quick { 100 } else { 1000 };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_energy = 0.0f64;
    let mut worst_residual = 0.0f64;
    for _ in 0..draws {
        let p = draw_params_nonzero_coupling(&mut rng, 1.0);
        let h = build_hamiltonian(&p).expect("valid params");
        let numeric = match numerics::eigh(&h) {
            Ok(e) => e,
            Err(e) => return PropertyReport::fail(NAME, format!("eigensolver failed: {e}")),
        };
        let spec = analytic_spectrum(&p).expect("two spins");
        let mut analytic = spec.energies;
        analytic.sort_by(f64::total_cmp);
        for (a, n) in analytic.iter().zip(numeric.values()) {
            worst_energy = worst_energy.max((a - n).abs());
        }
        for (energy, vector) in spec.pairs() {
            let hv = h.matrix().matvec(vector);
            let r: f64 = hv
                .iter()
                .zip(vector.iter())
                .map(|(x, y)| (x - y * energy).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst_residual = worst_residual.max(r);
        }
    }
    let details = format!(
        "{draws} draws: max energy deviation {worst_energy:.2e} (tol 1e-12), max eigenvector residual {worst_residual:.2e} (tol 1e-12)"
    );
    if worst_energy < 1e-12 && worst_residual < 1e-12 {
        PropertyReport::pass(NAME, details)
    } else {
        PropertyReport::fail(NAME, details)
    }
}

fn state_equivalence(options: &VerifyOptions) -> PropertyReport {
    const NAME: &str = "state-equivalence";
    let draws = if options.quick { 100 } else { 1000 };
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let temperature = rng.random_range(0.05..=5.0);
        let p = draw_params(&mut rng, temperature);
        let closed = closed_form_state(&p).expect("closed form");
        let numeric = gibbs_state(&build_hamiltonian(&p).expect("h"), p.temperature)
            .expect("gibbs state");
        worst = worst.max(closed.max_abs_diff(&numeric));
    }
    let details =
        format!("{draws} draws: max entrywise |closed - gibbs| = {worst:.2e} (tol 1e-10)");
    if worst < 1e-10 {
        PropertyReport::pass(NAME, details)
    } else {
        PropertyReport::fail(NAME, details)
    }
}

fn c_matrix_structure(options: &VerifyOptions) -> PropertyReport {
    const NAME: &str = "c-matrix-structure";
    let draws = if options.quick { 100 } else { 1000 };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst_offdiag = 0.0f64;
    let mut worst_split = 0.0f64;
    for _ in 0..draws {
        let temperature = rng.random_range(0.05..=5.0);
        let p = draw_params(&mut rng, temperature);
        let state = closed_form_state(&p).expect("state");
        let c = c_matrix(&state, 2).expect("c matrix");
        for (row, col) in [
            (Axis::Z, Axis::Z),
            (Axis::X, Axis::Y),
            (Axis::X, Axis::Z),
            (Axis::Y, Axis::Z),
        ] {
            worst_offdiag = worst_offdiag.max(c.get(row, col).abs());
        }
        worst_split = worst_split.max((c.get(Axis::X, Axis::X) - c.get(Axis::Y, Axis::Y)).abs());
    }
    let details = format!(
        "{draws} draws: max |C_zz|,|C_xy|,|C_xz|,|C_yz| = {worst_offdiag:.2e}, max |C_xx - C_yy| = {worst_split:.2e} (tol 1e-10)"
    );
    if worst_offdiag < 1e-10 && worst_split < 1e-10 {
        PropertyReport::pass(NAME, details)
    } else {
        PropertyReport::fail(NAME, details)
    }
}

fn zero_temperature_limits() -> PropertyReport {
    const NAME: &str = "zero-temperature-limits";
    let base = ModelParams {
        temperature: 0.01,
        ..ModelParams::default()
    };
    let ferro = match qfi(&ModelParams {
        coupling: -1.0,
        ..base
    }) {
        Ok(r) => r.qfi_per_particle,
        Err(e) => return PropertyReport::fail(NAME, format!("ferro point failed: {e}")),
    };
    let antiferro = match qfi(&ModelParams {
        coupling: 1.0,
        ..base
    }) {
        Ok(r) => r.qfi_per_particle,
        Err(e) => return PropertyReport::fail(NAME, format!("antiferro point failed: {e}")),
    };
    // cold Gibbs states collapse onto the ground-state mixture
    let gapped = ModelParams {
        coupling: -1.0,
        homogeneous_field: 0.4,
        staggered_field: 0.9,
        dm_coupling: 0.6,
        temperature: 0.01,
        sites: 2,
    };
    let cold = gibbs_state(&build_hamiltonian(&gapped).expect("h"), 0.01).expect("cold state");
    let ground = ground_state_limit(&gapped).expect("ground state");
    let collapse = cold.max_abs_diff(&ground);
    let hot = gibbs_state(&build_hamiltonian(&gapped).expect("h"), 1e6).expect("hot state");
    let flatten = hot.max_abs_diff(&DensityMatrix::maximally_mixed(4));
    let details = format!(
        "QFI(J=-1, T=0.01) = {ferro:.6} (want 2 +/- 1e-3), QFI(J=+1) = {antiferro:.2e} (want 0 +/- 1e-3), cold-Gibbs collapse {collapse:.2e} (tol 1e-3), hot-Gibbs flattening {flatten:.2e} (tol 1e-5)"
    );
    if (ferro - 2.0).abs() < 1e-3
        && antiferro.abs() < 1e-3
        && collapse < 1e-3
        && flatten < 1e-5
    {
        PropertyReport::pass(NAME, details)
    } else {
        PropertyReport::fail(NAME, details)
    }
}

fn high_temperature_decay(options: &VerifyOptions) -> PropertyReport {
    const NAME: &str = "high-temperature-decay";
    let mut worst = 0.0f64;
    let mut count = 0usize;
    let grid = [-3.0, -1.0, 0.0, 1.0, 3.0];
    let mut check = |p: ModelParams| -> Option<String> {
        match qfi(&p) {
            Ok(r) => {
                worst = worst.max(r.qfi_per_particle);
                count += 1;
                None
            }
            Err(e) => Some(format!("point failed: {e}")),
        }
    };
    if !options.quick {
        for coupling in grid {
            for field in grid {
                for stagger in grid {
                    for dm in grid {
                        let p = ModelParams {
                            coupling,
                            homogeneous_field: field,
                            staggered_field: stagger,
                            dm_coupling: dm,
                            temperature: 1e3,
                            sites: 2,
                        };
                        if let Some(err) = check(p) {
                            return PropertyReport::fail(NAME, err);
                        }
                    }
                }
            }
        }
    }
    let draws = if options.quick { 40 } else { 100 };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..draws {
        let p = draw_params(&mut rng, 1e3);
        if let Some(err) = check(p) {
            return PropertyReport::fail(NAME, err);
        }
    }
    let details = format!("{count} points at T = 1e3: max QFI = {worst:.2e} (tol 1e-3)");
    if worst < 1e-3 {
        PropertyReport::pass(NAME, details)
    } else {
        PropertyReport::fail(NAME, details)
    }
}

fn stagger_dm_equivalence() -> PropertyReport {
    const NAME: &str = "stagger-dm-equivalence";
    let mut worst = 0.0f64;
    for coupling in [-1.0, 1.0] {
        for field in [0.0, 1.0] {
            for temperature in [0.3, 0.7, 1.5] {
                for k in 0..32 {
                    let x = 3.0 * k as f64 / 31.0;
                    let with_stagger = qfi(&ModelParams {
                        coupling,
                        homogeneous_field: field,
                        staggered_field: x,
                        dm_coupling: 0.0,
                        temperature,
                        sites: 2,
                    })
                    .expect("stagger point");
                    let with_dm = qfi(&ModelParams {
                        coupling,
                        homogeneous_field: field,
                        staggered_field: 0.0,
                        dm_coupling: x,
                        temperature,
                        sites: 2,
                    })
                    .expect("dm point");
                    worst = worst
                        .max((with_stagger.qfi_per_particle - with_dm.qfi_per_particle).abs());
                }
            }
        }
    }
    let details = format!(
        "384 point pairs at |J| = 1: max |QFI(b=x) - QFI(D=x)| = {worst:.2e} (tol 1e-10)"
    );
    if worst < 1e-10 {
        PropertyReport::pass(NAME, details)
    } else {
        PropertyReport::fail(NAME, details)
    }
}

fn oracle_agreement(options: &VerifyOptions) -> PropertyReport {
    const NAME: &str = "oracle-agreement";
    let draws = if options.quick { 30 } else { 200 };
    let resolution = if options.quick { 64 } else { 128 };
    let weight_scale = 1.0 + options.weight_fault.unwrap_or(0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_grid = 0.0f64;
    let mut worst_overlap = 0.0f64;
    for _ in 0..draws {
        let temperature = rng.random_range(0.1..=2.0);
        let p = draw_params(&mut rng, temperature);
        let state = closed_form_state(&p).expect("state");
        let c = c_matrix_perturbed(&state, 2, weight_scale).expect("c matrix");
        let (c_max, n_raw) = max_eig_sym3(&c);
        let per_particle = c_max / 2.0;
        let cx = c.apply([1.0, 0.0, 0.0]);
        let x_residual =
            ((cx[0] - c_max).powi(2) + cx[1] * cx[1] + cx[2] * cx[2]).sqrt();
        let n_opt = if x_residual <= 1e-10 * c.frobenius_norm().max(1.0) {
            Direction::X
        } else {
            Direction::new(n_raw[0], n_raw[1], n_raw[2]).expect("unit direction")
        };
        let (grid, _) = direction_grid_max(&state, 2, resolution).expect("grid max");
        worst_grid = worst_grid.max((per_particle - grid).abs());
        let overlap = fidelity_qfi_oracle(&state, &n_opt, 2, 1e-3).expect("fidelity oracle");
        let overlap_err = (per_particle - overlap).abs();
        let tolerance = (1e-2 * per_particle.abs()).max(1e-4);
        worst_overlap = worst_overlap.max(overlap_err / tolerance);
    }
    let details = format!(
        "{draws} draws: max |c_max/N - grid| = {worst_grid:.2e} (tol 1e-3), worst fidelity-oracle deviation = {worst_overlap:.2} x tolerance"
    );
    if worst_grid < 1e-3 && worst_overlap < 1.0 {
        PropertyReport::pass(NAME, details)
    } else {
        PropertyReport::fail(NAME, details)
    }
}

fn fig2_snl_separation(options: &VerifyOptions) -> PropertyReport {
    const NAME: &str = "fig2-snl-separation";
    let shrink = |mut spec: SweepSpec| {
        if options.quick {
            spec.axis1.count = 24;
            spec.axis2.count = 24;
        }
        spec
    };
    let ferro = match run_sweep(&shrink(preset(
        PresetName::DmVsStaggered,
        CouplingSign::Ferromagnetic,
    ))) {
        Ok(t) => t,
        Err(e) => return PropertyReport::fail(NAME, format!("ferro sweep failed: {e}")),
    };
    let antiferro = match run_sweep(&shrink(preset(
        PresetName::DmVsStaggered,
        CouplingSign::Antiferromagnetic,
    ))) {
        Ok(t) => t,
        Err(e) => return PropertyReport::fail(NAME, format!("antiferro sweep failed: {e}")),
    };
    // same grid on both axes, so the stagger-DM interchange shows up as
    // transpose symmetry of the ferro table
    let count = ferro.metadata.axis1.count;
    let mut asymmetry = 0.0f64;
    for i in 0..count {
        for j in 0..count {
            let a = ferro.rows[i * count + j].qfi;
            let b = ferro.rows[j * count + i].qfi;
            asymmetry = asymmetry.max((a - b).abs());
        }
    }
    let details = format!(
        "ferro max QFI = {:.4} (want > 1), antiferro max QFI = {:.4} (want <= 1 + 1e-9), ferro transpose asymmetry = {asymmetry:.2e} (tol 1e-10)",
        ferro.max_qfi(),
        antiferro.max_qfi()
    );
    if ferro.max_qfi() > 1.0 && antiferro.max_qfi() <= 1.0 + 1e-9 && asymmetry < 1e-10 {
        PropertyReport::pass(NAME, details)
    } else {
        PropertyReport::fail(NAME, details)
    }
}

fn field_preference() -> PropertyReport {
    const NAME: &str = "field-preference";
    let mut violations = Vec::new();
    for k in 1..=16 {
        let x = 3.0 * k as f64 / 16.0;
        let point = |coupling: f64, stagger: f64, field: f64| {
            qfi(&ModelParams {
                coupling,
                homogeneous_field: field,
                staggered_field: stagger,
                dm_coupling: 0.0,
                temperature: 0.7,
                sites: 2,
            })
            .expect("grid point")
            .qfi_per_particle
        };
        let ferro_stagger = point(-1.0, x, 0.0);
        let ferro_field = point(-1.0, 0.0, x);
        if ferro_stagger < ferro_field - 1e-9 {
            violations.push(format!(
                "ferro x = {x}: QFI(b=x) = {ferro_stagger} < QFI(B=x) = {ferro_field}"
            ));
        }
        let antiferro_stagger = point(1.0, x, 0.0);
        let antiferro_field = point(1.0, 0.0, x);
        if antiferro_field < antiferro_stagger - 1e-9 {
            violations.push(format!(
                "antiferro x = {x}: QFI(B=x) = {antiferro_field} < QFI(b=x) = {antiferro_stagger}"
            ));
        }
    }
    if violations.is_empty() {
        PropertyReport::pass(
            NAME,
            "16-point grid at T = 0.7: ferro prefers b, antiferro prefers B".into(),
        )
    } else {
        PropertyReport::fail(NAME, violations.join("; "))
    }
}

fn parity_symmetries(options: &VerifyOptions) -> PropertyReport {
    const NAME: &str = "parity-symmetries";
    let draws = if options.quick { 40 } else { 200 };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..draws {
        let temperature = rng.random_range(0.1..=3.0);
        let p = draw_params(&mut rng, temperature);
        let reference = qfi(&p).expect("reference").qfi_per_particle;
        let flips = [
            ModelParams {
                homogeneous_field: -p.homogeneous_field,
                staggered_field: -p.staggered_field,
                dm_coupling: -p.dm_coupling,
                ..p
            },
            ModelParams {
                dm_coupling: -p.dm_coupling,
                ..p
            },
            ModelParams {
                staggered_field: -p.staggered_field,
                ..p
            },
            ModelParams {
                homogeneous_field: -p.homogeneous_field,
                ..p
            },
        ];
        for flipped in flips {
            let value = qfi(&flipped).expect("flip").qfi_per_particle;
            worst = worst.max((value - reference).abs());
        }
    }
    let details =
        format!("{draws} draws x 4 sign flips: max |QFI change| = {worst:.2e} (tol 1e-10)");
    if worst < 1e-10 {
        PropertyReport::pass(NAME, details)
    } else {
        PropertyReport::fail(NAME, details)
    }
}

fn sweep_determinism(options: &VerifyOptions) -> PropertyReport {
    const NAME: &str = "sweep-determinism";
    let mut spec = preset(PresetName::DmVsStaggered, CouplingSign::Ferromagnetic);
    spec.axis1.count = 16;
    spec.axis2.count = 16;
    let workers: &[usize] = if options.quick { &[1, 2] } else { &[1, 4, 8] };
    let reference = match sweep_csv_with_workers(&spec, workers[0]) {
        Ok(csv) => csv,
        Err(e) => return PropertyReport::fail(NAME, format!("sweep failed: {e}")),
    };
    let repeat = match sweep_csv_with_workers(&spec, workers[0]) {
        Ok(csv) => csv,
        Err(e) => return PropertyReport::fail(NAME, format!("sweep failed: {e}")),
    };
    if repeat != reference {
        return PropertyReport::fail(NAME, "repeated run differs".into());
    }
    for &count in &workers[1..] {
        match sweep_csv_with_workers(&spec, count) {
            Ok(csv) if csv == reference => {}
            Ok(_) => {
                return PropertyReport::fail(
                    NAME,
                    format!("output differs with {count} workers"),
                )
            }
            Err(e) => return PropertyReport::fail(NAME, format!("sweep failed: {e}")),
        }
    }
    PropertyReport::pass(
        NAME,
        format!(
            "16x16 fig2_Db grid byte-identical across repeat and worker counts {workers:?}"
        ),
    )
}

fn sweep_csv_with_workers(spec: &SweepSpec, workers: usize) -> crate::Result<String> {
    crate::sweep::run_sweep_with_workers(spec, Some(workers)).map(|table| table.to_csv())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes_clean() {
        let reports = run_suite(&VerifyOptions {
            quick: true,
            weight_fault: None,
        });
        for report in &reports {
            assert!(report.passed, "{}: {}", report.name, report.details);
        }
        assert_eq!(reports.len(), 11);
    }

    #[test]
    fn injected_weight_fault_is_caught_by_name() {
        let reports = run_suite(&VerifyOptions {
            quick: true,
            weight_fault: Some(0.05),
        });
        let oracle = reports
            .iter()
            .find(|r| r.name == "oracle-agreement")
            .expect("report present");
        assert!(!oracle.passed);
        // the fault is local to the hooked check
        assert!(reports
            .iter()
            .filter(|r| r.name != "oracle-agreement")
            .all(|r| r.passed));
    }
}
