//! Implementations of the five subcommands.

use std::process::ExitCode;
use std::str::FromStr;

use spinqfi_core::sweep::run_sweep_with_workers;
use spinqfi_core::verify::{run_suite, VerifyOptions};
use spinqfi_core::{
    analytic_spectrum, build_hamiltonian, closed_form_state, cramer_rao, eigh, gibbs_state,
    qfi_zero_temperature, ClosedFormFactors, CouplingSign, EstimationSetup, Error, PresetName,
    SweepParam, SweepSpec,
};

use crate::render;
use crate::{Failure, ParamArgs, QfiArgs, SweepArgs, VerifyArgs};

type CmdResult = Result<ExitCode, Failure>;

pub fn spectrum(args: &ParamArgs) -> CmdResult {
    let params = args.to_params();
    params.validate()?;
    if params.sites == 2 {
        let spec = analytic_spectrum(&params)?;
        println!("two-spin spectrum at J={}, B={}, b={}, D={}", params.coupling, params.homogeneous_field, params.staggered_field, params.dm_coupling);
        println!("gamma = {:.12}", spec.gamma);
        println!("N1 = {:.12}", spec.norm1);
        println!("N2 = {:.12}", spec.norm2);
        let mut pairs: Vec<(f64, [spinqfi_core::Complex64; 4])> = spec
            .energies
            .iter()
            .copied()
            .zip(spec.vectors.iter().copied())
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (energy, vector) in &pairs {
            println!("E = {:+.12}  v = {}", energy, render::vector(vector));
        }
    } else {
        let h = build_hamiltonian(&params)?;
        let eig = eigh(&h)?;
        println!("numeric spectrum for N = {}", params.sites);
        for (k, energy) in eig.values().iter().enumerate() {
            println!("E = {:+.12}  v = {}", energy, render::vector(&eig.vector(k)));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn state(args: &ParamArgs) -> CmdResult {
    let params = args.to_params();
    params.validate()?;
    if params.sites == 2 {
        let closed = closed_form_state(&params)?;
        let numeric = gibbs_state(&build_hamiltonian(&params)?, params.temperature)?;
        let factors = ClosedFormFactors::from_params(&params)?;
        println!(
            "gamma_c = {:.12}, gamma_s = {:.12}, Z = {:.12}",
            factors.gamma_c, factors.gamma_s, factors.partition
        );
        println!("closed-form state:");
        print!("{}", render::hermitian(closed.matrix()));
        println!("matrix-exponential state:");
        print!("{}", render::hermitian(numeric.matrix()));
        println!(
            "max entrywise difference = {:.3e}",
            closed.max_abs_diff(&numeric)
        );
    } else {
        let numeric = gibbs_state(&build_hamiltonian(&params)?, params.temperature)?;
        println!("thermal state for N = {}:", params.sites);
        print!("{}", render::hermitian(numeric.matrix()));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn qfi(args: &QfiArgs) -> CmdResult {
    let params = args.params.to_params();
    let result = if args.zero_temperature {
        qfi_zero_temperature(&params)?
    } else {
        spinqfi_core::qfi(&params)?
    };
    let [nx, ny, nz] = result.n_opt.components();
    println!("C matrix:");
    print!("{}", render::sym3(&result.c));
    println!("c_max = {:.12}", result.c_max);
    println!("QFI per particle = {:.12}", result.qfi_per_particle);
    println!("optimal direction n = ({nx:+.12}, {ny:+.12}, {nz:+.12})");
    println!("useful (QFI > 1): {}", result.is_useful());
    let setup = EstimationSetup {
        n_measurements: 1,
        total_fisher: result.total_fisher(),
        phase: 0.0,
    };
    match cramer_rao(&setup) {
        Ok(bound) => println!("QCRB dphi (N_m = 1) = {bound:.12}"),
        Err(Error::UnboundedUncertainty) => {
            println!("QCRB dphi (N_m = 1) = unbounded (zero Fisher information)")
        }
        Err(other) => return Err(other.into()),
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_axis(name: &str) -> Result<SweepParam, Failure> {
    SweepParam::from_str(name).map_err(Into::into)
}

fn build_spec(args: &SweepArgs) -> Result<SweepSpec, Failure> {
    let mut spec = if let Some(preset_name) = &args.preset {
        if args.axis1.is_some() || args.axis2.is_some() {
            return Err(Failure::Usage(
                "--axis1/--axis2 cannot be combined with --preset (override ranges with --min/--max/--count)".into(),
            ));
        }
        let name = PresetName::from_str(preset_name)?;
        let sign = CouplingSign::from_str(&args.sign)?;
        spinqfi_core::preset(name, sign)
    } else {
        let (Some(axis1), Some(axis2)) = (&args.axis1, &args.axis2) else {
            return Err(Failure::Usage(
                "a sweep needs either --preset or both --axis1 and --axis2".into(),
            ));
        };
        let param1 = parse_axis(axis1)?;
        let param2 = parse_axis(axis2)?;
        let default_range = |param: SweepParam| match param {
            SweepParam::Temperature => spinqfi_core::sweep::DEFAULT_TEMPERATURE_RANGE,
            _ => spinqfi_core::sweep::DEFAULT_STRENGTH_RANGE,
        };
        let (lo1, hi1) = default_range(param1);
        let (lo2, hi2) = default_range(param2);
        SweepSpec {
            axis1: spinqfi_core::AxisSpec::new(
                param1,
                lo1,
                hi1,
                spinqfi_core::sweep::DEFAULT_AXIS_POINTS,
            ),
            axis2: spinqfi_core::AxisSpec::new(
                param2,
                lo2,
                hi2,
                spinqfi_core::sweep::DEFAULT_AXIS_POINTS,
            ),
            fixed: args.params.to_params(),
            label: format!("custom {} vs {}", param1.label(), param2.label()),
        }
    };
    if let Some(min1) = args.min1 {
        spec.axis1.min = min1;
    }
    if let Some(max1) = args.max1 {
        spec.axis1.max = max1;
    }
    if let Some(count1) = args.count1 {
        spec.axis1.count = count1;
    }
    if let Some(min2) = args.min2 {
        spec.axis2.min = min2;
    }
    if let Some(max2) = args.max2 {
        spec.axis2.max = max2;
    }
    if let Some(count2) = args.count2 {
        spec.axis2.count = count2;
    }
    Ok(spec)
}

pub fn sweep(args: &SweepArgs) -> CmdResult {
    let spec = build_spec(args)?;
    let table = run_sweep_with_workers(&spec, args.workers)?;
    let serialized = match args.format.as_str() {
        "csv" => table.to_csv(),
        "json" => table.to_json(),
        other => {
            return Err(Failure::Usage(format!(
                "unknown format {other:?} (expected csv or json)"
            )))
        }
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, serialized.as_bytes())?;
            println!("wrote {} rows to {}", table.rows.len(), path.display());
        }
        None => print!("{serialized}"),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let options = VerifyOptions {
        quick: args.quick,
        weight_fault: args.inject_fault.then_some(0.05),
    };
    let reports = run_suite(&options);
    let mut failures = 0usize;
    for report in &reports {
        let tag = if report.passed { "PASS" } else { "FAIL" };
        println!("{tag} {} - {}", report.name, report.details);
        if !report.passed {
            failures += 1;
        }
    }
    if failures == 0 {
        println!("all {} properties passed", reports.len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{failures} of {} properties failed", reports.len());
        Ok(ExitCode::from(1))
    }
}
