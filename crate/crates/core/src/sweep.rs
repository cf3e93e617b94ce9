//! Declarative 2-D parameter sweeps with deterministic parallel evaluation.
//!
//! A sweep grid is the cartesian product of two inclusive, uniformly spaced
//! axes. Cells are computed independently (rayon joins them back in grid
//! order, so worker scheduling cannot affect the output) and collected into a
//! long-format table that serializes to CSV or JSON byte-identically across
//! runs.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qfi::qfi;
use crate::spin::ModelParams;

/// Parameter selectable as a sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepParam {
    #[serde(rename = "T")]
    Temperature,
    #[serde(rename = "B")]
    HomogeneousField,
    #[serde(rename = "b")]
    StaggeredField,
    #[serde(rename = "D")]
    DmCoupling,
    #[serde(rename = "J")]
    Coupling,
}

impl SweepParam {
    pub fn label(self) -> &'static str {
        match self {
            SweepParam::Temperature => "T",
            SweepParam::HomogeneousField => "B",
            SweepParam::StaggeredField => "b",
            SweepParam::DmCoupling => "D",
            SweepParam::Coupling => "J",
        }
    }

    fn apply(self, params: &mut ModelParams, value: f64) {
        match self {
            SweepParam::Temperature => params.temperature = value,
            SweepParam::HomogeneousField => params.homogeneous_field = value,
            SweepParam::StaggeredField => params.staggered_field = value,
            SweepParam::DmCoupling => params.dm_coupling = value,
            SweepParam::Coupling => params.coupling = value,
        }
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(SweepParam::Temperature),
            "B" => Ok(SweepParam::HomogeneousField),
            "b" => Ok(SweepParam::StaggeredField),
            "D" => Ok(SweepParam::DmCoupling),
            "J" => Ok(SweepParam::Coupling),
            other => Err(Error::UnknownSweepParam(other.to_string())),
        }
    }
}

impl std::fmt::Display for SweepParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One inclusive, uniformly spaced sweep axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisSpec {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(param: SweepParam, min: f64, max: f64, count: usize) -> Self {
        Self {
            param,
            min,
            max,
            count,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::AxisTooShort { count: self.count });
        }
        if !self.min.is_finite() || !self.max.is_finite() || self.min >= self.max {
            return Err(Error::BadAxisRange {
                min: self.min,
                max: self.max,
            });
        }
        if self.param == SweepParam::Temperature && self.min <= 0.0 {
            return Err(Error::NonPositiveTemperatureAxis { min: self.min });
        }
        Ok(())
    }

    /// Grid points, endpoints included.
    pub fn values(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k == self.count - 1 {
                    self.max
                } else {
                    self.min + step * k as f64
                }
            })
            .collect()
    }
}

/// A 2-D sweep: two distinct axes plus fixed values for everything else.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub fixed: ModelParams,
    pub label: String,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axis1.param == self.axis2.param {
            return Err(Error::DuplicateSweepAxes);
        }
        self.axis1.validate()?;
        self.axis2.validate()?;
        self.fixed.validate()
    }

    fn cell_params(&self, value1: f64, value2: f64) -> ModelParams {
        let mut p = self.fixed;
        self.axis1.param.apply(&mut p, value1);
        self.axis2.param.apply(&mut p, value2);
        p
    }
}

/// One evaluated grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis1: f64,
    pub axis2: f64,
    pub qfi: f64,
    pub c_max: f64,
    pub useful: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepMetadata {
    pub label: String,
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub fixed: ModelParams,
    pub version: String,
}

/// Long-format sweep result: count1 x count2 rows sorted by (axis1, axis2).
#[derive(Debug, Clone, Serialize)]
pub struct SweepTable {
    pub metadata: SweepMetadata,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// CSV with a header row; numbers carry 17 significant digits so parsing
    /// them back is lossless.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * 80 + 40);
        out.push_str("axis1,axis2,qfi,c_max,useful\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
                row.axis1, row.axis2, row.qfi, row.c_max, row.useful
            ));
        }
        out
    }

    /// Pretty JSON object with `metadata` and `rows`.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("table serializes");
        out.push('\n');
        out
    }

    pub fn max_qfi(&self) -> f64 {
        self.rows.iter().map(|r| r.qfi).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Evaluates the grid. Cells run in parallel on the current rayon pool; the
/// result order is fixed by grid position. A failing cell aborts the sweep
/// and names the offending coordinates (the first failure in grid order).
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let values1 = spec.axis1.values();
    let values2 = spec.axis2.values();
    let n2 = values2.len();
    let total = values1.len() * n2;

    let cells: Vec<Result<SweepRow>> = (0..total)
        .into_par_iter()
        .map(|index| {
            let value1 = values1[index / n2];
            let value2 = values2[index % n2];
            let params = spec.cell_params(value1, value2);
            match qfi(&params) {
                Ok(result) => Ok(SweepRow {
                    axis1: value1,
                    axis2: value2,
                    qfi: result.qfi_per_particle,
                    c_max: result.c_max,
                    useful: result.is_useful(),
                }),
                Err(source) => Err(Error::SweepCellFailed {
                    axis1: value1,
                    axis2: value2,
                    source: Box::new(source),
                }),
            }
        })
        .collect();

    let mut rows = Vec::with_capacity(total);
    for cell in cells {
        rows.push(cell?);
    }
    Ok(SweepTable {
        metadata: SweepMetadata {
            label: spec.label.clone(),
            axis1: spec.axis1.clone(),
            axis2: spec.axis2.clone(),
            fixed: spec.fixed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        rows,
    })
}

/// Same as [`run_sweep`], but on a dedicated pool with a fixed worker count
/// (`None` uses the ambient pool). Output is identical for any worker count.
pub fn run_sweep_with_workers(spec: &SweepSpec, workers: Option<usize>) -> Result<SweepTable> {
    match workers {
        None => run_sweep(spec),
        Some(count) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(count)
                .build()
                .expect("worker pool");
            pool.install(|| run_sweep(spec))
        }
    }
}

/// The named sweep configurations behind the reference heatmaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetName {
    /// Temperature versus DM strength, no external fields.
    TemperatureVsDm,
    /// Temperature versus homogeneous field, no staggered field or DM term.
    TemperatureVsHomogeneous,
    /// Temperature versus staggered field, no homogeneous field or DM term.
    TemperatureVsStaggered,
    /// DM strength versus staggered field at fixed T = 0.7, no homogeneous field.
    DmVsStaggered,
    /// Staggered versus homogeneous field at fixed T = 0.7, no DM term.
    StaggeredVsHomogeneous,
}

impl PresetName {
    pub const ALL: [PresetName; 5] = [
        PresetName::TemperatureVsDm,
        PresetName::TemperatureVsHomogeneous,
        PresetName::TemperatureVsStaggered,
        PresetName::DmVsStaggered,
        PresetName::StaggeredVsHomogeneous,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PresetName::TemperatureVsDm => "fig1_TD",
            PresetName::TemperatureVsHomogeneous => "fig1_TB",
            PresetName::TemperatureVsStaggered => "fig1_Tb",
            PresetName::DmVsStaggered => "fig2_Db",
            PresetName::StaggeredVsHomogeneous => "fig2_bB",
        }
    }
}

impl std::str::FromStr for PresetName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetName::ALL
            .into_iter()
            .find(|p| p.label() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

/// Sign convention of the exchange coupling for the preset pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingSign {
    Ferromagnetic,
    Antiferromagnetic,
}

impl CouplingSign {
    pub fn coupling(self) -> f64 {
        match self {
            CouplingSign::Ferromagnetic => -1.0,
            CouplingSign::Antiferromagnetic => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CouplingSign::Ferromagnetic => "ferro",
            CouplingSign::Antiferromagnetic => "antiferro",
        }
    }
}

impl std::str::FromStr for CouplingSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ferro" => Ok(CouplingSign::Ferromagnetic),
            "antiferro" => Ok(CouplingSign::Antiferromagnetic),
            other => Err(Error::UnknownSign(other.to_string())),
        }
    }
}

/// Default axis extents: T in [0.05, 3], fields and DM strength in [0, 3],
/// 64 points per axis.
pub const DEFAULT_AXIS_POINTS: usize = 64;
pub const DEFAULT_TEMPERATURE_RANGE: (f64, f64) = (0.05, 3.0);
pub const DEFAULT_STRENGTH_RANGE: (f64, f64) = (0.0, 3.0);

fn default_axis(param: SweepParam) -> AxisSpec {
    let (min, max) = match param {
        SweepParam::Temperature => DEFAULT_TEMPERATURE_RANGE,
        _ => DEFAULT_STRENGTH_RANGE,
    };
    AxisSpec::new(param, min, max, DEFAULT_AXIS_POINTS)
}

/// Builds the sweep spec for a named preset. Non-axis parameters are zero,
/// the fig2 presets fix T = 0.7, and the sign selects J = -1 or J = +1.
pub fn preset(name: PresetName, sign: CouplingSign) -> SweepSpec {
    let fixed = ModelParams {
        coupling: sign.coupling(),
        homogeneous_field: 0.0,
        staggered_field: 0.0,
        dm_coupling: 0.0,
        temperature: 0.7,
        sites: 2,
    };
    let (axis1, axis2) = match name {
        PresetName::TemperatureVsDm => (SweepParam::Temperature, SweepParam::DmCoupling),
        PresetName::TemperatureVsHomogeneous => {
            (SweepParam::Temperature, SweepParam::HomogeneousField)
        }
        PresetName::TemperatureVsStaggered => {
            (SweepParam::Temperature, SweepParam::StaggeredField)
        }
        PresetName::DmVsStaggered => (SweepParam::DmCoupling, SweepParam::StaggeredField),
        PresetName::StaggeredVsHomogeneous => {
            (SweepParam::StaggeredField, SweepParam::HomogeneousField)
        }
    };
    SweepSpec {
        axis1: default_axis(axis1),
        axis2: default_axis(axis2),
        fixed,
        label: format!("{} {}", name.label(), sign.label()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfi::qfi;

    fn small_spec() -> SweepSpec {
        SweepSpec {
            axis1: AxisSpec::new(SweepParam::Temperature, 0.5, 1.0, 2),
            axis2: AxisSpec::new(SweepParam::DmCoupling, 0.0, 1.0, 2),
            fixed: ModelParams::default(),
            label: "composition check".into(),
        }
    }

    #[test]
    fn axis_values_inclusive_and_uniform() {
        let axis = AxisSpec::new(SweepParam::StaggeredField, 0.0, 3.0, 4);
        assert_eq!(axis.values(), vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn grid_cells_match_single_point_calls() {
        let table = run_sweep(&small_spec()).unwrap();
        assert_eq!(table.rows.len(), 4);
        for row in &table.rows {
            let p = ModelParams {
                temperature: row.axis1,
                dm_coupling: row.axis2,
                ..Default::default()
            };
            let single = qfi(&p).unwrap();
            assert_eq!(row.qfi, single.qfi_per_particle);
            assert_eq!(row.c_max, single.c_max);
        }
    }

    #[test]
    fn rows_sorted_by_grid_position() {
        let table = run_sweep(&small_spec()).unwrap();
        let coords: Vec<(f64, f64)> = table.rows.iter().map(|r| (r.axis1, r.axis2)).collect();
        assert_eq!(
            coords,
            vec![(0.5, 0.0), (0.5, 1.0), (1.0, 0.0), (1.0, 1.0)]
        );
    }

    #[test]
    fn spec_validation_catches_bad_axes() {
        let mut spec = small_spec();
        spec.axis2.param = SweepParam::Temperature;
        assert!(matches!(spec.validate(), Err(Error::DuplicateSweepAxes)));

        let mut spec = small_spec();
        spec.axis1.min = 0.0;
        assert!(matches!(
            spec.validate(),
            Err(Error::NonPositiveTemperatureAxis { .. })
        ));

        let mut spec = small_spec();
        spec.axis2.count = 1;
        assert!(matches!(spec.validate(), Err(Error::AxisTooShort { .. })));

        let mut spec = small_spec();
        spec.axis2.max = spec.axis2.min;
        assert!(matches!(spec.validate(), Err(Error::BadAxisRange { .. })));
    }

    #[test]
    fn presets_match_their_captions() {
        // (name, sign, axis labels, fixed B, fixed b, fixed D, fixed T)
        let rows: [(PresetName, CouplingSign, [&str; 2], [f64; 4]); 6] = [
            (
                PresetName::TemperatureVsDm,
                CouplingSign::Ferromagnetic,
                ["T", "D"],
                [0.0, 0.0, 0.0, 0.7],
            ),
            (
                PresetName::TemperatureVsHomogeneous,
                CouplingSign::Ferromagnetic,
                ["T", "B"],
                [0.0, 0.0, 0.0, 0.7],
            ),
            (
                PresetName::TemperatureVsStaggered,
                CouplingSign::Ferromagnetic,
                ["T", "b"],
                [0.0, 0.0, 0.0, 0.7],
            ),
            (
                PresetName::DmVsStaggered,
                CouplingSign::Ferromagnetic,
                ["D", "b"],
                [0.0, 0.0, 0.0, 0.7],
            ),
            (
                PresetName::StaggeredVsHomogeneous,
                CouplingSign::Antiferromagnetic,
                ["b", "B"],
                [0.0, 0.0, 0.0, 0.7],
            ),
            (
                PresetName::TemperatureVsStaggered,
                CouplingSign::Antiferromagnetic,
                ["T", "b"],
                [0.0, 0.0, 0.0, 0.7],
            ),
        ];
        for (name, sign, axes, fixed) in rows {
            let spec = preset(name, sign);
            assert_eq!(spec.axis1.param.label(), axes[0]);
            assert_eq!(spec.axis2.param.label(), axes[1]);
            assert_eq!(spec.fixed.homogeneous_field, fixed[0]);
            assert_eq!(spec.fixed.staggered_field, fixed[1]);
            assert_eq!(spec.fixed.dm_coupling, fixed[2]);
            assert_eq!(spec.fixed.temperature, fixed[3]);
            assert_eq!(spec.fixed.coupling, sign.coupling());
            assert_eq!(spec.fixed.sites, 2);
            spec.validate().unwrap();
        }
    }

    #[test]
    fn preset_names_round_trip() {
        for name in PresetName::ALL {
            let parsed: PresetName = name.label().parse().unwrap();
            assert_eq!(parsed, name);
        }
        assert!(matches!(
            "fig9_zz".parse::<PresetName>(),
            Err(Error::UnknownPreset(_))
        ));
        assert!(matches!(
            "ferromagnet".parse::<CouplingSign>(),
            Err(Error::UnknownSign(_))
        ));
    }

    #[test]
    fn csv_shape_and_lossless_numbers() {
        let table = run_sweep(&small_spec()).unwrap();
        let csv = table.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "axis1,axis2,qfi,c_max,useful");
        let mut count = 0;
        for (line, row) in lines.zip(table.rows.iter()) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 5);
            assert_eq!(fields[0].parse::<f64>().unwrap(), row.axis1);
            assert_eq!(fields[2].parse::<f64>().unwrap(), row.qfi);
            assert_eq!(fields[4].parse::<bool>().unwrap(), row.useful);
            count += 1;
        }
        assert_eq!(count, table.rows.len());
    }

    #[test]
    fn reruns_are_byte_identical() {
        let spec = small_spec();
        let a = run_sweep(&spec).unwrap().to_csv();
        let b = run_sweep(&spec).unwrap().to_csv();
        assert_eq!(a, b);
    }

    #[test]
    fn json_has_metadata_and_rows() {
        let table = run_sweep(&small_spec()).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&table.to_json()).unwrap();
        assert!(parsed.get("metadata").is_some());
        assert_eq!(parsed["rows"].as_array().unwrap().len(), 4);
        assert_eq!(parsed["metadata"]["axis1"]["param"], "T");
        assert_eq!(parsed["metadata"]["fixed"]["J"], -1.0);
    }
}
