//! Scenario configuration: parsing, validation, and the bundled scenarios.
//!
//! Configs are JSON with a fixed key schema; unknown keys are rejected and
//! validation reports every problem with its key path.

use crate::dynamics::{BoxBounds, BuiltinField, ForcingSpec, Grid, VectorFieldSpec};
use crate::error::{Error, Result};
use crate::homology::CoefficientRing;
use crate::pairs::SlicedCubeSet;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub system: SystemConfig,
    pub grid: GridConfig,
    pub time: TimeConfig,
    pub regions: RegionsConfig,
    #[serde(default)]
    pub homology: HomologyConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub forcing: ForcingConfig,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ForcingConfig {
    #[serde(default = "default_forcing_kind")]
    pub kind: String,
    #[serde(default)]
    pub amplitude: f64,
    #[serde(default = "default_frequency")]
    pub frequency: f64,
    #[serde(default)]
    pub h_embedded: bool,
}

fn default_forcing_kind() -> String {
    "none".into()
}

fn default_frequency() -> f64 {
    1.0
}

impl Default for ForcingConfig {
    fn default() -> Self {
        ForcingConfig {
            kind: default_forcing_kind(),
            amplitude: 0.0,
            frequency: default_frequency(),
            h_embedded: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub divisions: Vec<u32>,
    /// outer-approximation padding in cells
    #[serde(default = "default_padding")]
    pub padding: u32,
}

fn default_padding() -> u32 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub tau: f64,
    /// number of reporting transitions K (slice times 0..=K)
    pub slices: usize,
    /// first slice trusted by asymptotic stages; defaults to slices/2
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burn_in: Option<usize>,
    #[serde(default = "default_margin")]
    pub margin: usize,
    /// extra transitions integrated past K so exit structure near K has
    /// forward room; defaults to `slices`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<usize>,
}

fn default_margin() -> usize {
    1
}

impl TimeConfig {
    pub fn burn_in_or_default(&self) -> usize {
        self.burn_in.unwrap_or(self.slices / 2)
    }

    pub fn extension_or_default(&self) -> usize {
        self.extension.unwrap_or(self.slices)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RegionsConfig {
    pub n: RegionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_a: Option<RegionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_r: Option<RegionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_a: Option<RegionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_r: Option<RegionSpec>,
}

/// A region is a box list, either constant in time or given per slice.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RegionSpec {
    Constant(Vec<BoxSpec>),
    PerSlice(Vec<Vec<BoxSpec>>),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BoxSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HomologyConfig {
    #[serde(default = "default_ring")]
    pub ring: String,
    #[serde(default = "default_thickening")]
    pub thickening_m: u32,
}

fn default_ring() -> String {
    "F2".into()
}

fn default_thickening() -> u32 {
    1
}

impl Default for HomologyConfig {
    fn default() -> Self {
        HomologyConfig {
            ring: default_ring(),
            thickening_m: default_thickening(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub amplitudes: Vec<f64>,
    #[serde(default = "default_frequency")]
    pub frequency: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_output_path")]
    pub path: String,
    #[serde(default)]
    pub emit_matrices: bool,
    #[serde(default)]
    pub emit_witness_csv: bool,
    #[serde(default)]
    pub emit_betti_csv: bool,
}

fn default_output_path() -> String {
    "report.json".into()
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            path: default_output_path(),
            emit_matrices: false,
            emit_witness_csv: false,
            emit_betti_csv: false,
        }
    }
}

impl ScenarioConfig {
    pub fn ring(&self) -> Result<CoefficientRing> {
        self.homology
            .ring
            .parse()
            .map_err(|e: String| Error::Config(vec![format!("homology.ring: {e}")]))
    }

    pub fn vector_field(&self) -> Result<VectorFieldSpec> {
        let field = match self.system.name.as_str() {
            "saddle2d" => BuiltinField::Saddle2d,
            "logistic1d" => BuiltinField::Logistic1d,
            "twowell1d" => {
                let p = &self.system.params;
                BuiltinField::TwoWell1d {
                    roots: [
                        p.get("r0").copied().unwrap_or(0.0),
                        p.get("r1").copied().unwrap_or(1.0),
                        p.get("r2").copied().unwrap_or(2.0),
                    ],
                }
            }
            "spectral2m" => BuiltinField::Spectral2m {
                mu: self.system.params.get("mu").copied().unwrap_or(2.0),
            },
            "custom1d" => {
                let mut coeffs = Vec::new();
                for i in 0.. {
                    match self.system.params.get(&format!("c{i}")) {
                        Some(&c) => coeffs.push(c),
                        None => break,
                    }
                }
                BuiltinField::Custom1d { coeffs }
            }
            other => {
                return Err(Error::Config(vec![format!(
                    "system.name: unknown builtin '{other}'"
                )]))
            }
        };
        let base = match self.system.forcing.kind.as_str() {
            "none" => ForcingSpec::None,
            "sinusoid" => ForcingSpec::Sinusoid {
                amplitude: self.system.forcing.amplitude,
                frequency: self.system.forcing.frequency,
            },
            other => {
                return Err(Error::Config(vec![format!(
                    "system.forcing.kind: unknown kind '{other}'"
                )]))
            }
        };
        let forcing = if self.system.forcing.h_embedded {
            crate::dynamics::f_dot_h(&base)?
        } else {
            base
        };
        Ok(VectorFieldSpec::new(field, forcing))
    }

    pub fn make_grid(&self) -> Result<Grid> {
        Grid::new(
            self.grid.lower.clone(),
            self.grid.upper.clone(),
            self.grid.divisions.clone(),
        )
    }

    /// Materializes a region over `slice_count` slices; per-slice regions
    /// are extended by repeating their last slice.
    pub fn region_cubes(
        &self,
        grid: &Grid,
        region: &RegionSpec,
        slice_count: usize,
    ) -> SlicedCubeSet {
        let boxes_at = |k: usize| -> &[BoxSpec] {
            match region {
                RegionSpec::Constant(boxes) => boxes,
                RegionSpec::PerSlice(per) => {
                    let idx = k.min(per.len().saturating_sub(1));
                    &per[idx]
                }
            }
        };
        let mut out = SlicedCubeSet::empty(slice_count);
        for k in 0..slice_count {
            for b in boxes_at(k) {
                for id in grid.cubes_inside(&BoxBounds {
                    lo: b.lo.clone(),
                    hi: b.hi.clone(),
                }) {
                    out.insert(k, id);
                }
            }
        }
        out
    }

    /// Full validation; collects every problem with its key path.
    pub fn validate(&self) -> Result<()> {
        let mut errors = Vec::new();
        let dim = self.grid.lower.len();
        if self.grid.upper.len() != dim || self.grid.divisions.len() != dim || dim == 0 {
            errors.push("grid: lower, upper and divisions must share a positive length".into());
        }
        for i in 0..dim.min(self.grid.upper.len()) {
            let span = self.grid.upper[i] - self.grid.lower[i];
            if span.is_nan() || span <= 0.0 {
                errors.push(format!("grid.upper[{i}] must exceed grid.lower[{i}]"));
            }
        }
        if self.grid.divisions.contains(&0) {
            errors.push("grid.divisions must be positive".into());
        }
        match self.vector_field() {
            Ok(f) => {
                if f.dim() != dim {
                    errors.push(format!(
                        "system.name: '{}' is {}-dimensional but the grid has dimension {dim}",
                        self.system.name,
                        f.dim()
                    ));
                }
            }
            Err(Error::Config(mut e)) => errors.append(&mut e),
            Err(e) => errors.push(e.to_string()),
        }
        if self.time.tau.is_nan() || self.time.tau <= 0.0 {
            errors.push("time.tau must be positive".into());
        }
        if self.time.slices < 2 {
            errors.push("time.slices must be at least 2".into());
        }
        let burn_in = self.time.burn_in_or_default();
        if burn_in >= self.time.slices {
            errors.push("time.burn_in must be smaller than time.slices".into());
        }
        if 2 * self.time.margin >= self.time.slices {
            errors.push("time.margin must be smaller than half of time.slices".into());
        }
        if let Ok(r) = self.ring() {
            let _ = r;
        } else {
            errors.push(format!(
                "homology.ring: unknown ring '{}'",
                self.homology.ring
            ));
        }
        if self.system.forcing.amplitude < 0.0 {
            errors.push("system.forcing.amplitude must be nonnegative".into());
        }
        if let Some(s) = &self.sweep {
            if s.amplitudes.is_empty() {
                errors.push("sweep.amplitudes must be nonempty".into());
            }
            if s.amplitudes.iter().any(|&a| a < 0.0) {
                errors.push("sweep.amplitudes must be nonnegative".into());
            }
        }
        // region boxes: dimension and grid containment
        if let Ok(grid) = self.make_grid() {
            let regions: [(&str, Option<&RegionSpec>); 5] = [
                ("regions.n", Some(&self.regions.n)),
                ("regions.n_a", self.regions.n_a.as_ref()),
                ("regions.n_r", self.regions.n_r.as_ref()),
                ("regions.u_a", self.regions.u_a.as_ref()),
                ("regions.u_r", self.regions.u_r.as_ref()),
            ];
            let upper = grid.upper();
            for (path, region) in regions.into_iter() {
                let Some(region) = region else { continue };
                let all_boxes: Vec<&BoxSpec> = match region {
                    RegionSpec::Constant(b) => b.iter().collect(),
                    RegionSpec::PerSlice(per) => per.iter().flatten().collect(),
                };
                if let RegionSpec::PerSlice(per) = region {
                    if per.len() != self.time.slices + 1 {
                        errors.push(format!(
                            "{path}: per-slice regions need exactly time.slices + 1 entries"
                        ));
                    }
                }
                for (i, b) in all_boxes.iter().enumerate() {
                    if b.lo.len() != dim || b.hi.len() != dim {
                        errors.push(format!("{path}[{i}]: box dimension mismatch"));
                        continue;
                    }
                    for ((&lo, &hi), (&glo, &gup)) in
                        b.lo.iter().zip(&b.hi).zip(grid.lower.iter().zip(&upper))
                    {
                        if lo < glo - 1e-9 || hi > gup + 1e-9 {
                            errors.push(format!("{path}[{i}]: box leaves the grid"));
                            break;
                        }
                    }
                }
            }
            // disjointness of the two neighborhoods, cube-level
            if let (Some(ua), Some(ur)) = (&self.regions.u_a, &self.regions.u_r) {
                let n_slices = self.time.slices + 1;
                let a = self.region_cubes(&grid, ua, n_slices);
                let r = self.region_cubes(&grid, ur, n_slices);
                if !a.disjoint_from(&r) {
                    errors.push("regions.u_a and regions.u_r must be disjoint".into());
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(errors))
        }
    }
}

/// Parses and validates a JSON scenario config.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let config: ScenarioConfig =
        serde_json::from_str(text).map_err(|e| Error::Config(vec![e.to_string()]))?;
    config.validate()?;
    Ok(config)
}

/// Parse-only mode for the CLI: exit 0 on valid, 2 on invalid.
pub fn validate_config_file(path: &str) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

/// Bundled scenarios used by the CLI examples and the acceptance suite.
pub mod builtin {
    use super::*;

    fn boxes(spec: &[(&[f64], &[f64])]) -> RegionSpec {
        RegionSpec::Constant(
            spec.iter()
                .map(|(lo, hi)| BoxSpec {
                    lo: lo.to_vec(),
                    hi: hi.to_vec(),
                })
                .collect(),
        )
    }

    /// Hyperbolic saddle on a square box.
    pub fn saddle2d() -> ScenarioConfig {
        ScenarioConfig {
            system: SystemConfig {
                name: "saddle2d".into(),
                params: BTreeMap::new(),
                forcing: ForcingConfig::default(),
            },
            grid: GridConfig {
                lower: vec![-1.0, -1.0],
                upper: vec![1.0, 1.0],
                divisions: vec![16, 16],
                padding: 0,
            },
            time: TimeConfig {
                tau: 0.2,
                slices: 20,
                burn_in: None,
                margin: 1,
                extension: None,
            },
            regions: RegionsConfig {
                n: boxes(&[(&[-1.0, -1.0], &[1.0, 1.0])]),
                n_a: None,
                n_r: None,
                u_a: None,
                u_r: None,
            },
            homology: HomologyConfig::default(),
            sweep: None,
            output: OutputConfig::default(),
        }
    }

    /// Repeller-to-attractor connection on the unit interval.
    pub fn logistic1d() -> ScenarioConfig {
        ScenarioConfig {
            system: SystemConfig {
                name: "logistic1d".into(),
                params: BTreeMap::new(),
                forcing: ForcingConfig::default(),
            },
            grid: GridConfig {
                lower: vec![-0.5],
                upper: vec![1.5],
                divisions: vec![40],
                padding: 0,
            },
            time: TimeConfig {
                tau: 0.25,
                slices: 24,
                burn_in: None,
                margin: 1,
                extension: None,
            },
            regions: RegionsConfig {
                n: boxes(&[(&[-0.35], &[1.40])]),
                n_a: Some(boxes(&[(&[0.60], &[1.40])])),
                n_r: Some(boxes(&[(&[-0.15], &[0.15])])),
                u_a: Some(boxes(&[(&[0.75], &[1.25])])),
                u_r: Some(boxes(&[(&[-0.20], &[0.25])])),
            },
            homology: HomologyConfig::default(),
            sweep: Some(SweepConfig {
                amplitudes: vec![0.0, 0.01, 0.02, 0.05],
                frequency: 1.0,
            }),
            output: OutputConfig::default(),
        }
    }

    /// Two disjoint attracting wells: trivial connecting map, coverable
    /// invariant set.
    pub fn disconnected() -> ScenarioConfig {
        ScenarioConfig {
            system: SystemConfig {
                name: "twowell1d".into(),
                params: BTreeMap::new(),
                forcing: ForcingConfig::default(),
            },
            grid: GridConfig {
                lower: vec![-0.5],
                upper: vec![2.5],
                divisions: vec![60],
                padding: 0,
            },
            time: TimeConfig {
                tau: 0.2,
                slices: 20,
                burn_in: None,
                margin: 1,
                extension: None,
            },
            regions: RegionsConfig {
                n: boxes(&[(&[-0.30], &[0.30]), (&[1.70], &[2.30])]),
                n_a: Some(boxes(&[(&[1.70], &[2.30])])),
                n_r: Some(boxes(&[(&[-0.30], &[0.30])])),
                u_a: Some(boxes(&[(&[1.60], &[2.40])])),
                u_r: Some(boxes(&[(&[-0.40], &[0.40])])),
            },
            homology: HomologyConfig::default(),
            sweep: None,
            output: OutputConfig::default(),
        }
    }

    pub fn all() -> Vec<(&'static str, ScenarioConfig)> {
        vec![
            ("saddle2d", saddle2d()),
            ("logistic1d", logistic1d()),
            ("disconnected", disconnected()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_scenarios_validate() {
        for (name, config) in builtin::all() {
            assert!(config.validate().is_ok(), "{name}");
        }
    }

    #[test]
    fn minimal_config_parses_with_defaults() {
        let text = r#"{
            "system": {"name": "saddle2d"},
            "grid": {"lower": [-1, -1], "upper": [1, 1], "divisions": [8, 8]},
            "time": {"tau": 0.2, "slices": 10},
            "regions": {"n": [{"lo": [-1, -1], "hi": [1, 1]}]}
        }"#;
        let c = parse_config(text).unwrap();
        assert_eq!(c.homology.thickening_m, 1);
        assert_eq!(c.homology.ring, "F2");
        assert_eq!(c.time.burn_in_or_default(), 5);
        assert_eq!(c.time.margin, 1);
        assert_eq!(c.grid.padding, 1);
        assert_eq!(c.ring().unwrap(), CoefficientRing::F2);
    }

    #[test]
    fn zero_tau_is_rejected_with_key_path() {
        let mut c = builtin::saddle2d();
        c.time.tau = 0.0;
        match c.validate() {
            Err(Error::Config(errors)) => {
                assert!(errors
                    .iter()
                    .any(|e| e.contains("time.tau must be positive")));
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn overlapping_neighborhoods_are_rejected() {
        let mut c = builtin::logistic1d();
        c.regions.u_a = c.regions.u_r.clone();
        match c.validate() {
            Err(Error::Config(errors)) => {
                assert!(errors.iter().any(|e| e.contains("must be disjoint")));
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"system": {"name": "saddle2d", "bogus": 1},
            "grid": {"lower": [-1,-1], "upper": [1,1], "divisions": [8,8]},
            "time": {"tau": 0.2, "slices": 10},
            "regions": {"n": [{"lo": [-1,-1], "hi": [1,1]}]}}"#;
        assert!(matches!(parse_config(text), Err(Error::Config(_))));
    }

    #[test]
    fn box_outside_grid_is_rejected() {
        let mut c = builtin::saddle2d();
        c.regions.n = RegionSpec::Constant(vec![BoxSpec {
            lo: vec![-2.0, -1.0],
            hi: vec![1.0, 1.0],
        }]);
        match c.validate() {
            Err(Error::Config(errors)) => {
                assert!(errors.iter().any(|e| e.contains("leaves the grid")));
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn per_slice_regions_roundtrip() {
        let text = r#"{
            "system": {"name": "logistic1d"},
            "grid": {"lower": [-0.5], "upper": [1.5], "divisions": [20]},
            "time": {"tau": 0.25, "slices": 4},
            "regions": {"n": [[{"lo": [-0.4], "hi": [1.4]}],
                               [{"lo": [-0.4], "hi": [1.4]}],
                               [{"lo": [-0.4], "hi": [1.4]}],
                               [{"lo": [-0.3], "hi": [1.3]}],
                               [{"lo": [-0.3], "hi": [1.3]}]]}
        }"#;
        let c = parse_config(text).unwrap();
        assert!(matches!(c.regions.n, RegionSpec::PerSlice(_)));
        let grid = c.make_grid().unwrap();
        // extension repeats the last slice
        let cubes = c.region_cubes(&grid, &c.regions.n, 8);
        assert_eq!(cubes.slice(6), cubes.slice(4));
        assert_ne!(cubes.slice(0), cubes.slice(4));
    }
}
