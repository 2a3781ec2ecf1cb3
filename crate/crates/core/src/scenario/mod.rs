//! Scenario ingestion, pipeline orchestration, and report emission.

mod config;
mod pipeline;
mod report;

pub use config::{
    builtin, parse_config, validate_config_file, BoxSpec, ForcingConfig, GridConfig,
    HomologyConfig, OutputConfig, RegionSpec, RegionsConfig, ScenarioConfig, SweepConfig,
    SystemConfig, TimeConfig,
};
pub use pipeline::{perturbation_sweep, run_scenario};
pub use report::{
    config_hash, emit_report, ArSummary, Diagnostic, EmitContext, IndexSummary, LesSummary,
    ReportDocument, SliceBetti, SweepRow, TransitionEntry, UcSummary, WitnessSummary,
};
