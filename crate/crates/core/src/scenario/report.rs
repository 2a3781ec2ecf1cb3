//! The self-describing report document and its emission to disk.
//!
//! Reports serialize with a stable key order and no nondeterministic
//! content: identical configs yield byte-identical files.

use super::config::ScenarioConfig;
use crate::error::Result;
use crate::index::PathWitness;
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Serialize)]
pub struct Diagnostic {
    pub stage: String,
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceBetti {
    pub slice: usize,
    pub pair: String,
    pub ranks: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<Vec<i128>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexSummary {
    pub stabilization: usize,
    pub ranks: Vec<usize>,
    pub invertible_transitions: usize,
    /// identity and composition laws of the transition family, checked as
    /// exact matrix identities
    pub transition_laws_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitionEntry {
    pub from: usize,
    pub to: usize,
    /// per-degree matrices as exact strings; None when the inclusion failed
    pub matrices: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesSummary {
    pub slice: usize,
    pub total_ranks: Vec<usize>,
    pub attractor_ranks: Vec<usize>,
    pub repeller_ranks: Vec<usize>,
    pub connecting_ranks: Vec<usize>,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArSummary {
    pub ok: bool,
    pub a_forward_closed: bool,
    pub r_backward_closed: bool,
    pub a_to_r_path: bool,
    pub transit_cubes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct UcSummary {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_slice: Option<usize>,
    pub gap_slices: usize,
    pub degenerate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSummary {
    pub start_slice: usize,
    pub end_slice: usize,
    pub cubes: Vec<u32>,
}

impl WitnessSummary {
    pub fn from_path(w: &PathWitness) -> Self {
        WitnessSummary {
            start_slice: w.start_slice,
            end_slice: w.end_slice(),
            cubes: w.cubes.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_ranks: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connecting_ranks: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniformly_connected: Option<bool>,
    pub orbit_found: bool,
    pub connection_found: bool,
    pub r_solution: bool,
    pub a_solution: bool,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub version: String,
    pub config_hash: String,
    pub scenario: ScenarioConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isolating: Option<bool>,
    pub slice_betti: Vec<SliceBetti>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conley_index: Option<IndexSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transitions: Option<Vec<TransitionEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub les: Option<LesSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ar_decomposition: Option<ArSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniform_connectedness: Option<UcSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_witness: Option<WitnessSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection_witness: Option<WitnessSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_solution: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_solution: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepRow>>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ReportDocument {
    /// Whether any recorded diagnostic is a hard failure (exit code 1).
    pub fn has_hard_error(&self) -> bool {
        let hard = |d: &Diagnostic| matches!(d.code.as_str(), "exactness_failure" | "io_error");
        self.diagnostics.iter().any(hard)
            || self
                .sweep
                .iter()
                .flatten()
                .any(|row| row.diagnostics.iter().any(hard))
    }
}

/// FNV-1a over the canonical JSON encoding of the config.
pub fn config_hash(config: &ScenarioConfig) -> String {
    let text = serde_json::to_string(config).expect("config serializes");
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.as_bytes() {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

/// Grid geometry needed to resolve cube ids into real boxes in the CSVs.
pub struct EmitContext<'a> {
    pub grid: &'a crate::dynamics::Grid,
}

/// Writes the report (and optional CSVs) next to `path`:
/// `<stem>_witness.csv` holds witness paths, `<stem>_betti.csv` the
/// per-slice Betti curves. Returns the files written.
pub fn emit_report(
    doc: &ReportDocument,
    path: &Path,
    ctx: &EmitContext<'_>,
) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut json = serde_json::to_string_pretty(doc).expect("report serializes");
    json.push('\n');
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, json)?;
    written.push(path.to_path_buf());

    let stem = path.with_extension("");
    let stem = stem.to_string_lossy();
    if doc.scenario.output.emit_witness_csv {
        let mut csv = String::new();
        let d = ctx.grid.dim();
        csv.push_str("kind,slice,cube");
        for a in 0..d {
            csv.push_str(&format!(",lo_{a},hi_{a}"));
        }
        csv.push('\n');
        let mut push_rows = |kind: &str, w: &WitnessSummary| {
            for (i, &cube) in w.cubes.iter().enumerate() {
                let b = ctx.grid.cube_bounds(cube);
                csv.push_str(&format!("{kind},{},{cube}", w.start_slice + i));
                for a in 0..d {
                    csv.push_str(&format!(",{},{}", b.lo[a], b.hi[a]));
                }
                csv.push('\n');
            }
        };
        if let Some(w) = &doc.orbit_witness {
            push_rows("orbit", w);
        }
        if let Some(w) = &doc.connection_witness {
            push_rows("connection", w);
        }
        let p = PathBuf::from(format!("{stem}_witness.csv"));
        std::fs::write(&p, csv)?;
        written.push(p);
    }
    if doc.scenario.output.emit_betti_csv {
        let mut csv = String::from("slice,pair,degree,rank\n");
        for row in &doc.slice_betti {
            for (degree, rank) in row.ranks.iter().enumerate() {
                csv.push_str(&format!("{},{},{degree},{rank}\n", row.slice, row.pair));
            }
        }
        let p = PathBuf::from(format!("{stem}_betti.csv"));
        std::fs::write(&p, csv)?;
        written.push(p);
    }
    Ok(written)
}
