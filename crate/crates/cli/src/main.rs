//! Command-line driver: scenario runs, config validation, single-slice
//! homology, and perturbation sweeps.
//!
//! Exit codes: 0 on success, 1 on hard pipeline errors, 2 on config errors.

use clap::{Parser, Subcommand};
use conley_core::error::Error;
use conley_core::index::{prepared_pair, slice_pair_homology, ConleyParams};
use conley_core::scenario::{
    emit_report, perturbation_sweep, run_scenario, validate_config_file, EmitContext,
    ScenarioConfig,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "conley",
    about = "Combinatorial Conley indices, connecting homomorphisms and \
             uniform-connectedness experiments for time-sliced nonautonomous ODEs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write the report files.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override the report path from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a config; prints nothing on success.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Betti numbers of the index-pair slice at one time index.
    Homology {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        slice: usize,
    },
    /// Run only the perturbation sweep of the scenario.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Write the sweep table to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(path: &std::path::Path) -> Result<ScenarioConfig, ExitCode> {
    match validate_config_file(&path.to_string_lossy()) {
        Ok(c) => Ok(c),
        Err(Error::Config(errors)) => {
            for e in errors {
                eprintln!("config error: {e}");
            }
            Err(ExitCode::from(2))
        }
        Err(e) => {
            eprintln!("error: {e}");
            Err(ExitCode::from(2))
        }
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Validate { config } => match load(&config) {
            Ok(_) => ExitCode::SUCCESS,
            Err(code) => code,
        },
        Command::Run { config, out } => {
            let mut cfg = match load(&config) {
                Ok(c) => c,
                Err(code) => return code,
            };
            if let Some(out) = out {
                cfg.output.path = out.to_string_lossy().into_owned();
            }
            let doc = match run_scenario(&cfg) {
                Ok(doc) => doc,
                Err(Error::Config(errors)) => {
                    for e in errors {
                        eprintln!("config error: {e}");
                    }
                    return ExitCode::from(2);
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let grid = cfg.make_grid().expect("validated grid");
            let path = PathBuf::from(&cfg.output.path);
            match emit_report(&doc, &path, &EmitContext { grid: &grid }) {
                Ok(files) => {
                    for f in files {
                        println!("wrote {}", f.display());
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            for d in &doc.diagnostics {
                eprintln!("diagnostic [{}] {}: {}", d.stage, d.code, d.message);
            }
            if doc.has_hard_error() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Homology { config, slice } => {
            let cfg = match load(&config) {
                Ok(c) => c,
                Err(code) => return code,
            };
            match slice_homology_cmd(&cfg, slice) {
                Ok(json) => {
                    println!("{json}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Sweep { config, out } => {
            let cfg = match load(&config) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let Some(sweep) = cfg.sweep.clone() else {
                eprintln!("config error: sweep.amplitudes missing");
                return ExitCode::from(2);
            };
            let rows = perturbation_sweep(&cfg, &sweep.amplitudes);
            let json = serde_json::to_string_pretty(&rows).expect("rows serialize");
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, json + "\n") {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                    println!("wrote {}", path.display());
                }
                None => println!("{json}"),
            }
            ExitCode::SUCCESS
        }
    }
}

fn slice_homology_cmd(cfg: &ScenarioConfig, slice: usize) -> conley_core::Result<String> {
    if slice > cfg.time.slices {
        return Err(Error::Precondition(format!(
            "slice {slice} exceeds time.slices = {}",
            cfg.time.slices
        )));
    }
    let field = cfg.vector_field()?;
    let grid = cfg.make_grid()?;
    let steps = ((cfg.time.tau / 0.05).ceil() as u32).max(4);
    let graph = conley_core::dynamics::build_transition_graph(
        &field,
        &grid,
        cfg.time.tau,
        cfg.time.slices + cfg.time.extension_or_default(),
        cfg.grid.padding,
        steps,
    );
    let n = cfg.region_cubes(&grid, &cfg.regions.n, graph.slice_count());
    let params = ConleyParams {
        ring: cfg.ring()?,
        thickening: cfg.homology.thickening_m,
        burn_in: cfg.time.burn_in_or_default(),
        margin: cfg.time.margin,
        window_end: cfg.time.slices,
    };
    let pair = prepared_pair(&n, &graph, &params)?;
    let h = slice_pair_homology(&pair, &grid, slice, params.ring)?;
    #[derive(serde::Serialize)]
    struct SliceOut {
        slice: usize,
        ring: String,
        ranks: Vec<usize>,
        torsion: Vec<Vec<i128>>,
    }
    Ok(serde_json::to_string_pretty(&SliceOut {
        slice,
        ring: params.ring.to_string(),
        ranks: h.trimmed_ranks(),
        torsion: h.torsion,
    })
    .expect("serializes"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // the pipeline must never bring the process down with a panic
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli))) {
        Ok(code) => code,
        Err(_) => {
            eprintln!("error: internal panic");
            ExitCode::from(1)
        }
    }
}
