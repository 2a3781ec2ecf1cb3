//! End-to-end runs of the bundled scenarios through the report pipeline.

use conley_core::scenario::{builtin, run_scenario};

#[test]
fn saddle_scenario_report() {
    let t0 = std::time::Instant::now();
    let doc = run_scenario(&builtin::saddle2d()).unwrap();
    eprintln!("saddle runtime: {:?}", t0.elapsed());
    eprintln!("diagnostics: {:?}", doc.diagnostics);
    assert_eq!(doc.isolating, Some(true));
    let idx = doc.conley_index.as_ref().expect("index computed");
    assert_eq!(idx.ranks, vec![0, 1]);
    assert_eq!(idx.stabilization, 10);
    assert!(idx.transition_laws_ok);
    assert!(doc.orbit_witness.is_some());
    assert!(doc.diagnostics.is_empty());
}

#[test]
fn logistic_scenario_report() {
    let t0 = std::time::Instant::now();
    let mut config = builtin::logistic1d();
    config.sweep = None; // sweep exercised separately
    let doc = run_scenario(&config).unwrap();
    eprintln!("logistic runtime: {:?}", t0.elapsed());
    eprintln!("diagnostics: {:?}", doc.diagnostics);
    eprintln!("les: {:?}", doc.les);
    eprintln!("uc: {:?}", doc.uniform_connectedness);
    eprintln!("ar: {:?}", doc.ar_decomposition);
    eprintln!("r/a solutions: {:?} {:?}", doc.r_solution, doc.a_solution);
    assert_eq!(doc.isolating, Some(true));
    let les = doc.les.as_ref().expect("les computed");
    assert!(les.exact);
    assert_eq!(les.connecting_ranks[1], 1);
    let uc = doc.uniform_connectedness.as_ref().expect("uc computed");
    assert_eq!(uc.verdict, "uniformly connected");
    assert!(doc.connection_witness.is_some());
    assert!(doc.orbit_witness.is_some());
    assert_eq!(doc.ar_decomposition.as_ref().map(|a| a.ok), Some(true));
    assert_eq!(doc.r_solution, Some(true));
    assert_eq!(doc.a_solution, Some(true));
    assert!(doc.diagnostics.is_empty());
}

#[test]
fn disconnected_scenario_report() {
    let t0 = std::time::Instant::now();
    let doc = run_scenario(&builtin::disconnected()).unwrap();
    eprintln!("disconnected runtime: {:?}", t0.elapsed());
    eprintln!("diagnostics: {:?}", doc.diagnostics);
    eprintln!("les: {:?}", doc.les);
    eprintln!("uc: {:?}", doc.uniform_connectedness);
    assert_eq!(doc.isolating, Some(true));
    let les = doc.les.as_ref().expect("les computed");
    assert!(les.exact);
    assert!(les.connecting_ranks.iter().all(|&r| r == 0));
    let uc = doc.uniform_connectedness.as_ref().expect("uc computed");
    assert_eq!(uc.verdict, "not uniformly connected");
    assert_eq!(uc.witness_slice, Some(10));
    // the connection witness must fail: recorded as a soft diagnostic
    assert!(doc.connection_witness.is_none());
    assert!(doc.diagnostics.iter().any(|d| d.code == "no_connection"));
}

/// Nontrivial connecting maps force a uniform connection and vice versa:
/// checked across every bundled scenario, together with the orbit-detector
/// consistency for nontrivial limits.
#[test]
fn connecting_map_and_connectedness_are_consistent() {
    for (name, mut config) in conley_core::scenario::builtin::all() {
        config.sweep = None;
        let doc = run_scenario(&config).unwrap();
        let del_trivial = doc
            .les
            .as_ref()
            .map(|l| l.connecting_ranks.iter().all(|&r| r == 0));
        if let (Some(uc), Some(trivial)) = (&doc.uniform_connectedness, del_trivial) {
            if uc.verdict == "not uniformly connected" {
                assert!(
                    trivial,
                    "{name}: covered slices demand a trivial connecting map"
                );
            }
            if !trivial {
                // contrapositive: every tested tail slice shows a gap cube
                let tested = config.time.slices - config.time.burn_in_or_default() + 1;
                assert_eq!(uc.verdict, "uniformly connected", "{name}");
                assert_eq!(
                    uc.gap_slices, tested,
                    "{name}: gap cube on every tail slice"
                );
            }
        }
        if let Some(idx) = &doc.conley_index {
            if idx.ranks.iter().any(|&r| r > 0) {
                assert!(
                    doc.orbit_witness.is_some(),
                    "{name}: nontrivial limit demands a spanning orbit"
                );
            }
        }
    }
}

/// The two-mode spectral truncation behaves like a planar saddle at the
/// origin: one unstable direction.
#[test]
fn spectral_two_mode_example_has_a_saddle_index() {
    use conley_core::scenario::*;
    let config = ScenarioConfig {
        system: SystemConfig {
            name: "spectral2m".into(),
            params: [("mu".to_string(), 2.0)].into_iter().collect(),
            forcing: ForcingConfig::default(),
        },
        grid: GridConfig {
            lower: vec![-0.8, -0.8],
            upper: vec![0.8, 0.8],
            divisions: vec![16, 16],
            padding: 0,
        },
        time: TimeConfig {
            tau: 0.4,
            slices: 16,
            burn_in: None,
            margin: 1,
            extension: None,
        },
        regions: RegionsConfig {
            n: RegionSpec::Constant(vec![BoxSpec {
                lo: vec![-0.8, -0.8],
                hi: vec![0.8, 0.8],
            }]),
            n_a: None,
            n_r: None,
            u_a: None,
            u_r: None,
        },
        homology: HomologyConfig::default(),
        sweep: None,
        output: OutputConfig::default(),
    };
    let doc = run_scenario(&config).unwrap();
    assert!(doc.diagnostics.is_empty(), "{:?}", doc.diagnostics);
    let idx = doc.conley_index.expect("index computed");
    assert_eq!(idx.ranks, vec![0, 1]);
}

/// Translation dynamics has an empty invariant part: the pipeline reports a
/// trivial index rather than failing.
#[test]
fn empty_invariant_set_reports_trivial_index() {
    use conley_core::scenario::*;
    let config = ScenarioConfig {
        system: SystemConfig {
            name: "custom1d".into(),
            params: [("c0".to_string(), 1.0)].into_iter().collect(),
            forcing: ForcingConfig::default(),
        },
        grid: GridConfig {
            lower: vec![-1.0],
            upper: vec![1.0],
            divisions: vec![16],
            padding: 0,
        },
        time: TimeConfig {
            tau: 0.5,
            slices: 12,
            burn_in: None,
            margin: 1,
            extension: None,
        },
        regions: RegionsConfig {
            n: RegionSpec::Constant(vec![BoxSpec {
                lo: vec![-1.0],
                hi: vec![1.0],
            }]),
            n_a: None,
            n_r: None,
            u_a: None,
            u_r: None,
        },
        homology: HomologyConfig::default(),
        sweep: None,
        output: OutputConfig::default(),
    };
    let doc = run_scenario(&config).unwrap();
    let idx = doc.conley_index.expect("index computed");
    assert!(idx.ranks.iter().all(|&r| r == 0));
    assert!(doc.orbit_witness.is_none());
}

/// Report emission contract: optional sections toggle cleanly and the
/// witness CSV carries one row per path node.
#[test]
fn report_emission_matches_the_documented_shapes() {
    use conley_core::scenario::{emit_report, EmitContext};
    let dir = std::env::temp_dir().join("conley_emit_shapes");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();

    let mut config = conley_core::scenario::builtin::logistic1d();
    config.sweep = None;
    config.output.emit_witness_csv = true;
    config.output.emit_betti_csv = true;
    let doc = run_scenario(&config).unwrap();
    let grid = config.make_grid().unwrap();
    let files = emit_report(&doc, &dir.join("report.json"), &EmitContext { grid: &grid }).unwrap();
    assert_eq!(files.len(), 3);

    // matrices omitted by default, present when requested
    let text = std::fs::read_to_string(&files[0]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v.get("transitions").is_none());
    let mut with_m = config.clone();
    with_m.output.emit_matrices = true;
    let doc_m = run_scenario(&with_m).unwrap();
    let files_m = emit_report(
        &doc_m,
        &dir.join("with_m.json"),
        &EmitContext { grid: &grid },
    )
    .unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&files_m[0]).unwrap()).unwrap();
    assert!(v["transitions"].as_array().is_some_and(|t| !t.is_empty()));

    // witness CSV: header + one row per node of each witness path
    let csv = std::fs::read_to_string(&files[1]).unwrap();
    let rows = csv.lines().count() - 1;
    let expected = doc.orbit_witness.as_ref().map_or(0, |w| w.cubes.len())
        + doc.connection_witness.as_ref().map_or(0, |w| w.cubes.len());
    assert_eq!(rows, expected);
    assert!(csv.starts_with("kind,slice,cube,lo_0,hi_0"));

    // betti CSV covers every (slice, pair, degree) triple of the table
    let csv = std::fs::read_to_string(&files[2]).unwrap();
    let rows = csv.lines().count() - 1;
    let expected: usize = doc.slice_betti.iter().map(|b| b.ranks.len()).sum();
    assert_eq!(rows, expected);
}

/// Rational coefficients must agree with F2 on the bundled scenarios (no
/// two-torsion artifacts at these resolutions).
#[test]
fn rational_and_mod_two_runs_agree() {
    let mut config = conley_core::scenario::builtin::logistic1d();
    config.sweep = None;
    let doc_f2 = run_scenario(&config).unwrap();
    config.homology.ring = "Q".into();
    let doc_q = run_scenario(&config).unwrap();
    let f2 = doc_f2.les.as_ref().unwrap();
    let q = doc_q.les.as_ref().unwrap();
    assert_eq!(f2.connecting_ranks, q.connecting_ranks);
    assert_eq!(f2.repeller_ranks, q.repeller_ranks);
    assert_eq!(f2.attractor_ranks, q.attractor_ranks);
    assert!(q.exact);
}

/// Integer coefficients report slice ranks and torsion only; the direct
/// system is skipped with a diagnostic.
#[test]
fn integer_ring_reports_slice_data_only() {
    let mut config = conley_core::scenario::builtin::logistic1d();
    config.sweep = None;
    config.homology.ring = "Z".into();
    let doc = run_scenario(&config).unwrap();
    assert!(doc.conley_index.is_none());
    assert!(!doc.slice_betti.is_empty());
    assert!(doc.diagnostics.iter().any(|d| d.code == "unsupported_ring"));
    assert!(!doc.has_hard_error());
}

/// With one cell of padding the saddle's per-step drift never outruns the
/// inflation at this resolution, every cube becomes self-looping, and the
/// isolation precondition fails; the run degrades gracefully.
#[test]
fn saddle_with_padding_one_loses_isolation() {
    let mut config = conley_core::scenario::builtin::saddle2d();
    config.grid.padding = 1;
    let doc = run_scenario(&config).unwrap();
    assert_eq!(doc.isolating, Some(false));
    assert!(doc.conley_index.is_none());
    assert!(doc
        .diagnostics
        .iter()
        .any(|d| d.stage == "isolation" && d.code == "precondition_violation"));
    assert!(!doc.has_hard_error());
}

/// The signed chain machinery through three-dimensional telescope blocks:
/// the saddle stabilizes identically over the rationals.
#[test]
fn saddle_over_the_rationals_matches_mod_two() {
    let mut config = conley_core::scenario::builtin::saddle2d();
    config.homology.ring = "Q".into();
    let doc = run_scenario(&config).unwrap();
    let idx = doc.conley_index.expect("index computed");
    assert_eq!(idx.ranks, vec![0, 1]);
    assert_eq!(idx.stabilization, 10);
    assert!(idx.transition_laws_ok);
    assert!(doc.diagnostics.is_empty());
}

/// Forcing composed with the time embedding runs through the whole
/// pipeline and preserves the connection structure.
#[test]
fn h_embedded_forcing_preserves_the_connection() {
    let mut config = conley_core::scenario::builtin::logistic1d();
    config.system.forcing.kind = "sinusoid".into();
    config.system.forcing.amplitude = 0.02;
    config.system.forcing.h_embedded = true;
    config.sweep = None;
    let doc = run_scenario(&config).unwrap();
    assert!(doc.diagnostics.is_empty(), "{:?}", doc.diagnostics);
    let les = doc.les.expect("les computed");
    assert_eq!(les.connecting_ranks[1], 1);
    assert!(doc.connection_witness.is_some());
}

/// The bundled scenario files must stay in lockstep with the builtin
/// constructors (regenerate with the write_scenarios example).
#[test]
fn bundled_files_match_the_builtin_constructors() {
    let dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    for (name, expected) in conley_core::scenario::builtin::all() {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        let mut parsed = conley_core::scenario::parse_config(&text).unwrap();
        // the generator pins output paths and CSV switches; everything else
        // must agree exactly
        parsed.output = expected.output.clone();
        assert_eq!(parsed, expected, "{name}");
    }
}
