//! Pipeline orchestration: dynamics, pairs and triples, homology, the
//! direct limit, the long exact sequence, connectedness, witnesses, and the
//! perturbation sweep.

use super::config::{ForcingConfig, ScenarioConfig};
use super::report::{
    ArSummary, Diagnostic, IndexSummary, LesSummary, ReportDocument, SliceBetti, SweepRow,
    TransitionEntry, UcSummary, WitnessSummary,
};
use crate::dynamics::{build_transition_graph, TransitionGraph};
use crate::error::{Error, Result};
use crate::homology::CoefficientRing;
use crate::index::{
    conley_index, les_of_triple, orbit_detector, prepared_pair, slice_pair_homology,
    uniform_connectedness, ConleyParams, TransitionOutcome,
};
use crate::pairs::{
    build_index_pair, build_index_triple, invariant_part, isolating_check, verify_ar_decomposition,
    SlicedCubeSet,
};

fn diag(diags: &mut Vec<Diagnostic>, stage: &str, e: &Error) {
    diags.push(Diagnostic {
        stage: stage.into(),
        code: e.code().into(),
        message: e.to_string(),
    });
}

/// RK4 substeps per transition: step length capped at 0.05 time units.
fn rk4_steps(tau: f64) -> u32 {
    ((tau / 0.05).ceil() as u32).max(4)
}

/// Runs the full pipeline for one config. Stage failures are recorded as
/// diagnostics and downstream stages are skipped; the document is always
/// produced. Errors are returned only for invalid configs.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ReportDocument> {
    config.validate()?;
    let threads = std::env::var("CONLEY_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
    pool.install(|| Ok(run_stages(config, true)))
}

fn run_stages(config: &ScenarioConfig, with_sweep: bool) -> ReportDocument {
    let mut diags: Vec<Diagnostic> = Vec::new();
    let ring = config.ring().expect("validated config has a ring");
    let field = config.vector_field().expect("validated config has a field");
    let grid = config.make_grid().expect("validated config has a grid");
    let k_end = config.time.slices;
    let extension = config.time.extension_or_default();
    let burn_in = config.time.burn_in_or_default();
    let margin = config.time.margin;
    let m = config.homology.thickening_m;
    let window_len = k_end + 1;

    let graph = build_transition_graph(
        &field,
        &grid,
        config.time.tau,
        k_end + extension,
        config.grid.padding,
        rk4_steps(config.time.tau),
    );
    let ext_slices = graph.slice_count();
    let region = |spec: &super::config::RegionSpec| config.region_cubes(&grid, spec, ext_slices);
    let n = region(&config.regions.n);
    let n_a = config.regions.n_a.as_ref().map(&region);
    let n_r = config.regions.n_r.as_ref().map(&region);
    let u_a = config.regions.u_a.as_ref().map(&region);
    let u_r = config.regions.u_r.as_ref().map(&region);

    let params = ConleyParams {
        ring,
        thickening: m,
        burn_in,
        margin,
        window_end: k_end,
    };

    let isolating = isolating_check(&n, &graph, margin);
    if !isolating {
        diag(
            &mut diags,
            "isolation",
            &Error::Precondition("invariant part touches the boundary of N".into()),
        );
    }
    let k_set = invariant_part(&n, &graph, margin).truncated(window_len);

    let mut slice_betti: Vec<SliceBetti> = Vec::new();
    let mut index_summary = None;
    let mut transitions_out = None;
    let mut stabilization = None;
    let mut main_pair = None;

    if isolating {
        if ring == CoefficientRing::Z {
            // ranks and torsion of the slice pairs only; the direct system
            // needs a field
            match prepared_pair(&n, &graph, &params) {
                Ok(pair) => {
                    for k in burn_in..=k_end {
                        match slice_pair_homology(&pair, &grid, k, ring) {
                            Ok(h) => slice_betti.push(SliceBetti {
                                slice: k,
                                pair: "total".into(),
                                ranks: h.trimmed_ranks(),
                                torsion: h.torsion.clone(),
                            }),
                            Err(e) => diag(&mut diags, "slice_homology", &e),
                        }
                    }
                    main_pair = Some(pair);
                }
                Err(e) => diag(&mut diags, "index_pair", &e),
            }
            diag(
                &mut diags,
                "direct_limit",
                &Error::UnsupportedRing {
                    op: "transition maps",
                    ring: ring.to_string(),
                },
            );
        } else {
            match conley_index(&n, &graph, &params) {
                Ok((result, system, pair)) => {
                    for (k, h) in &system.slice_homology {
                        slice_betti.push(SliceBetti {
                            slice: *k,
                            pair: "total".into(),
                            ranks: h.trimmed_ranks(),
                            torsion: Vec::new(),
                        });
                    }
                    let laws_ok = transition_laws_ok(&system);
                    index_summary = Some(IndexSummary {
                        stabilization: result.stabilization,
                        ranks: result.limit.trimmed_ranks(),
                        invertible_transitions: result.witnesses,
                        transition_laws_ok: laws_ok,
                    });
                    if config.output.emit_matrices {
                        transitions_out = Some(
                            system
                                .transitions
                                .iter()
                                .map(|(&(k, l), out)| TransitionEntry {
                                    from: k,
                                    to: l,
                                    matrices: out.map().map(|g| {
                                        g.matrices.iter().map(|m| m.to_strings()).collect()
                                    }),
                                })
                                .collect(),
                        );
                    }
                    stabilization = Some(result.stabilization);
                    main_pair = Some(pair);
                }
                Err(e) => diag(&mut diags, "conley_index", &e),
            }
        }
    }

    // attractor-repeller stage
    let mut les_summary = None;
    let mut ar_summary = None;
    let mut connection = None;
    if let Some(n_a_set) = &n_a {
        if isolating && ring != CoefficientRing::Z {
            match build_index_triple(&n, n_a_set, &graph, margin) {
                Ok(triple) => {
                    let at = stabilization.unwrap_or(burn_in);
                    match les_of_triple(&triple, &graph, m, ring, window_len, at) {
                        Ok(les) => {
                            // per-slice tables of the same thickened pairs
                            // the sequence is assembled from
                            if let Ok(thick) =
                                crate::index::thickened_triple(&triple, &graph, m, window_len)
                            {
                                for k in burn_in..=k_end {
                                    for (name, pair) in [
                                        ("attractor", thick.attractor_pair()),
                                        ("repeller", {
                                            let mut p = thick.outer_pair();
                                            p.n2 = thick.n2.clone();
                                            p
                                        }),
                                    ] {
                                        if let Ok(h) = slice_pair_homology(&pair, &grid, k, ring) {
                                            slice_betti.push(SliceBetti {
                                                slice: k,
                                                pair: name.into(),
                                                ranks: h.trimmed_ranks(),
                                                torsion: Vec::new(),
                                            });
                                        }
                                    }
                                }
                            }
                            les_summary = Some(LesSummary {
                                slice: les.slice,
                                total_ranks: les.h_total.trimmed_ranks(),
                                attractor_ranks: les.h_attractor.trimmed_ranks(),
                                repeller_ranks: les.h_repeller.trimmed_ranks(),
                                connecting_ranks: les.connecting.ranks(),
                                exact: les.exact,
                            });
                            // connection witness wants the gap constraint
                            if let (Some(u_a), Some(u_r), Some(n_r_set)) = (&u_a, &u_r, &n_r) {
                                let r_block = k_set.intersect(&n_r_set.truncated(window_len));
                                let a_block = k_set.intersect(&n_a_set.truncated(window_len));
                                match crate::index::connection_witness(
                                    &k_set,
                                    &r_block,
                                    &a_block,
                                    &u_a.truncated(window_len),
                                    &u_r.truncated(window_len),
                                    &graph,
                                    margin,
                                    k_end,
                                ) {
                                    Ok(w) => connection = Some(WitnessSummary::from_path(&w)),
                                    Err(e) => diag(&mut diags, "connection_witness", &e),
                                }
                            }
                        }
                        Err(e) => diag(&mut diags, "les", &e),
                    }
                }
                Err(e) => diag(&mut diags, "index_triple", &e),
            }
        }
        if let Some(n_r_set) = &n_r {
            let a = k_set.intersect(&n_a_set.truncated(window_len));
            let r = k_set.intersect(&n_r_set.truncated(window_len));
            let (ok, class) = verify_ar_decomposition(&k_set, &a, &r, &graph);
            ar_summary = Some(ArSummary {
                ok,
                a_forward_closed: class.a_forward_closed,
                r_backward_closed: class.r_backward_closed,
                a_to_r_path: class.a_to_r_path,
                transit_cubes: class.transit_cubes,
            });
        }
    }

    // uniform connectedness over the trusted tail
    let mut uc_summary = None;
    if let (Some(u_a), Some(u_r)) = (&u_a, &u_r) {
        match uniform_connectedness(
            &k_set,
            &u_a.truncated(window_len),
            &u_r.truncated(window_len),
            burn_in,
            k_end,
        ) {
            Ok(uc) => {
                uc_summary = Some(UcSummary {
                    verdict: if uc.uniformly_connected {
                        "uniformly connected".into()
                    } else {
                        "not uniformly connected".into()
                    },
                    witness_slice: uc.witness_slice,
                    gap_slices: uc.gap_cubes.len(),
                    degenerate: uc.degenerate,
                });
            }
            Err(e) => diag(&mut diags, "uniform_connectedness", &e),
        }
    }

    // orbit witness in the pair interior
    let mut orbit = None;
    if let Some(pair) = &main_pair {
        if !pair.is_empty() {
            if let Some(w) = orbit_detector(pair, &graph, burn_in) {
                orbit = Some(WitnessSummary::from_path(&w));
            }
        }
    }

    // solutions inside the attractor and repeller neighborhoods
    let r_solution = n_r
        .as_ref()
        .map(|set| sub_pair_solution(set, &graph, margin, burn_in, window_len));
    let a_solution = n_a
        .as_ref()
        .map(|set| sub_pair_solution(set, &graph, margin, burn_in, window_len));

    let sweep = if with_sweep {
        config
            .sweep
            .as_ref()
            .map(|s| perturbation_sweep(config, &s.amplitudes))
    } else {
        None
    };

    ReportDocument {
        version: env!("CARGO_PKG_VERSION").into(),
        config_hash: super::report::config_hash(config),
        scenario: config.clone(),
        isolating: Some(isolating),
        slice_betti,
        conley_index: index_summary,
        transitions: transitions_out,
        les: les_summary,
        ar_decomposition: ar_summary,
        uniform_connectedness: uc_summary,
        orbit_witness: orbit,
        connection_witness: connection,
        r_solution,
        a_solution,
        sweep,
        diagnostics: diags,
    }
}

/// A full solution inside the given neighborhood: an orbit witness of the
/// index pair built on it.
fn sub_pair_solution(
    set: &SlicedCubeSet,
    graph: &TransitionGraph,
    margin: usize,
    burn_in: usize,
    window_len: usize,
) -> bool {
    match build_index_pair(set, graph, margin) {
        Ok(pair) if !pair.is_empty() => {
            orbit_detector(&pair.truncated(window_len), graph, burn_in).is_some()
        }
        _ => false,
    }
}

fn transition_laws_ok(system: &crate::index::SliceHomologySystem) -> bool {
    // identity at every slice
    for k in system.burn_in..=system.window_end {
        match system.transitions.get(&(k, k)) {
            Some(TransitionOutcome::Iso(g)) if g.is_identity() => {}
            _ => return false,
        }
    }
    // composition law on every computed triple, exact matrix equality
    for (&(k, l), g_kl) in &system.transitions {
        let Some(g_kl) = g_kl.map() else { continue };
        for m in l..=system.window_end {
            let (Some(g_lm), Some(g_km)) = (
                system.transitions.get(&(l, m)).and_then(|o| o.map()),
                system.transitions.get(&(k, m)).and_then(|o| o.map()),
            ) else {
                continue;
            };
            if !g_kl.then(g_lm).matrices_eq(g_km) {
                return false;
            }
        }
    }
    true
}

/// Reruns the pipeline with forcing amplitude epsilon * sin(freq t) for each
/// amplitude; per-amplitude failures are recorded in the row, not fatal.
pub fn perturbation_sweep(base: &ScenarioConfig, amplitudes: &[f64]) -> Vec<SweepRow> {
    let frequency = base.sweep.as_ref().map(|s| s.frequency).unwrap_or(1.0);
    amplitudes
        .iter()
        .map(|&eps| {
            let mut cfg = base.clone();
            cfg.system.forcing = ForcingConfig {
                kind: "sinusoid".into(),
                amplitude: eps,
                frequency,
                h_embedded: base.system.forcing.h_embedded,
            };
            cfg.sweep = None;
            let doc = run_stages(&cfg, false);
            SweepRow {
                epsilon: eps,
                index_ranks: doc.conley_index.as_ref().map(|s| s.ranks.clone()),
                connecting_ranks: doc.les.as_ref().map(|l| l.connecting_ranks.clone()),
                uniformly_connected: doc
                    .uniform_connectedness
                    .as_ref()
                    .map(|u| u.verdict == "uniformly connected"),
                orbit_found: doc.orbit_witness.is_some(),
                connection_found: doc.connection_witness.is_some(),
                r_solution: doc.r_solution.unwrap_or(false),
                a_solution: doc.a_solution.unwrap_or(false),
                diagnostics: doc.diagnostics,
            }
        })
        .collect()
}
