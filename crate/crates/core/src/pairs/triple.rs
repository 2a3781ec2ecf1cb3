//! Index triples and attractor-repeller decompositions.

use super::index_pair::{build_index_pair, verify_index_pair, IndexPair};
use super::invariant::invariant_part;
use super::sliced::SlicedCubeSet;
use crate::dynamics::TransitionGraph;
use crate::error::{Error, Result};

/// Nested sets N3 in N2 in N1 encoding an attractor-repeller decomposition;
/// (N1, N3) indexes the whole invariant set and (N2, N3) the attractor.
#[derive(Clone, Debug)]
pub struct IndexTriple {
    pub n1: SlicedCubeSet,
    pub n2: SlicedCubeSet,
    pub n3: SlicedCubeSet,
}

impl IndexTriple {
    pub fn outer_pair(&self) -> IndexPair {
        IndexPair {
            n1: self.n1.clone(),
            n2: self.n3.clone(),
        }
    }

    pub fn attractor_pair(&self) -> IndexPair {
        IndexPair {
            n1: self.n2.clone(),
            n2: self.n3.clone(),
        }
    }
}

/// Forward reachability within `within`, seeded at `seed`.
fn forward_reach(
    seed: &SlicedCubeSet,
    within: &SlicedCubeSet,
    graph: &TransitionGraph,
) -> SlicedCubeSet {
    let mut reach = seed.clone();
    let k_last = (within.slice_count() - 1).min(graph.last_slice());
    for k in 0..k_last {
        let cur: Vec<u32> = reach.slice(k).iter().copied().collect();
        for q in cur {
            for &c in &graph.targets(k, q).cubes {
                if within.contains(k + 1, c) {
                    reach.insert(k + 1, c);
                }
            }
        }
    }
    reach
}

/// Checks that no path leaves N_A into the ambient invariant part and
/// returns: exited mass must never re-enter N_A.
fn attractor_is_isolated(n: &SlicedCubeSet, n_a: &SlicedCubeSet, graph: &TransitionGraph) -> bool {
    // cubes just outside N_A reached from inside it
    let k_last = graph.last_slice();
    let mut outside = SlicedCubeSet::empty(n.slice_count());
    for k in 0..k_last {
        for &q in n_a.slice(k) {
            for &c in &graph.targets(k, q).cubes {
                if n.contains(k + 1, c) && !n_a.contains(k + 1, c) {
                    outside.insert(k + 1, c);
                }
            }
        }
    }
    if outside.is_empty() {
        return true;
    }
    // follow the exited mass through N \ N_A and watch for re-entry
    let mut frontier = outside;
    for k in 0..k_last {
        for &q in frontier.slice(k).clone().iter() {
            for &c in &graph.targets(k, q).cubes {
                if n_a.contains(k + 1, c) {
                    return false;
                }
                if n.contains(k + 1, c) {
                    frontier.insert(k + 1, c);
                }
            }
        }
    }
    true
}

/// Builds an index triple for the attractor isolated by N_A inside N:
/// (N1, N3) is the index pair on N and N2 adds the forward hull of the
/// attractor block.
pub fn build_index_triple(
    n: &SlicedCubeSet,
    n_a: &SlicedCubeSet,
    graph: &TransitionGraph,
    margin: usize,
) -> Result<IndexTriple> {
    if !n_a.is_subset_of(n) {
        return Err(Error::Precondition("N_A must be a subset of N".into()));
    }
    let inv_a = invariant_part(n_a, graph, margin);
    if inv_a.is_empty() {
        return Err(Error::Precondition(
            "N_A has an empty invariant part".into(),
        ));
    }
    if !attractor_is_isolated(n, n_a, graph) {
        return Err(Error::Precondition(
            "a path exits N_A and returns through the invariant part".into(),
        ));
    }
    let outer = build_index_pair(n, graph, margin)?;
    let attractor = build_index_pair(n_a, graph, margin)?;
    let a_block = forward_reach(&attractor.n1, &outer.n1, graph);
    let n2 = outer.n2.union(&a_block);
    let triple = IndexTriple {
        n1: outer.n1,
        n2,
        n3: outer.n2,
    };
    for (pair, name) in [
        (triple.outer_pair(), "outer"),
        (triple.attractor_pair(), "attractor"),
    ] {
        let (ok, violations) = verify_index_pair(&pair, graph);
        if !ok {
            let v = &violations[0];
            let _ = name;
            return Err(Error::IrregularConstruction {
                rule: v.rule,
                slice: v.slice,
                cube: v.cube,
            });
        }
    }
    if !triple.n3.is_subset_of(&triple.n2) || !triple.n2.is_subset_of(&triple.n1) {
        return Err(Error::Precondition("triple nesting failed".into()));
    }
    Ok(triple)
}

/// Classification of the decomposition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArClassification {
    pub a_forward_closed: bool,
    pub r_backward_closed: bool,
    pub a_to_r_path: bool,
    pub transit_cubes: usize,
}

/// Attractor-repeller decomposition check on K: A must be forward-closed
/// within K, R backward-closed within K; then every path in K stays in A,
/// stays in R, or runs from the R side to the A side, and in particular no
/// path from A to R exists.
pub fn verify_ar_decomposition(
    k_set: &SlicedCubeSet,
    a: &SlicedCubeSet,
    r: &SlicedCubeSet,
    graph: &TransitionGraph,
) -> (bool, ArClassification) {
    let k_last = (k_set.slice_count() - 1).min(graph.last_slice());
    let mut a_fwd = true;
    let mut r_bwd = true;
    for k in 0..k_last {
        for &q in a.slice(k) {
            for &c in &graph.targets(k, q).cubes {
                if k_set.contains(k + 1, c) && !a.contains(k + 1, c) {
                    a_fwd = false;
                }
            }
        }
        for &q in k_set.slice(k) {
            if a.contains(k, q) || r.contains(k, q) {
                continue;
            }
            for &c in &graph.targets(k, q).cubes {
                if r.contains(k + 1, c) {
                    r_bwd = false;
                }
            }
        }
    }
    // reachability assertion: forward closure of A within K never meets R
    let reach = forward_reach(a, k_set, graph);
    let a_to_r = !reach.disjoint_from(r);
    let mut transit = 0usize;
    for k in 0..=k_last {
        for &q in k_set.slice(k) {
            if !a.contains(k, q) && !r.contains(k, q) {
                transit += 1;
            }
        }
    }
    let ok = a_fwd && r_bwd && !a_to_r;
    (
        ok,
        ArClassification {
            a_forward_closed: a_fwd,
            r_backward_closed: r_bwd,
            a_to_r_path: a_to_r,
            transit_cubes: transit,
        },
    )
}
