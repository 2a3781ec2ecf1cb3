//! Combinatorial index pairs on a transition graph.
//!
//! The exit condition is enforced in one-step form: a cube with any
//! successor leaving N1 must already belong to the exit set N2. This is
//! stricter than the trajectory form and implies it.

use super::invariant::invariant_part;
use super::sliced::SlicedCubeSet;
use crate::dynamics::TransitionGraph;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

pub const EXIT_INF: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPair {
    pub n1: SlicedCubeSet,
    pub n2: SlicedCubeSet,
}

impl IndexPair {
    pub fn slice_count(&self) -> usize {
        self.n1.slice_count()
    }

    pub fn is_empty(&self) -> bool {
        self.n1.is_empty()
    }

    /// The pair restricted to the first `len` slices. Constructions run on
    /// an extended window so the exit structure near the reporting horizon
    /// is computed with full forward room; the truncated pair inherits the
    /// one-step pair conditions.
    pub fn truncated(&self, len: usize) -> IndexPair {
        IndexPair {
            n1: self.n1.truncated(len),
            n2: self.n2.truncated(len),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub slice: usize,
    pub cube: u32,
}

/// Forward hull of `seed` within `within`: repeatedly add successors that
/// stay inside `within`.
fn forward_hull(
    seed: &SlicedCubeSet,
    within: &SlicedCubeSet,
    graph: &TransitionGraph,
) -> SlicedCubeSet {
    let mut hull = seed.clone();
    let k_last = (within.slice_count() - 1).min(graph.last_slice());
    for k in 0..k_last {
        let current: Vec<u32> = hull.slice(k).iter().copied().collect();
        for q in current {
            for &c in &graph.targets(k, q).cubes {
                if within.contains(k + 1, c) {
                    hull.insert(k + 1, c);
                }
            }
        }
    }
    hull
}

/// Builds an index pair on N: N1 is the forward hull of the invariant part
/// within N, N2 the forward hull (within N1) of the cubes whose image leaves
/// N1. An empty invariant part yields the empty pair.
pub fn build_index_pair(
    n: &SlicedCubeSet,
    graph: &TransitionGraph,
    margin: usize,
) -> Result<IndexPair> {
    let inv = invariant_part(n, graph, margin);
    if inv.is_empty() {
        return Ok(IndexPair {
            n1: SlicedCubeSet::empty(n.slice_count()),
            n2: SlicedCubeSet::empty(n.slice_count()),
        });
    }
    let n1 = forward_hull(&inv, n, graph);
    let k_last = graph.last_slice();
    let mut exit = SlicedCubeSet::empty(n.slice_count());
    for k in 0..k_last {
        for &q in n1.slice(k) {
            let t = graph.targets(k, q);
            if t.escaped || t.cubes.iter().any(|c| !n1.contains(k + 1, *c)) {
                exit.insert(k, q);
            }
        }
    }
    let n2 = forward_hull(&exit, &n1, graph);
    let pair = IndexPair { n1, n2 };
    let (ok, violations) = verify_index_pair(&pair, graph);
    if !ok {
        let v = &violations[0];
        return Err(Error::IrregularConstruction {
            rule: v.rule,
            slice: v.slice,
            cube: v.cube,
        });
    }
    Ok(pair)
}

/// Independent re-verification of the combinatorial index pair conditions.
pub fn verify_index_pair(pair: &IndexPair, graph: &TransitionGraph) -> (bool, Vec<Violation>) {
    let mut violations = Vec::new();
    let k_last = (pair.slice_count() - 1).min(graph.last_slice());
    if !pair.n2.is_subset_of(&pair.n1) {
        violations.push(Violation {
            rule: "exit-set-nesting",
            slice: 0,
            cube: 0,
        });
    }
    for k in 0..k_last {
        for &q in pair.n1.slice(k) {
            let t = graph.targets(k, q);
            let leaves = t.escaped || t.cubes.iter().any(|c| !pair.n1.contains(k + 1, *c));
            if leaves && !pair.n2.contains(k, q) {
                violations.push(Violation {
                    rule: "exit-through-exit-set",
                    slice: k,
                    cube: q,
                });
            }
        }
        for &q in pair.n2.slice(k) {
            for &c in &graph.targets(k, q).cubes {
                if pair.n1.contains(k + 1, c) && !pair.n2.contains(k + 1, c) {
                    violations.push(Violation {
                        rule: "exit-set-invariance",
                        slice: k,
                        cube: q,
                    });
                }
            }
        }
    }
    (violations.is_empty(), violations)
}

/// Minimal path length through the graph (restricted to N1) from each cube
/// of N1 into N2; EXIT_INF when N2 is unreachable.
#[derive(Clone, Debug)]
pub struct ExitTimeField {
    times: Vec<BTreeMap<u32, u32>>,
}

impl ExitTimeField {
    /// None when the cube is not in N1.
    pub fn get(&self, k: usize, cube: u32) -> Option<u32> {
        self.times.get(k).and_then(|m| m.get(&cube)).copied()
    }
}

pub fn discrete_exit_time(pair: &IndexPair, graph: &TransitionGraph) -> ExitTimeField {
    let k_last = (pair.slice_count() - 1).min(graph.last_slice());
    let mut times: Vec<BTreeMap<u32, u32>> = vec![BTreeMap::new(); k_last + 1];
    for k in (0..=k_last).rev() {
        let mut slice_times = BTreeMap::new();
        for &q in pair.n1.slice(k) {
            let t = if pair.n2.contains(k, q) {
                0
            } else if k == k_last {
                EXIT_INF
            } else {
                let mut best = EXIT_INF;
                for &c in &graph.targets(k, q).cubes {
                    if pair.n1.contains(k + 1, c) {
                        if let Some(&tc) = times[k + 1].get(&c) {
                            if tc != EXIT_INF {
                                best = best.min(tc + 1);
                            }
                        }
                    }
                }
                best
            };
            slice_times.insert(q, t);
        }
        times[k] = slice_times;
    }
    ExitTimeField { times }
}

/// Exit-time thickening: replaces N2 by the forward hull (within N1) of the
/// cubes whose exit time is at most m. The hull closure keeps the one-step
/// positive-invariance condition under multivalued branching, where the raw
/// sublevel set alone can leak. Near the window horizon exit times degrade
/// (no forward room), so callers thicken on an extended window and verify
/// the truncated result.
pub fn thicken_exit(pair: &IndexPair, graph: &TransitionGraph, m: u32) -> IndexPair {
    let field = discrete_exit_time(pair, graph);
    let mut sublevel = SlicedCubeSet::empty(pair.slice_count());
    for k in 0..pair.slice_count() {
        for &q in pair.n1.slice(k) {
            if let Some(t) = field.get(k, q) {
                if t <= m {
                    sublevel.insert(k, q);
                }
            }
        }
    }
    IndexPair {
        n1: pair.n1.clone(),
        n2: forward_hull(&sublevel, &pair.n1, graph),
    }
}
