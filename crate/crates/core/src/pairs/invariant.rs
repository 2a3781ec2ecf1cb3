//! Finite-horizon invariant parts and the combinatorial isolation check.

use super::sliced::SlicedCubeSet;
use crate::dynamics::TransitionGraph;
use std::collections::BTreeSet;

/// Largest finite-horizon invariant part of N: cubes lying on some path
/// that stays in N and spans the whole window, computed as
/// forward-reachable-in-N intersect backward-reachable-in-N. The first and
/// last `margin` slices carry no backward (resp. forward) history, so their
/// content is cleared rather than trusted.
pub fn invariant_part(n: &SlicedCubeSet, graph: &TransitionGraph, margin: usize) -> SlicedCubeSet {
    let k_last = graph.last_slice();
    assert_eq!(n.slice_count(), k_last + 1, "slice count mismatch");

    // forward reachability from slice 0 within N
    let mut fwd: Vec<BTreeSet<u32>> = Vec::with_capacity(k_last + 1);
    fwd.push(n.slice(0).clone());
    for k in 0..k_last {
        let mut next = BTreeSet::new();
        for &q in &fwd[k] {
            for &c in &graph.targets(k, q).cubes {
                if n.contains(k + 1, c) {
                    next.insert(c);
                }
            }
        }
        fwd.push(next);
    }

    // backward reachability from slice K within N
    let mut bwd: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); k_last + 1];
    bwd[k_last] = n.slice(k_last).clone();
    for k in (0..k_last).rev() {
        let next = &bwd[k + 1];
        let mut cur = BTreeSet::new();
        for &q in n.slice(k) {
            if graph.targets(k, q).cubes.iter().any(|c| next.contains(c)) {
                cur.insert(q);
            }
        }
        bwd[k] = cur;
    }

    let mut slices: Vec<BTreeSet<u32>> = fwd
        .into_iter()
        .zip(bwd)
        .map(|(f, b)| f.intersection(&b).copied().collect())
        .collect();
    for (k, slice) in slices.iter_mut().enumerate() {
        if k < margin || k + margin > k_last {
            slice.clear();
        }
    }
    SlicedCubeSet::from_slices(slices)
}

/// Isolation check: the invariant part must touch no boundary cube of N on
/// any retained slice.
pub fn isolating_check(n: &SlicedCubeSet, graph: &TransitionGraph, margin: usize) -> bool {
    let inv = invariant_part(n, graph, margin);
    for k in 0..n.slice_count() {
        if inv.slice(k).is_empty() {
            continue;
        }
        let boundary = n.boundary_cubes(&graph.grid, k);
        if boundary.iter().any(|c| inv.contains(k, *c)) {
            return false;
        }
    }
    true
}
