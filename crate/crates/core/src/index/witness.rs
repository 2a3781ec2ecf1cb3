//! Dynamical witnesses: spanning orbits in the pair interior, the
//! uniform-connectedness test, and constrained connecting paths.

use crate::dynamics::TransitionGraph;
use crate::error::{Error, Result};
use crate::pairs::{IndexPair, SlicedCubeSet};
use std::collections::{BTreeMap, BTreeSet};

/// A path of cubes, one per slice starting at `start_slice`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWitness {
    pub start_slice: usize,
    pub cubes: Vec<u32>,
}

impl PathWitness {
    pub fn end_slice(&self) -> usize {
        self.start_slice + self.cubes.len() - 1
    }
}

/// Longest path through N1 \ N2 that reaches the end of the window; present
/// when it spans at least the slices from burn_in on. The witness is
/// combinatorial: it contains a true orbit only up to enclosure fidelity.
pub fn orbit_detector(
    pair: &IndexPair,
    graph: &TransitionGraph,
    burn_in: usize,
) -> Option<PathWitness> {
    let k_last = pair.slice_count() - 1;
    let interior = |k: usize, q: u32| pair.n1.contains(k, q) && !pair.n2.contains(k, q);
    // backward reachability of the final slice within the pair interior
    let mut reach: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); k_last + 1];
    reach[k_last] = pair
        .n1
        .slice(k_last)
        .iter()
        .copied()
        .filter(|&q| interior(k_last, q))
        .collect();
    for k in (0..k_last).rev() {
        let next = &reach[k + 1];
        reach[k] = pair
            .n1
            .slice(k)
            .iter()
            .copied()
            .filter(|&q| {
                interior(k, q) && graph.targets(k, q).cubes.iter().any(|c| next.contains(c))
            })
            .collect();
    }
    let t0 = (0..=k_last).find(|&k| !reach[k].is_empty())?;
    if t0 > burn_in {
        return None;
    }
    // deterministic reconstruction: smallest cube, then smallest successor
    let mut cubes = vec![*reach[t0].iter().next().expect("nonempty layer")];
    for k in t0..k_last {
        let q = *cubes.last().expect("path is nonempty");
        let next = graph
            .targets(k, q)
            .cubes
            .iter()
            .copied()
            .find(|c| reach[k + 1].contains(c))
            .expect("reachability certified a successor");
        cubes.push(next);
    }
    Some(PathWitness {
        start_slice: t0,
        cubes,
    })
}

#[derive(Clone, Debug)]
pub struct UniformConnectedness {
    pub uniformly_connected: bool,
    /// slice at which K was covered by the two neighborhoods, when not
    /// uniformly connected
    pub witness_slice: Option<usize>,
    /// one cube of K outside both neighborhoods, per tested slice
    pub gap_cubes: Vec<(usize, u32)>,
    /// K was empty on every tested slice
    pub degenerate: bool,
}

/// Tests whether any tail slice of K is covered by the two disjoint
/// neighborhoods: a covered slice refutes uniform connectedness.
pub fn uniform_connectedness(
    k_set: &SlicedCubeSet,
    u_a: &SlicedCubeSet,
    u_r: &SlicedCubeSet,
    burn_in: usize,
    window_end: usize,
) -> Result<UniformConnectedness> {
    if !u_a.disjoint_from(u_r) {
        return Err(Error::Precondition(
            "the attractor and repeller neighborhoods must be disjoint".into(),
        ));
    }
    let mut gaps = Vec::new();
    let mut degenerate = true;
    for k in burn_in..=window_end {
        degenerate &= k_set.slice(k).is_empty();
        let gap = k_set
            .slice(k)
            .iter()
            .copied()
            .find(|&q| !u_a.contains(k, q) && !u_r.contains(k, q));
        match gap {
            Some(q) => gaps.push((k, q)),
            None => {
                return Ok(UniformConnectedness {
                    uniformly_connected: false,
                    witness_slice: Some(k),
                    gap_cubes: gaps,
                    degenerate,
                });
            }
        }
    }
    Ok(UniformConnectedness {
        uniformly_connected: true,
        witness_slice: None,
        gap_cubes: gaps,
        degenerate,
    })
}

/// A path through K spanning the window with its start in the repeller
/// block, its end in the attractor block, and at least one cube outside
/// both neighborhoods.
#[allow(clippy::too_many_arguments)]
pub fn connection_witness(
    k_set: &SlicedCubeSet,
    r_block: &SlicedCubeSet,
    a_block: &SlicedCubeSet,
    u_a: &SlicedCubeSet,
    u_r: &SlicedCubeSet,
    graph: &TransitionGraph,
    from_slice: usize,
    to_slice: usize,
) -> Result<PathWitness> {
    assert!(from_slice < to_slice);
    let in_gap = |k: usize, q: u32| !u_a.contains(k, q) && !u_r.contains(k, q);
    // layered search over (cube, crossed-the-gap) states
    let mut layers: Vec<BTreeMap<(u32, bool), (u32, bool)>> = Vec::new();
    let mut first = BTreeMap::new();
    for &q in k_set.slice(from_slice) {
        if r_block.contains(from_slice, q) {
            first.insert((q, in_gap(from_slice, q)), (q, false));
        }
    }
    layers.push(first);
    for k in from_slice..to_slice {
        let mut next: BTreeMap<(u32, bool), (u32, bool)> = BTreeMap::new();
        for &(q, crossed) in layers.last().expect("layers nonempty").keys() {
            for &c in &graph.targets(k, q).cubes {
                if !k_set.contains(k + 1, c) {
                    continue;
                }
                let state = (c, crossed || in_gap(k + 1, c));
                next.entry(state).or_insert((q, crossed));
            }
        }
        layers.push(next);
    }
    let accept = layers
        .last()
        .expect("layers nonempty")
        .keys()
        .copied()
        .find(|&(q, crossed)| crossed && a_block.contains(to_slice, q));
    let Some(accept) = accept else {
        return Err(Error::NoConnection);
    };
    // walk the parent pointers back to the first layer
    let mut states = vec![accept];
    for i in (1..layers.len()).rev() {
        let parent = *layers[i]
            .get(states.last().expect("states nonempty"))
            .expect("state recorded with parent");
        states.push(parent);
    }
    states.reverse();
    Ok(PathWitness {
        start_slice: from_slice,
        cubes: states.into_iter().map(|(q, _)| q).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{
        build_transition_graph, BuiltinField, ForcingSpec, Grid, VectorFieldSpec,
    };
    use crate::pairs::build_index_pair;

    fn logistic_graph(slices: usize) -> TransitionGraph {
        let f = VectorFieldSpec::new(BuiltinField::Logistic1d, ForcingSpec::None);
        let grid = Grid::new(vec![-0.5], vec![1.5], vec![40]).unwrap();
        build_transition_graph(&f, &grid, 0.25, slices, 0, 5)
    }

    fn boxed(g: &TransitionGraph, lo: f64, hi: f64) -> SlicedCubeSet {
        SlicedCubeSet::constant(
            g.slice_count(),
            g.grid.cubes_inside(&crate::dynamics::BoxBounds {
                lo: vec![lo],
                hi: vec![hi],
            }),
        )
    }

    #[test]
    fn empty_interior_has_no_orbit() {
        let g = logistic_graph(8);
        let n1 = boxed(&g, -0.35, 1.4);
        let pair = IndexPair {
            n1: n1.clone(),
            n2: n1,
        };
        assert!(orbit_detector(&pair, &g, 4).is_none());
    }

    #[test]
    fn logistic_orbit_spans_the_window() {
        let g = logistic_graph(48);
        let n = boxed(&g, -0.35, 1.4);
        let pair = build_index_pair(&n, &g, 1).unwrap().truncated(25);
        let w = orbit_detector(&pair, &g, 12).expect("orbit witness");
        assert!(w.start_slice <= 12);
        assert_eq!(w.end_slice(), 24);
        // each step follows the graph
        for (i, &q) in w.cubes.iter().enumerate().skip(1) {
            let k = w.start_slice + i - 1;
            assert!(g.targets(k, w.cubes[i - 1]).cubes.contains(&q));
        }
    }

    #[test]
    fn covered_slices_refute_uniform_connectedness() {
        let g = logistic_graph(8);
        let k_set = boxed(&g, 0.0, 0.3).union(&boxed(&g, 0.7, 1.0));
        let u_r = boxed(&g, -0.1, 0.4);
        let u_a = boxed(&g, 0.6, 1.1);
        let r = uniform_connectedness(&k_set, &u_a, &u_r, 4, 8).unwrap();
        assert!(!r.uniformly_connected);
        assert_eq!(r.witness_slice, Some(4));
        assert!(!r.degenerate);
    }

    #[test]
    fn gap_cubes_witness_uniform_connectedness() {
        let g = logistic_graph(8);
        let k_set = boxed(&g, 0.0, 1.0);
        let u_r = boxed(&g, -0.1, 0.3);
        let u_a = boxed(&g, 0.7, 1.1);
        let r = uniform_connectedness(&k_set, &u_a, &u_r, 4, 8).unwrap();
        assert!(r.uniformly_connected);
        assert_eq!(r.gap_cubes.len(), 5);
    }

    #[test]
    fn empty_k_is_degenerate_and_covered() {
        let g = logistic_graph(8);
        let k_set = SlicedCubeSet::empty(g.slice_count());
        let u = SlicedCubeSet::empty(g.slice_count());
        let r = uniform_connectedness(&k_set, &u, &u, 4, 8).unwrap();
        assert!(!r.uniformly_connected);
        assert!(r.degenerate);
    }

    #[test]
    fn overlapping_neighborhoods_are_rejected() {
        let g = logistic_graph(8);
        let k_set = boxed(&g, 0.0, 1.0);
        let u = boxed(&g, 0.2, 0.8);
        assert!(uniform_connectedness(&k_set, &u, &u, 4, 8).is_err());
    }

    #[test]
    fn no_connection_across_disjoint_blocks() {
        let f = VectorFieldSpec::new(
            BuiltinField::TwoWell1d {
                roots: [0.0, 1.0, 2.0],
            },
            ForcingSpec::None,
        );
        let grid = Grid::new(vec![-0.5], vec![2.5], vec![60]).unwrap();
        let g = build_transition_graph(&f, &grid, 0.2, 20, 0, 4);
        let left = SlicedCubeSet::constant(
            g.slice_count(),
            g.grid.cubes_inside(&crate::dynamics::BoxBounds {
                lo: vec![-0.3],
                hi: vec![0.3],
            }),
        );
        let right = SlicedCubeSet::constant(
            g.slice_count(),
            g.grid.cubes_inside(&crate::dynamics::BoxBounds {
                lo: vec![1.7],
                hi: vec![2.3],
            }),
        );
        let k_set = left.union(&right);
        let e = connection_witness(
            &k_set,
            &right,
            &left,
            &SlicedCubeSet::empty(g.slice_count()),
            &SlicedCubeSet::empty(g.slice_count()),
            &g,
            1,
            19,
        );
        assert!(matches!(e, Err(Error::NoConnection)));
    }
}
