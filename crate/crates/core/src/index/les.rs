//! The attractor-repeller long exact sequence of an index triple, assembled
//! at the stabilization slice, with its connecting homomorphism.

use super::block::slice_pair;
use crate::dynamics::TransitionGraph;
use crate::error::{Error, Result};
use crate::homology::{
    exactness_check, inclusion_induced_map, relative_homology, snake_connecting, CoefficientRing,
    GradedHomology, GradedMap, NodeCheck,
};
use crate::pairs::{thicken_exit, verify_index_pair, IndexPair, IndexTriple};

#[derive(Clone, Debug)]
pub struct LongExactSequenceData {
    pub slice: usize,
    /// homology of (N1, N3) at the slice: the whole invariant set
    pub h_total: GradedHomology,
    /// homology of (N2, N3): the attractor
    pub h_attractor: GradedHomology,
    /// homology of (N1, N2): the repeller
    pub h_repeller: GradedHomology,
    pub include: GradedMap,
    pub project: GradedMap,
    pub connecting: GradedMap,
    pub exact: bool,
    pub nodes: Vec<NodeCheck>,
}

/// Thickens both nested pairs of the triple by m (exit times measured in
/// the full extended window), truncates to the reporting window, and
/// re-verifies both pairs.
pub fn thickened_triple(
    triple: &IndexTriple,
    graph: &TransitionGraph,
    m: u32,
    window_len: usize,
) -> Result<IndexTriple> {
    let outer = thicken_exit(&triple.outer_pair(), graph, m);
    let middle = thicken_exit(
        &IndexPair {
            n1: triple.n1.clone(),
            n2: triple.n2.clone(),
        },
        graph,
        m,
    );
    let t = IndexTriple {
        n1: triple.n1.truncated(window_len),
        n2: middle.n2.truncated(window_len),
        n3: outer.n2.truncated(window_len),
    };
    for pair in [t.outer_pair(), t.attractor_pair()] {
        let (ok, violations) = verify_index_pair(&pair, graph);
        if !ok {
            let v = &violations[0];
            return Err(Error::IrregularConstruction {
                rule: v.rule,
                slice: v.slice,
                cube: v.cube,
            });
        }
    }
    if !t.n3.is_subset_of(&t.n2) || !t.n2.is_subset_of(&t.n1) {
        return Err(Error::Precondition(
            "thickened triple nesting failed".into(),
        ));
    }
    Ok(t)
}

/// Assembles the long exact sequence of the (thickened) triple at one slice
/// and checks exactness at every node.
pub fn les_of_triple(
    triple: &IndexTriple,
    graph: &TransitionGraph,
    m: u32,
    ring: CoefficientRing,
    window_len: usize,
    at_slice: usize,
) -> Result<LongExactSequenceData> {
    let t = thickened_triple(triple, graph, m, window_len)?;
    let grid = &graph.grid;
    let (s1, s3) = slice_pair(&t.outer_pair(), grid, at_slice);
    let (s2, _) = slice_pair(&t.attractor_pair(), grid, at_slice);
    let h_total = relative_homology(&s1, &s3, ring)?;
    let h_attractor = relative_homology(&s2, &s3, ring)?;
    let h_repeller = relative_homology(&s1, &s2, ring)?;
    let include = inclusion_induced_map((&s2, &s3), (&s1, &s3), ring)?;
    let project = inclusion_induced_map((&s1, &s3), (&s1, &s2), ring)?;
    let connecting = snake_connecting(&s1, &s2, &s3, ring)?;
    let report = exactness_check(&[
        connecting.clone(),
        include.clone(),
        project.clone(),
        connecting.clone(),
    ])?;
    if !report.exact {
        let bad = report
            .nodes
            .iter()
            .find(|n| !n.ok)
            .expect("inexact report has a failing node");
        return Err(Error::ExactnessFailure {
            node: bad.node,
            degree: bad.degree,
        });
    }
    Ok(LongExactSequenceData {
        slice: at_slice,
        h_total,
        h_attractor,
        h_repeller,
        include,
        project,
        connecting,
        exact: report.exact,
        nodes: report.nodes,
    })
}

/// The connecting homomorphism component of the sequence.
pub fn connecting_homomorphism(
    triple: &IndexTriple,
    graph: &TransitionGraph,
    m: u32,
    ring: CoefficientRing,
    window_len: usize,
    at_slice: usize,
) -> Result<GradedMap> {
    Ok(les_of_triple(triple, graph, m, ring, window_len, at_slice)?.connecting)
}
