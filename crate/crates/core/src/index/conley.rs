//! The composite index computation: isolate, build the pair, thicken, slice,
//! stabilize.

use super::system::{build_slice_system, direct_limit, ConleyIndexResult, SliceHomologySystem};
use crate::dynamics::TransitionGraph;
use crate::error::{Error, Result};
use crate::homology::CoefficientRing;
use crate::pairs::{
    build_index_pair, isolating_check, thicken_exit, verify_index_pair, IndexPair, SlicedCubeSet,
};

#[derive(Clone, Copy, Debug)]
pub struct ConleyParams {
    pub ring: CoefficientRing,
    pub thickening: u32,
    pub burn_in: usize,
    pub margin: usize,
    /// last reporting slice K; the graph may extend beyond it
    pub window_end: usize,
}

/// Builds the (thickened, truncated) index pair on N and verifies it.
pub fn prepared_pair(
    n: &SlicedCubeSet,
    graph: &TransitionGraph,
    params: &ConleyParams,
) -> Result<IndexPair> {
    let pair = build_index_pair(n, graph, params.margin)?;
    let thick = thicken_exit(&pair, graph, params.thickening);
    let trunc = thick.truncated(params.window_end + 1);
    let (ok, violations) = verify_index_pair(&trunc, graph);
    if !ok {
        let v = &violations[0];
        return Err(Error::IrregularConstruction {
            rule: v.rule,
            slice: v.slice,
            cube: v.cube,
        });
    }
    Ok(trunc)
}

/// Conley index of the invariant part isolated by N, as the stabilized value
/// of the slice homology system.
pub fn conley_index(
    n: &SlicedCubeSet,
    graph: &TransitionGraph,
    params: &ConleyParams,
) -> Result<(ConleyIndexResult, SliceHomologySystem, IndexPair)> {
    if !isolating_check(n, graph, params.margin) {
        return Err(Error::Precondition(
            "N is not an isolating neighborhood: the invariant part touches its boundary".into(),
        ));
    }
    let pair = prepared_pair(n, graph, params)?;
    if pair.is_empty() {
        let degrees = graph.grid.dim() + 1;
        let system = SliceHomologySystem {
            ring: params.ring,
            burn_in: params.burn_in,
            window_end: params.window_end,
            slice_homology: Default::default(),
            transitions: Default::default(),
        };
        return Ok((
            ConleyIndexResult {
                stabilization: params.burn_in,
                limit: crate::homology::GradedHomology::zero(params.ring, degrees),
                witnesses: 0,
            },
            system,
            pair,
        ));
    }
    let system = build_slice_system(
        &pair,
        &graph.grid,
        params.ring,
        params.burn_in,
        params.window_end,
    )?;
    let result = direct_limit(&system)?;
    Ok((result, system, pair))
}
