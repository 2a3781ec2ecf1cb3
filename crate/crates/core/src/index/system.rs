//! Slice homologies, block-inclusion transition maps, and the direct limit.
//!
//! The transition map from slice k to slice l includes both slices into the
//! telescope over [a_k, a_l] and composes the left inclusion with the
//! inverse of the right one. The right inclusion being an isomorphism is a
//! checked fact, never an assumption: failure is a first-class outcome that
//! signals the discretization needs refinement.

use super::block::{block_complex, slice_pair, BlockComplex};
use crate::dynamics::Grid;
use crate::error::{Error, Result};
use crate::homology::{
    induced_map_data, CoefficientRing, Field, Gf2, GradedHomology, GradedMap, PairData, Rat,
};
use crate::pairs::IndexPair;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Result of one transition-map computation.
#[derive(Clone, Debug)]
pub enum TransitionOutcome {
    Iso(GradedMap),
    /// The right-slice inclusion into the block failed to be invertible.
    NonIso {
        degree: usize,
        defect: usize,
    },
}

impl TransitionOutcome {
    pub fn map(&self) -> Option<&GradedMap> {
        match self {
            TransitionOutcome::Iso(m) => Some(m),
            TransitionOutcome::NonIso { .. } => None,
        }
    }
}

/// Homology of the d-dimensional slice pair (N1(a_k), N2(a_k)).
pub fn slice_pair_homology(
    pair: &IndexPair,
    grid: &Grid,
    k: usize,
    ring: CoefficientRing,
) -> Result<GradedHomology> {
    let (a, b) = slice_pair(pair, grid, k);
    crate::homology::relative_homology(&a, &b, ring)
}

/// Inclusion of the slice-k pair into a block containing it, induced on
/// homology.
pub fn slice_inclusion_map(
    pair: &IndexPair,
    grid: &Grid,
    k: usize,
    block: &BlockComplex,
    ring: CoefficientRing,
) -> Result<GradedMap> {
    if k != block.k && k != block.l {
        return Err(Error::Precondition(
            "slice inclusion requires an endpoint slice of the block".into(),
        ));
    }
    match ring {
        CoefficientRing::F2 => slice_inclusion_data::<Gf2>(pair, grid, k, block),
        CoefficientRing::Q => slice_inclusion_data::<Rat>(pair, grid, k, block),
        CoefficientRing::Z => Err(Error::UnsupportedRing {
            op: "slice inclusion maps",
            ring: ring.to_string(),
        }),
    }
}

fn slice_inclusion_data<F: Field>(
    pair: &IndexPair,
    grid: &Grid,
    k: usize,
    block: &BlockComplex,
) -> Result<GradedMap> {
    let (a, b) = slice_pair(pair, grid, k);
    let dom = PairData::<F>::new(&a, &b)?;
    let cod = PairData::<F>::new(&block.n1, &block.n2)?;
    induced_map_data(&dom, &cod, |c| BlockComplex::embed_at(c, k))
}

fn transition_data<F: Field>(
    dom: &PairData<F>,
    cod: &PairData<F>,
    pair: &IndexPair,
    grid: &Grid,
    k: usize,
    l: usize,
) -> Result<TransitionOutcome> {
    let block = block_complex(pair, grid, k, l);
    let mid = PairData::<F>::new(&block.n1, &block.n2)?;
    let left = induced_map_data(dom, &mid, |c| BlockComplex::embed_at(c, k))?;
    let right = induced_map_data(cod, &mid, |c| BlockComplex::embed_at(c, l))?;
    match right.invert()? {
        Some(inv) => Ok(TransitionOutcome::Iso(left.then(&inv))),
        None => {
            let (degree, defect) = right
                .isomorphism_defect()
                .expect("non-invertible map has a defect");
            Ok(TransitionOutcome::NonIso { degree, defect })
        }
    }
}

/// Standalone transition map g_{k,l} for an (already thickened) pair.
pub fn transition_map(
    pair: &IndexPair,
    grid: &Grid,
    k: usize,
    l: usize,
    ring: CoefficientRing,
) -> Result<GradedMap> {
    let system = build_slice_system_window(pair, grid, ring, &[(k, l)])?;
    match system
        .into_iter()
        .next()
        .expect("one transition requested")
        .1
    {
        TransitionOutcome::Iso(m) => Ok(m),
        TransitionOutcome::NonIso { degree, defect } => {
            Err(Error::NonIsomorphicInclusion { degree, defect })
        }
    }
}

fn build_slice_system_window(
    pair: &IndexPair,
    grid: &Grid,
    ring: CoefficientRing,
    pairs: &[(usize, usize)],
) -> Result<BTreeMap<(usize, usize), TransitionOutcome>> {
    match ring {
        CoefficientRing::F2 => build_window_data::<Gf2>(pair, grid, pairs),
        CoefficientRing::Q => build_window_data::<Rat>(pair, grid, pairs),
        CoefficientRing::Z => Err(Error::UnsupportedRing {
            op: "transition maps",
            ring: ring.to_string(),
        }),
    }
}

fn build_window_data<F: Field>(
    pair: &IndexPair,
    grid: &Grid,
    wanted: &[(usize, usize)],
) -> Result<BTreeMap<(usize, usize), TransitionOutcome>> {
    let mut slices: Vec<usize> = wanted.iter().flat_map(|&(k, l)| [k, l]).collect();
    slices.sort_unstable();
    slices.dedup();
    let data: BTreeMap<usize, PairData<F>> = slices
        .par_iter()
        .map(|&k| {
            let (a, b) = slice_pair(pair, grid, k);
            PairData::<F>::new(&a, &b).map(|d| (k, d))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    let outcomes: Vec<((usize, usize), TransitionOutcome)> = wanted
        .par_iter()
        .map(|&(k, l)| {
            let out = if k == l {
                TransitionOutcome::Iso(GradedMap::identity(&data[&k].homology()))
            } else {
                transition_data::<F>(&data[&k], &data[&l], pair, grid, k, l)?
            };
            Ok(((k, l), out))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(outcomes.into_iter().collect())
}

/// Slice homologies B_k with transition maps g_{k,l} over a window.
#[derive(Clone, Debug)]
pub struct SliceHomologySystem {
    pub ring: CoefficientRing,
    pub burn_in: usize,
    pub window_end: usize,
    pub slice_homology: BTreeMap<usize, GradedHomology>,
    pub transitions: BTreeMap<(usize, usize), TransitionOutcome>,
}

impl SliceHomologySystem {
    pub fn rank_history(&self) -> Vec<Vec<usize>> {
        self.slice_homology
            .values()
            .map(|h| h.trimmed_ranks())
            .collect()
    }
}

/// Computes every B_k and every g_{k,l} for burn_in <= k <= l <= window_end.
pub fn build_slice_system(
    pair: &IndexPair,
    grid: &Grid,
    ring: CoefficientRing,
    burn_in: usize,
    window_end: usize,
) -> Result<SliceHomologySystem> {
    if burn_in > window_end || window_end >= pair.slice_count() {
        return Err(Error::Precondition(
            "slice system window out of range".into(),
        ));
    }
    let mut wanted = Vec::new();
    for k in burn_in..=window_end {
        for l in k..=window_end {
            wanted.push((k, l));
        }
    }
    let transitions = build_slice_system_window(pair, grid, ring, &wanted)?;
    let slice_homology = (burn_in..=window_end)
        .map(|k| slice_pair_homology(pair, grid, k, ring).map(|h| (k, h)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(SliceHomologySystem {
        ring,
        burn_in,
        window_end,
        slice_homology,
        transitions,
    })
}

/// Stabilized value of the direct system: the smallest slice from which
/// every forward transition is an isomorphism.
#[derive(Clone, Debug)]
pub struct ConleyIndexResult {
    pub stabilization: usize,
    pub limit: GradedHomology,
    /// number of transition maps witnessed invertible from the
    /// stabilization slice on
    pub witnesses: usize,
}

pub fn direct_limit(system: &SliceHomologySystem) -> Result<ConleyIndexResult> {
    // the stabilization slice must be followed by at least one genuine
    // transition: at the window end the invertibility condition is vacuous
    // and would hold for any system
    'outer: for k0 in system.burn_in..system.window_end {
        let mut witnesses = 0;
        for (&(k, l), outcome) in &system.transitions {
            if k < k0 || l > system.window_end {
                continue;
            }
            match outcome {
                TransitionOutcome::Iso(m) => {
                    if m.isomorphism_defect().is_some() {
                        continue 'outer;
                    }
                    witnesses += 1;
                }
                TransitionOutcome::NonIso { .. } => continue 'outer,
            }
        }
        return Ok(ConleyIndexResult {
            stabilization: k0,
            limit: system.slice_homology[&k0].clone(),
            witnesses,
        });
    }
    Err(Error::NotStabilized {
        history: system.rank_history(),
    })
}
