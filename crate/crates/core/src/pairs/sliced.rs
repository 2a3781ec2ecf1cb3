//! Per-time-slice families of full-dimensional grid cubes: the sets N, N1,
//! N2, N3, U_A, U_R, K live here.

use crate::dynamics::Grid;
use std::collections::BTreeSet;

pub type CubeId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicedCubeSet {
    slices: Vec<BTreeSet<CubeId>>,
}

impl SlicedCubeSet {
    pub fn empty(slice_count: usize) -> Self {
        SlicedCubeSet {
            slices: vec![BTreeSet::new(); slice_count],
        }
    }

    /// The same cube family at every slice.
    pub fn constant(slice_count: usize, cubes: impl IntoIterator<Item = CubeId> + Clone) -> Self {
        let set: BTreeSet<CubeId> = cubes.into_iter().collect();
        SlicedCubeSet {
            slices: vec![set; slice_count],
        }
    }

    pub fn from_slices(slices: Vec<BTreeSet<CubeId>>) -> Self {
        SlicedCubeSet { slices }
    }

    pub fn slice_count(&self) -> usize {
        self.slices.len()
    }

    pub fn slice(&self, k: usize) -> &BTreeSet<CubeId> {
        &self.slices[k]
    }

    pub fn slice_mut(&mut self, k: usize) -> &mut BTreeSet<CubeId> {
        &mut self.slices[k]
    }

    pub fn contains(&self, k: usize, cube: CubeId) -> bool {
        self.slices.get(k).is_some_and(|s| s.contains(&cube))
    }

    pub fn insert(&mut self, k: usize, cube: CubeId) -> bool {
        self.slices[k].insert(cube)
    }

    pub fn is_empty(&self) -> bool {
        self.slices.iter().all(|s| s.is_empty())
    }

    pub fn total_cubes(&self) -> usize {
        self.slices.iter().map(|s| s.len()).sum()
    }

    pub fn is_subset_of(&self, other: &SlicedCubeSet) -> bool {
        self.slices.len() == other.slices.len()
            && self
                .slices
                .iter()
                .zip(&other.slices)
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn union(&self, other: &SlicedCubeSet) -> SlicedCubeSet {
        assert_eq!(self.slices.len(), other.slices.len());
        SlicedCubeSet {
            slices: self
                .slices
                .iter()
                .zip(&other.slices)
                .map(|(a, b)| a.union(b).copied().collect())
                .collect(),
        }
    }

    pub fn intersect(&self, other: &SlicedCubeSet) -> SlicedCubeSet {
        assert_eq!(self.slices.len(), other.slices.len());
        SlicedCubeSet {
            slices: self
                .slices
                .iter()
                .zip(&other.slices)
                .map(|(a, b)| a.intersection(b).copied().collect())
                .collect(),
        }
    }

    pub fn disjoint_from(&self, other: &SlicedCubeSet) -> bool {
        self.slices
            .iter()
            .zip(&other.slices)
            .all(|(a, b)| a.is_disjoint(b))
    }

    /// The first `len` slices.
    pub fn truncated(&self, len: usize) -> SlicedCubeSet {
        SlicedCubeSet {
            slices: self.slices[..len.min(self.slices.len())].to_vec(),
        }
    }

    /// Cubes of slice k whose vertex-neighborhood leaves the slice family
    /// (or the grid).
    pub fn boundary_cubes(&self, grid: &Grid, k: usize) -> Vec<CubeId> {
        self.slices[k]
            .iter()
            .copied()
            .filter(|&c| {
                grid.neighbors(c)
                    .into_iter()
                    .any(|n| n.is_none_or(|id| !self.slices[k].contains(&id)))
            })
            .collect()
    }
}
