//! Prism telescopes: cubical models of the time-interval sections of an
//! index pair, one dimension up from the spatial slices.

use crate::dynamics::Grid;
use crate::homology::{CubicalSet, ElementaryCube, Interval};
use crate::pairs::IndexPair;

/// Spatial cubical set of one slice of a sliced family (full cubes plus
/// faces).
fn slice_set(grid: &Grid, cubes: impl Iterator<Item = u32>) -> CubicalSet {
    let d = grid.dim();
    CubicalSet::from_cubes(
        d,
        cubes.map(|id| {
            let c = grid.coords_of(id);
            ElementaryCube::full(&c.iter().map(|&x| x as i64).collect::<Vec<_>>())
        }),
    )
}

/// The d-dimensional slice pair (N1(a_k), N2(a_k)) of an index pair.
pub fn slice_pair(pair: &IndexPair, grid: &Grid, k: usize) -> (CubicalSet, CubicalSet) {
    (
        slice_set(grid, pair.n1.slice(k).iter().copied()),
        slice_set(grid, pair.n2.slice(k).iter().copied()),
    )
}

/// Telescope over [a_k, a_l]: for each unit time segment [j, j+1] the prisms
/// over N(j) united with N(j+1), plus every embedded slice. Slices k and l
/// embed as subcomplexes; for k = l the block is the embedded slice itself.
#[derive(Clone, Debug)]
pub struct BlockComplex {
    pub k: usize,
    pub l: usize,
    pub n1: CubicalSet,
    pub n2: CubicalSet,
}

impl BlockComplex {
    /// Embeds a spatial cube into the block at slice time j.
    pub fn embed_at(cube: &ElementaryCube, j: usize) -> ElementaryCube {
        cube.with_time(Interval::point(j as i64))
    }
}

fn telescope(grid: &Grid, family: &crate::pairs::SlicedCubeSet, k: usize, l: usize) -> CubicalSet {
    let d = grid.dim();
    let mut cubes: Vec<ElementaryCube> = Vec::new();
    let spatial = |id: u32| {
        let c = grid.coords_of(id);
        ElementaryCube::full(&c.iter().map(|&x| x as i64).collect::<Vec<_>>())
    };
    for j in k..=l {
        for &id in family.slice(j) {
            cubes.push(spatial(id).with_time(Interval::point(j as i64)));
        }
        if j < l {
            let mut union: Vec<u32> = family.slice(j).iter().copied().collect();
            union.extend(family.slice(j + 1).iter().copied());
            union.sort_unstable();
            union.dedup();
            for id in union {
                cubes.push(spatial(id).with_time(Interval::unit(j as i64)));
            }
        }
    }
    CubicalSet::from_cubes(d + 1, cubes)
}

pub fn block_complex(pair: &IndexPair, grid: &Grid, k: usize, l: usize) -> BlockComplex {
    assert!(k <= l, "block requires k <= l");
    assert!(l < pair.slice_count(), "block exceeds the window");
    BlockComplex {
        k,
        l,
        n1: telescope(grid, &pair.n1, k, l),
        n2: telescope(grid, &pair.n2, k, l),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::SlicedCubeSet;

    fn grid1d() -> Grid {
        Grid::new(vec![0.0], vec![1.0], vec![4]).unwrap()
    }

    fn pair_constant(cubes: Vec<u32>, slices: usize) -> IndexPair {
        IndexPair {
            n1: SlicedCubeSet::constant(slices, cubes),
            n2: SlicedCubeSet::empty(slices),
        }
    }

    #[test]
    fn single_slice_block_is_the_embedded_slice() {
        let g = grid1d();
        let p = pair_constant(vec![0, 1], 3);
        let b = block_complex(&p, &g, 1, 1);
        // 2 edges + 3 vertices, all with degenerate time coordinate
        assert_eq!(b.n1.len(), 5);
        assert!(b.n1.iter().all(|c| c.intervals()[0].degenerate));
        assert!(b.n2.is_empty());
    }

    #[test]
    fn autonomous_block_is_a_product() {
        let g = grid1d();
        let p = pair_constant(vec![1, 2], 4);
        let b = block_complex(&p, &g, 0, 2);
        // product of [0,2] (2 segments + 3 points) with 2 edges + 3 points:
        // (2+3)*(2+3) = 25 cells
        assert_eq!(b.n1.len(), 25);
        assert!(b.n1.is_face_closed());
    }

    #[test]
    fn telescope_prism_count_matches_slice_unions() {
        let g = grid1d();
        // varying slices: {0,1}, {1,2}, {2,3}
        let mut n1 = SlicedCubeSet::empty(3);
        for (j, cubes) in [[0u32, 1], [1, 2], [2, 3]].iter().enumerate() {
            for &c in cubes {
                n1.insert(j, c);
            }
        }
        let p = IndexPair {
            n1,
            n2: SlicedCubeSet::empty(3),
        };
        let b = block_complex(&p, &g, 0, 2);
        // top-dimensional prisms: sum over segments of |N(j) u N(j+1)|
        let prisms = b.n1.iter().filter(|c| c.dim() == 2).count();
        assert_eq!(prisms, 3 + 3);
        // slices embed as subcomplexes
        for (j, cubes) in [[0u32, 1], [1, 2], [2, 3]].iter().enumerate() {
            for &id in cubes {
                let c = g.coords_of(id);
                let cube = ElementaryCube::full(&c.iter().map(|&x| x as i64).collect::<Vec<_>>());
                assert!(b.n1.contains(&BlockComplex::embed_at(&cube, j)));
            }
        }
    }
}
