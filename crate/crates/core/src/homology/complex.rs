//! Chain complexes of cubical pairs.
//!
//! The relative complex of a pair (A, B) has one generator per cube of A\B,
//! ordered lexicographically within each degree. Boundaries are stored as
//! signed sparse columns; faces landing in B are dropped.

use super::cube::{CubicalSet, ElementaryCube};
use super::matrix::RingMatrix;
use super::ring::{CoefficientRing, Rat};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Hard cap on generators per degree; larger inputs fail loudly instead of
/// degrading.
pub const MAX_GENERATORS_PER_DEGREE: usize = 10_000;

/// Ring-independent skeleton of the relative chain complex of a pair.
pub struct PairBasis {
    pub ambient: usize,
    /// generators\[n\] = cubes of A\B of dimension n, canonically ordered.
    pub generators: Vec<Vec<ElementaryCube>>,
    index: HashMap<ElementaryCube, (usize, u32)>,
    /// columns\[n\]\[j\] = signed rows of the boundary of generators\[n\]\[j\].
    pub columns: Vec<Vec<Vec<(u32, i8)>>>,
}

impl PairBasis {
    /// Build the relative complex of (A, B). B may be empty; B must be a
    /// face-closed subset of A.
    pub fn new(a: &CubicalSet, b: &CubicalSet) -> Result<PairBasis> {
        if !b.is_empty() && !b.is_subset_of(a) {
            return Err(Error::Precondition(
                "relative pair requires B to be a subset of A".into(),
            ));
        }
        let ambient = a.ambient_dim();
        let mut generators: Vec<Vec<ElementaryCube>> = vec![Vec::new(); ambient + 1];
        for cube in a.iter() {
            if !b.contains(cube) {
                generators[cube.dim()].push(cube.clone());
            }
        }
        for (degree, gens) in generators.iter().enumerate() {
            if gens.len() > MAX_GENERATORS_PER_DEGREE {
                return Err(Error::SizeLimit {
                    degree,
                    generators: gens.len(),
                    limit: MAX_GENERATORS_PER_DEGREE,
                });
            }
        }
        let mut index = HashMap::new();
        for (n, gens) in generators.iter().enumerate() {
            for (j, c) in gens.iter().enumerate() {
                index.insert(c.clone(), (n, j as u32));
            }
        }
        let mut columns: Vec<Vec<Vec<(u32, i8)>>> = Vec::with_capacity(ambient + 1);
        for (n, gens) in generators.iter().enumerate() {
            let mut cols = Vec::with_capacity(gens.len());
            for c in gens {
                let mut col: Vec<(u32, i8)> = Vec::new();
                for (sign, f) in c.faces() {
                    if let Some(&(fd, fi)) = index.get(&f) {
                        debug_assert_eq!(fd, n - 1);
                        col.push((fi, sign));
                    }
                }
                col.sort_unstable_by_key(|&(r, _)| r);
                cols.push(col);
            }
            columns.push(cols);
        }
        Ok(PairBasis {
            ambient,
            generators,
            index,
            columns,
        })
    }

    pub fn index_of(&self, cube: &ElementaryCube) -> Option<(usize, u32)> {
        self.index.get(cube).copied()
    }

    pub fn rank_of_degree(&self, n: usize) -> usize {
        self.generators.get(n).map_or(0, |g| g.len())
    }

    /// Euler characteristic of the relative complex (generator count
    /// alternating sum).
    pub fn euler_characteristic(&self) -> i64 {
        self.generators
            .iter()
            .enumerate()
            .map(|(n, g)| {
                let c = g.len() as i64;
                if n % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }
}

/// Dense view of a pair complex over a coefficient ring, with the boundary
/// identity D_{n-1} D_n = 0 checkable directly.
pub struct ChainComplex {
    pub ring: CoefficientRing,
    pub generators: Vec<Vec<ElementaryCube>>,
    /// boundaries\[n\]: degree-n generators -> degree-(n-1) generators.
    pub boundaries: Vec<RingMatrix>,
}

impl ChainComplex {
    pub fn from_pair(
        a: &CubicalSet,
        b: &CubicalSet,
        ring: CoefficientRing,
    ) -> Result<ChainComplex> {
        let basis = PairBasis::new(a, b)?;
        let mut boundaries = Vec::with_capacity(basis.ambient + 1);
        for n in 0..=basis.ambient {
            let rows = if n == 0 {
                0
            } else {
                basis.generators[n - 1].len()
            };
            let mut m = RingMatrix::zero(ring, rows, basis.generators[n].len());
            for (j, col) in basis.columns[n].iter().enumerate() {
                for &(r, s) in col {
                    m.set(r as usize, j, Rat::int(s as i128));
                }
            }
            boundaries.push(m);
        }
        Ok(ChainComplex {
            ring,
            generators: basis.generators,
            boundaries,
        })
    }

    pub fn from_set(a: &CubicalSet, ring: CoefficientRing) -> Result<ChainComplex> {
        let empty = CubicalSet::empty(a.ambient_dim());
        ChainComplex::from_pair(a, &empty, ring)
    }

    /// Checks D_{n-1} D_n = 0 for every degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        for n in 1..self.boundaries.len() {
            let prod = self.boundaries[n - 1].mul(&self.boundaries[n]);
            if !prod.is_zero() {
                return false;
            }
        }
        true
    }
}

/// The degree-n boundary matrix of a face-closed cubical set over the given
/// ring, in canonical generator order.
pub fn boundary_matrix(set: &CubicalSet, n: usize, ring: CoefficientRing) -> Result<RingMatrix> {
    let complex = ChainComplex::from_set(set, ring)?;
    Ok(complex
        .boundaries
        .get(n)
        .cloned()
        .unwrap_or_else(|| RingMatrix::zero(ring, 0, 0)))
}
