//! Relative homology of cubical pairs with chosen cycle bases.
//!
//! Quotient spaces are never materialized: H[A, B] is computed as the
//! homology of the relative complex C(A)/C(B), and as unreduced homology of
//! A when B is empty.

use super::complex::PairBasis;
use super::cube::CubicalSet;
use super::reduce::{reduce, ClassSolver, Reduction, SparseCol};
use super::ring::{CoefficientRing, Field, Gf2, Rat};
use crate::error::Result;
use serde::Serialize;

/// A chain as coordinates over the canonical generators of one degree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Chain {
    pub entries: Vec<(usize, Rat)>,
}

/// Graded homology: per-degree ranks, torsion coefficients (Z only), and a
/// cycle basis expressed over the relative generators of the pair.
#[derive(Clone, Debug, Serialize)]
pub struct GradedHomology {
    pub ring: CoefficientRing,
    pub ranks: Vec<usize>,
    pub torsion: Vec<Vec<i128>>,
    pub basis: Vec<Vec<Chain>>,
}

impl GradedHomology {
    pub fn zero(ring: CoefficientRing, degrees: usize) -> Self {
        GradedHomology {
            ring,
            ranks: vec![0; degrees],
            torsion: vec![Vec::new(); degrees],
            basis: vec![Vec::new(); degrees],
        }
    }

    pub fn rank_at(&self, degree: usize) -> usize {
        self.ranks.get(degree).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.total_rank() == 0 && self.torsion.iter().all(|t| t.is_empty())
    }

    /// Ranks with trailing zero degrees removed (for compact reporting).
    pub fn trimmed_ranks(&self) -> Vec<usize> {
        let mut r = self.ranks.clone();
        while r.len() > 1 && *r.last().unwrap() == 0 {
            r.pop();
        }
        r
    }
}

/// Field-typed homology data of one pair: reductions per degree and class
/// solvers that express cycles in the chosen basis.
pub(crate) struct PairData<F: Field> {
    pub basis: PairBasis,
    pub solvers: Vec<ClassSolver<F>>,
}

impl<F: Field> PairData<F> {
    pub fn new(a: &CubicalSet, b: &CubicalSet) -> Result<PairData<F>> {
        let basis = PairBasis::new(a, b)?;
        let max_deg = basis.ambient;
        let typed_cols = |n: usize| -> Vec<SparseCol<F>> {
            basis.columns[n]
                .iter()
                .map(|col| col.iter().map(|&(r, s)| (r, F::from_sign(s))).collect())
                .collect()
        };
        let reductions: Vec<Reduction<F>> = (0..=max_deg).map(|n| reduce(&typed_cols(n))).collect();
        let mut solvers = Vec::with_capacity(max_deg + 1);
        for n in 0..=max_deg {
            let image: &[SparseCol<F>] = if n < max_deg {
                &reductions[n + 1].reduced
            } else {
                &[]
            };
            let cycles = reductions[n].kernel_basis();
            solvers.push(ClassSolver::new(image, cycles));
        }
        Ok(PairData { basis, solvers })
    }

    pub fn rank_at(&self, degree: usize) -> usize {
        self.solvers.get(degree).map_or(0, |s| s.rank())
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..self.solvers.len()).map(|n| self.rank_at(n)).collect()
    }

    pub fn homology(&self) -> GradedHomology {
        let degrees = self.solvers.len();
        let mut basis = Vec::with_capacity(degrees);
        for solver in &self.solvers {
            basis.push(
                solver
                    .basis
                    .iter()
                    .map(|col| Chain {
                        entries: col.iter().map(|&(r, v)| (r as usize, v.to_rat())).collect(),
                    })
                    .collect(),
            );
        }
        GradedHomology {
            ring: F::RING,
            ranks: self.ranks(),
            torsion: vec![Vec::new(); degrees],
            basis,
        }
    }
}

/// Relative homology of a pair (A, B) with B a face-closed subset of A. For
/// B empty this is the unreduced homology of A.
pub fn relative_homology(
    a: &CubicalSet,
    b: &CubicalSet,
    ring: CoefficientRing,
) -> Result<GradedHomology> {
    match ring {
        CoefficientRing::F2 => Ok(PairData::<Gf2>::new(a, b)?.homology()),
        CoefficientRing::Q => Ok(PairData::<Rat>::new(a, b)?.homology()),
        CoefficientRing::Z => super::snf::z_homology(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::cube::{ElementaryCube, Interval};

    fn full2(x: i64, y: i64) -> ElementaryCube {
        ElementaryCube::new(vec![Interval::unit(x), Interval::unit(y)])
    }

    fn edge1(x: i64) -> ElementaryCube {
        ElementaryCube::new(vec![Interval::unit(x)])
    }

    #[test]
    fn filled_square_is_contractible() {
        let set = CubicalSet::from_cubes(2, [full2(0, 0)]);
        let empty = CubicalSet::empty(2);
        for ring in [CoefficientRing::F2, CoefficientRing::Q, CoefficientRing::Z] {
            let h = relative_homology(&set, &empty, ring).unwrap();
            assert_eq!(h.ranks, vec![1, 0, 0], "ring {ring}");
        }
    }

    #[test]
    fn annulus_has_a_hole() {
        // 3x3 block of squares minus the center square
        let mut cubes = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if (x, y) != (1, 1) {
                    cubes.push(full2(x, y));
                }
            }
        }
        let set = CubicalSet::from_cubes(2, cubes);
        let empty = CubicalSet::empty(2);
        for ring in [CoefficientRing::F2, CoefficientRing::Q, CoefficientRing::Z] {
            let h = relative_homology(&set, &empty, ring).unwrap();
            assert_eq!(h.ranks, vec![1, 1, 0], "ring {ring}");
        }
    }

    #[test]
    fn interval_rel_endpoints_is_a_suspension() {
        // 8 edges in a row, B = the two extreme vertices
        let set = CubicalSet::from_cubes(1, (0..8).map(edge1));
        let b = CubicalSet::from_cubes(
            1,
            [ElementaryCube::vertex(&[0]), ElementaryCube::vertex(&[8])],
        );
        for ring in [CoefficientRing::F2, CoefficientRing::Q, CoefficientRing::Z] {
            let h = relative_homology(&set, &b, ring).unwrap();
            assert_eq!(h.ranks, vec![0, 1], "ring {ring}");
        }
    }

    #[test]
    fn basis_chains_are_cycles() {
        // relative cycle of the pair above must have boundary inside B
        let set = CubicalSet::from_cubes(1, (0..4).map(edge1));
        let b = CubicalSet::from_cubes(
            1,
            [ElementaryCube::vertex(&[0]), ElementaryCube::vertex(&[4])],
        );
        let data = PairData::<Rat>::new(&set, &b).unwrap();
        let h = data.homology();
        assert_eq!(h.ranks, vec![0, 1]);
        let z = &h.basis[1][0];
        // apply the relative boundary: must vanish
        let mut acc = std::collections::HashMap::new();
        for &(j, coef) in &z.entries {
            for &(r, s) in &data.basis.columns[1][j] {
                *acc.entry(r).or_insert(Rat::ZERO) = acc
                    .get(&r)
                    .copied()
                    .unwrap_or(Rat::ZERO)
                    .add(coef.mul(Rat::int(s as i128)));
            }
        }
        assert!(acc.values().all(|v| v.is_zero()));
    }

    #[test]
    fn class_coordinates_ignore_boundary_perturbations() {
        // replacing a cycle by itself plus a boundary leaves its class
        // coordinates unchanged (randomized over perturbing chains)
        let mut cubes = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if (x, y) != (1, 1) {
                    cubes.push(full2(x, y));
                }
            }
        }
        let annulus = CubicalSet::from_cubes(2, cubes);
        let empty = CubicalSet::empty(2);
        let data = PairData::<Rat>::new(&annulus, &empty).unwrap();
        let z = data.solvers[1].basis[0].clone();
        let base = data.solvers[1].class_coordinates(&z).unwrap();
        // deterministic pseudo-random coefficients over the 2-cubes
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) % 7) as i128 - 3
        };
        for _ in 0..20 {
            let mut perturbed: Vec<(u32, Rat)> = z.clone();
            for (j, col) in data.basis.columns[2].iter().enumerate() {
                let c = Rat::int(next());
                if c.is_zero() {
                    continue;
                }
                let _ = j;
                for &(row, sign) in col {
                    perturbed = crate::homology::reduce::add_scaled(
                        &perturbed,
                        &vec![(row, Rat::int(sign as i128))],
                        c,
                    );
                }
            }
            let coords = data.solvers[1].class_coordinates(&perturbed).unwrap();
            assert_eq!(coords, base);
        }
    }

    #[test]
    fn euler_characteristic_matches_ranks() {
        let mut cubes = Vec::new();
        for x in 0..3 {
            for y in 0..2 {
                cubes.push(full2(x, y));
            }
        }
        let a = CubicalSet::from_cubes(2, cubes);
        let b = CubicalSet::from_cubes(2, [full2(0, 0)]);
        let basis = PairBasis::new(&a, &b).unwrap();
        let h = relative_homology(&a, &b, CoefficientRing::Q).unwrap();
        let chi_h: i64 = h
            .ranks
            .iter()
            .enumerate()
            .map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum();
        assert_eq!(basis.euler_characteristic(), chi_h);
    }
}
