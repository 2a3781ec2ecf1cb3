//! Graded maps between pair homologies: inclusion-induced maps, the
//! chain-level snake connecting map of a nested triple, and exactness
//! checking for assembled sequences.

use super::cube::{CubicalSet, ElementaryCube};
use super::matrix::RingMatrix;
use super::reduce::SparseCol;
use super::relative::{GradedHomology, PairData};
use super::ring::{CoefficientRing, Field, Gf2, Rat};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// A homology map given degreewise by matrices over the chosen basis.
/// `matrices[d]` sends domain degree d to codomain degree `d + shift`.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub ring: CoefficientRing,
    pub shift: i64,
    pub dom_ranks: Vec<usize>,
    pub cod_ranks: Vec<usize>,
    pub matrices: Vec<RingMatrix>,
}

fn rank_at(ranks: &[usize], degree: i64) -> usize {
    if degree < 0 {
        return 0;
    }
    ranks.get(degree as usize).copied().unwrap_or(0)
}

impl GradedMap {
    pub fn identity(h: &GradedHomology) -> GradedMap {
        let matrices = h
            .ranks
            .iter()
            .map(|&r| RingMatrix::identity(h.ring, r))
            .collect();
        GradedMap {
            ring: h.ring,
            shift: 0,
            dom_ranks: h.ranks.clone(),
            cod_ranks: h.ranks.clone(),
            matrices,
        }
    }

    pub fn zero(ring: CoefficientRing, shift: i64, dom: &[usize], cod: &[usize]) -> GradedMap {
        let matrices = (0..dom.len())
            .map(|d| RingMatrix::zero(ring, rank_at(cod, d as i64 + shift), dom[d]))
            .collect();
        GradedMap {
            ring,
            shift,
            dom_ranks: dom.to_vec(),
            cod_ranks: cod.to_vec(),
            matrices,
        }
    }

    pub fn matrix_into_degree(&self, cod_degree: i64) -> Option<&RingMatrix> {
        let d = cod_degree - self.shift;
        if d < 0 {
            return None;
        }
        self.matrices.get(d as usize)
    }

    pub fn rank_in_degree(&self, dom_degree: usize) -> usize {
        self.matrices.get(dom_degree).map_or(0, |m| m.rank())
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..self.matrices.len())
            .map(|d| self.rank_in_degree(d))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.iter().all(|m| m.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.matrices.iter().all(|m| m.is_identity())
    }

    /// next o self; shapes must agree degreewise.
    pub fn then(&self, next: &GradedMap) -> GradedMap {
        assert_eq!(self.ring, next.ring, "ring mismatch");
        let matrices: Vec<RingMatrix> = (0..self.matrices.len())
            .map(|d| {
                let mid = d as i64 + self.shift;
                let second = if mid < 0 {
                    None
                } else {
                    next.matrices.get(mid as usize)
                };
                match second {
                    Some(m2) => m2.mul(&self.matrices[d]),
                    None => RingMatrix::zero(
                        self.ring,
                        rank_at(&next.cod_ranks, d as i64 + self.shift + next.shift),
                        self.dom_ranks[d],
                    ),
                }
            })
            .collect();
        GradedMap {
            ring: self.ring,
            shift: self.shift + next.shift,
            dom_ranks: self.dom_ranks.clone(),
            cod_ranks: next.cod_ranks.clone(),
            matrices,
        }
    }

    /// Degreewise inverse; None when any degree is non-square or singular.
    pub fn invert(&self) -> Result<Option<GradedMap>> {
        let mut matrices = Vec::with_capacity(self.matrices.len());
        for m in &self.matrices {
            if m.rows != m.cols {
                return Ok(None);
            }
            match m.inverse()? {
                Some(inv) => matrices.push(inv),
                None => return Ok(None),
            }
        }
        Ok(Some(GradedMap {
            ring: self.ring,
            shift: -self.shift,
            dom_ranks: self.cod_ranks.clone(),
            cod_ranks: self.dom_ranks.clone(),
            matrices,
        }))
    }

    /// Degree and rank defect of the first degree where the map fails to be
    /// an isomorphism, if any.
    pub fn isomorphism_defect(&self) -> Option<(usize, usize)> {
        for (d, m) in self.matrices.iter().enumerate() {
            let full = m.rows.max(m.cols);
            let r = m.rank();
            if m.rows != m.cols || r != full {
                return Some((d, full - r));
            }
        }
        None
    }

    pub fn matrices_eq(&self, other: &GradedMap) -> bool {
        self.shift == other.shift
            && self.matrices.len() == other.matrices.len()
            && self
                .matrices
                .iter()
                .zip(&other.matrices)
                .all(|(a, b)| a == b)
    }
}

fn require_field(ring: CoefficientRing, op: &'static str) -> Result<()> {
    if !ring.is_field() {
        return Err(Error::UnsupportedRing {
            op,
            ring: ring.to_string(),
        });
    }
    Ok(())
}

/// Induced map on homology for a cube-level injection of pairs. The
/// injection must be a chain map: faces commute with `map_cube` and cubes of
/// the domain exit set land in the codomain exit set.
pub(crate) fn induced_map_data<F: Field>(
    dom: &PairData<F>,
    cod: &PairData<F>,
    map_cube: impl Fn(&ElementaryCube) -> ElementaryCube,
) -> Result<GradedMap> {
    let degrees = dom.solvers.len();
    let mut matrices = Vec::with_capacity(degrees);
    for d in 0..degrees {
        let dom_rank = dom.rank_at(d);
        let cod_rank = cod.rank_at(d);
        let mut m = RingMatrix::zero(F::RING, cod_rank, dom_rank);
        for (j, cycle) in dom.solvers[d].basis.iter().enumerate() {
            let image = push_chain(dom, cod, d, cycle, &map_cube)?;
            let coords = cod.solvers[d].class_coordinates(&image).ok_or_else(|| {
                Error::Precondition("induced image is not a relative cycle of the codomain".into())
            })?;
            for (i, c) in coords.iter().enumerate() {
                m.set(i, j, c.to_rat());
            }
        }
        matrices.push(m);
    }
    Ok(GradedMap {
        ring: F::RING,
        shift: 0,
        dom_ranks: dom.ranks(),
        cod_ranks: cod.ranks(),
        matrices,
    })
}

fn push_chain<F: Field>(
    dom: &PairData<F>,
    cod: &PairData<F>,
    degree: usize,
    chain: &SparseCol<F>,
    map_cube: &impl Fn(&ElementaryCube) -> ElementaryCube,
) -> Result<SparseCol<F>> {
    let mut entries: Vec<(u32, F)> = Vec::new();
    for &(row, coeff) in chain {
        let cube = &dom.basis.generators[degree][row as usize];
        let mapped = map_cube(cube);
        if let Some((d2, idx)) = cod.basis.index_of(&mapped) {
            if d2 != degree {
                return Err(Error::Precondition(
                    "cube injection does not preserve dimension".into(),
                ));
            }
            entries.push((idx, coeff));
        }
        // cubes absent from the codomain generators lie in its exit set and
        // vanish in the relative complex
    }
    entries.sort_unstable_by_key(|&(r, _)| r);
    Ok(entries)
}

fn check_nested(
    small: (&CubicalSet, &CubicalSet),
    large: (&CubicalSet, &CubicalSet),
) -> Result<()> {
    if !small.0.is_subset_of(large.0) || (!small.1.is_empty() && !small.1.is_subset_of(large.1)) {
        return Err(Error::Precondition(
            "inclusion-induced map requires nested pairs".into(),
        ));
    }
    Ok(())
}

/// Map on relative homology induced by an inclusion of pairs
/// (A, B) into (A', B') with A in A' and B in B'.
pub fn inclusion_induced_map(
    small: (&CubicalSet, &CubicalSet),
    large: (&CubicalSet, &CubicalSet),
    ring: CoefficientRing,
) -> Result<GradedMap> {
    require_field(ring, "inclusion-induced maps")?;
    check_nested(small, large)?;
    match ring {
        CoefficientRing::F2 => {
            let dom = PairData::<Gf2>::new(small.0, small.1)?;
            let cod = PairData::<Gf2>::new(large.0, large.1)?;
            induced_map_data(&dom, &cod, |c| c.clone())
        }
        CoefficientRing::Q => {
            let dom = PairData::<Rat>::new(small.0, small.1)?;
            let cod = PairData::<Rat>::new(large.0, large.1)?;
            induced_map_data(&dom, &cod, |c| c.clone())
        }
        CoefficientRing::Z => unreachable!(),
    }
}

/// Connecting homomorphism of a nested triple N3 in N2 in N1: each relative
/// class of (N1, N2) is lifted to a chain of N1, its boundary lands in N2,
/// and the class of that boundary is read in H(N2, N3), one degree down.
pub fn snake_connecting(
    n1: &CubicalSet,
    n2: &CubicalSet,
    n3: &CubicalSet,
    ring: CoefficientRing,
) -> Result<GradedMap> {
    require_field(ring, "snake connecting maps")?;
    if (!n3.is_empty() && !n3.is_subset_of(n2)) || (!n2.is_empty() && !n2.is_subset_of(n1)) {
        return Err(Error::Precondition(
            "snake connecting map requires N3 in N2 in N1".into(),
        ));
    }
    match ring {
        CoefficientRing::F2 => snake_data::<Gf2>(n1, n2, n3),
        CoefficientRing::Q => snake_data::<Rat>(n1, n2, n3),
        CoefficientRing::Z => unreachable!(),
    }
}

fn snake_data<F: Field>(n1: &CubicalSet, n2: &CubicalSet, n3: &CubicalSet) -> Result<GradedMap> {
    let top = PairData::<F>::new(n1, n2)?;
    let bottom = PairData::<F>::new(n2, n3)?;
    let degrees = top.solvers.len();
    let mut matrices = Vec::with_capacity(degrees);
    for d in 0..degrees {
        let dom_rank = top.rank_at(d);
        let cod_rank = if d == 0 { 0 } else { bottom.rank_at(d - 1) };
        let mut m = RingMatrix::zero(F::RING, cod_rank, dom_rank);
        if d > 0 {
            for (j, cycle) in top.solvers[d].basis.iter().enumerate() {
                // boundary of the lift, accumulated over all faces in N1
                let mut acc: BTreeMap<ElementaryCube, F> = BTreeMap::new();
                for &(row, coeff) in cycle {
                    let cube = &top.basis.generators[d][row as usize];
                    for (sign, face) in cube.faces() {
                        let v = coeff.mul(F::from_sign(sign));
                        let slot = acc.entry(face).or_insert_with(F::zero);
                        *slot = slot.add(v);
                    }
                }
                let mut entries: Vec<(u32, F)> = Vec::new();
                for (face, v) in acc {
                    if v.is_zero() {
                        continue;
                    }
                    if n2.contains(&face) {
                        if let Some((d2, idx)) = bottom.basis.index_of(&face) {
                            debug_assert_eq!(d2, d - 1);
                            entries.push((idx, v));
                        }
                        // faces inside N3 vanish in the relative complex
                    } else {
                        // a relative cycle's boundary must lie in N2
                        return Err(Error::Precondition(
                            "relative cycle boundary escapes the middle set".into(),
                        ));
                    }
                }
                entries.sort_unstable_by_key(|&(r, _)| r);
                let coords = bottom.solvers[d - 1]
                    .class_coordinates(&entries)
                    .ok_or_else(|| Error::Precondition("connecting image is not a cycle".into()))?;
                for (i, c) in coords.iter().enumerate() {
                    m.set(i, j, c.to_rat());
                }
            }
        }
        matrices.push(m);
    }
    Ok(GradedMap {
        ring: F::RING,
        shift: -1,
        dom_ranks: top.ranks(),
        cod_ranks: bottom.ranks(),
        matrices,
    })
}

/// Per-node exactness data for a composable sequence of graded maps.
#[derive(Clone, Debug)]
pub struct NodeCheck {
    pub node: usize,
    pub degree: usize,
    pub incoming_rank: usize,
    pub outgoing_nullity: usize,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub exact: bool,
    pub nodes: Vec<NodeCheck>,
}

/// Checks rank(incoming) = nullity(outgoing) at every interior node of the
/// sequence, degree by degree.
pub fn exactness_check(maps: &[GradedMap]) -> Result<ExactnessReport> {
    for w in maps.windows(2) {
        let (f, g) = (&w[0], &w[1]);
        let degrees = f.cod_ranks.len().max(g.dom_ranks.len());
        for d in 0..degrees {
            if rank_at(&f.cod_ranks, d as i64) != rank_at(&g.dom_ranks, d as i64) {
                return Err(Error::Precondition(format!(
                    "sequence nodes disagree in degree {d}"
                )));
            }
        }
    }
    let mut nodes = Vec::new();
    let mut exact = true;
    for i in 0..maps.len().saturating_sub(1) {
        let f = &maps[i];
        let g = &maps[i + 1];
        let degrees = g.dom_ranks.len();
        for d in 0..degrees {
            let node_dim = g.dom_ranks[d];
            let in_rank = f.matrix_into_degree(d as i64).map_or(0, |m| m.rank());
            let out_rank = g.matrices.get(d).map_or(0, |m| m.rank());
            let out_nullity = node_dim - out_rank;
            let ok = in_rank == out_nullity;
            if node_dim > 0 || in_rank > 0 {
                nodes.push(NodeCheck {
                    node: i,
                    degree: d,
                    incoming_rank: in_rank,
                    outgoing_nullity: out_nullity,
                    ok,
                });
            }
            exact &= ok;
        }
    }
    Ok(ExactnessReport { exact, nodes })
}
