//! Elementary cubes and face-closed cubical sets.
//!
//! An elementary cube is a product of elementary intervals, each either a
//! unit interval `[l, l+1]` or a degenerate point `{l}` on the integer
//! lattice. Cubical sets are finite, face-closed families of such cubes of
//! equal ambient dimension; they are the spatial substrate for all homology
//! computations in this crate.

use std::collections::BTreeSet;
use std::fmt;

/// One axis of an elementary cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lower: i64,
    pub degenerate: bool,
}

impl Interval {
    pub fn point(at: i64) -> Self {
        Interval {
            lower: at,
            degenerate: true,
        }
    }

    pub fn unit(lower: i64) -> Self {
        Interval {
            lower,
            degenerate: false,
        }
    }
}

/// A product of elementary intervals. Ordering is lexicographic on the
/// interval list, which fixes the canonical generator order everywhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryCube {
    intervals: Vec<Interval>,
}

impl ElementaryCube {
    pub fn new(intervals: Vec<Interval>) -> Self {
        assert!(!intervals.is_empty(), "ambient dimension must be >= 1");
        ElementaryCube { intervals }
    }

    /// Vertex at the given lattice point.
    pub fn vertex(coords: &[i64]) -> Self {
        ElementaryCube::new(coords.iter().map(|&c| Interval::point(c)).collect())
    }

    /// Full-dimensional cube with the given lower corner.
    pub fn full(corner: &[i64]) -> Self {
        ElementaryCube::new(corner.iter().map(|&c| Interval::unit(c)).collect())
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn ambient_dim(&self) -> usize {
        self.intervals.len()
    }

    /// Number of non-degenerate intervals.
    pub fn dim(&self) -> usize {
        self.intervals.iter().filter(|i| !i.degenerate).count()
    }

    /// Prepend a time axis, embedding the cube one dimension up.
    pub fn with_time(&self, time: Interval) -> ElementaryCube {
        let mut intervals = Vec::with_capacity(self.intervals.len() + 1);
        intervals.push(time);
        intervals.extend_from_slice(&self.intervals);
        ElementaryCube { intervals }
    }

    /// Signed primary faces. For the s-th non-degenerate slot (0-indexed)
    /// the upper face carries sign (-1)^s and the lower face the opposite,
    /// so that d([a, a+1]) = {a+1} - {a}.
    pub fn faces(&self) -> Vec<(i8, ElementaryCube)> {
        let mut out = Vec::with_capacity(2 * self.dim());
        let mut s = 0u32;
        for (slot, iv) in self.intervals.iter().enumerate() {
            if iv.degenerate {
                continue;
            }
            let sign = if s.is_multiple_of(2) { 1i8 } else { -1i8 };
            let mut upper = self.intervals.clone();
            upper[slot] = Interval::point(iv.lower + 1);
            let mut lower = self.intervals.clone();
            lower[slot] = Interval::point(iv.lower);
            out.push((sign, ElementaryCube { intervals: upper }));
            out.push((-sign, ElementaryCube { intervals: lower }));
            s += 1;
        }
        out
    }
}

impl fmt::Display for ElementaryCube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            if iv.degenerate {
                write!(f, "[{}]", iv.lower)?;
            } else {
                write!(f, "[{},{}]", iv.lower, iv.lower + 1)?;
            }
        }
        Ok(())
    }
}

/// A finite face-closed set of elementary cubes of equal ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalSet {
    ambient: usize,
    cubes: BTreeSet<ElementaryCube>,
}

impl CubicalSet {
    pub fn empty(ambient: usize) -> Self {
        CubicalSet {
            ambient,
            cubes: BTreeSet::new(),
        }
    }

    /// Build the face closure of the given cubes.
    pub fn from_cubes<I: IntoIterator<Item = ElementaryCube>>(ambient: usize, cubes: I) -> Self {
        let mut set = BTreeSet::new();
        let mut work: Vec<ElementaryCube> = Vec::new();
        for c in cubes {
            assert_eq!(c.ambient_dim(), ambient, "mixed ambient dimensions");
            work.push(c);
        }
        while let Some(c) = work.pop() {
            if set.contains(&c) {
                continue;
            }
            for (_, f) in c.faces() {
                if !set.contains(&f) {
                    work.push(f);
                }
            }
            set.insert(c);
        }
        CubicalSet {
            ambient,
            cubes: set,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn contains(&self, cube: &ElementaryCube) -> bool {
        self.cubes.contains(cube)
    }

    pub fn is_subset_of(&self, other: &CubicalSet) -> bool {
        self.cubes.is_subset(&other.cubes)
    }

    pub fn is_face_closed(&self) -> bool {
        self.cubes
            .iter()
            .all(|c| c.faces().iter().all(|(_, f)| self.cubes.contains(f)))
    }

    /// Cubes in canonical (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = &ElementaryCube> {
        self.cubes.iter()
    }

    /// Largest cube dimension present, or None when empty.
    pub fn max_dim(&self) -> Option<usize> {
        self.cubes.iter().map(|c| c.dim()).max()
    }

    pub fn union(&self, other: &CubicalSet) -> CubicalSet {
        assert_eq!(self.ambient, other.ambient);
        let mut cubes = self.cubes.clone();
        cubes.extend(other.cubes.iter().cloned());
        CubicalSet {
            ambient: self.ambient,
            cubes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn edge(a: i64) -> ElementaryCube {
        ElementaryCube::new(vec![Interval::unit(a)])
    }

    #[test]
    fn faces_of_unit_interval() {
        let c = edge(0);
        let f = c.faces();
        assert_eq!(
            f,
            vec![
                (1, ElementaryCube::vertex(&[1])),
                (-1, ElementaryCube::vertex(&[0])),
            ]
        );
    }

    #[test]
    fn faces_of_vertex_is_empty() {
        assert!(ElementaryCube::vertex(&[3]).faces().is_empty());
    }

    #[test]
    fn double_faces_cancel_on_square() {
        // Brute-force expansion of the boundary formula: applying faces twice
        // and summing signed multiplicities must vanish on every vertex.
        let sq = ElementaryCube::new(vec![Interval::unit(0), Interval::unit(2)]);
        let faces = sq.faces();
        assert_eq!(faces.len(), 4);
        let mut mult: HashMap<ElementaryCube, i64> = HashMap::new();
        for (s, f) in faces {
            for (s2, v) in f.faces() {
                *mult.entry(v).or_insert(0) += (s as i64) * (s2 as i64);
            }
        }
        assert!(mult.values().all(|&m| m == 0));
    }

    #[test]
    fn closure_of_square_has_nine_cubes() {
        let sq = ElementaryCube::new(vec![Interval::unit(0), Interval::unit(0)]);
        let set = CubicalSet::from_cubes(2, [sq]);
        assert_eq!(set.len(), 9); // 1 square, 4 edges, 4 vertices
        assert!(set.is_face_closed());
    }

    #[test]
    fn canonical_order_is_stable() {
        let a = CubicalSet::from_cubes(1, [edge(0), edge(1)]);
        let b = CubicalSet::from_cubes(1, [edge(1), edge(0)]);
        let va: Vec<_> = a.iter().cloned().collect();
        let vb: Vec<_> = b.iter().cloned().collect();
        assert_eq!(va, vb);
    }
}
