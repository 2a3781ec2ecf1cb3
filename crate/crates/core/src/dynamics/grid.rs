//! Uniform grids of full-dimensional cubes over an axis-aligned box.

use crate::error::{Error, Result};

/// Relative tolerance used when snapping real coordinates onto cube
/// boundaries; keeps covers deterministic when bounding boxes land exactly
/// on cell edges.
const REL_TOL: f64 = 1e-9;

pub type CubeId = u32;

#[derive(Clone, Debug, PartialEq)]
pub struct BoxBounds {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct Grid {
    pub lower: Vec<f64>,
    pub cell: Vec<f64>,
    pub divisions: Vec<u32>,
}

impl Grid {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, divisions: Vec<u32>) -> Result<Grid> {
        if lower.len() != upper.len() || lower.len() != divisions.len() || lower.is_empty() {
            return Err(Error::Precondition("grid dimension mismatch".into()));
        }
        if divisions.contains(&0) {
            return Err(Error::Precondition(
                "grid divisions must be positive".into(),
            ));
        }
        let mut cell = Vec::with_capacity(lower.len());
        for i in 0..lower.len() {
            let span = upper[i] - lower[i];
            if span.is_nan() || span <= 0.0 {
                return Err(Error::Precondition(
                    "grid upper bound must exceed lower bound".into(),
                ));
            }
            cell.push(span / divisions[i] as f64);
        }
        let count: u64 = divisions.iter().map(|&d| d as u64).product();
        if count > u32::MAX as u64 {
            return Err(Error::Precondition("grid too large".into()));
        }
        Ok(Grid {
            lower,
            cell,
            divisions,
        })
    }

    pub fn dim(&self) -> usize {
        self.divisions.len()
    }

    pub fn cube_count(&self) -> usize {
        self.divisions.iter().map(|&d| d as usize).product()
    }

    pub fn upper(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| self.lower[i] + self.cell[i] * self.divisions[i] as f64)
            .collect()
    }

    pub fn coords_of(&self, id: CubeId) -> Vec<u32> {
        let mut rem = id as usize;
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let d = self.divisions[i] as usize;
            out.push((rem % d) as u32);
            rem /= d;
        }
        out
    }

    pub fn id_of(&self, coords: &[u32]) -> CubeId {
        let mut id = 0usize;
        let mut stride = 1usize;
        for (&c, &d) in coords.iter().zip(&self.divisions) {
            debug_assert!(c < d);
            id += c as usize * stride;
            stride *= d as usize;
        }
        id as CubeId
    }

    pub fn cube_bounds(&self, id: CubeId) -> BoxBounds {
        let c = self.coords_of(id);
        let lo: Vec<f64> = (0..self.dim())
            .map(|i| self.lower[i] + self.cell[i] * c[i] as f64)
            .collect();
        let hi: Vec<f64> = (0..self.dim())
            .map(|i| self.lower[i] + self.cell[i] * (c[i] + 1) as f64)
            .collect();
        BoxBounds { lo, hi }
    }

    pub fn contains_point(&self, p: &[f64]) -> bool {
        let upper = self.upper();
        (0..self.dim()).all(|i| {
            let tol = REL_TOL * self.cell[i];
            p[i] >= self.lower[i] - tol && p[i] <= upper[i] + tol && p[i].is_finite()
        })
    }

    /// Whether the box pokes outside the grid (positive-measure overlap with
    /// the exterior).
    pub fn box_escapes(&self, b: &BoxBounds) -> bool {
        let upper = self.upper();
        (0..self.dim()).any(|i| {
            let tol = REL_TOL * self.cell[i];
            b.lo[i] < self.lower[i] - tol || b.hi[i] > upper[i] + tol
        })
    }

    /// All cubes with positive-measure overlap with the box, clipped to the
    /// grid, in ascending id order.
    pub fn cubes_overlapping(&self, b: &BoxBounds) -> Vec<CubeId> {
        let mut ranges = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let tol = REL_TOL * self.cell[i];
            let lo_idx = ((b.lo[i] - self.lower[i]) / self.cell[i] + tol)
                .floor()
                .max(0.0) as i64;
            // last cube index whose interior meets the box
            let hi_idx = (((b.hi[i] - self.lower[i]) / self.cell[i]) - tol).floor() as i64;
            let lo_idx = lo_idx.clamp(0, self.divisions[i] as i64 - 1) as u32;
            let hi_idx = hi_idx.clamp(-1, self.divisions[i] as i64 - 1);
            if hi_idx < lo_idx as i64 {
                return Vec::new();
            }
            ranges.push((lo_idx, hi_idx as u32));
        }
        let mut out = Vec::new();
        let mut coords: Vec<u32> = ranges.iter().map(|r| r.0).collect();
        loop {
            out.push(self.id_of(&coords));
            let mut axis = 0;
            loop {
                if axis == self.dim() {
                    out.sort_unstable();
                    return out;
                }
                if coords[axis] < ranges[axis].1 {
                    coords[axis] += 1;
                    break;
                }
                coords[axis] = ranges[axis].0;
                axis += 1;
            }
        }
    }

    /// Cubes fully contained in the box (used for config regions).
    pub fn cubes_inside(&self, b: &BoxBounds) -> Vec<CubeId> {
        self.cubes_overlapping(b)
            .into_iter()
            .filter(|&id| {
                let cb = self.cube_bounds(id);
                (0..self.dim()).all(|i| {
                    let tol = REL_TOL * self.cell[i];
                    cb.lo[i] >= b.lo[i] - tol && cb.hi[i] <= b.hi[i] + tol
                })
            })
            .collect()
    }

    /// Neighbor ids under vertex adjacency (all 3^d - 1 offsets); None slots
    /// are outside the grid.
    pub fn neighbors(&self, id: CubeId) -> Vec<Option<CubeId>> {
        let c = self.coords_of(id);
        let d = self.dim();
        let mut out = Vec::new();
        let mut offs = vec![-1i64; d];
        loop {
            if offs.iter().any(|&o| o != 0) {
                let mut ok = true;
                let mut nc = Vec::with_capacity(d);
                for i in 0..d {
                    let v = c[i] as i64 + offs[i];
                    if v < 0 || v >= self.divisions[i] as i64 {
                        ok = false;
                        break;
                    }
                    nc.push(v as u32);
                }
                out.push(if ok { Some(self.id_of(&nc)) } else { None });
            }
            let mut axis = 0;
            loop {
                if axis == d {
                    return out;
                }
                if offs[axis] < 1 {
                    offs[axis] += 1;
                    break;
                }
                offs[axis] = -1;
                axis += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid1() -> Grid {
        Grid::new(vec![-1.0], vec![1.0], vec![8]).unwrap()
    }

    #[test]
    fn ids_roundtrip() {
        let g = Grid::new(vec![0.0, 0.0], vec![1.0, 1.0], vec![4, 3]).unwrap();
        for id in 0..g.cube_count() as u32 {
            assert_eq!(g.id_of(&g.coords_of(id)), id);
        }
    }

    #[test]
    fn overlap_excludes_touching_boxes() {
        let g = grid1();
        // box exactly equal to cube [0]: [-1.0, -0.75]
        let b = BoxBounds {
            lo: vec![-1.0],
            hi: vec![-0.75],
        };
        assert_eq!(g.cubes_overlapping(&b), vec![0]);
    }

    #[test]
    fn overlap_spans_interior() {
        let g = grid1();
        let b = BoxBounds {
            lo: vec![-0.8],
            hi: vec![-0.3],
        };
        assert_eq!(g.cubes_overlapping(&b), vec![0, 1, 2]);
    }

    #[test]
    fn inside_requires_containment() {
        let g = grid1();
        let b = BoxBounds {
            lo: vec![-0.8],
            hi: vec![-0.3],
        };
        // only cube 1 = [-0.75, -0.5] fits entirely
        assert_eq!(g.cubes_inside(&b), vec![1]);
    }

    #[test]
    fn neighbors_2d_interior_has_eight() {
        let g = Grid::new(vec![0.0, 0.0], vec![1.0, 1.0], vec![3, 3]).unwrap();
        let center = g.id_of(&[1, 1]);
        let n = g.neighbors(center);
        assert_eq!(n.len(), 8);
        assert!(n.iter().all(|x| x.is_some()));
        let corner = g.id_of(&[0, 0]);
        let n = g.neighbors(corner);
        assert_eq!(n.iter().filter(|x| x.is_some()).count(), 3);
    }

    #[test]
    fn escape_detection() {
        let g = grid1();
        assert!(g.box_escapes(&BoxBounds {
            lo: vec![0.9],
            hi: vec![1.1],
        }));
        assert!(!g.box_escapes(&BoxBounds {
            lo: vec![0.5],
            hi: vec![1.0],
        }));
    }
}
