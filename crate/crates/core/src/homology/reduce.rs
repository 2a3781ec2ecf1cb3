//! Sparse column reduction over a field.
//!
//! Boundary matrices are stored column-wise with rows sorted ascending; the
//! pivot of a column is its largest row index. Left-to-right reduction makes
//! pivots unique among nonzero columns, which yields ranks, kernel bases,
//! image bases, and a solver for expressing cycles in a homology basis.

use super::ring::Field;
use std::collections::HashMap;

pub type SparseCol<F> = Vec<(u32, F)>;

pub fn pivot<F: Field>(col: &SparseCol<F>) -> Option<(u32, F)> {
    col.last().copied()
}

/// target += coeff * source (sorted merge, zero entries dropped).
pub fn add_scaled<F: Field>(
    target: &SparseCol<F>,
    source: &SparseCol<F>,
    coeff: F,
) -> SparseCol<F> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        match (target.get(i), source.get(j)) {
            (Some(&(r1, v1)), Some(&(r2, v2))) => {
                if r1 < r2 {
                    out.push((r1, v1));
                    i += 1;
                } else if r2 < r1 {
                    let v = coeff.mul(v2);
                    if !v.is_zero() {
                        out.push((r2, v));
                    }
                    j += 1;
                } else {
                    let v = v1.add(coeff.mul(v2));
                    if !v.is_zero() {
                        out.push((r1, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some(&(r1, v1)), None) => {
                out.push((r1, v1));
                i += 1;
            }
            (None, Some(&(r2, v2))) => {
                let v = coeff.mul(v2);
                if !v.is_zero() {
                    out.push((r2, v));
                }
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

/// Result of reducing a sparse matrix column-by-column.
pub struct Reduction<F: Field> {
    /// Reduced columns R = D * V; nonzero columns have pairwise distinct pivots.
    pub reduced: Vec<SparseCol<F>>,
    /// Combination columns V (identity at start).
    pub v: Vec<SparseCol<F>>,
}

/// Standard left-to-right reduction with tracked combinations.
pub fn reduce<F: Field>(columns: &[SparseCol<F>]) -> Reduction<F> {
    let n = columns.len();
    let mut reduced: Vec<SparseCol<F>> = columns.to_vec();
    let mut v: Vec<SparseCol<F>> = (0..n).map(|j| vec![(j as u32, F::one())]).collect();
    let mut pivot_owner: HashMap<u32, usize> = HashMap::new();
    for j in 0..n {
        while let Some((p, c)) = pivot(&reduced[j]) {
            match pivot_owner.get(&p) {
                Some(&j0) => {
                    let (_, c0) = pivot(&reduced[j0]).expect("owner column is nonzero");
                    let f = c.div(c0).neg();
                    reduced[j] = add_scaled(&reduced[j], &reduced[j0].clone(), f);
                    v[j] = add_scaled(&v[j], &v[j0].clone(), f);
                }
                None => {
                    pivot_owner.insert(p, j);
                    break;
                }
            }
        }
    }
    Reduction { reduced, v }
}

impl<F: Field> Reduction<F> {
    /// Number of nonzero reduced columns.
    #[allow(dead_code)]
    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_empty()).count()
    }

    /// Columns of V whose reduced column vanished: a basis of the kernel.
    pub fn kernel_basis(&self) -> Vec<SparseCol<F>> {
        self.reduced
            .iter()
            .zip(&self.v)
            .filter(|(r, _)| r.is_empty())
            .map(|(_, v)| v.clone())
            .collect()
    }
}

/// Expresses cycles of one degree in terms of a chosen homology basis,
/// modulo the image of the next boundary.
pub struct ClassSolver<F: Field> {
    /// pivot row -> reduced image column (from the boundary one degree up).
    image: HashMap<u32, SparseCol<F>>,
    /// homology representatives with pairwise distinct pivots, also distinct
    /// from the image pivots.
    pub basis: Vec<SparseCol<F>>,
    basis_owner: HashMap<u32, usize>,
}

impl<F: Field> ClassSolver<F> {
    /// `image_cols`: reduced columns of the boundary from degree n+1 (pivots
    /// unique). `cycles`: kernel basis in degree n. Retains the cycles that
    /// survive reduction against the image; they form a homology basis.
    pub fn new(image_cols: &[SparseCol<F>], cycles: Vec<SparseCol<F>>) -> Self {
        let mut image: HashMap<u32, SparseCol<F>> = HashMap::new();
        for col in image_cols {
            if let Some((p, _)) = pivot(col) {
                let prev = image.insert(p, col.clone());
                debug_assert!(prev.is_none(), "image pivots must be unique");
            }
        }
        let mut solver = ClassSolver {
            image,
            basis: Vec::new(),
            basis_owner: HashMap::new(),
        };
        for z in cycles {
            let (rem, _) = solver.reduce_full(&z);
            if !rem.is_empty() {
                let (p, _) = pivot(&rem).expect("nonzero remainder");
                solver.basis_owner.insert(p, solver.basis.len());
                solver.basis.push(rem);
            }
        }
        solver
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduce z against image and basis columns. Returns the remainder and
    /// the coefficients picked up on each basis column.
    fn reduce_full(&self, z: &SparseCol<F>) -> (SparseCol<F>, Vec<F>) {
        let mut coords = vec![F::zero(); self.basis.len()];
        let mut cur = z.clone();
        while let Some((p, c)) = pivot(&cur) {
            if let Some(img) = self.image.get(&p) {
                let (_, c0) = pivot(img).expect("image column nonzero");
                cur = add_scaled(&cur, img, c.div(c0).neg());
            } else if let Some(&bi) = self.basis_owner.get(&p) {
                let (_, c0) = pivot(&self.basis[bi]).expect("basis column nonzero");
                let f = c.div(c0);
                coords[bi] = coords[bi].add(f);
                cur = add_scaled(&cur, &self.basis[bi], f.neg());
            } else {
                break;
            }
        }
        (cur, coords)
    }

    /// Coordinates of a cycle's homology class in the chosen basis. Returns
    /// None when z is not in the span of image and basis (i.e. not a cycle
    /// of this pair), which indicates a caller bug.
    pub fn class_coordinates(&self, z: &SparseCol<F>) -> Option<Vec<F>> {
        let (rem, coords) = self.reduce_full(z);
        if rem.is_empty() {
            Some(coords)
        } else {
            None
        }
    }
}
