//! Smith normal form over the integers and Z-coefficient homology.
//!
//! The form S = U*M*V has unimodular U, V, a nonnegative diagonal, and each
//! diagonal entry dividing the next. Ranks and torsion of integral homology
//! are read off the forms of the boundary matrices.

use super::complex::PairBasis;
use super::cube::CubicalSet;
use super::relative::{Chain, GradedHomology};
use super::ring::{CoefficientRing, Rat};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i128>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> i128 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i128) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = IntMatrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let add = a.checked_mul(o.get(k, j)).expect("integer overflow");
                    let v = out.get(i, j).checked_add(add).expect("integer overflow");
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            let t = self.get(a, c);
            self.set(a, c, self.get(b, c));
            self.set(b, c, t);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let t = self.get(r, a);
            self.set(r, a, self.get(r, b));
            self.set(r, b, t);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            self.set(r, c, -self.get(r, c));
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            self.set(r, c, -self.get(r, c));
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: i128) {
        for c in 0..self.cols {
            let add = q.checked_mul(self.get(src, c)).expect("integer overflow");
            let v = self.get(dst, c).checked_add(add).expect("integer overflow");
            self.set(dst, c, v);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: i128) {
        for r in 0..self.rows {
            let add = q.checked_mul(self.get(r, src)).expect("integer overflow");
            let v = self.get(r, dst).checked_add(add).expect("integer overflow");
            self.set(r, dst, v);
        }
    }
}

/// S = U * M * V with U, V unimodular. The inverses are tracked so callers
/// can change bases without re-inverting.
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.s.diagonal().iter().filter(|&&d| d != 0).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut u_inv = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let mut v_inv = IntMatrix::identity(m.cols);

    // elementary operations applied consistently to S, U, V and inverses
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {
            s.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        };
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {
            s.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        };
    }
    macro_rules! row_neg {
        ($a:expr) => {
            s.negate_row($a);
            u.negate_row($a);
            u_inv.negate_col($a);
        };
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $q:expr) => {
            s.add_row($dst, $src, $q);
            u.add_row($dst, $src, $q);
            u_inv.add_col($src, $dst, -$q);
        };
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $q:expr) => {
            s.add_col($dst, $src, $q);
            v.add_col($dst, $src, $q);
            v_inv.add_row($src, $dst, -$q);
        };
    }

    let limit = m.rows.min(m.cols);
    let mut t = 0;
    while t < limit {
        // first minimal-magnitude nonzero entry in the trailing submatrix
        let mut best: Option<(usize, usize, i128)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                let val = s.get(i, j).abs();
                if val != 0 && best.is_none_or(|(_, _, b)| val < b) {
                    best = Some((i, j, val));
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        row_swap!(t, bi);
        col_swap!(t, bj);
        'clean: loop {
            if s.get(t, t) < 0 {
                row_neg!(t);
            }
            // clear the pivot column
            for i in (t + 1)..m.rows {
                if s.get(i, t) != 0 {
                    let q = s.get(i, t).div_euclid(s.get(t, t));
                    row_add!(i, t, -q);
                    if s.get(i, t) != 0 {
                        // smaller remainder becomes the new pivot
                        row_swap!(t, i);
                    }
                    continue 'clean;
                }
            }
            // clear the pivot row
            for j in (t + 1)..m.cols {
                if s.get(t, j) != 0 {
                    let q = s.get(t, j).div_euclid(s.get(t, t));
                    col_add!(j, t, -q);
                    if s.get(t, j) != 0 {
                        col_swap!(t, j);
                    }
                    continue 'clean;
                }
            }
            // enforce divisibility into the trailing block
            let d = s.get(t, t);
            let mut offender = None;
            'scan: for i in (t + 1)..m.rows {
                for j in (t + 1)..m.cols {
                    if s.get(i, j) % d != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    row_add!(t, i, 1);
                    continue 'clean;
                }
                None => break 'clean,
            }
        }
        t += 1;
    }
    Snf {
        u,
        s,
        v,
        u_inv,
        v_inv,
    }
}

/// Integral kernel basis of M: the columns of V whose diagonal entry in the
/// Smith form vanishes (or is absent).
fn kernel_basis(m: &IntMatrix) -> (IntMatrix, Snf) {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let k = m.cols - rank;
    let mut ker = IntMatrix::zero(m.cols, k);
    for (out_j, j) in (rank..m.cols).enumerate() {
        for r in 0..m.cols {
            ker.set(r, out_j, snf.v.get(r, j));
        }
    }
    (ker, snf)
}

/// Z-coefficient relative homology: ranks, torsion coefficients and an
/// integral cycle basis for the free part.
pub fn z_homology(a: &CubicalSet, b: &CubicalSet) -> Result<GradedHomology> {
    let basis = PairBasis::new(a, b)?;
    let max_deg = basis.ambient;
    let dense = |n: usize| -> IntMatrix {
        let rows = if n == 0 {
            0
        } else {
            basis.generators[n - 1].len()
        };
        let mut m = IntMatrix::zero(rows, basis.generators[n].len());
        for (j, col) in basis.columns[n].iter().enumerate() {
            for &(r, sgn) in col {
                m.set(r as usize, j, sgn as i128);
            }
        }
        m
    };

    let mut ranks = vec![0usize; max_deg + 1];
    let mut torsion = vec![Vec::new(); max_deg + 1];
    let mut chains: Vec<Vec<Chain>> = vec![Vec::new(); max_deg + 1];

    for n in 0..=max_deg {
        let d_n = dense(n);
        let (ker, _) = kernel_basis(&d_n);
        let k = ker.cols;
        if k == 0 {
            continue;
        }
        let d_up = if n < max_deg {
            dense(n + 1)
        } else {
            IntMatrix::zero(basis.generators[n].len(), 0)
        };
        // express the image of d_{n+1} in kernel coordinates: ker * y = d_up;
        // the kernel matrix has full column rank, so the solve is exact
        let ker_snf = smith_normal_form(&ker);
        debug_assert_eq!(ker_snf.rank(), k);
        let bmat = ker_snf.u.mul(&d_up);
        let mut w = IntMatrix::zero(k, d_up.cols);
        for i in 0..k {
            let si = ker_snf.s.get(i, i);
            for j in 0..d_up.cols {
                let bij = bmat.get(i, j);
                debug_assert_eq!(bij % si, 0, "image must lie in the kernel lattice");
                w.set(i, j, bij / si);
            }
        }
        let y = ker_snf.v.mul(&w);
        let y_snf = smith_normal_form(&y);
        let y_rank = y_snf.rank();
        ranks[n] = k - y_rank;
        for d in y_snf.s.diagonal() {
            if d.abs() > 1 {
                torsion[n].push(d.abs());
            }
        }
        // free-part representatives: ker * u_inv columns past the image rank
        let reps = ker.mul(&y_snf.u_inv);
        for j in y_rank..k {
            let mut entries = Vec::new();
            for r in 0..reps.rows {
                let vch = reps.get(r, j);
                if vch != 0 {
                    entries.push((r, Rat::int(vch)));
                }
            }
            chains[n].push(Chain { entries });
        }
        torsion[n].sort_unstable();
    }

    Ok(GradedHomology {
        ring: CoefficientRing::Z,
        ranks,
        torsion,
        basis: chains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(m: &IntMatrix) -> i128 {
        // fraction-free Gaussian elimination (Bareiss)
        assert_eq!(m.rows, m.cols);
        let n = m.rows;
        if n == 0 {
            return 1;
        }
        let mut a = m.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a.get(k, k) == 0 {
                let swap = ((k + 1)..n).find(|&i| a.get(i, k) != 0);
                match swap {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                    a.set(i, j, num / prev);
                }
                a.set(i, k, 0);
            }
            prev = a.get(k, k);
        }
        sign * a.get(n - 1, n - 1)
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.s.diagonal(), vec![1, 6]);
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
        assert_eq!(det(&snf.u).abs(), 1);
        assert_eq!(det(&snf.v).abs(), 1);
    }

    #[test]
    fn zero_and_identity_are_fixed_points() {
        let z = IntMatrix::zero(3, 2);
        let snf = smith_normal_form(&z);
        assert_eq!(snf.s, z);
        let i = IntMatrix::identity(3);
        let snf = smith_normal_form(&i);
        assert_eq!(snf.s, i);
    }

    #[test]
    fn inverses_are_tracked() {
        let m = IntMatrix::from_rows(vec![vec![4, 2, 1], vec![6, 3, 0], vec![0, 5, 7]]);
        let snf = smith_normal_form(&m);
        assert!(snf.u.mul(&snf.u_inv).is_diagonal());
        assert_eq!(snf.u.mul(&snf.u_inv), IntMatrix::identity(3));
        assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(3));
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
    }

    #[test]
    fn divisibility_chain_holds() {
        let m = IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&m);
        let d = snf.s.diagonal();
        for w in d.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0].max(1), 0);
            }
        }
        assert!(d.iter().all(|&x| x >= 0));
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s);
    }

    #[test]
    fn synthetic_torsion_is_detected() {
        // a one-column boundary 2*v gives coker Z/2 in the kernel lattice;
        // exercised through the SNF plumbing directly
        let ker = IntMatrix::identity(1);
        let d_up = IntMatrix::from_rows(vec![vec![2]]);
        let y = ker.mul(&d_up);
        let snf = smith_normal_form(&y);
        assert_eq!(snf.s.diagonal(), vec![2]);
    }
}
