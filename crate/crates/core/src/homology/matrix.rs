//! Dense matrices over a coefficient ring.
//!
//! These carry the small per-degree homology maps (induced maps, transition
//! maps, connecting homomorphisms). The heavy chain-level work happens in the
//! sparse reduction; matrices here stay at homology-rank size.

use super::ring::{CoefficientRing, Field, Gf2, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    pub ring: CoefficientRing,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>, // row-major; for F2 entries are 0 or 1
}

impl RingMatrix {
    pub fn zero(ring: CoefficientRing, rows: usize, cols: usize) -> Self {
        RingMatrix {
            ring,
            rows,
            cols,
            data: vec![Rat::ZERO; rows * cols],
        }
    }

    pub fn identity(ring: CoefficientRing, n: usize) -> Self {
        let mut m = RingMatrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, Rat::ONE);
        }
        m
    }

    pub fn from_rows(ring: CoefficientRing, rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RingMatrix {
            ring,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        let v = if self.ring == CoefficientRing::F2 {
            Rat::int(v.numer().rem_euclid(2))
        } else {
            v
        };
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { Rat::ONE } else { Rat::ZERO })
            })
    }

    fn go<T>(&self, f2: impl FnOnce(Dense<Gf2>) -> T, q: impl FnOnce(Dense<Rat>) -> T) -> T {
        match self.ring {
            CoefficientRing::F2 => f2(Dense::<Gf2>::from(self)),
            _ => q(Dense::<Rat>::from(self)),
        }
    }

    pub fn mul(&self, other: &RingMatrix) -> RingMatrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        match self.ring {
            CoefficientRing::F2 => Dense::<Gf2>::from(self)
                .mul(&Dense::<Gf2>::from(other))
                .into_ring(self.ring),
            _ => Dense::<Rat>::from(self)
                .mul(&Dense::<Rat>::from(other))
                .into_ring(self.ring),
        }
    }

    /// Rank over the fraction field (exact elimination, first-pivot rule).
    pub fn rank(&self) -> usize {
        self.go(|m| m.rank(), |m| m.rank())
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Inverse over F2 or Q; errors for Z, returns None when singular.
    pub fn inverse(&self) -> Result<Option<RingMatrix>> {
        if !self.ring.is_field() {
            return Err(Error::UnsupportedRing {
                op: "matrix inversion",
                ring: self.ring.to_string(),
            });
        }
        if self.rows != self.cols {
            return Ok(None);
        }
        let inv = match self.ring {
            CoefficientRing::F2 => Dense::<Gf2>::from(self)
                .inverse()
                .map(|m| m.into_ring(self.ring)),
            _ => Dense::<Rat>::from(self)
                .inverse()
                .map(|m| m.into_ring(self.ring)),
        };
        Ok(inv)
    }

    /// Entries rendered as exact strings, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }
}

/// Typed dense matrix used internally for elimination.
struct Dense<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> From<&RingMatrix> for Dense<F> {
    fn from(m: &RingMatrix) -> Self {
        Dense {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&r| F::from_rat(r)).collect(),
        }
    }
}

impl<F: Field> Dense<F> {
    fn at(&self, r: usize, c: usize) -> F {
        self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    fn into_ring(self, ring: CoefficientRing) -> RingMatrix {
        let mut out = RingMatrix::zero(ring, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).to_rat());
            }
        }
        out
    }

    fn mul(&self, other: &Dense<F>) -> Dense<F> {
        let mut out = Dense {
            rows: self.rows,
            cols: other.cols,
            data: vec![F::zero(); self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).add(a.mul(other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn rank(mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            // first-pivot rule: first row with a nonzero entry
            let pivot = (rank..self.rows).find(|&r| !self.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            // swap row p into position `rank`
            if p != rank {
                for c in 0..self.cols {
                    let tmp = self.at(rank, c);
                    self.set(rank, c, self.at(p, c));
                    self.set(p, c, tmp);
                }
            }
            let inv = self.at(rank, col).inv();
            for r in (rank + 1)..self.rows {
                let f = self.at(r, col).mul(inv);
                if f.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.at(r, c).sub(f.mul(self.at(rank, c)));
                    self.set(r, c, v);
                }
            }
            rank += 1;
        }
        rank
    }

    fn inverse(&self) -> Option<Dense<F>> {
        let n = self.rows;
        let mut a = Dense {
            rows: n,
            cols: n,
            data: self.data.clone(),
        };
        let mut inv = Dense {
            rows: n,
            cols: n,
            data: vec![F::zero(); n * n],
        };
        for i in 0..n {
            inv.set(i, i, F::one());
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if pivot != col {
                for c in 0..n {
                    let tmp = a.at(col, c);
                    a.set(col, c, a.at(pivot, c));
                    a.set(pivot, c, tmp);
                    let tmp = inv.at(col, c);
                    inv.set(col, c, inv.at(pivot, c));
                    inv.set(pivot, c, tmp);
                }
            }
            let d = a.at(col, col).inv();
            for c in 0..n {
                a.set(col, c, a.at(col, c).mul(d));
                inv.set(col, c, inv.at(col, c).mul(d));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.at(r, col);
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = a.at(r, c).sub(f.mul(a.at(col, c)));
                    a.set(r, c, v);
                    let v = inv.at(r, c).sub(f.mul(inv.at(col, c)));
                    inv.set(r, c, v);
                }
            }
        }
        Some(inv)
    }
}
