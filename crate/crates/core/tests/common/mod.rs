//! Shared helpers for the integration suites: the random face-closed corpus
//! and the determinantal-divisor oracle for Smith normal forms.

use conley_core::homology::{CubicalSet, ElementaryCube, IntMatrix, Interval};
use rand::rngs::StdRng;
use rand::Rng;

/// Random face-closed cubical set with at most `max_cubes` cubes.
pub fn random_cubical_set(rng: &mut StdRng, ambient: usize, max_cubes: usize) -> CubicalSet {
    let mut set = CubicalSet::empty(ambient);
    for _ in 0..12 {
        let cube = ElementaryCube::new(
            (0..ambient)
                .map(|_| {
                    let lower = rng.random_range(0..4i64);
                    if rng.random_bool(0.6) {
                        Interval::unit(lower)
                    } else {
                        Interval::point(lower)
                    }
                })
                .collect(),
        );
        let candidate = set.union(&CubicalSet::from_cubes(ambient, [cube]));
        if candidate.len() <= max_cubes {
            set = candidate;
        }
    }
    set
}

/// Random face-closed subcomplex of A.
pub fn random_subcomplex(rng: &mut StdRng, a: &CubicalSet) -> CubicalSet {
    let picked: Vec<ElementaryCube> = a.iter().filter(|_| rng.random_bool(0.3)).cloned().collect();
    CubicalSet::from_cubes(a.ambient_dim(), picked)
}

fn minor_det(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> i128 {
    if rows.len() == 1 {
        return m.get(rows[0], cols[0]);
    }
    let mut acc = 0i128;
    for (i, &r) in rows.iter().enumerate() {
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let v = m.get(r, cols[0]);
        if v != 0 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            acc += sign * v * minor_det(m, &sub_rows, &cols[1..]);
        }
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Expected Smith diagonal via gcds of all k x k minors (independent of the
/// elimination route).
pub fn snf_expected_diagonal(m: &IntMatrix) -> Vec<i128> {
    let n = m.rows.min(m.cols);
    let mut divisors = vec![1i128];
    for k in 1..=n {
        let mut g = 0i128;
        for rows in combinations(m.rows, k) {
            for cols in combinations(m.cols, k) {
                g = gcd(g, minor_det(m, &rows, &cols));
            }
        }
        divisors.push(g);
    }
    (1..=n)
        .map(|k| {
            if divisors[k] == 0 {
                0
            } else {
                divisors[k] / divisors[k - 1]
            }
        })
        .collect()
}

/// Dense mod-2 rank, independent of the production reduction.
#[allow(dead_code)]
pub fn f2_rank(rows: usize, cols: usize, entries: &[(usize, usize)]) -> usize {
    let mut mat = vec![vec![0u8; cols]; rows];
    for &(r, c) in entries {
        mat[r][c] ^= 1;
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| mat[r][c] == 1) else {
            continue;
        };
        mat.swap(rank, p);
        for r in 0..rows {
            if r != rank && mat[r][c] == 1 {
                let pivot_row = mat[rank].clone();
                for (x, p) in mat[r].iter_mut().zip(&pivot_row) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}
