//! RK4 integration and combinatorial outer approximations of the time-tau
//! flow: the slice-indexed multivalued cubical map.

use super::grid::{BoxBounds, Grid};
use super::vector_field::VectorFieldSpec;
use rayon::prelude::*;

pub type CubeId = u32;

/// Image of one cube under one slice transition. `escaped` marks images
/// that (possibly) leave the grid; the escaped state is absorbing.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CubeTargets {
    pub cubes: Vec<CubeId>,
    pub escaped: bool,
}

/// Multivalued map for one slice transition, indexed by cube id.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceMap {
    pub targets: Vec<CubeTargets>,
}

/// The combinatorial semiflow: outer approximations F_k of the flow maps
/// between consecutive slice times a_k = k*tau.
#[derive(Clone, Debug)]
pub struct TransitionGraph {
    pub grid: Grid,
    pub tau: f64,
    pub padding: u32,
    pub rk4_steps: u32,
    maps: Vec<SliceMap>,
}

impl TransitionGraph {
    /// Number of slice times (K + 1 for K transitions).
    pub fn slice_count(&self) -> usize {
        self.maps.len() + 1
    }

    /// Index of the last slice, K.
    pub fn last_slice(&self) -> usize {
        self.maps.len()
    }

    pub fn targets(&self, k: usize, cube: CubeId) -> &CubeTargets {
        &self.maps[k].targets[cube as usize]
    }

    pub fn map(&self, k: usize) -> &SliceMap {
        &self.maps[k]
    }
}

/// Classical fixed-step RK4. Returns None when the trajectory leaves the
/// safety box or produces non-finite values (the escape flag).
pub fn rk4_integrate(
    field: &VectorFieldSpec,
    t0: f64,
    x0: &[f64],
    tau: f64,
    steps: u32,
    safety: &BoxBounds,
) -> Option<Vec<f64>> {
    assert!(steps >= 1, "steps must be >= 1");
    let d = x0.len();
    let h = tau / steps as f64;
    let mut x = x0.to_vec();
    let mut t = t0;
    let mut k1 = vec![0.0; d];
    let mut k2 = vec![0.0; d];
    let mut k3 = vec![0.0; d];
    let mut k4 = vec![0.0; d];
    let mut tmp = vec![0.0; d];
    let inside = |x: &[f64]| {
        x.iter()
            .enumerate()
            .all(|(i, &v)| v.is_finite() && v >= safety.lo[i] && v <= safety.hi[i])
    };
    if !inside(&x) {
        return None;
    }
    for _ in 0..steps {
        field.eval(t, &x, &mut k1);
        for i in 0..d {
            tmp[i] = x[i] + 0.5 * h * k1[i];
        }
        field.eval(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..d {
            tmp[i] = x[i] + 0.5 * h * k2[i];
        }
        field.eval(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..d {
            tmp[i] = x[i] + h * k3[i];
        }
        field.eval(t + h, &tmp, &mut k4);
        for i in 0..d {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += h;
        if !inside(&x) {
            return None;
        }
    }
    Some(x)
}

fn safety_box(grid: &Grid) -> BoxBounds {
    let upper = grid.upper();
    let lo = (0..grid.dim())
        .map(|i| grid.lower[i] - (upper[i] - grid.lower[i]))
        .collect();
    let hi = (0..grid.dim())
        .map(|i| upper[i] + (upper[i] - grid.lower[i]))
        .collect();
    BoxBounds { lo, hi }
}

/// Outer approximation of the flow map from slice k to k+1: integrate the
/// 2^d corners and the center of each cube, take the bounding box of the
/// endpoints, inflate it by `padding` cells per axis, and cover with grid
/// cubes. Any sample escaping the grid sends the cube to the escaped state.
pub fn outer_approximation(
    field: &VectorFieldSpec,
    grid: &Grid,
    k: usize,
    tau: f64,
    padding: u32,
    rk4_steps: u32,
) -> SliceMap {
    let safety = safety_box(grid);
    let t0 = k as f64 * tau;
    let d = grid.dim();
    let targets: Vec<CubeTargets> = (0..grid.cube_count() as u32)
        .map(|id| {
            let b = grid.cube_bounds(id);
            let mut samples: Vec<Vec<f64>> = Vec::with_capacity((1 << d) + 1);
            for mask in 0..(1u32 << d) {
                samples.push(
                    (0..d)
                        .map(|i| if mask >> i & 1 == 1 { b.hi[i] } else { b.lo[i] })
                        .collect(),
                );
            }
            samples.push((0..d).map(|i| 0.5 * (b.lo[i] + b.hi[i])).collect());
            let mut lo = vec![f64::INFINITY; d];
            let mut hi = vec![f64::NEG_INFINITY; d];
            for s in &samples {
                match rk4_integrate(field, t0, s, tau, rk4_steps, &safety) {
                    Some(end) if grid.contains_point(&end) => {
                        for i in 0..d {
                            lo[i] = lo[i].min(end[i]);
                            hi[i] = hi[i].max(end[i]);
                        }
                    }
                    _ => {
                        return CubeTargets {
                            cubes: Vec::new(),
                            escaped: true,
                        };
                    }
                }
            }
            for i in 0..d {
                lo[i] -= padding as f64 * grid.cell[i];
                hi[i] += padding as f64 * grid.cell[i];
            }
            let bbox = BoxBounds { lo, hi };
            CubeTargets {
                cubes: grid.cubes_overlapping(&bbox),
                escaped: grid.box_escapes(&bbox),
            }
        })
        .collect();
    SliceMap { targets }
}

/// Builds the full slice-indexed graph with `slices` transitions
/// (slice times 0..=slices). Slices are computed in parallel and collected
/// in order, so the result is identical across thread counts.
pub fn build_transition_graph(
    field: &VectorFieldSpec,
    grid: &Grid,
    tau: f64,
    slices: usize,
    padding: u32,
    rk4_steps: u32,
) -> TransitionGraph {
    let maps: Vec<SliceMap> = (0..slices)
        .into_par_iter()
        .map(|k| outer_approximation(field, grid, k, tau, padding, rk4_steps))
        .collect();
    TransitionGraph {
        grid: grid.clone(),
        tau,
        padding,
        rk4_steps,
        maps,
    }
}
