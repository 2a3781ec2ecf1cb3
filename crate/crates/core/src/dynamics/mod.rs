//! Dynamics layer: vector fields, integration, grids, and the combinatorial
//! transition graph.

mod graph;
mod grid;
mod param;
mod vector_field;

pub use graph::{
    build_transition_graph, outer_approximation, rk4_integrate, CubeTargets, SliceMap,
    TransitionGraph,
};
pub use grid::{BoxBounds, Grid};
pub use param::{h_eval, metric_d, metric_d_unif, seminorm_delta, shifted_time_sample, t_n};
pub use vector_field::{f_dot_h, BuiltinField, ForcingSpec, VectorFieldSpec};
