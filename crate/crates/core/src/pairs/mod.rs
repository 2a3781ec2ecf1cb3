//! Combinatorial index pairs, index triples, exit-time thickenings,
//! invariant parts, and attractor-repeller decompositions.

mod index_pair;
mod invariant;
mod sliced;
mod triple;

pub use index_pair::{
    build_index_pair, discrete_exit_time, thicken_exit, verify_index_pair, ExitTimeField,
    IndexPair, Violation, EXIT_INF,
};
pub use invariant::{invariant_part, isolating_check};
pub use sliced::SlicedCubeSet;
pub use triple::{build_index_triple, verify_ar_decomposition, ArClassification, IndexTriple};
