//! Slice homologies, transition maps, the direct-limit Conley index, the
//! attractor-repeller long exact sequence, and dynamical witnesses.

mod block;
mod conley;
mod les;
mod system;
mod witness;

pub use block::{block_complex, slice_pair, BlockComplex};
pub use conley::{conley_index, prepared_pair, ConleyParams};
pub use les::{connecting_homomorphism, les_of_triple, thickened_triple, LongExactSequenceData};
pub use system::{
    build_slice_system, direct_limit, slice_inclusion_map, slice_pair_homology, transition_map,
    ConleyIndexResult, SliceHomologySystem, TransitionOutcome,
};
pub use witness::{
    connection_witness, orbit_detector, uniform_connectedness, PathWitness, UniformConnectedness,
};
