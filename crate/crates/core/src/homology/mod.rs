//! Exact cubical homological algebra: complexes, relative homology,
//! inclusion-induced maps, snake connecting maps, exactness checks, and
//! Smith normal form.

mod complex;
mod cube;
mod maps;
mod matrix;
mod reduce;
mod relative;
mod ring;
mod snf;

pub use complex::{boundary_matrix, ChainComplex, PairBasis, MAX_GENERATORS_PER_DEGREE};
pub use cube::{CubicalSet, ElementaryCube, Interval};
pub use maps::{
    exactness_check, inclusion_induced_map, snake_connecting, ExactnessReport, GradedMap, NodeCheck,
};
pub use matrix::RingMatrix;
pub use relative::{relative_homology, Chain, GradedHomology};
pub use ring::{CoefficientRing, Rat};
pub use snf::{smith_normal_form, z_homology, IntMatrix, Snf};

pub(crate) use maps::induced_map_data;
pub(crate) use relative::PairData;
pub(crate) use ring::{Field, Gf2};
