//! Decomposition machinery and the generational loop.

mod archive;
mod engine;
mod scalarize;
mod weights;

pub use archive::{update_archive, ExternalArchive, Solution};
pub use engine::{run, RunResult, RunState, Subproblem};
pub use scalarize::{
    tchebycheff, update_reference_point, weighted_sum, ReferencePoint, Scalarization,
};
pub use weights::{build_neighborhoods, generate_weight_vectors, lattice_size, WeightVector};
