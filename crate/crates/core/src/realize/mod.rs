//! Upper bounds and certificates: aperiodicity, the quadratic closed form,
//! trace obstructions, exhaustive search, lattice points in the companion
//! space and their projected polygons.

mod lind;
mod matrix;
mod obstruction;
mod project;
mod quadratic;
mod search;

pub use lind::{lind_points, LatticePointSet};
pub use matrix::{
    certify, is_aperiodic, primitivity_exponent, Aperiodicity, IntMatrix, Realization,
};
pub(crate) use matrix::certify_with_root;
pub use obstruction::{trace_obstruction, ObstructionReport};
pub use project::{project_polygon, ProjectedPolygon};
pub use quadratic::quadratic_realize;
pub use search::{search_realization, search_with_limits, SearchLimits, DEFAULT_BUDGET};
