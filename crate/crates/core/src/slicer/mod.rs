//! Triangular bases, preslices, degenerate fibers and slices.

mod descent;
mod fibers;
mod preslice;
mod rectify;
mod triangular;

pub use descent::{slice_descent, DescentStep, SliceDescent};
pub use fibers::{
    degenerate_fibers, dependence_on_fiber, describe_fiber, fiber_dependence_check, fiber_ring,
    DegenerateRoot, FiberReport, FiberRing,
};
pub use preslice::{preslice_search, PresliceResult};
pub use rectify::{rectify_full, Rectification};
pub use triangular::{triangular_basis_check, BracketEntry, RestrictionEntry, TriangularReport};
