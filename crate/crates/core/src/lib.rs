//! Exact computer algebra for locally nilpotent derivations and unipotent actions.
//!
//! The crate converts between unipotent automorphisms and locally nilpotent
//! derivations, computes degree-truncated invariant rings, searches for preslices
//! and slices along a triangular basis, locates degenerate fibers and certifies
//! coordinates. All arithmetic is exact over Q.

pub mod algebra;
pub mod certify;
pub mod derivations;
pub mod error;
pub mod expmap;
pub mod invariants;
pub mod linalg;
pub mod par;
pub mod session;
pub mod slicer;
mod space;
pub mod univariate;

pub use algebra::{
    adjugate, determinant, format_rat, jacobian_det, jacobian_matrix, parse_poly, parse_rat, rat,
    ratio, Mono, MonomialOrder, Poly, Rat, RingSpec,
};
pub use certify::{
    certify_coordinate, fiber_rectify, mates_to_derivations, CertifyOutcome, CoordinateCertificate,
    FiberRectification,
};
pub use derivations::{
    apply_derivation, check_induces_on_quotient, check_locally_nilpotent, k_span_membership,
    lie_bracket, Derivation, Nilpotency, NilpotencyCertificate, BRACKET_CONVENTION,
};
pub use error::{Error, ErrorClass, Result};
pub use expmap::{
    compose_autos, exp_derivation, log_automorphism, PolyAuto, COMPOSITION_CONVENTION,
};
pub use invariants::{express_in_subalgebra, invariant_space, kernel_generator, InvariantBasis};
pub use session::Session;
pub use slicer::{
    degenerate_fibers, fiber_dependence_check, preslice_search, rectify_full, slice_descent,
    triangular_basis_check, FiberReport, PresliceResult, Rectification, SliceDescent,
    TriangularReport,
};
pub use univariate::UniPoly;
