//! Measures on hyperbolic pairs of pants and the machinery around them.
//!
//! A closed hyperbolic surface decomposes its unit-tangent-bundle volume
//! `8 pi^2 (g - 1)` into one summand per embedded pair of pants (the measure
//! `phi` of its three boundary coordinates) and one per improperly embedded
//! pants inside a one-holed torus (the measure `eta` of boundary and waist).
//! This crate evaluates those measures and their closed-form derivatives,
//! runs executable suites for their monotonicity/convexity properties,
//! enumerates the simple closed geodesics of a one-holed torus to form
//! identity partial sums, and computes the resulting pants-counting bound.
//!
//! Modules follow the pipeline:
//!
//! * [`special`] - dilogarithm, Rogers' function, the lasso combination;
//! * [`pants`] - lengths, x-coordinates, orthogeodesic quantities;
//! * [`measures`] - `phi` (two independent routes), `eta`, derivatives;
//! * [`torus`] - slope enumeration and McShane / eta partial sums;
//! * [`verify`] - grid/property suites with structured reports;
//! * [`counting`] - the `NP_X(L)` bound and budget accounting.

pub mod counting;
pub mod error;
pub mod jsonfmt;
pub mod measures;
pub mod numeric;
pub mod pants;
pub mod special;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use measures::{
    deta_dx, deta_dy, dphi_dx1, eta, fd_gradient, phi_diag_lower_bound, phi_x, phi_y, EvalMode,
    MeasureValue,
};
pub use pants::{Length, PantsShape, TorusPantsShape, XCoord};
pub use special::{lasso, li2, rogers_l, Accuracy, Mode, UnitArg};
pub use torus::{
    enumerate_slopes, eta_partial_sum, fricke_boundary_trace, mcshane_partial_sum,
    torus_from_lengths, Branch, Cutoff, PartialSum, Slope, SlopeRecord, TorusBoundary, TraceTriple,
};
pub use verify::{run_all, GridSpec, Sampling, VerificationReport};
