//! Exact valuations on polyhedral cones, fans and central hyperplane
//! arrangements.
//!
//! Cones are stored in both representations with exact integer data, so that
//! equality of cones, face lattices and indicator-function identities are
//! decided exactly. Monte Carlo estimators for conic intrinsic volumes are
//! provided alongside.

#![no_std]

extern crate alloc;

mod cells;
mod dd;
mod error;

pub mod arrangement;
pub mod cone;
pub mod fan;
pub mod indicator;
pub mod intrinsic;
pub mod linalg;
pub mod projection;

pub use arrangement::{Arrangement, CharPoly, FlatsLattice};
pub use cells::Sign;
pub use cone::{Cone, Face, FaceLattice};
pub use fan::{ConeValuation, Fan, Side};
pub use error::Error;
pub use indicator::{CanonicalForm, IndicatorElement, SimpleClass};
pub use linalg::{IntVector, RatMatrix, RatVector, Rational, Subspace};
