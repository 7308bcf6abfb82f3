//! Exact local arithmetic for verifying splittings of the metaplectic
//! cover of GL2 over a quadratic extension of a p-adic field.
//!
//! The crate is organized bottom-up: [`padic`] provides truncated p-adic
//! arithmetic, [`hilbert`] quadratic Hilbert symbols with independent
//! backends, [`metaplectic`] the Kubota cocycle and its splittings,
//! [`quaternion`] the quaternion division algebra and its embeddings, and
//! [`cohomology`] the finite and Z-module cohomology computations. The
//! [`suites`] module packages all of these as deterministic verification
//! runs producing JSON [`report::Report`]s.

pub mod cohomology;
pub mod error;
pub mod hilbert;
pub mod metaplectic;
pub mod padic;
pub mod quaternion;
pub mod report;
pub mod sampling;
pub mod sign;
pub mod suites;

pub use error::{Error, Result};
pub use padic::{FieldDesc, FieldKind, LocalField, PadicE, PadicF, Qp, QpExt};
pub use sign::Sign;
