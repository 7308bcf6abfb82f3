//! Truncated p-adic arithmetic for Q_p and its quadratic extensions.

mod base;
mod escalate;
mod ext;
mod field;
pub mod literal;
pub mod modarith;
pub use modarith::max_precision;
mod residue;
mod squares;

pub use base::{PadicF, Qp, DEFAULT_PRECISION, MIN_PRECISION};
pub use escalate::{escalate, is_precision_error};
pub use ext::{PadicE, QpExt};
pub use field::{FieldDesc, FieldKind, LocalField};
pub use residue::Residue;
pub use squares::ExtSquareClasses;
