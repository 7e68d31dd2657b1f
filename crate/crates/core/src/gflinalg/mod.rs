//! Exact linear algebra over small finite fields.

mod field;
mod mat;

pub use field::{Fe, Field, FIELD_BUDGET};
pub use mat::{element_order, fixed_space, Echelon, FixedSpace, Mat};
pub(crate) use mat::{fixed_dim, fixed_space_unchecked};
