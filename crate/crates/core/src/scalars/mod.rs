//! Base-field scalars and truncated polynomial rings.

mod field;
mod gauss;
mod rat;
mod trunc;

pub use field::{Field, Ring};
pub use gauss::GaussQ;
pub use trunc::TruncScalar;
