pub mod classify;
pub mod comm;
pub mod curves;
pub mod cy;
pub mod error;
pub mod field;
pub mod hdet;
pub mod linalg;
pub mod ncpoly;
pub mod oracle;
pub mod parse;
pub mod present;
pub mod scalars;
pub mod upoly;

pub use error::{Error, Result};
pub use field::{Field, Rational};
pub use ncpoly::{Gl2, Letter, NcPoly, Word};
pub use scalars::{FieldTower, RootContext, Scalar};
