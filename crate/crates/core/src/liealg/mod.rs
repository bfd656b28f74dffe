//! Restricted Lie algebras given by structure constants: validation,
//! p-powers, central and dimension series, quotients and `gr(L)`.

mod graded;
mod ppower;
mod presentation;
mod quotient;
mod series;

pub use graded::Graded;
pub use ppower::Exponent;
pub use presentation::{AlgebraPresentation, ValidationReport, Violation};
pub use quotient::{Quotient, RestrictedIdeal};
pub use series::DimensionSubalgebra;
