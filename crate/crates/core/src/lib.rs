//! Exact computations with restricted Lie algebras over finite fields.

pub mod abelian;
pub mod env;
pub mod error;
pub mod exactla;
pub mod isotest;
pub mod liealg;
pub mod workbench;

pub use error::{Error, Result};
