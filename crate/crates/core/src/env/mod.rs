//! The restricted enveloping algebra `u(L)` on its PBW basis.

mod filtration;
mod fingerprint;
mod pbw;
mod sections;
#[cfg(test)]
mod tests;

pub use fingerprint::{fingerprint, InvariantFingerprint, PARTIAL_INVARIANTS};
pub use pbw::{PbwAlgebra, PbwElement, Sparse, EAGER_PRODUCTS};
pub use sections::{CentralityReport, DecompositionCheck, WeightCount};
