//! Isomorphism oracles and canonical class identifiers.

mod canonical;
mod closure;
mod envsearch;
mod search;
#[cfg(test)]
mod tests;
mod theorem;

pub use canonical::{
    canonical_form, class_id, field_tag, graded_canonical_form, graded_class_id, CanonicalForm, CANONICAL_BUDGET,
};
pub use closure::{Closure, EnvRealization, Realization};
pub use envsearch::{env_generator_iso_search, EnvOutcome, EnvSearch};
pub use search::{
    generating_tuple, invariant_mismatch, lie_iso_search, verify_lie_witness, IsoOutcome, IsoSearch, SearchOptions,
    DEFAULT_BUDGET, MAX_ENUMERATION,
};
pub use theorem::{main_theorem_consistency, ConsistencyReport, Escalation, Verdict};
