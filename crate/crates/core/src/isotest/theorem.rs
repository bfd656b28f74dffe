use serde::Serialize;

use super::envsearch::{env_generator_iso_search, EnvOutcome};
use super::search::{lie_iso_search, IsoOutcome, SearchOptions};
use crate::env::{fingerprint, InvariantFingerprint, EAGER_PRODUCTS};
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::liealg::AlgebraPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Some fingerprint component differs.
    Distinguished,
    /// Fingerprints agree and the main quotients are isomorphic.
    Consistent,
    /// Fingerprints agree but the main quotients are certified
    /// non-isomorphic.
    CandidateViolation,
    /// The quotient search ran out of budget.
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Distinguished => "distinguished (consistent)",
            Verdict::Consistent => "consistent",
            Verdict::CandidateViolation => "CANDIDATE VIOLATION",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Escalation of a candidate violation by the `u(L)` generator search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Escalation {
    /// `u(P) ≅ u(Q)` was certified: a genuine counterexample.
    EnvelopesIsomorphic,
    EnvelopesNotIsomorphic,
    Inconclusive,
    /// `u(L)` too large for the generator search.
    TooLarge,
}

#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub verdict: Verdict,
    pub differing: Vec<&'static str>,
    pub fingerprints: (InvariantFingerprint, InvariantFingerprint),
    /// Isomorphism between the main quotients, when found.
    pub quotient_witness: Option<Matrix>,
    pub escalation: Option<Escalation>,
    pub nodes: u64,
}

/// Compare `P` and `Q` against the statement that `u(L)` determines
/// `L/(L'^p + γ_3(L))`.
pub fn main_theorem_consistency(
    p: &AlgebraPresentation,
    q: &AlgebraPresentation,
    opts: SearchOptions,
) -> Result<ConsistencyReport> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    let fp = fingerprint(p)?;
    let fq = fingerprint(q)?;
    let differing = fp.differences(&fq);
    let mut report = ConsistencyReport {
        verdict: Verdict::Distinguished,
        differing,
        fingerprints: (fp, fq),
        quotient_witness: None,
        escalation: None,
        nodes: 0,
    };
    if !report.differing.is_empty() {
        return Ok(report);
    }
    let pq = p.quotient_by(&p.main_quotient_ideal())?.algebra;
    let qq = q.quotient_by(&q.main_quotient_ideal())?.algebra;
    let search = lie_iso_search(&pq, &qq, opts)?;
    report.nodes = search.nodes;
    match search.outcome {
        IsoOutcome::Witness(w) => {
            report.verdict = Verdict::Consistent;
            report.quotient_witness = Some(w);
        }
        IsoOutcome::Inconclusive => report.verdict = Verdict::Inconclusive,
        IsoOutcome::NotIsomorphic(_) => {
            report.verdict = Verdict::CandidateViolation;
            let size = (p.characteristic() as u64).checked_pow(p.dim() as u32);
            report.escalation = Some(if size.is_none_or(|s| s > EAGER_PRODUCTS as u64) {
                Escalation::TooLarge
            } else {
                match env_generator_iso_search(p, q, opts.budget)?.outcome {
                    EnvOutcome::Found { .. } => Escalation::EnvelopesIsomorphic,
                    EnvOutcome::NotIsomorphic => Escalation::EnvelopesNotIsomorphic,
                    EnvOutcome::Inconclusive => Escalation::Inconclusive,
                }
            });
        }
    }
    Ok(report)
}
