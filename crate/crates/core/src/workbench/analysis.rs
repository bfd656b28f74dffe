//! Per-algebra and per-pair data behind the `invariants`, `decompose` and
//! `compare` commands.

use serde_json::{json, Value};

use super::report::{matrix_json, object, vector_json, Check};
use crate::abelian::{self, SemilinearOperator};
use crate::env::{fingerprint, PbwAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace, Vector};
use crate::isotest::{
    canonical_form, graded_canonical_form, lie_iso_search, main_theorem_consistency, verify_lie_witness, IsoOutcome,
    SearchOptions, Verdict, CANONICAL_BUDGET,
};
use crate::liealg::AlgebraPresentation;

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalysisOptions {
    /// Stop the ω-chain after this many terms.
    pub max_omega_power: Option<usize>,
    pub iso: SearchOptions,
}

fn dims(spaces: &[Subspace]) -> Vec<usize> {
    spaces.iter().map(Subspace::dim).collect()
}

/// Everything computed by `invariants`.
pub fn invariants(a: &AlgebraPresentation, opts: &AnalysisOptions) -> Result<Value> {
    let u = PbwAlgebra::new(a)?;
    let p_nilpotent = a.is_p_nilpotent();
    let lcs = a.lower_central_series();
    let dseries: Vec<Value> = a
        .dimension_series()
        .iter()
        .map(|d| json!({"n": d.n, "dim": d.space.dim(), "is_ideal": d.is_ideal, "is_p_closed": d.is_p_closed}))
        .collect();
    let omega = u.augmentation_series(opts.max_omega_power);
    let reached_zero = omega.last().is_some_and(Subspace::is_zero);
    let stalled = !reached_zero && u.next_power(omega.last().unwrap()) == *omega.last().unwrap();
    let index = if reached_zero {
        json!(omega.len())
    } else if stalled {
        json!("infinite")
    } else {
        Value::Null
    };
    let exponents: Vec<Value> =
        (0..a.dim()).map(|i| json!([a.names()[i], a.exponent(&a.unit(i)).to_string()])).collect();
    let class = canonical_form(a, CANONICAL_BUDGET);
    let graded = if p_nilpotent {
        let g = a.graded()?;
        let id = graded_canonical_form(&g, CANONICAL_BUDGET);
        json!({"weights": g.weights, "class_id": id.id, "class_id_exact": id.exact, "valid": g.algebra.validate().is_valid()})
    } else {
        Value::Null
    };
    let fp = if p_nilpotent && (reached_zero || opts.max_omega_power.is_none()) {
        serde_json::to_value(fingerprint(a)?).expect("fingerprint serializes")
    } else {
        Value::Null
    };
    Ok(object(vec![
        ("dim", json!(a.dim())),
        ("pbw_dim", json!(u.dim())),
        ("is_p_nilpotent", json!(p_nilpotent)),
        ("is_nilpotent", json!(a.is_nilpotent())),
        ("nilpotence_class", a.nilpotence_class().map_or(Value::Null, |c| json!(c))),
        ("lower_central_dims", json!(dims(&lcs))),
        ("dimension_subalgebras", Value::Array(dseries)),
        ("omega_dims", json!(dims(&omega))),
        ("omega_truncated", json!(!reached_zero && !stalled)),
        ("nilpotency_index_omega", index),
        ("basis_exponents", Value::Array(exponents)),
        ("center_dim", json!(a.center().dim())),
        ("derived_p_dim", json!(a.derived_p().dim())),
        ("main_quotient_dim", json!(a.dim() - a.main_quotient_ideal().dim())),
        ("class_id", json!(class.id)),
        ("class_id_exact", json!(class.exact)),
        ("graded", graded),
        ("fingerprint", fp),
    ]))
}

/// Cyclic decomposition of an operator restricted to a subspace it preserves.
fn restricted_operator(op: &SemilinearOperator, basis: &[Vector]) -> Result<SemilinearOperator> {
    let f = op.field();
    let cols: Vec<Vector> = basis
        .iter()
        .map(|b| {
            crate::exactla::solve_combination(f, basis, &op.apply(b))
                .ok_or_else(|| Error::Validation("subspace is not preserved by the p-map".into()))
        })
        .collect::<Result<_>>()?;
    SemilinearOperator::new(f.clone(), Matrix::from_columns(&cols, basis.len())?)
}

/// Everything computed by `decompose`. Fails with `NotAbelian` on
/// non-abelian input.
pub fn decompose(a: &AlgebraPresentation) -> Result<(Value, Vec<Check>)> {
    let op = abelian::as_semilinear(a)?;
    let f = a.field();
    let fitting = abelian::fitting_decomposition(a)?;
    let nil_basis = fitting.nil.basis().to_vec();
    let nil_op = restricted_operator(&op, &nil_basis)?;
    let dec = abelian::decompose_operator(&nil_op)?;
    let lift = |c: &Vector| -> Vector {
        let mut v = a.zero();
        for (x, b) in c.iter().zip(&nil_basis) {
            crate::exactla::axpy(f, &mut v, *x, b);
        }
        v
    };
    let generators: Vec<Value> = dec.generators.iter().map(|g| vector_json(a, &lift(g))).collect();
    let chain: Vec<Value> = dec.chain_basis(&nil_op).iter().map(|g| vector_json(a, &lift(g))).collect();
    let profile = op.rank_profile();
    let mut checks = vec![Check::new(
        "abelian.partition_conjugation",
        if op.is_nilpotent() { dec.exponents == abelian::partition_from_rank_profile(&profile) } else { true },
        Some(json!({"rank_profile": profile, "exponents": dec.exponents})),
    )];
    let mut model = Value::Null;
    if op.is_nilpotent() {
        let target = abelian::from_exponents(f, &dec.exponents);
        let w = abelian::abelian_iso(a, &target)?;
        let replays = w.as_ref().is_some_and(|w| abelian::verify_abelian_witness(a, &target, w).is_ok());
        checks.push(Check::new("abelian.reassembled_iso", replays, w.as_ref().map(|w| matrix_json(a, w))));
        model = json!({"exponents": dec.exponents, "witness": w.as_ref().map(|w| matrix_json(a, w))});
    }
    let toral = fitting.toral_basis.as_ref().map(|b| b.iter().map(|v| vector_json(a, v)).collect::<Vec<_>>());
    let body = object(vec![
        ("rank_profile", json!(profile)),
        ("exponents", json!(dec.exponents)),
        ("generators", Value::Array(generators)),
        ("chain_basis", Value::Array(chain)),
        (
            "fitting",
            json!({
                "invertible_dim": fitting.invertible.dim(),
                "nil_dim": fitting.nil.dim(),
                "invertible_basis": fitting.invertible.basis().iter().map(|v| vector_json(a, v)).collect::<Vec<_>>(),
                "toral_basis": toral,
            }),
        ),
        ("reassembled", model),
    ]);
    Ok((body, checks))
}

fn outcome_json(p: &AlgebraPresentation, q: &AlgebraPresentation, outcome: &IsoOutcome, nodes: u64) -> (Value, Check) {
    match outcome {
        IsoOutcome::Witness(w) => {
            let replay = verify_lie_witness(p, q, w);
            let value =
                json!({"outcome": "witness", "nodes": nodes, "witness": matrix_json(p, w), "replays": replay.is_ok()});
            (value, Check::new("isotest.witness_replays", replay.is_ok(), replay.err().map(Value::String)))
        }
        IsoOutcome::NotIsomorphic(reason) => (
            json!({"outcome": "not_isomorphic", "nodes": nodes, "reason": reason}),
            Check::new("isotest.witness_replays", true, None),
        ),
        IsoOutcome::Inconclusive => {
            (json!({"outcome": "inconclusive", "nodes": nodes}), Check::new("isotest.witness_replays", true, None))
        }
    }
}

/// Everything computed by `compare`, with the checks that decide the exit
/// status and the number of candidate violations.
pub fn compare(
    p: &AlgebraPresentation,
    q: &AlgebraPresentation,
    opts: &AnalysisOptions,
) -> Result<(Value, Vec<Check>, usize)> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    let search = lie_iso_search(p, q, opts.iso)?;
    let (lie, mut checks) = {
        let (v, c) = outcome_json(p, q, &search.outcome, search.nodes);
        (v, vec![c])
    };
    let mut violations = 0;
    let theorem = if p.is_p_nilpotent() && q.is_p_nilpotent() {
        let r = main_theorem_consistency(p, q, opts.iso)?;
        if r.verdict == Verdict::CandidateViolation {
            violations += 1;
        }
        checks.push(Check::new("isotest.main_theorem_consistency", r.verdict != Verdict::CandidateViolation, None));
        let pq = p.quotient_by(&p.main_quotient_ideal())?.algebra;
        let qq = q.quotient_by(&q.main_quotient_ideal())?.algebra;
        let witness = r.quotient_witness.as_ref().map(|w| {
            let ok = verify_lie_witness(&pq, &qq, w).is_ok();
            checks.push(Check::new("isotest.witness_replays", ok, None));
            json!({"matrix": matrix_json(&pq, w), "replays": ok})
        });
        json!({
            "verdict": r.verdict.label(),
            "differing": r.differing,
            "fingerprints": [r.fingerprints.0, r.fingerprints.1],
            "quotient_witness": witness,
            "escalation": r.escalation,
            "nodes": r.nodes,
        })
    } else {
        json!({"verdict": "not applicable", "reason": "both algebras must be p-nilpotent"})
    };
    let body = object(vec![("lie_iso_search", lie), ("main_theorem", theorem)]);
    Ok((body, checks, violations))
}
