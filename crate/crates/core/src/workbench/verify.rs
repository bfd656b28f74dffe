//! The property battery run by `verify` over a catalog.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::format::{parse, serialize, AlgebraFile};
use super::report::{matrix_json, Check, InputInfo};
use crate::abelian;
use crate::env::{fingerprint, InvariantFingerprint, PbwAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{random_invertible, vector_from_index, Subspace, Vector};
use crate::isotest::{
    canonical_form, env_generator_iso_search, graded_canonical_form, lie_iso_search, main_theorem_consistency,
    verify_lie_witness, CanonicalForm, EnvOutcome, IsoOutcome, SearchOptions, Verdict, CANONICAL_BUDGET,
};
use crate::liealg::AlgebraPresentation;

/// Largest `dim u(L)` for which `u(L)` properties are checked.
pub const ENV_LIMIT: usize = 729;
/// Largest `dim u(L)` for the pairwise generator search.
pub const ENV_SEARCH_LIMIT: usize = 9;
/// Largest `q^n` for exhaustive element sampling.
const ELEMENT_LIMIT: u64 = 4096;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub iso: SearchOptions,
    pub seed: u64,
    /// Random basis changes per algebra for invariance checks.
    pub base_changes: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { iso: SearchOptions::default(), seed: 0x5eed, base_changes: 5 }
    }
}

/// A catalog entry.
#[derive(Debug, Clone)]
pub struct Entry {
    pub info: InputInfo,
    pub text: String,
    pub file: AlgebraFile,
}

/// Load every `*.alg` file of `dir`, sorted by digest.
pub fn load_catalog(dir: &Path) -> Result<Vec<Entry>> {
    let read = std::fs::read_dir(dir).map_err(|e| Error::Malformed(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> =
        read.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "alg")).collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
        let file = parse(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
        let shown = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        out.push(Entry { info: InputInfo::new(&shown, &text, &file), text, file });
    }
    out.sort_by(|a, b| a.info.sha256.cmp(&b.info.sha256));
    Ok(out)
}

/// Data reused by the pairwise checks.
#[derive(Debug, Clone)]
pub struct Summary {
    pub fingerprint: Option<InvariantFingerprint>,
    pub class: CanonicalForm,
    pub graded: Option<CanonicalForm>,
    pub nilpotence_class: Option<usize>,
    pub abelian_p_nilpotent: bool,
}

pub fn summarize(a: &AlgebraPresentation) -> Result<Summary> {
    let p_nil = a.is_p_nilpotent();
    Ok(Summary {
        fingerprint: if p_nil { Some(fingerprint(a)?) } else { None },
        class: canonical_form(a, CANONICAL_BUDGET),
        graded: if p_nil { Some(graded_canonical_form(&a.graded()?, CANONICAL_BUDGET)) } else { None },
        nilpotence_class: a.nilpotence_class().ok(),
        abelian_p_nilpotent: a.is_abelian() && p_nil,
    })
}

fn check(name: &str, r: Result<(bool, Option<Value>)>) -> Check {
    match r {
        Ok((passed, witness)) => Check::new(name, passed, witness),
        Err(e) => Check::new(name, false, Some(json!({"error": e.to_string()}))),
    }
}

fn space_eq(a: &Subspace, b: &Subspace) -> bool {
    a == b
}

/// Elements to test: all of them when few, a seeded sample otherwise.
fn sample_elements(a: &AlgebraPresentation, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    let f = a.field();
    let total = (f.order() as u64).checked_pow(a.dim() as u32);
    match total {
        Some(t) if t <= ELEMENT_LIMIT => (0..t).map(|i| vector_from_index(f, a.dim(), i)).collect(),
        _ => {
            use rand::Rng;
            (0..256)
                .map(|_| (0..a.dim()).map(|_| f.from_index(rng.gen_range(0..f.order())).unwrap()).collect())
                .collect()
        }
    }
}

/// Properties of a single algebra.
pub fn algebra_checks(entry: &Entry, opts: &VerifyOptions) -> Vec<Check> {
    let a = &entry.file.algebra;
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ u64::from_str_radix(&entry.info.sha256[..16], 16).unwrap_or(0));
    let mut out = Vec::new();
    let p = a.characteristic() as u64;
    let p_nil = a.is_p_nilpotent();

    out.push(check(
        "workbench.round_trip",
        (|| {
            let text = serialize(&entry.file);
            let again = parse(&text)?;
            Ok((
                again.algebra.same_structure(a) && again.algebra.names() == a.names() && serialize(&again) == text,
                None,
            ))
        })(),
    ));

    out.push(check("liealg.validation", Ok((a.validate().is_valid(), None))));

    out.push(check(
        "liealg.p_map_ad_compatibility",
        (|| {
            for x in sample_elements(a, &mut rng) {
                let lhs = a.ad_matrix(&a.p_power(&x));
                let rhs = a.ad_matrix(&x).pow(f, p)?;
                if lhs != rhs {
                    return Ok((false, Some(json!({"element": a.format_vector(&x)}))));
                }
            }
            Ok((true, None))
        })(),
    ));

    out.push(check(
        "exactla.sum_intersection_dimension",
        (|| {
            let g2 = a.derived_p();
            let z = a.center();
            Ok((g2.sum(f, &z)?.dim() + g2.intersect(f, &z)?.dim() == g2.dim() + z.dim(), None))
        })(),
    ));

    out.push(check("liealg.lower_central_ideals", {
        let lcs = a.lower_central_series();
        let ok = lcs.iter().all(|g| a.is_ideal(g))
            && lcs.windows(2).all(|w| space_eq(&a.bracket_space(&w[0], &a.whole()), &w[1]));
        Ok((ok, Some(json!(lcs.iter().map(Subspace::dim).collect::<Vec<_>>()))))
    }));

    let series = a.dimension_series();
    out.push(check(
        "liealg.dimension_subalgebras_restricted_ideals",
        Ok((
            series.iter().all(|d| d.is_ideal && d.is_p_closed),
            Some(json!(series.iter().map(|d| d.space.dim()).collect::<Vec<_>>())),
        )),
    ));

    out.push(check(
        "liealg.dimension_filtration",
        (|| {
            let term = |n: usize| a.dimension_subalgebra(n).space;
            for m in 1..=series.len() {
                for n in m..=series.len() {
                    if !a.bracket_space(&term(m), &term(n)).is_subspace_of(f, &term(m + n))? {
                        return Ok((false, Some(json!({"bracket": [m, n]}))));
                    }
                }
                if !a.p_image(&term(m)).is_subspace_of(f, &term(p as usize * m))? {
                    return Ok((false, Some(json!({"p_image": m}))));
                }
            }
            Ok((true, None))
        })(),
    ));

    if p_nil {
        out.push(check(
            "liealg.graded_valid",
            (|| {
                let g = a.graded()?;
                let ok = g.algebra.validate().is_valid() && g.algebra.is_p_nilpotent();
                Ok((ok, Some(json!({"weights": g.weights}))))
            })(),
        ));
    }

    if a.is_abelian() {
        out.extend(abelian_checks(a, &mut rng, opts));
    }

    let size = (p as usize).checked_pow(a.dim() as u32).filter(|&s| s <= ENV_LIMIT);
    if size.is_some() {
        out.extend(env_checks(a, p_nil, &mut rng));
    }

    out.extend(iso_checks(a, &mut rng, opts));
    out
}

fn abelian_checks(a: &AlgebraPresentation, rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<Check> {
    let f = a.field();
    let mut out = Vec::new();
    out.push(check("abelian.fitting_split", (|| {
        let fit = abelian::fitting_decomposition(a)?;
        let ok = fit.invertible.dim() + fit.nil.dim() == a.dim() && fit.invertible.intersect(f, &fit.nil)?.is_zero();
        Ok((ok, Some(json!({"invertible": fit.invertible.dim(), "nil": fit.nil.dim(), "toral_basis": fit.toral_basis.is_some()}))))
    })()));
    if !a.is_p_nilpotent() {
        return out;
    }
    out.push(check(
        "abelian.partition_conjugation",
        (|| {
            let dec = abelian::cyclic_decomposition(a)?;
            let profile = abelian::rank_profile(a)?;
            Ok((
                dec.exponents == abelian::partition_from_rank_profile(&profile),
                Some(json!({"rank_profile": profile, "exponents": dec.exponents})),
            ))
        })(),
    ));
    out.push(check(
        "abelian.exponents_base_change_invariant",
        (|| {
            let base = abelian::cyclic_decomposition(a)?.exponents;
            for _ in 0..opts.base_changes {
                let g = random_invertible(f, a.dim(), rng);
                let b = a.change_basis(&g)?;
                let e = abelian::cyclic_decomposition(&b)?.exponents;
                if e != base {
                    return Ok((false, Some(json!({"basis_change": matrix_json(a, &g), "exponents": e}))));
                }
            }
            Ok((true, None))
        })(),
    ));
    out.push(check(
        "abelian.reassembled_iso",
        (|| {
            let dec = abelian::cyclic_decomposition(a)?;
            let model = abelian::from_exponents(f, &dec.exponents);
            let w = abelian::abelian_iso(a, &model)?;
            let ok = w.as_ref().is_some_and(|w| abelian::verify_abelian_witness(a, &model, w).is_ok());
            Ok((ok, w.map(|w| matrix_json(a, &w))))
        })(),
    ));
    out
}

fn env_checks(a: &AlgebraPresentation, p_nil: bool, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let f = a.field();
    let mut out = Vec::new();
    let u = match PbwAlgebra::new(a) {
        Ok(u) => u,
        Err(e) => return vec![check("env.build", Err(e))],
    };
    let p = a.characteristic() as usize;
    out.push(check("env.pbw_dimension", Ok((u.dim() == p.pow(a.dim() as u32), Some(json!(u.dim()))))));
    let bad = u.verify_embedding();
    out.push(check("env.restricted_embedding", Ok((bad.is_empty(), (!bad.is_empty()).then(|| json!(bad))))));
    out.push(check("env.associativity", Ok((u.check_associativity(3), None))));

    let omega = u.augmentation_series(None);
    let omega_nil = omega.last().is_some_and(Subspace::is_zero);
    out.push(check(
        "env.omega_nilpotent_iff_p_nilpotent",
        Ok((omega_nil == p_nil, Some(json!({"omega_nilpotent": omega_nil, "p_nilpotent": p_nil})))),
    ));

    out.push(check(
        "env.dimension_formula_matches_oracle",
        (|| {
            for n in 1..=omega.len() + 1 {
                let formula = a.dimension_subalgebra(n).space;
                let oracle = u.dimension_subalgebra_oracle(n);
                if formula != oracle {
                    return Ok((
                        false,
                        Some(json!({"n": n, "formula_dim": formula.dim(), "oracle_dim": oracle.dim()})),
                    ));
                }
            }
            Ok((true, None))
        })(),
    ));

    out.push(check(
        "env.jl_in_omega_squared",
        (|| {
            let jl = u.jl_subspace()?;
            Ok((jl.is_subspace_of(f, &u.augmentation_power(2))?, Some(json!(jl.dim()))))
        })(),
    ));

    out.push(check(
        "env.n_quotient_identity",
        (|| {
            let mut dims = Vec::new();
            for (label, n) in [
                ("zero", Subspace::zero(a.dim())),
                ("derived_p", a.derived_p()),
                ("center", a.center()),
                ("whole", a.whole()),
            ] {
                let (lhs, rhs) = u.n_quotient_dims(&n);
                let meet_ok = u.n_intersection(&n) == a.commutator_plus_p_powers(&n);
                dims.push(json!({"n": label, "lhs": lhs, "rhs": rhs, "intersection": meet_ok}));
                if lhs != rhs || !meet_ok {
                    return Ok((false, Some(Value::Array(dims))));
                }
            }
            Ok((true, Some(Value::Array(dims))))
        })(),
    ));

    if !p_nil {
        return out;
    }
    out.push(check(
        "env.weight_basis_count",
        (|| {
            let counts = u.weight_basis_counts(&omega)?;
            let ok = counts.iter().all(|c| c.basis && c.monomials == c.omega_dim);
            Ok((ok, Some(json!(counts.iter().map(|c| [c.omega_dim, c.monomials]).collect::<Vec<_>>()))))
        })(),
    ));
    out.push(check("env.e_decomposition", (|| {
        let e = u.e_space(&u.quotient_basis_lift()?)?;
        let c = u.check_decomposition(&e)?;
        Ok((c.passed(), Some(json!({"e_dim": c.e_dim, "jl_dim": c.jl_dim, "omega_is_l_plus_e": c.omega_is_l_plus_e, "l_plus_jl_meet_e_is_jl": c.l_plus_jl_meet_e_is_jl, "e_meet_lp_u_is_jl": c.e_meet_lp_u_is_jl}))))
    })()));
    out.push(check(
        "env.e_centrality",
        (|| {
            let e = u.e_space(&u.quotient_basis_lift()?)?;
            let r = u.verify_e_centrality(&e, true)?;
            Ok((r.violations.is_empty(), (!r.violations.is_empty()).then(|| json!(r.violations))))
        })(),
    ));
    out.push(check(
        "env.graded_envelope_filtration",
        (|| {
            let g = a.graded()?;
            let ug = PbwAlgebra::new(&g.algebra)?;
            let lhs = ug.omega_quotient_dims(&ug.augmentation_series(None));
            let rhs = u.omega_quotient_dims(&omega);
            Ok((lhs == rhs, Some(json!({"gr": lhs, "l": rhs}))))
        })(),
    ));
    out.push(check(
        "env.filtration_shadow_base_change",
        (|| {
            let g = random_invertible(f, a.dim(), rng);
            let b = a.change_basis(&g)?;
            let ub = PbwAlgebra::new(&b)?;
            let inv = g.inverse(f).expect("invertible");
            let images: Vec<Vector> = (0..a.dim()).map(|i| ub.embed(&inv.column(i))).collect();
            if !u.respects_relations(&ub, &images) {
                return Ok((
                    false,
                    Some(json!({"basis_change": matrix_json(a, &g), "error": "images violate relations"})),
                ));
            }
            let phi = u.induced_map(&ub, &images);
            let levels = u.filtration_shadow(&omega, &ub, &ub.augmentation_series(None), &phi)?;
            Ok((levels.iter().all(|&x| x), Some(json!({"basis_change": matrix_json(a, &g), "levels": levels}))))
        })(),
    ));
    out.push(check(
        "env.fingerprint_base_change_invariant",
        (|| {
            let g = random_invertible(f, a.dim(), rng);
            let fa = fingerprint(a)?;
            let fb = fingerprint(&a.change_basis(&g)?)?;
            Ok((
                fa == fb,
                (fa != fb).then(|| json!({"basis_change": matrix_json(a, &g), "differing": fa.differences(&fb)})),
            ))
        })(),
    ));
    out
}

fn iso_checks(a: &AlgebraPresentation, rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<Check> {
    let f = a.field();
    let mut out = Vec::new();
    let witness_check = |name: &str, b: &AlgebraPresentation, o: SearchOptions| -> Check {
        check(
            name,
            (|| {
                let s = lie_iso_search(a, b, o)?;
                match s.outcome {
                    IsoOutcome::Witness(w) => {
                        let r = verify_lie_witness(a, b, &w);
                        Ok((r.is_ok(), Some(json!({"witness": matrix_json(a, &w), "replay": r.err()}))))
                    }
                    other => Ok((false, Some(json!(format!("{other:?}"))))),
                }
            })(),
        )
    };
    out.push(witness_check("isotest.identity_witness", a, opts.iso));
    let g = random_invertible(f, a.dim(), rng);
    let b = match a.change_basis(&g) {
        Ok(b) => b,
        Err(e) => return vec![check("isotest.base_change", Err(e))],
    };
    out.push(witness_check("isotest.base_change_witness", &b, opts.iso));
    if a.dim() <= 3 && f.order() == 2 {
        out.push(witness_check("isotest.unpruned_base_change_witness", &b, SearchOptions { prune: false, ..opts.iso }));
    }
    let ca = canonical_form(a, CANONICAL_BUDGET);
    let cb = canonical_form(&b, CANONICAL_BUDGET);
    out.push(check("isotest.canonical_id_exact", Ok((ca.exact, Some(json!(ca.id))))));
    out.push(check("isotest.canonical_id_base_change_invariant", Ok((ca.id == cb.id, None))));
    out
}

/// Properties of a pair of algebras over the same field.
pub fn pair_checks(
    (ea, sa): (&Entry, &Summary),
    (eb, sb): (&Entry, &Summary),
    opts: &VerifyOptions,
) -> (Vec<Check>, Option<Verdict>) {
    let (a, b) = (&ea.file.algebra, &eb.file.algebra);
    let mut out = Vec::new();
    let mut verdict = None;
    if let (Some(_), Some(_)) = (&sa.fingerprint, &sb.fingerprint) {
        out.push(check(
            "isotest.main_theorem_consistency",
            (|| {
                let r = main_theorem_consistency(a, b, opts.iso)?;
                verdict = Some(r.verdict);
                let mut witness =
                    json!({"verdict": r.verdict.label(), "differing": r.differing, "escalation": r.escalation});
                let mut ok = r.verdict != Verdict::CandidateViolation;
                if let Some(w) = &r.quotient_witness {
                    let qa = a.quotient_by(&a.main_quotient_ideal())?.algebra;
                    let qb = b.quotient_by(&b.main_quotient_ideal())?.algebra;
                    let replay = verify_lie_witness(&qa, &qb, w);
                    ok &= replay.is_ok();
                    witness["quotient_witness"] = matrix_json(&qa, w);
                    witness["replays"] = json!(replay.is_ok());
                }
                Ok((ok, Some(witness)))
            })(),
        ));
    }
    if let (Some(ga), Some(gb)) = (&sa.graded, &sb.graded) {
        if ga.exact && gb.exact && ga.id == gb.id {
            let (ca, cb) = (sa.nilpotence_class.unwrap_or(0), sb.nilpotence_class.unwrap_or(0));
            out.push(check("env.graded_class_shadow", Ok((ca.abs_diff(cb) <= 1, Some(json!({"classes": [ca, cb]}))))));
        }
    }
    let search = lie_iso_search(a, b, opts.iso);
    out.push(check(
        "isotest.witness_replays",
        (|| {
            let s = search.clone()?;
            match &s.outcome {
                IsoOutcome::Witness(w) => {
                    let r = verify_lie_witness(a, b, w);
                    Ok((r.is_ok(), Some(json!({"witness": matrix_json(a, w), "replay": r.err()}))))
                }
                _ => Ok((true, None)),
            }
        })(),
    ));
    if sa.class.exact && sb.class.exact {
        out.push(check(
            "isotest.canonical_id_agreement",
            (|| {
                let s = search.clone()?;
                let iso = match s.outcome {
                    IsoOutcome::Witness(_) => true,
                    IsoOutcome::NotIsomorphic(_) => false,
                    IsoOutcome::Inconclusive => return Ok((true, Some(json!("search inconclusive")))),
                };
                Ok((iso == (sa.class.id == sb.class.id), None))
            })(),
        ));
    }
    if sa.abelian_p_nilpotent && sb.abelian_p_nilpotent {
        out.push(check(
            "isotest.abelian_oracle_agreement",
            (|| {
                let s = search.clone()?;
                let oracle = abelian::abelian_iso(a, b)?.is_some();
                let ok = match s.outcome {
                    IsoOutcome::Witness(_) => oracle,
                    IsoOutcome::NotIsomorphic(_) => !oracle,
                    IsoOutcome::Inconclusive => true,
                };
                Ok((ok, Some(json!({"abelian_iso": oracle}))))
            })(),
        ));
    }
    let p = a.characteristic() as usize;
    let tiny = |x: &AlgebraPresentation| p.checked_pow(x.dim() as u32).is_some_and(|s| s <= ENV_SEARCH_LIMIT);
    if a.dim() == b.dim() && tiny(a) && tiny(b) {
        out.push(check(
            "isotest.envelope_iso_preserves_fingerprint",
            (|| {
                let s = env_generator_iso_search(a, b, opts.iso.budget)?;
                let outcome = match &s.outcome {
                    EnvOutcome::Found { .. } => "found",
                    EnvOutcome::NotIsomorphic => "not_isomorphic",
                    EnvOutcome::Inconclusive => "inconclusive",
                };
                let ok = match (&s.outcome, &sa.fingerprint, &sb.fingerprint) {
                    (EnvOutcome::Found { .. }, Some(x), Some(y)) => x == y,
                    (EnvOutcome::Found { .. }, x, y) => x.is_none() && y.is_none(),
                    _ => true,
                };
                Ok((ok, Some(json!({"envelope_search": outcome, "nodes": s.nodes}))))
            })(),
        ));
    }
    (out, verdict)
}

/// Checks on one pair, keyed by the two digests.
pub type PairResult = ((String, String), Vec<Check>, Option<Verdict>);

/// Results of a catalog run.
#[derive(Debug, Clone)]
pub struct VerifyRun {
    pub algebras: Vec<(Entry, Vec<Check>)>,
    pub pairs: Vec<PairResult>,
    pub failures: usize,
    pub candidate_violations: usize,
}

pub fn run(entries: &[Entry], opts: &VerifyOptions) -> Result<VerifyRun> {
    let per: Vec<(Vec<Check>, Result<Summary>)> =
        entries.par_iter().map(|e| (algebra_checks(e, opts), summarize(&e.file.algebra))).collect();
    let mut algebras = Vec::new();
    let mut summaries = Vec::new();
    for (e, (mut checks, s)) in entries.iter().zip(per) {
        match s {
            Ok(s) => summaries.push(Some(s)),
            Err(err) => {
                checks.push(check("verify.summary", Err(err)));
                summaries.push(None);
            }
        }
        algebras.push((e.clone(), checks));
    }
    let mut jobs = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if entries[i].file.algebra.field() == entries[j].file.algebra.field() {
                if let (Some(_), Some(_)) = (&summaries[i], &summaries[j]) {
                    jobs.push((i, j));
                }
            }
        }
    }
    let pairs: Vec<_> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let (checks, verdict) = pair_checks(
                (&entries[i], summaries[i].as_ref().unwrap()),
                (&entries[j], summaries[j].as_ref().unwrap()),
                opts,
            );
            ((entries[i].info.sha256.clone(), entries[j].info.sha256.clone()), checks, verdict)
        })
        .collect();
    let failures =
        algebras.iter().flat_map(|(_, c)| c).chain(pairs.iter().flat_map(|(_, c, _)| c)).filter(|c| !c.passed).count();
    let candidate_violations = pairs.iter().filter(|(_, _, v)| *v == Some(Verdict::CandidateViolation)).count();
    Ok(VerifyRun { algebras, pairs, failures, candidate_violations })
}

impl VerifyRun {
    pub fn to_json(&self) -> Value {
        let algebras: Vec<Value> = self
            .algebras
            .iter()
            .map(|(e, checks)| json!({"sha256": e.info.sha256, "path": e.info.path, "name": e.info.name, "checks": checks}))
            .collect();
        let pairs: Vec<Value> = self
            .pairs
            .iter()
            .map(|((a, b), checks, verdict)| json!({"a": a, "b": b, "verdict": verdict.map(|v| v.label()), "checks": checks}))
            .collect();
        let mut properties: std::collections::BTreeMap<&str, (usize, usize)> = Default::default();
        for c in self.algebras.iter().flat_map(|(_, c)| c).chain(self.pairs.iter().flat_map(|(_, c, _)| c)) {
            let e = properties.entry(c.property.as_str()).or_default();
            if c.passed {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        let properties: Value = properties
            .into_iter()
            .map(|(k, (pass, fail))| (k.to_string(), json!({"passed": pass, "failed": fail})))
            .collect::<serde_json::Map<_, _>>()
            .into();
        json!({"properties": properties, "algebras": algebras, "pairs": pairs})
    }
}
