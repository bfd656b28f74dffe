use std::cmp::Ordering;
use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use super::closure::{encode_trace, Closure};
use crate::abelian;
use crate::exactla::{vector_from_index, FiniteField, Subspace, Vector};
use crate::liealg::{AlgebraPresentation, Graded};

/// Default node budget for canonical forms.
pub const CANONICAL_BUDGET: u64 = 1 << 20;

/// Largest number of field vectors enumerated per generator position.
const MAX_CANDIDATES: u64 = 1 << 16;

/// Field label used as the prefix of class identifiers.
pub fn field_tag(f: &FiniteField) -> String {
    if f.degree() == 1 {
        format!("F{}", f.characteristic())
    } else {
        let m: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
        format!("F{}^{}[{}]", f.characteristic(), f.degree(), m.join(","))
    }
}

/// Identifier of an isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub id: String,
    /// `false` when the search ran out of budget and `id` only hashes
    /// invariants: equal ids then do not imply isomorphism.
    pub exact: bool,
    pub nodes: u64,
}

/// Class identifier of `a` with the default budget.
pub fn class_id(a: &AlgebraPresentation) -> String {
    canonical_form(a, CANONICAL_BUDGET).id
}

/// Class identifier of `gr(L)` up to graded isomorphism.
pub fn graded_class_id(g: &Graded) -> String {
    graded_canonical_form(g, CANONICAL_BUDGET).id
}

/// Complete invariant of `a` up to isomorphism.
///
/// Generating tuples are chosen iso-invariantly: the first `d` entries are
/// independent modulo `D_2`, where `d = dim L/D_2`, and each further entry
/// lies outside the restricted closure of the previous ones, until that
/// closure is all of `L`. The least closure trace over all such tuples
/// determines `a` up to isomorphism. Abelian p-nilpotent algebras are
/// labelled by their exponent partition directly.
pub fn canonical_form(a: &AlgebraPresentation, budget: u64) -> CanonicalForm {
    let prefix = format!("{}|{}|", field_tag(a.field()), a.dim());
    if a.is_abelian() && a.is_p_nilpotent() {
        if let Ok(dec) = abelian::cyclic_decomposition(a) {
            let mut e = dec.exponents;
            e.sort_unstable_by(|x, y| y.cmp(x));
            let parts: Vec<String> = e.iter().map(u32::to_string).collect();
            return CanonicalForm { id: format!("{prefix}ab:{}", parts.join(",")), exact: true, nodes: 0 };
        }
    }
    let d2 = a.dimension_subalgebra(2).space;
    search(a, &prefix, "t", &a.whole(), &d2, budget)
}

/// As [`canonical_form`] for the graded algebra, with tuples drawn from the
/// degree-one component so that only graded isomorphisms are considered.
pub fn graded_canonical_form(g: &Graded, budget: u64) -> CanonicalForm {
    let a = &g.algebra;
    let prefix = format!("{}|{}|", field_tag(a.field()), a.dim());
    let ones: Vec<Vector> = (0..a.dim()).filter(|&i| g.weights[i] == 1).map(|i| a.unit(i)).collect();
    let higher: Vec<Vector> = (0..a.dim()).filter(|&i| g.weights[i] != 1).map(|i| a.unit(i)).collect();
    search(a, &prefix, "gt", &a.span(&ones), &a.span(&higher), budget)
}

fn search(
    a: &AlgebraPresentation,
    prefix: &str,
    kind: &str,
    pool: &Subspace,
    d2: &Subspace,
    budget: u64,
) -> CanonicalForm {
    let f = a.field();
    let q = f.order() as u64;
    let count = q.checked_pow(pool.dim() as u32).filter(|&c| c <= MAX_CANDIDATES);
    let Some(count) = count else {
        return fallback(a, prefix, 0);
    };
    let basis = pool.basis();
    let elements: Vec<Vector> = (1..count)
        .map(|idx| {
            let c = vector_from_index(f, basis.len(), idx);
            let mut v = a.zero();
            for (coef, b) in c.iter().zip(basis) {
                crate::exactla::axpy(f, &mut v, *coef, b);
            }
            v
        })
        .collect();
    let mut s = Search { a, elements, d: a.dim() - d2.dim(), budget, nodes: 0, best: None, aborted: false };
    s.descend(&Closure::new(a, a.dim()), d2, 0);
    match s.best {
        Some(best) if !s.aborted => {
            CanonicalForm { id: format!("{prefix}{kind}:{}", encode_trace(&best)), exact: true, nodes: s.nodes }
        }
        _ => fallback(a, prefix, s.nodes),
    }
}

struct Search<'a> {
    a: &'a AlgebraPresentation,
    elements: Vec<Vector>,
    d: usize,
    budget: u64,
    nodes: u64,
    best: Option<Vec<u32>>,
    aborted: bool,
}

impl Search<'_> {
    fn descend(&mut self, closure: &Closure<'_, AlgebraPresentation>, chosen: &Subspace, depth: usize) {
        let f = self.a.field();
        if closure.dim() == self.a.dim() {
            if self.best.as_deref().is_none_or(|b| closure.trace() < b) {
                self.best = Some(closure.trace().to_vec());
            }
            return;
        }
        for idx in 0..self.elements.len() {
            if self.aborted {
                return;
            }
            let v = self.elements[idx].clone();
            let allowed =
                if depth < self.d { !chosen.contains(f, &v).expect("same ambient") } else { !closure.contains(&v) };
            if !allowed {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.aborted = true;
                return;
            }
            let mut next = closure.clone();
            next.add_generator(&v);
            if let Some(best) = &self.best {
                let t = next.trace();
                let l = t.len().min(best.len());
                match t[..l].cmp(&best[..l]) {
                    Ordering::Greater => continue,
                    Ordering::Equal if t.len() > best.len() => continue,
                    _ => {}
                }
            }
            let mut grown = chosen.clone();
            grown.insert(f, &v).expect("same ambient");
            self.descend(&next, &grown, depth + 1);
        }
    }
}

/// Hash of isomorphism invariants, used when the exact search is too large.
fn fallback(a: &AlgebraPresentation, prefix: &str, nodes: u64) -> CanonicalForm {
    let f = a.field();
    let mut data = String::new();
    let lcs: Vec<usize> = a.lower_central_series().iter().map(Subspace::dim).collect();
    let dims: Vec<usize> = a.dimension_series().iter().map(|d| d.space.dim()).collect();
    data.push_str(&format!("lcs{lcs:?};d{dims:?};z{};lp{};", a.center().dim(), a.derived_p().dim()));
    let q = f.order() as u64;
    if let Some(count) = q.checked_pow(a.dim() as u32).filter(|&c| c <= MAX_CANDIDATES) {
        let mut histogram: BTreeMap<(String, usize), u64> = BTreeMap::new();
        for idx in 0..count {
            let v = vector_from_index(f, a.dim(), idx);
            let rank = a.ad_matrix(&v).rank(f);
            *histogram.entry((a.exponent(&v).to_string(), rank)).or_default() += 1;
        }
        data.push_str(&format!("h{histogram:?}"));
    }
    let digest = Sha256::digest(data.as_bytes());
    CanonicalForm { id: format!("{prefix}inv:{}", hex::encode(&digest[..16])), exact: false, nodes }
}
