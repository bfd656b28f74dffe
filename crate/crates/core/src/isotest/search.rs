use super::closure::{segment_ends, Closure};
use crate::error::{Error, Result};
use crate::exactla::{vector_from_index, Matrix, Subspace, Vector};
use crate::liealg::{AlgebraPresentation, DimensionSubalgebra, Exponent};

/// Default node budget for isomorphism searches.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Largest algebra, in field elements `q^n`, whose elements are enumerated.
pub const MAX_ENUMERATION: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Candidate images tried before giving up.
    pub budget: u64,
    /// Filter candidates by element invariants and check relations as soon
    /// as each generator is placed. Off, only complete tuples are checked.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, prune: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    /// Matrix sending `P`-coordinates to `Q`-coordinates.
    Witness(Matrix),
    /// Certified: an invariant differs or the search space was exhausted.
    NotIsomorphic(String),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoSearch {
    pub outcome: IsoOutcome,
    pub nodes: u64,
}

/// Iso-invariant generating tuple of `a`: unit vectors completing `D_2`,
/// then unit vectors outside the restricted closure until it is all of `a`.
/// Returns the tuple and its closure.
pub fn generating_tuple(a: &AlgebraPresentation) -> (Vec<Vector>, Closure<'_, AlgebraPresentation>) {
    let mut closure = Closure::new(a, a.dim());
    let mut tuple = Vec::new();
    let d2 = a.dimension_subalgebra(2).space;
    for c in d2.free_columns() {
        let v = a.unit(c);
        closure.add_generator(&v);
        tuple.push(v);
    }
    while closure.dim() < a.dim() {
        let span = a.span(closure.basis());
        let v = a.unit(span.free_columns()[0]);
        closure.add_generator(&v);
        tuple.push(v);
    }
    (tuple, closure)
}

/// Element invariants preserved by isomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Profile {
    exponent: Exponent,
    height: Option<usize>,
    ad_rank: usize,
}

fn profile(a: &AlgebraPresentation, series: &[DimensionSubalgebra], v: &[crate::exactla::FieldElement]) -> Profile {
    Profile { exponent: a.exponent(v), height: a.height(series, v), ad_rank: a.ad_matrix(v).rank(a.field()) }
}

/// First invariant, among cheap global ones, on which `p` and `q` differ.
pub fn invariant_mismatch(p: &AlgebraPresentation, q: &AlgebraPresentation) -> Option<String> {
    if p.dim() != q.dim() {
        return Some(format!("dimensions differ: {} vs {}", p.dim(), q.dim()));
    }
    let lcs = |a: &AlgebraPresentation| a.lower_central_series().iter().map(Subspace::dim).collect::<Vec<_>>();
    let (lp, lq) = (lcs(p), lcs(q));
    if lp != lq {
        return Some(format!("lower central series dimensions differ: {lp:?} vs {lq:?}"));
    }
    let ds = |a: &AlgebraPresentation| a.dimension_series().iter().map(|d| d.space.dim()).collect::<Vec<_>>();
    let (dp, dq) = (ds(p), ds(q));
    if dp != dq {
        return Some(format!("dimension subalgebra dimensions differ: {dp:?} vs {dq:?}"));
    }
    let (zp, zq) = (p.center().dim(), q.center().dim());
    if zp != zq {
        return Some(format!("center dimensions differ: {zp} vs {zq}"));
    }
    let (pp, pq) = (p.derived_p().dim(), q.derived_p().dim());
    if pp != pq {
        return Some(format!("dim L'_p differs: {pp} vs {pq}"));
    }
    None
}

/// Search for a restricted isomorphism `P → Q`.
///
/// A fixed generating tuple of `P` is mapped to candidate tuples in `Q`;
/// a candidate survives as long as the restricted closure in `Q` reproduces
/// the closure trace of `P`, which is exactly the statement that the
/// partial assignment respects all brackets and p-powers seen so far.
pub fn lie_iso_search(p: &AlgebraPresentation, q: &AlgebraPresentation, opts: SearchOptions) -> Result<IsoSearch> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    if p.dim() != q.dim() {
        let reason = format!("dimensions differ: {} vs {}", p.dim(), q.dim());
        return Ok(IsoSearch { outcome: IsoOutcome::NotIsomorphic(reason), nodes: 0 });
    }
    if opts.prune {
        if let Some(reason) = invariant_mismatch(p, q) {
            return Ok(IsoSearch { outcome: IsoOutcome::NotIsomorphic(reason), nodes: 0 });
        }
    }
    let f = q.field();
    let n = q.dim();
    let count = (f.order() as u64).checked_pow(n as u32).filter(|&c| c <= MAX_ENUMERATION).ok_or(Error::SizeLimit {
        what: "elements enumerated by the isomorphism search",
        value: (f.order() as u64).saturating_pow(n as u32),
        limit: MAX_ENUMERATION,
    })?;

    let (tuple, target) = generating_tuple(p);
    let ends = segment_ends(target.trace());
    let p_series = p.dimension_series();
    let q_series = q.dimension_series();
    let profiles: Vec<Profile> = tuple.iter().map(|h| profile(p, &p_series, h)).collect();
    let elements: Vec<Vector> = (1..count).map(|i| vector_from_index(f, n, i)).collect();
    let q_profiles: Vec<Option<Profile>> =
        elements.iter().map(|v| opts.prune.then(|| profile(q, &q_series, v))).collect();

    let mut s = LieSearch {
        q,
        opts,
        target: target.trace(),
        ends: &ends,
        profiles: &profiles,
        elements: &elements,
        q_profiles: &q_profiles,
        d: p.dim() - p.dimension_subalgebra(2).space.dim(),
        q_d2: q.dimension_subalgebra(2).space,
        nodes: 0,
        aborted: false,
    };
    let found = s.descend(Closure::new(q, n), s.q_d2.clone(), 0);
    let outcome = match found {
        Some(basis) => {
            let mp = Matrix::from_columns(target.basis(), n)?;
            let mq = Matrix::from_columns(&basis, n)?;
            let inv = mp.inverse(f).ok_or_else(|| Error::Validation("closure basis is singular".into()))?;
            let w = mq.mul(f, &inv)?;
            verify_lie_witness(p, q, &w).map_err(Error::Validation)?;
            IsoOutcome::Witness(w)
        }
        None if s.aborted => IsoOutcome::Inconclusive,
        None => IsoOutcome::NotIsomorphic("no generator assignment reproduces the structure".into()),
    };
    Ok(IsoSearch { outcome, nodes: s.nodes })
}

struct LieSearch<'a> {
    q: &'a AlgebraPresentation,
    opts: SearchOptions,
    target: &'a [u32],
    ends: &'a [usize],
    profiles: &'a [Profile],
    elements: &'a [Vector],
    q_profiles: &'a [Option<Profile>],
    d: usize,
    q_d2: Subspace,
    nodes: u64,
    aborted: bool,
}

impl<'a> LieSearch<'a> {
    fn descend(
        &mut self,
        closure: Closure<'a, AlgebraPresentation>,
        chosen: Subspace,
        depth: usize,
    ) -> Option<Vec<Vector>> {
        let f = self.q.field();
        if depth == self.profiles.len() {
            let complete = closure.dim() == self.q.dim() && closure.trace() == self.target;
            return complete.then(|| closure.basis().to_vec());
        }
        for (idx, v) in self.elements.iter().enumerate() {
            let allowed =
                if depth < self.d { !chosen.contains(f, v).expect("same ambient") } else { !closure.contains(v) };
            if !allowed {
                continue;
            }
            if self.opts.prune && self.q_profiles[idx].as_ref() != Some(&self.profiles[depth]) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.opts.budget {
                self.aborted = true;
                return None;
            }
            let mut next = closure.clone();
            if !next.add_generator(v) {
                continue;
            }
            if self.opts.prune && next.trace() != &self.target[..self.ends[depth].min(self.target.len())] {
                continue;
            }
            let mut grown = chosen.clone();
            grown.insert(f, v).expect("same ambient");
            if let Some(found) = self.descend(next, grown, depth + 1) {
                return Some(found);
            }
            if self.aborted {
                return None;
            }
        }
        None
    }
}

/// Check that `w` is invertible and transports brackets and p-maps on the
/// standard basis. Failures name the first offending relation.
pub fn verify_lie_witness(
    p: &AlgebraPresentation,
    q: &AlgebraPresentation,
    w: &Matrix,
) -> std::result::Result<(), String> {
    let f = p.field();
    let n = p.dim();
    if w.rows() != q.dim() || w.cols() != n || w.inverse(f).is_none() {
        return Err("witness is not an invertible square matrix".into());
    }
    let img = |v: &[crate::exactla::FieldElement]| w.mul_vec(f, v).expect("shape checked");
    let images: Vec<Vector> = (0..n).map(|i| w.column(i)).collect();
    let names = p.names();
    for i in 0..n {
        for j in i + 1..n {
            if img(p.basis_bracket(i, j)) != q.bracket(&images[i], &images[j]) {
                return Err(format!("bracket [{}, {}] is not preserved", names[i], names[j]));
            }
        }
        if img(p.basis_pmap(i)) != q.p_power(&images[i]) {
            return Err(format!("p-map of {} is not preserved", names[i]));
        }
    }
    Ok(())
}
