use super::closure::{segment_ends, Closure, EnvRealization};
use super::search::generating_tuple;
use crate::env::{PbwAlgebra, EAGER_PRODUCTS};
use crate::error::{Error, Result};
use crate::exactla::{axpy, zero_vector, Matrix, Subspace, Vector};
use crate::liealg::AlgebraPresentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnvOutcome {
    /// Images in `u(Q)` of the basis of `P`, and the induced algebra
    /// isomorphism `u(P) → u(Q)` on PBW coordinates.
    Found {
        images: Vec<Vector>,
        map: Matrix,
    },
    /// The search space was enumerated completely.
    NotIsomorphic,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvSearch {
    pub outcome: EnvOutcome,
    pub nodes: u64,
}

/// Search for an augmentation-preserving algebra isomorphism `u(P) → u(Q)`
/// determined by the images of the generators of `P`.
///
/// Images of a generating tuple of `P` range over `ω(Q)`, those with zero
/// component in degree two and higher first. An assignment is kept while
/// the restricted closure in `u(Q)` (commutators and p-th powers)
/// reproduces the closure trace of the tuple in `P`; a complete assignment
/// is accepted when the induced map is bijective.
pub fn env_generator_iso_search(p: &AlgebraPresentation, q: &AlgebraPresentation, budget: u64) -> Result<EnvSearch> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    let up = PbwAlgebra::new(p)?;
    let uq = PbwAlgebra::new(q)?;
    for u in [&up, &uq] {
        if u.dim() > EAGER_PRODUCTS {
            return Err(Error::SizeLimit {
                what: "dimension of u(L) for the generator search",
                value: u.dim() as u64,
                limit: EAGER_PRODUCTS as u64,
            });
        }
    }
    if p.dim() != q.dim() {
        return Ok(EnvSearch { outcome: EnvOutcome::NotIsomorphic, nodes: 0 });
    }
    let f = p.field();
    let n = p.dim();
    let (tuple, target) = generating_tuple(p);
    let ends = segment_ends(target.trace());
    let p_basis = Matrix::from_columns(target.basis(), n)?;
    let p_basis_inv = p_basis.inverse(f).ok_or_else(|| Error::Validation("closure basis is singular".into()))?;
    let realization = EnvRealization(&uq);

    // Coordinates of ω(Q), degree-one monomials first so that the
    // enumeration varies them fastest.
    let mut positions: Vec<usize> = (0..n).map(|i| uq.generator_index(i)).collect();
    positions.extend((1..uq.dim()).filter(|&m| uq.degree(m) >= 2));

    let mut s = State {
        up: &up,
        uq: &uq,
        p_basis_inv,
        positions,
        target: target.trace(),
        ends: &ends,
        depth_total: tuple.len(),
        d: n - p.dimension_subalgebra(2).space.dim(),
        budget,
        nodes: 0,
        aborted: false,
    };
    let found = s.descend(Closure::new(&realization, n), uq.augmentation_power(2), 0);
    let outcome = match found {
        Some((images, map)) => {
            if !up.respects_relations(&uq, &images) {
                return Err(Error::Validation("generator images violate a defining relation".into()));
            }
            EnvOutcome::Found { images, map }
        }
        None if s.aborted => EnvOutcome::Inconclusive,
        None => EnvOutcome::NotIsomorphic,
    };
    Ok(EnvSearch { outcome, nodes: s.nodes })
}

struct State<'a> {
    up: &'a PbwAlgebra,
    uq: &'a PbwAlgebra,
    p_basis_inv: Matrix,
    positions: Vec<usize>,
    target: &'a [u32],
    ends: &'a [usize],
    depth_total: usize,
    d: usize,
    budget: u64,
    nodes: u64,
    aborted: bool,
}

impl<'a> State<'a> {
    fn descend(
        &mut self,
        closure: Closure<'a, EnvRealization<'a>>,
        chosen: Subspace,
        depth: usize,
    ) -> Option<(Vec<Vector>, Matrix)> {
        let f = self.uq.field();
        if depth == self.depth_total {
            return if closure.trace() == self.target { self.complete(closure.basis()) } else { None };
        }
        let q = f.order();
        let mut digits = vec![0u32; self.positions.len()];
        loop {
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return None;
                }
                digits[k] += 1;
                if digits[k] < q {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.aborted = true;
                return None;
            }
            let mut v = zero_vector(self.uq.dim());
            for (&pos, &c) in self.positions.iter().zip(&digits) {
                v[pos] = f.from_index(c).expect("digit below field order");
            }
            // The first `d` images must be independent modulo ω²(Q).
            let allowed =
                if depth < self.d { !chosen.contains(f, &v).expect("same ambient") } else { !closure.contains(&v) };
            if !allowed {
                continue;
            }
            let mut next = closure.clone();
            if !next.add_generator(&v) || next.trace() != &self.target[..self.ends[depth]] {
                continue;
            }
            let mut grown = chosen.clone();
            grown.insert(f, &v).expect("same ambient");
            if let Some(found) = self.descend(next, grown, depth + 1) {
                return Some(found);
            }
            if self.aborted {
                return None;
            }
        }
    }

    /// Images of the standard basis of `P` from those of the closure
    /// basis, and the induced map when it is bijective.
    fn complete(&self, closure_images: &[Vector]) -> Option<(Vec<Vector>, Matrix)> {
        let f = self.uq.field();
        let n = closure_images.len();
        let images: Vec<Vector> = (0..n)
            .map(|j| {
                let mut out = zero_vector(self.uq.dim());
                for (k, img) in closure_images.iter().enumerate() {
                    axpy(f, &mut out, self.p_basis_inv.get(k, j), img);
                }
                out
            })
            .collect();
        let map = self.up.induced_map(self.uq, &images);
        (map.rank(f) == self.uq.dim()).then_some((images, map))
    }
}
