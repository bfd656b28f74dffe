use super::{AlgebraPresentation, Exponent};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace, Vector};

/// `D_n` as given by the sum formula, with the closure checks that the
/// formula is expected to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionSubalgebra {
    pub n: usize,
    pub space: Subspace,
    pub is_ideal: bool,
    pub is_p_closed: bool,
}

impl AlgebraPresentation {
    pub fn whole(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    pub fn span(&self, vectors: &[Vector]) -> Subspace {
        Subspace::from_vectors(self.field(), self.dim(), vectors).expect("vectors have algebra dimension")
    }

    fn insert(&self, s: &mut Subspace, v: &[crate::exactla::FieldElement]) -> bool {
        s.insert(self.field(), v).expect("vector has algebra dimension")
    }

    fn contains(&self, s: &Subspace, v: &[crate::exactla::FieldElement]) -> bool {
        s.contains(self.field(), v).expect("vector has algebra dimension")
    }

    /// `span{[a, b]}` over basis vectors `a` of `a_space`, `b` of `b_space`.
    pub fn bracket_space(&self, a_space: &Subspace, b_space: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.dim());
        for a in a_space.basis() {
            for b in b_space.basis() {
                let c = self.bracket(a, b);
                self.insert(&mut out, &c);
            }
        }
        out
    }

    /// `γ_1 = L ⊇ γ_2 ⊇ …` up to and including the first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let whole = self.whole();
        let mut chain = vec![whole.clone()];
        loop {
            let next = self.bracket_space(chain.last().unwrap(), &whole);
            let stable = next.dim() == chain.last().unwrap().dim();
            if stable {
                return chain;
            }
            chain.push(next);
        }
    }

    /// `γ_i` for any `i ≥ 1`, using the stable tail past the end of the chain.
    pub fn gamma(&self, series: &[Subspace], i: usize) -> Subspace {
        assert!(i >= 1);
        series.get(i - 1).unwrap_or_else(|| series.last().unwrap()).clone()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    /// Least `c` with `γ_{c+1} = 0`.
    pub fn nilpotence_class(&self) -> Result<usize> {
        let series = self.lower_central_series();
        if !series.last().unwrap().is_zero() {
            return Err(Error::NotNilpotent);
        }
        Ok(series.len() - 1)
    }

    /// Nilpotent with every basis vector p-nilpotent. For nilpotent `L` the
    /// p-nilpotent elements form an ideal, so the basis suffices.
    pub fn is_p_nilpotent(&self) -> bool {
        self.is_nilpotent() && (0..self.dim()).all(|i| self.exponent(&self.unit(i)) != Exponent::Infinite)
    }

    /// `span{b^[p]}` over basis vectors `b` of `s`.
    pub fn p_image(&self, s: &Subspace) -> Subspace {
        let images: Vec<Vector> = s.basis().iter().map(|b| self.p_power(b)).collect();
        self.span(&images)
    }

    /// Smallest subspace containing `s` and the p-powers of its basis vectors.
    pub fn p_closure(&self, s: &Subspace) -> Subspace {
        let mut out = s.clone();
        let mut frontier: Vec<Vector> = out.basis().to_vec();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for v in &frontier {
                let w = self.p_power(v);
                if self.insert(&mut out, &w) {
                    next.push(w);
                }
            }
            frontier = next;
        }
        out
    }

    /// Restricted subalgebra generated by `s`.
    pub fn restricted_closure(&self, s: &Subspace) -> Subspace {
        self.close(s, false)
    }

    /// Restricted ideal generated by `s`.
    pub fn restricted_ideal_closure(&self, s: &Subspace) -> Subspace {
        self.close(s, true)
    }

    fn close(&self, s: &Subspace, ideal: bool) -> Subspace {
        let mut out = s.clone();
        loop {
            let before = out.dim();
            let basis = out.basis().to_vec();
            for (a, x) in basis.iter().enumerate() {
                if ideal {
                    for j in 0..self.dim() {
                        let c = self.bracket(x, &self.unit(j));
                        self.insert(&mut out, &c);
                    }
                } else {
                    for y in &basis[a + 1..] {
                        let c = self.bracket(x, y);
                        self.insert(&mut out, &c);
                    }
                }
                let w = self.p_power(x);
                self.insert(&mut out, &w);
            }
            if out.dim() == before {
                return out;
            }
        }
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.contains(s, &self.bracket(&b[i], &b[j]))))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|x| (0..self.dim()).all(|j| self.contains(s, &self.bracket(x, &self.unit(j)))))
    }

    /// Every basis vector's p-power stays in `s`. Together with bracket
    /// closure this makes `s` closed under the p-map.
    pub fn is_p_closed(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|x| self.contains(s, &self.p_power(x)))
    }

    pub fn is_restricted_ideal(&self, s: &Subspace) -> bool {
        self.is_ideal(s) && self.is_p_closed(s)
    }

    pub fn is_restricted_subalgebra(&self, s: &Subspace) -> bool {
        self.is_subalgebra(s) && self.is_p_closed(s)
    }

    /// `L'_p`: the restricted ideal generated by `γ_2`.
    pub fn derived_p(&self) -> Subspace {
        let whole = self.whole();
        self.restricted_ideal_closure(&self.bracket_space(&whole, &whole))
    }

    /// `[N, L] + N^p` for a restricted subalgebra `N`, where `N^p` is the
    /// restricted subalgebra generated by the p-powers of `N`. Those
    /// p-powers are spanned modulo `[N, N]` by the p-images of a basis.
    pub fn commutator_plus_p_powers(&self, n: &Subspace) -> Subspace {
        let nl = self.bracket_space(n, &self.whole());
        let np = self.restricted_closure(&self.p_image(n));
        nl.sum(self.field(), &np).expect("same ambient")
    }

    /// `L'^p + γ_3(L)`, the kernel of the quotient that `u(L)` determines.
    pub fn main_quotient_ideal(&self) -> Subspace {
        let series = self.lower_central_series();
        let g2 = self.gamma(&series, 2);
        let g3 = self.gamma(&series, 3);
        let lp = self.restricted_closure(&self.p_image(&g2));
        g3.sum(self.field(), &lp).expect("same ambient")
    }

    /// The summands `γ_i^{p^j}` of the dimension subalgebra formula, each
    /// with its weight `i p^j`. `γ_i^{p^{j+1}}` is the span of the p-powers
    /// of a basis of `γ_i^{p^j}`. Terms that recur (a cycle of the p-image
    /// map, or the stable tail of the lower central series) get weight
    /// `None`: they lie in every `D_n`.
    fn weighted_terms(&self) -> Vec<(Option<u64>, Subspace)> {
        let p = self.characteristic() as u64;
        let series = self.lower_central_series();
        let tail = series.last().unwrap().clone();
        let mut terms = Vec::new();
        let mut starts: Vec<(Option<u64>, Subspace)> =
            series.iter().enumerate().map(|(i, g)| (Some(i as u64 + 1), g.clone())).collect();
        starts.push((None, tail));
        for (weight, start) in starts {
            let mut seq: Vec<(Option<u64>, Subspace)> = Vec::new();
            let mut term = start;
            let mut w = weight;
            loop {
                if let Some(pos) = seq.iter().position(|(_, t)| *t == term) {
                    // Everything from `pos` on repeats forever.
                    for entry in &mut seq[pos..] {
                        entry.0 = None;
                    }
                    break;
                }
                seq.push((w, term.clone()));
                if term.is_zero() {
                    break;
                }
                term = self.p_image(&term);
                w = w.map(|w| w.saturating_mul(p));
            }
            terms.extend(seq);
        }
        terms
    }

    fn dimension_from_terms(&self, terms: &[(Option<u64>, Subspace)], n: usize) -> DimensionSubalgebra {
        let f = self.field();
        let mut sum = Subspace::zero(self.dim());
        for (w, t) in terms {
            if w.is_none_or(|w| w >= n as u64) {
                sum = sum.sum(f, t).expect("same ambient");
            }
        }
        DimensionSubalgebra { n, is_ideal: self.is_ideal(&sum), is_p_closed: self.is_p_closed(&sum), space: sum }
    }

    /// `D_n = Σ_{i p^j ≥ n} γ_i^{p^j}`, see [`weighted_terms`](Self::weighted_terms).
    pub fn dimension_subalgebra(&self, n: usize) -> DimensionSubalgebra {
        assert!(n >= 1, "dimension subalgebras are indexed from 1");
        self.dimension_from_terms(&self.weighted_terms(), n)
    }

    /// `D_1 ⊇ D_2 ⊇ …` up to the first zero term; when the chain never
    /// reaches zero it ends at the first index from which it is constant.
    pub fn dimension_series(&self) -> Vec<DimensionSubalgebra> {
        let terms = self.weighted_terms();
        let top = terms.iter().filter_map(|(w, t)| w.filter(|_| !t.is_zero())).max().unwrap_or(0);
        let mut chain = Vec::new();
        for n in 1..=(top as usize + 1) {
            let d = self.dimension_from_terms(&terms, n);
            let done = d.space.is_zero();
            chain.push(d);
            if done {
                break;
            }
        }
        chain
    }

    /// `{x : [x, L] = 0}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // Row (j, m) of the system: coefficient m of [x, b_j].
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for (k, &c) in self.basis_bracket(i, j).iter().enumerate() {
                    m.set(j * n + k, i, c);
                }
            }
        }
        m.kernel(self.field())
    }

    /// Largest `k` with `x ∈ D_k`, or `None` for `x = 0` (in every term).
    pub fn height(&self, series: &[DimensionSubalgebra], x: &[crate::exactla::FieldElement]) -> Option<usize> {
        if crate::exactla::is_zero(x) {
            return None;
        }
        let mut h = 0;
        for d in series {
            if self.contains(&d.space, x) {
                h = d.n;
            } else {
                break;
            }
        }
        Some(h)
    }
}
