use super::PbwAlgebra;
use crate::abelian;
use crate::error::{Error, Result};
use crate::exactla::{unit_vector, FieldElement, Matrix, Subspace, Vector};

impl PbwAlgebra {
    fn space(&self, vectors: &[Vector]) -> Subspace {
        Subspace::from_vectors(self.field(), self.dim(), vectors).expect("same ambient")
    }

    fn sum(&self, a: &Subspace, b: &Subspace) -> Subspace {
        a.sum(self.field(), b).expect("same ambient")
    }

    fn intersect(&self, a: &Subspace, b: &Subspace) -> Subspace {
        a.intersect(self.field(), b).expect("same ambient")
    }

    /// `ω(L)`: all monomials except the unit.
    pub fn augmentation_ideal(&self) -> Subspace {
        let basis: Vec<Vector> = (1..self.dim()).map(|m| unit_vector(self.dim(), m)).collect();
        self.space(&basis)
    }

    /// `ω^{k+1} = span{e_i · b}` over generators `e_i` and a basis `b` of
    /// `ω^k`. This is all of `ω · ω^k` because `ω^k` is an ideal containing
    /// `ω^{k+1}`.
    pub fn next_power(&self, current: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.dim());
        for b in current.basis() {
            for i in 0..self.generators() {
                let v = self.left_generator(i, b);
                out.insert(self.field(), &v).expect("same ambient");
            }
        }
        out
    }

    /// `ω^k` for `k ≥ 1`.
    pub fn augmentation_power(&self, k: usize) -> Subspace {
        assert!(k >= 1);
        let mut s = self.augmentation_ideal();
        for _ in 1..k {
            if s.is_zero() {
                break;
            }
            let next = self.next_power(&s);
            if next == s {
                break;
            }
            s = next;
        }
        s
    }

    /// `ω, ω^2, …` up to the first zero term, or up to the first repeated
    /// term (returned once) when the chain stalls, or until `max_power`.
    pub fn augmentation_series(&self, max_power: Option<usize>) -> Vec<Subspace> {
        let mut chain = vec![self.augmentation_ideal()];
        loop {
            let last = chain.last().unwrap();
            if last.is_zero() || max_power.is_some_and(|m| chain.len() >= m) {
                return chain;
            }
            let next = self.next_power(last);
            if next == *last {
                return chain;
            }
            chain.push(next);
        }
    }

    /// Least `k` with `ω^k = 0`, or `None` when the powers stall above zero.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let chain = self.augmentation_series(None);
        chain.last().unwrap().is_zero().then_some(chain.len())
    }

    /// `L ∩ ω^n` in `L`-coordinates.
    pub fn dimension_subalgebra_oracle(&self, n: usize) -> Subspace {
        self.oracle_from(&self.augmentation_power(n))
    }

    /// `L ∩ s` in `L`-coordinates.
    pub fn oracle_from(&self, s: &Subspace) -> Subspace {
        let meet = self.intersect(&self.l_subspace(), s);
        let coords: Vec<Vector> = meet.basis().iter().map(|v| self.restrict_to_l(v).expect("inside L")).collect();
        self.parent().span(&coords)
    }

    /// `span{a·c, c·a}` over monomials `a ≠ 1` and basis vectors `c` of
    /// `n ⊆ L`: the two-sided `ω N + N ω`.
    pub fn sandwich(&self, n: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.dim());
        for c in n.basis() {
            let c = self.embed(c);
            for m in 1..self.dim() {
                let e = unit_vector(self.dim(), m);
                out.insert(self.field(), &self.mul(&e, &c)).expect("same ambient");
                out.insert(self.field(), &self.mul(&c, &e)).expect("same ambient");
            }
        }
        out
    }

    /// `N · u(L)`: the right ideal generated by `N ⊆ L`.
    pub fn right_ideal(&self, n: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.dim());
        for c in n.basis() {
            let c = self.embed(c);
            for m in 0..self.dim() {
                out.insert(self.field(), &self.mul(&c, &unit_vector(self.dim(), m))).expect("same ambient");
            }
        }
        out
    }

    /// `J_L = ω L' + L' ω`, computed from `L' = γ_2` and checked against the
    /// same construction on `L'_p`.
    pub fn jl_subspace(&self) -> Result<Subspace> {
        let l = self.parent();
        let whole = l.whole();
        let derived = l.bracket_space(&whole, &whole);
        let jl = self.sandwich(&derived);
        let jl_p = self.sandwich(&l.derived_p());
        if jl != jl_p {
            return Err(Error::Validation("J_L computed from L' and from L'_p differ".into()));
        }
        Ok(jl)
    }

    /// `(dim N u(L) - dim(ω N + N ω), dim N - dim([N,L] + N^p))`.
    pub fn n_quotient_dims(&self, n: &Subspace) -> (usize, usize) {
        let lhs = self.right_ideal(n).dim() - self.sandwich(n).dim();
        let rhs = n.dim() - self.parent().commutator_plus_p_powers(n).dim();
        (lhs, rhs)
    }

    /// `L ∩ ([N, L] + ω N + N ω)` in `L`-coordinates, the left side of the
    /// first identity for a restricted subalgebra `N`.
    pub fn n_intersection(&self, n: &Subspace) -> Subspace {
        let l = self.parent();
        let nl = self.embed_subspace(&l.bracket_space(n, &l.whole()));
        let inner = self.sum(&nl, &self.sandwich(n));
        self.oracle_from(&inner)
    }

    /// Lifts to `L` of a cyclic-decomposition basis of `L/L'_p`, in the
    /// order `x_1, x_1^[p], …` of the decomposition.
    pub fn quotient_basis_lift(&self) -> Result<Vec<Vector>> {
        let l = self.parent();
        let q = l.quotient_by(&l.derived_p())?;
        let op = abelian::as_semilinear(&q.algebra)?;
        let dec = abelian::decompose_operator(&op)?;
        Ok(dec.chain_basis(&op).iter().map(|v| q.lift(v)).collect())
    }

    /// `E = J_L + span{PBW monomials of degree ≥ 2 in X}`.
    pub fn e_space(&self, x: &[Vector]) -> Result<Subspace> {
        let mut e = self.jl_subspace()?;
        let factors: Vec<Vector> = x.iter().map(|v| self.embed(v)).collect();
        for exps in self.exponent_tuples(factors.len()) {
            if exps.iter().map(|&a| a as usize).sum::<usize>() >= 2 {
                let v = self.ordered_product(&factors, &exps);
                e.insert(self.field(), &v).expect("same ambient");
            }
        }
        Ok(e)
    }

    /// Dimension of `ω^k / ω^{k+1}` for each `k ≥ 1` of the series.
    pub fn omega_quotient_dims(&self, series: &[Subspace]) -> Vec<usize> {
        series.windows(2).map(|w| w[0].dim() - w[1].dim()).collect()
    }

    /// Algebra map `u(L) → u(H)` determined by the images of the generators
    /// of `u(L)`, as the matrix sending PBW coordinates of `self` to those of
    /// `target`. The map is well defined only if the images satisfy the
    /// defining relations; callers check that separately.
    pub fn induced_map(&self, target: &PbwAlgebra, images: &[Vector]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|m| target.ordered_product(images, self.monomial(m))).collect();
        Matrix::from_columns(&cols, target.dim()).expect("columns have target dimension")
    }

    /// Whether generator images satisfy `[e_i, e_j] ↦ [φ e_i, φ e_j]` and
    /// `e_i^p ↦ (φ e_i)^p`, i.e. extend to an algebra map.
    pub fn respects_relations(&self, target: &PbwAlgebra, images: &[Vector]) -> bool {
        let l = self.parent();
        let n = self.generators();
        let image_of_l = |x: &[FieldElement]| -> Vector {
            let mut out = crate::exactla::zero_vector(target.dim());
            for (i, &c) in x.iter().enumerate() {
                crate::exactla::axpy(self.field(), &mut out, c, &images[i]);
            }
            out
        };
        let p = l.characteristic() as u64;
        for i in 0..n {
            for j in i + 1..n {
                if target.commutator(&images[i], &images[j]) != image_of_l(l.basis_bracket(i, j)) {
                    return false;
                }
            }
            if target.pow(&images[i], p) != image_of_l(l.basis_pmap(i)) {
                return false;
            }
        }
        true
    }
}
