use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::exactla::{check_ambient, zero_vector, FieldElement, FiniteField, Subspace, Vector};
use crate::liealg::AlgebraPresentation;

/// Largest `dim u(L)` for which all monomial products are precomputed.
pub const EAGER_PRODUCTS: usize = 256;

/// Sparse vector: `(monomial index, coefficient)` sorted by index, no zeros.
pub type Sparse = Vec<(u32, FieldElement)>;

/// An element of `u(L)` in the PBW basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PbwElement {
    terms: Sparse,
}

impl PbwElement {
    pub fn from_dense(v: &[FieldElement]) -> Self {
        PbwElement { terms: to_sparse(v) }
    }

    pub fn to_dense(&self, dim: usize) -> Vector {
        let mut out = zero_vector(dim);
        for &(m, c) in &self.terms {
            out[m as usize] = c;
        }
        out
    }

    pub fn terms(&self) -> &[(u32, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn to_sparse(v: &[FieldElement]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i as u32, c)).collect()
}

enum Products {
    Eager(Vec<Sparse>),
    Lazy(RwLock<HashMap<(u32, u32), Arc<Sparse>>>),
}

/// `u(L)` on its PBW basis `e_1^{a_1} ⋯ e_n^{a_n}`, `0 ≤ a_i < p`.
///
/// Monomials are ordered by degree, then by exponent tuple descending, so
/// the unit comes first and `e_i` sits at index `1 + i`.
pub struct PbwAlgebra {
    parent: AlgebraPresentation,
    p: usize,
    monomials: Vec<Vec<u8>>,
    degrees: Vec<usize>,
    by_code: Vec<u32>,
    /// `left[i * N + m] = e_i · m`.
    left: Vec<Sparse>,
    products: Products,
}

impl std::fmt::Debug for PbwAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PbwAlgebra(dim {} over {})", self.dim(), self.field())
    }
}

impl PbwAlgebra {
    pub fn new(parent: &AlgebraPresentation) -> Result<Self> {
        let n = parent.dim();
        let p = parent.characteristic() as usize;
        let total = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        check_ambient(total)?;
        let total = total as usize;

        let mut monomials: Vec<Vec<u8>> = (0..total)
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let a = (code % p) as u8;
                        code /= p;
                        a
                    })
                    .collect()
            })
            .collect();
        let degree = |m: &[u8]| m.iter().map(|&a| a as usize).sum::<usize>();
        monomials.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        let degrees: Vec<usize> = monomials.iter().map(|m| degree(m)).collect();
        let mut by_code = vec![0u32; total];
        for (idx, m) in monomials.iter().enumerate() {
            by_code[encode(m, p)] = idx as u32;
        }

        let mut u = PbwAlgebra {
            parent: parent.clone(),
            p,
            monomials,
            degrees,
            by_code,
            left: vec![Vec::new(); n * total],
            products: Products::Lazy(RwLock::new(HashMap::new())),
        };
        u.build_left()?;
        if total <= EAGER_PRODUCTS {
            let mut table = Vec::with_capacity(total * total);
            for a in 0..total {
                for b in 0..total {
                    table.push(u.compute_product(a, b));
                }
            }
            u.products = Products::Eager(table);
        }
        Ok(u)
    }

    pub fn parent(&self) -> &AlgebraPresentation {
        &self.parent
    }

    pub fn field(&self) -> &FiniteField {
        self.parent.field()
    }

    /// `p^n`.
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn generators(&self) -> usize {
        self.parent.dim()
    }

    pub fn monomial(&self, m: usize) -> &[u8] {
        &self.monomials[m]
    }

    pub fn degree(&self, m: usize) -> usize {
        self.degrees[m]
    }

    pub fn index_of(&self, exponents: &[u8]) -> usize {
        self.by_code[encode(exponents, self.p)] as usize
    }

    pub fn generator_index(&self, i: usize) -> usize {
        1 + i
    }

    pub fn unit(&self) -> Vector {
        crate::exactla::unit_vector(self.dim(), 0)
    }

    /// `x ∈ L` as an element of `u(L)`.
    pub fn embed(&self, x: &[FieldElement]) -> Vector {
        let mut out = zero_vector(self.dim());
        for (i, &c) in x.iter().enumerate() {
            out[self.generator_index(i)] = c;
        }
        out
    }

    /// Inverse of [`embed`](Self::embed) on the degree-one span.
    pub fn restrict_to_l(&self, v: &[FieldElement]) -> Option<Vector> {
        let n = self.generators();
        let inside = v.iter().enumerate().all(|(m, c)| c.is_zero() || (1..=n).contains(&m));
        inside.then(|| v[1..=n].to_vec())
    }

    /// The span of the embedded copy of `L`.
    pub fn l_subspace(&self) -> Subspace {
        let basis: Vec<Vector> = (0..self.generators()).map(|i| self.embed(&self.parent.unit(i))).collect();
        Subspace::from_vectors(self.field(), self.dim(), &basis).expect("same ambient")
    }

    pub fn embed_subspace(&self, s: &Subspace) -> Subspace {
        let basis: Vec<Vector> = s.basis().iter().map(|v| self.embed(v)).collect();
        Subspace::from_vectors(self.field(), self.dim(), &basis).expect("same ambient")
    }

    fn shifted(&self, m: usize, i: usize) -> usize {
        let mut e = self.monomials[m].clone();
        e[i] += 1;
        self.index_of(&e)
    }

    fn min_index(&self, m: usize) -> Option<usize> {
        self.monomials[m].iter().position(|&a| a > 0)
    }

    fn add_scaled(&self, acc: &mut Vector, c: FieldElement, v: &Sparse) {
        let f = self.field();
        for &(m, a) in v {
            let slot = &mut acc[m as usize];
            *slot = f.add(*slot, f.mul(c, a));
        }
    }

    /// `e_i · m` when no reordering is needed: `i` at or before the first
    /// generator of `m` and the exponent stays below `p`.
    fn direct(&self, i: usize, m: usize) -> Option<usize> {
        match self.min_index(m) {
            None => Some(self.shifted(m, i)),
            Some(f) if i < f || (i == f && (self.monomials[m][i] as usize) + 1 < self.p) => Some(self.shifted(m, i)),
            _ => None,
        }
    }

    fn build_left(&mut self) -> Result<()> {
        let n = self.generators();
        let total = self.dim();
        let f = self.field().clone();
        for m in 0..total {
            for i in 0..n {
                let value = if let Some(t) = self.direct(i, m) {
                    vec![(t as u32, FieldElement::ONE)]
                } else {
                    let first = self.min_index(m).expect("unit handled directly");
                    let mut acc = zero_vector(total);
                    if i == first {
                        // e_f^p · rest = (e_f^[p]) · rest
                        let mut rest = self.monomials[m].clone();
                        rest[first] = 0;
                        let rest = self.index_of(&rest);
                        for (j, &c) in self.parent.basis_pmap(first).iter().enumerate() {
                            if !c.is_zero() {
                                self.add_scaled(&mut acc, c, &self.left[j * total + rest]);
                            }
                        }
                    } else {
                        // e_i · e_f · m' = e_f · (e_i · m') + [e_i, e_f] · m'
                        let mut prime = self.monomials[m].clone();
                        prime[first] -= 1;
                        let prime = self.index_of(&prime);
                        let inner = self.left[i * total + prime].clone();
                        for (w, c) in inner {
                            let w = w as usize;
                            if self.degrees[w] < self.degrees[m] {
                                self.add_scaled(&mut acc, c, &self.left[first * total + w]);
                            } else {
                                let t = self.direct(first, w).ok_or_else(|| {
                                    Error::Validation("straightening produced an unordered leading term".into())
                                })?;
                                acc[t] = f.add(acc[t], c);
                            }
                        }
                        for (j, &c) in self.parent.basis_bracket(i, first).iter().enumerate() {
                            if !c.is_zero() {
                                self.add_scaled(&mut acc, c, &self.left[j * total + prime]);
                            }
                        }
                    }
                    to_sparse(&acc)
                };
                self.left[i * total + m] = value;
            }
        }
        Ok(())
    }

    /// `e_i · v`.
    pub fn left_generator(&self, i: usize, v: &[FieldElement]) -> Vector {
        let total = self.dim();
        let mut out = zero_vector(total);
        for (m, &c) in v.iter().enumerate() {
            if !c.is_zero() {
                self.add_scaled(&mut out, c, &self.left[i * total + m]);
            }
        }
        out
    }

    /// `m · v` for a basis monomial `m`, applying its generators right to left.
    pub fn left_monomial(&self, m: usize, v: &[FieldElement]) -> Vector {
        let mut out = v.to_vec();
        let exps = &self.monomials[m];
        for i in (0..exps.len()).rev() {
            for _ in 0..exps[i] {
                out = self.left_generator(i, &out);
            }
        }
        out
    }

    fn compute_product(&self, a: usize, b: usize) -> Sparse {
        let v = crate::exactla::unit_vector(self.dim(), b);
        to_sparse(&self.left_monomial(a, &v))
    }

    fn with_product<R>(&self, a: usize, b: usize, k: impl FnOnce(&Sparse) -> R) -> R {
        match &self.products {
            Products::Eager(table) => k(&table[a * self.dim() + b]),
            Products::Lazy(cache) => {
                let key = (a as u32, b as u32);
                if let Some(hit) = cache.read().expect("cache lock").get(&key).cloned() {
                    return k(&hit);
                }
                let value = Arc::new(self.compute_product(a, b));
                let stored = cache.write().expect("cache lock").entry(key).or_insert(value).clone();
                k(&stored)
            }
        }
    }

    /// Product of two basis monomials.
    pub fn product_of_monomials(&self, a: usize, b: usize) -> Sparse {
        self.with_product(a, b, |s| s.clone())
    }

    pub fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vector {
        let f = self.field();
        let mut out = zero_vector(self.dim());
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = f.mul(x, y);
                self.with_product(i, j, |s| self.add_scaled(&mut out, c, s));
            }
        }
        out
    }

    pub fn commutator(&self, a: &[FieldElement], b: &[FieldElement]) -> Vector {
        crate::exactla::sub(self.field(), &self.mul(a, b), &self.mul(b, a))
    }

    pub fn pow(&self, a: &[FieldElement], e: u64) -> Vector {
        let mut out = self.unit();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// Ordered product `x_1^{a_1} ⋯ x_r^{a_r}` of elements of `u(L)`.
    pub fn ordered_product(&self, factors: &[Vector], exponents: &[u8]) -> Vector {
        let mut out = self.unit();
        for (x, &a) in factors.iter().zip(exponents) {
            for _ in 0..a {
                out = self.mul(&out, x);
            }
        }
        out
    }

    /// All exponent tuples `(a_1, …, a_r)` with `0 ≤ a_i < p`.
    pub fn exponent_tuples(&self, r: usize) -> Vec<Vec<u8>> {
        let total = self.p.pow(r as u32);
        (0..total)
            .map(|mut code| {
                (0..r)
                    .map(|_| {
                        let a = (code % self.p) as u8;
                        code /= self.p;
                        a
                    })
                    .collect()
            })
            .collect()
    }

    /// Check that `b_i ↦ e_i` is a restricted homomorphism: commutators
    /// reproduce brackets and p-th powers reproduce the p-map.
    pub fn verify_embedding(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let n = self.generators();
        let names = self.parent.names();
        for i in 0..n {
            let ei = self.embed(&self.parent.unit(i));
            for j in 0..n {
                if i == j {
                    continue;
                }
                let ej = self.embed(&self.parent.unit(j));
                if self.commutator(&ei, &ej) != self.embed(self.parent.basis_bracket(i, j)) {
                    failures.push(format!("commutator of {} and {} differs from their bracket", names[i], names[j]));
                }
            }
            if self.pow(&ei, self.p as u64) != self.embed(self.parent.basis_pmap(i)) {
                failures.push(format!("p-th power of {} differs from its p-map image", names[i]));
            }
        }
        failures
    }

    /// `(a b) c = a (b c)` on all triples of basis monomials of degree at
    /// most `max_degree`.
    pub fn check_associativity(&self, max_degree: usize) -> bool {
        let small: Vec<usize> = (0..self.dim()).filter(|&m| self.degrees[m] <= max_degree).collect();
        let unit = |m: usize| crate::exactla::unit_vector(self.dim(), m);
        for &a in &small {
            for &b in &small {
                let ab = self.mul(&unit(a), &unit(b));
                for &c in &small {
                    let lhs = self.mul(&ab, &unit(c));
                    let rhs = self.mul(&unit(a), &self.mul(&unit(b), &unit(c)));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Weight `Σ a_i w_i` of a monomial for generator weights `w`.
    pub fn weight(&self, m: usize, weights: &[usize]) -> usize {
        self.monomials[m].iter().zip(weights).map(|(&a, &w)| a as usize * w).sum()
    }
}

fn encode(m: &[u8], p: usize) -> usize {
    m.iter().rev().fold(0, |acc, &a| acc * p + a as usize)
}
