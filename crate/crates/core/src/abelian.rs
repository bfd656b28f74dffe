//! Abelian restricted Lie algebras as modules over the skew polynomial ring
//! `F[t; σ]`, where `t` acts by the p-map.

use crate::error::{Error, Result};
use crate::exactla::{
    frobenius_vector, is_zero, semilinear_image, FieldElement, FiniteField, Matrix, Subspace, Vector,
};
use crate::liealg::AlgebraPresentation;

/// `v ↦ T·σ(v)`, the p-map of an abelian algebra in coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearOperator {
    field: FiniteField,
    t: Matrix,
}

impl SemilinearOperator {
    pub fn new(field: FiniteField, t: Matrix) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::AmbientMismatch { left: t.rows(), right: t.cols() });
        }
        Ok(SemilinearOperator { field, t })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.t
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vector {
        self.t.mul_vec(&self.field, &frobenius_vector(&self.field, v, 1)).expect("square operator")
    }

    /// `M_k = T σ(T) ⋯ σ^{k-1}(T)`, so that `S^k(v) = M_k σ^k(v)`.
    pub fn power_matrix(&self, k: u32) -> Matrix {
        let mut m = Matrix::identity(self.dim());
        for i in 0..k {
            m = m.mul(&self.field, &self.t.frobenius(&self.field, i as i64)).expect("square operator");
        }
        m
    }

    pub fn apply_power(&self, v: &[FieldElement], k: u32) -> Vector {
        self.power_matrix(k).mul_vec(&self.field, &frobenius_vector(&self.field, v, k as i64)).expect("square")
    }

    /// Image of `S^k`: the column space of `M_k`, since `σ^k` is onto.
    pub fn image_of_power(&self, k: u32) -> Subspace {
        semilinear_image(&self.field, &self.power_matrix(k), 0, &Subspace::full(self.dim())).expect("square")
    }

    /// Kernel of `S^k`: `σ^{-k}(ker M_k)`.
    pub fn kernel_of_power(&self, k: u32) -> Subspace {
        let f = &self.field;
        let ker = self.power_matrix(k).kernel(f);
        let back: Vec<Vector> = ker.basis().iter().map(|v| frobenius_vector(f, v, -(k as i64))).collect();
        Subspace::from_vectors(f, self.dim(), &back).expect("same ambient")
    }

    pub fn image_of(&self, s: &Subspace) -> Subspace {
        semilinear_image(&self.field, &self.t, 1, s).expect("same ambient")
    }

    /// `r_k = dim S^k(V)` for `k = 0, 1, …`, stopping at the first zero or
    /// the first repeated value.
    pub fn rank_profile(&self) -> Vec<usize> {
        let mut out = vec![self.dim()];
        let mut image = Subspace::full(self.dim());
        loop {
            if *out.last().unwrap() == 0 {
                return out;
            }
            image = self.image_of(&image);
            let r = image.dim();
            let repeated = r == *out.last().unwrap();
            out.push(r);
            if repeated {
                return out;
            }
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.rank_profile().last() == Some(&0)
    }
}

/// Exponents read off a rank profile of a nilpotent operator: the number of
/// cyclic summands of exponent at least `k` is `r_{k-1} - r_k`. Sorted
/// descending.
pub fn partition_from_rank_profile(profile: &[usize]) -> Vec<u32> {
    let at_least: Vec<usize> = profile.windows(2).map(|w| w[0] - w[1]).collect();
    let mut out = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        out.extend(std::iter::repeat_n(k as u32, exact));
    }
    out
}

/// `L = ⟨x_1⟩_p ⊕ ⋯ ⊕ ⟨x_m⟩_p` for a p-nilpotent abelian `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub generators: Vec<Vector>,
    /// Exponent of each generator, descending.
    pub exponents: Vec<u32>,
    pub summand_dims: Vec<usize>,
}

impl CyclicDecomposition {
    /// `x_1, x_1^[p], …, x_2, …`: a basis of `L` adapted to the summands.
    pub fn chain_basis(&self, op: &SemilinearOperator) -> Vec<Vector> {
        let mut out = Vec::new();
        for (x, &s) in self.generators.iter().zip(&self.exponents) {
            let mut v = x.clone();
            for _ in 0..s {
                out.push(v.clone());
                v = op.apply(&v);
            }
        }
        out
    }
}

fn require_abelian(p: &AlgebraPresentation) -> Result<()> {
    if p.is_abelian() {
        Ok(())
    } else {
        Err(Error::NotAbelian)
    }
}

/// The p-map of an abelian algebra as `T·σ`, column `i` of `T` being `b_i^[p]`.
pub fn as_semilinear(p: &AlgebraPresentation) -> Result<SemilinearOperator> {
    require_abelian(p)?;
    let cols: Vec<Vector> = (0..p.dim()).map(|i| p.basis_pmap(i).to_vec()).collect();
    SemilinearOperator::new(p.field().clone(), Matrix::from_columns(&cols, p.dim())?)
}

/// Rank profile of the p-map of an abelian algebra.
pub fn rank_profile(p: &AlgebraPresentation) -> Result<Vec<usize>> {
    Ok(as_semilinear(p)?.rank_profile())
}

/// Cyclic decomposition through the kernel filtration `K_s = ker S^s`.
/// Generators of exponent exactly `s` complete `K_{s-1} + S(K_{s+1})` to
/// `K_s`; their orbits then form a basis, which is checked before returning.
pub fn cyclic_decomposition(p: &AlgebraPresentation) -> Result<CyclicDecomposition> {
    let op = as_semilinear(p)?;
    decompose_operator(&op)
}

pub fn decompose_operator(op: &SemilinearOperator) -> Result<CyclicDecomposition> {
    let f = op.field();
    let n = op.dim();
    if !op.is_nilpotent() {
        return Err(Error::NotPNilpotent);
    }
    let mut kernels = vec![Subspace::zero(n)];
    while kernels.last().unwrap().dim() < n {
        kernels.push(op.kernel_of_power(kernels.len() as u32));
    }
    let top = kernels.len() - 1;
    let mut generators = Vec::new();
    let mut exponents = Vec::new();
    for s in (1..=top).rev() {
        let mut below = kernels[s - 1].clone();
        if s < top {
            below = below.sum(f, &op.image_of(&kernels[s + 1]))?;
        }
        for g in kernels[s].complement_basis(f, &below)? {
            generators.push(g);
            exponents.push(s as u32);
        }
    }
    let summand_dims = exponents.iter().map(|&s| s as usize).collect();
    let out = CyclicDecomposition { generators, exponents, summand_dims };
    let basis = out.chain_basis(op);
    if basis.len() != n || Subspace::from_vectors(f, n, &basis)?.dim() != n {
        return Err(Error::Validation("cyclic orbits do not form a basis".into()));
    }
    if out.exponents != partition_from_rank_profile(&op.rank_profile()) {
        return Err(Error::Validation("exponents disagree with the rank profile".into()));
    }
    Ok(out)
}

fn require_p_nilpotent(op: &SemilinearOperator) -> Result<()> {
    if op.is_nilpotent() {
        Ok(())
    } else {
        Err(Error::NotPNilpotent)
    }
}

/// Decide isomorphism of two abelian p-nilpotent algebras. When they are
/// isomorphic the returned matrix `W` sends `P`-coordinates to
/// `Q`-coordinates, matching generators of equal exponent, and has been
/// checked against both p-maps.
pub fn abelian_iso(p: &AlgebraPresentation, q: &AlgebraPresentation) -> Result<Option<Matrix>> {
    if p.field() != q.field() {
        return Err(Error::FieldMismatch);
    }
    let (sp, sq) = (as_semilinear(p)?, as_semilinear(q)?);
    require_p_nilpotent(&sp)?;
    require_p_nilpotent(&sq)?;
    if p.dim() != q.dim() {
        return Ok(None);
    }
    let (dp, dq) = (decompose_operator(&sp)?, decompose_operator(&sq)?);
    if dp.exponents != dq.exponents {
        return Ok(None);
    }
    let f = p.field();
    let n = p.dim();
    let bp = Matrix::from_columns(&dp.chain_basis(&sp), n)?;
    let bq = Matrix::from_columns(&dq.chain_basis(&sq), n)?;
    let w = bq.mul(f, &bp.inverse(f).ok_or_else(|| Error::Validation("chain basis is singular".into()))?)?;
    verify_abelian_witness(p, q, &w)?;
    Ok(Some(w))
}

/// `W` is invertible and `W(b^[p]) = (W b)^[p]` on every basis vector `b`.
/// Both sides are semilinear, so the basis check is complete.
pub fn verify_abelian_witness(p: &AlgebraPresentation, q: &AlgebraPresentation, w: &Matrix) -> Result<()> {
    let f = p.field();
    if w.inverse(f).is_none() {
        return Err(Error::Validation("witness is singular".into()));
    }
    for i in 0..p.dim() {
        let lhs = w.mul_vec(f, p.basis_pmap(i))?;
        let rhs = q.p_power(&w.column(i));
        if lhs != rhs {
            return Err(Error::Validation(format!("witness does not commute with the p-map on basis vector {i}")));
        }
    }
    Ok(())
}

/// `L = (image of S^n) ⊕ (kernel of S^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittingDecomposition {
    pub invertible: Subspace,
    pub nil: Subspace,
    /// The `F`-span of the fixed points `v^[p] = v` equals `invertible`,
    /// i.e. the invertible part has a toral basis.
    pub toral_basis: Option<Vec<Vector>>,
}

pub fn fitting_decomposition(p: &AlgebraPresentation) -> Result<FittingDecomposition> {
    let op = as_semilinear(p)?;
    let n = op.dim() as u32;
    let invertible = op.image_of_power(n);
    let nil = op.kernel_of_power(n);
    let fixed = fixed_points(&op);
    let span = Subspace::from_vectors(p.field(), p.dim(), &fixed)?;
    let toral_basis = if span == invertible { Some(fixed) } else { None };
    Ok(FittingDecomposition { invertible, nil, toral_basis })
}

/// Fixed points `S v = v`, `F`-linearly independent, spanning all of them
/// over `F`. They form an `F_p`-space, found by writing `S - 1` as an
/// `F_p`-linear map on `F^n ≅ F_p^{nk}`.
pub fn fixed_points(op: &SemilinearOperator) -> Vec<Vector> {
    let f = op.field();
    let n = op.dim();
    let k = f.degree() as usize;
    let p = f.characteristic();
    let prime = FiniteField::prime(p).expect("characteristic is prime");
    let flatten = |v: &[FieldElement]| -> Vec<FieldElement> {
        v.iter().flat_map(|&a| f.coeffs(a)).map(|c| prime.from_int(c as i64)).collect()
    };
    let mut m = Matrix::zeros(n * k, n * k);
    for i in 0..n {
        for j in 0..k {
            let mut digits = vec![0u32; k];
            digits[j] = 1;
            let mut e = vec![FieldElement::ZERO; n];
            e[i] = f.from_coeffs(&digits);
            let image = crate::exactla::sub(f, &op.apply(&e), &e);
            for (r, c) in flatten(&image).into_iter().enumerate() {
                m.set(r, i * k + j, c);
            }
        }
    }
    let ker = m.kernel(&prime);
    let mut span = Subspace::zero(n);
    let mut out = Vec::new();
    for v in ker.basis() {
        let lifted: Vector =
            v.chunks(k).map(|c| f.from_coeffs(&c.iter().map(|x| x.index()).collect::<Vec<_>>())).collect();
        if !is_zero(&lifted) && span.insert(f, &lifted).expect("same ambient") {
            out.push(lifted);
        }
    }
    out
}

/// Abelian algebra `⊕ ⟨x_i⟩_p` with `x_i` of the given exponents, each
/// summand on the basis `x_i, x_i^[p], …`.
pub fn from_exponents(field: &FiniteField, exponents: &[u32]) -> AlgebraPresentation {
    let n: usize = exponents.iter().map(|&s| s as usize).sum();
    let mut a = AlgebraPresentation::new(field.clone(), n);
    let mut offset = 0;
    for &s in exponents {
        for j in 0..s as usize - 1 {
            a.set_pmap(offset + j, a.unit(offset + j + 1)).expect("index in range");
        }
        offset += s as usize;
    }
    a
}
