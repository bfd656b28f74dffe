//! Exact arithmetic over finite fields and dense linear algebra on top of it.

mod field;
mod matrix;
mod subspace;

pub use field::{is_irreducible, FieldElement, FiniteField, MAX_DEGREE, MAX_ORDER};
pub use matrix::Matrix;
pub use subspace::{rref, semilinear_image, Subspace};

use crate::error::{Error, Result};

/// Largest ambient dimension handled with dense rows (`3^10`).
pub const MAX_AMBIENT: usize = 59_049;

/// Coordinate vector over a [`FiniteField`].
pub type Vector = Vec<FieldElement>;

pub fn check_ambient(dim: u64) -> Result<()> {
    if dim > MAX_AMBIENT as u64 {
        return Err(Error::SizeLimit { what: "ambient dimension", value: dim, limit: MAX_AMBIENT as u64 });
    }
    Ok(())
}

/// `y += a * x`
#[inline]
pub fn axpy(f: &FiniteField, y: &mut [FieldElement], a: FieldElement, x: &[FieldElement]) {
    if a.is_zero() {
        return;
    }
    if a == FieldElement::ONE {
        for (yi, &xi) in y.iter_mut().zip(x) {
            if !xi.is_zero() {
                *yi = f.add(*yi, xi);
            }
        }
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = f.add(*yi, f.mul(a, xi));
        }
    }
}

pub fn scale(f: &FiniteField, a: FieldElement, x: &[FieldElement]) -> Vector {
    x.iter().map(|&xi| f.mul(a, xi)).collect()
}

pub fn add(f: &FiniteField, x: &[FieldElement], y: &[FieldElement]) -> Vector {
    x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect()
}

pub fn sub(f: &FiniteField, x: &[FieldElement], y: &[FieldElement]) -> Vector {
    x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect()
}

pub fn is_zero(x: &[FieldElement]) -> bool {
    x.iter().all(|c| c.is_zero())
}

pub fn zero_vector(n: usize) -> Vector {
    vec![FieldElement::ZERO; n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = FieldElement::ONE;
    v
}

/// Coordinatewise `σ^e`.
pub fn frobenius_vector(f: &FiniteField, x: &[FieldElement], e: i64) -> Vector {
    if f.degree() == 1 {
        return x.to_vec();
    }
    x.iter().map(|&a| f.frobenius(a, e)).collect()
}

/// Coefficients `c` with `Σ c_k vectors[k] = target`, or `None` when the
/// target lies outside the span. Works for dependent families too.
pub fn solve_combination(f: &FiniteField, vectors: &[Vector], target: &[FieldElement]) -> Option<Vector> {
    let n = target.len();
    let m = vectors.len();
    let mut aug = Subspace::zero(n + m);
    for (k, v) in vectors.iter().enumerate() {
        if v.len() != n {
            return None;
        }
        let mut row = v.clone();
        row.extend(unit_vector(m, k));
        aug.insert(f, &row).ok()?;
    }
    let mut w = target.to_vec();
    w.extend(zero_vector(m));
    aug.reduce(f, &mut w);
    if !is_zero(&w[..n]) {
        return None;
    }
    Some(w[n..].iter().map(|&c| f.neg(c)).collect())
}

/// Decode `index` as a vector of length `n` over `f`, first coordinate least
/// significant. Enumerating `0..q^n` visits every vector once.
pub fn vector_from_index(f: &FiniteField, n: usize, mut index: u64) -> Vector {
    let q = f.order() as u64;
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push(FieldElement((index % q) as u32));
        index /= q;
    }
    v
}

/// Uniformly random invertible `n × n` matrix, by rejection.
pub fn random_invertible<R: rand::Rng + ?Sized>(f: &FiniteField, n: usize, rng: &mut R) -> Matrix {
    let q = f.order();
    loop {
        let rows: Vec<Vector> = (0..n).map(|_| (0..n).map(|_| FieldElement(rng.gen_range(0..q))).collect()).collect();
        let m = Matrix::from_rows(rows, n).expect("rows have length n");
        if m.inverse(f).is_some() {
            return m;
        }
    }
}
