use std::fmt;

use super::{axpy, FieldElement, FiniteField, Vector};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|e| e.index()).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::AmbientMismatch { left: r.len(), right: cols });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::AmbientMismatch { left: c.len(), right: rows });
            }
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[FieldElement]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, f: &FiniteField, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::AmbientMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = vec![FieldElement::ZERO; other.cols];
            for k in 0..self.cols {
                axpy(f, &mut acc, self.get(r, k), other.row(k));
            }
            out.data[r * other.cols..(r + 1) * other.cols].copy_from_slice(&acc);
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, f: &FiniteField, v: &[FieldElement]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::AmbientMismatch { left: self.cols, right: v.len() });
        }
        let mut out = vec![FieldElement::ZERO; self.rows];
        for (c, &x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o = f.add(*o, f.mul(a, x));
                }
            }
        }
        Ok(out)
    }

    /// Entrywise `σ^e`.
    pub fn frobenius(&self, f: &FiniteField, e: i64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.frobenius(a, e)).collect() }
    }

    pub fn sub(&self, f: &FiniteField, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::AmbientMismatch { left: self.rows * self.cols, right: other.rows * other.cols });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        })
    }

    pub fn pow(&self, f: &FiniteField, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::AmbientMismatch { left: self.rows, right: self.cols });
        }
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base)?;
            }
            base = base.mul(f, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Null space `{ v : self · v = 0 }`.
    pub fn kernel(&self, f: &FiniteField) -> super::Subspace {
        let (rows, _) = super::rref(f, self);
        let mut out = super::Subspace::zero(self.cols);
        for free in rows.free_columns() {
            let mut v = super::unit_vector(self.cols, free);
            for (row, &pc) in rows.basis().iter().zip(rows.pivots()) {
                v[pc] = f.neg(row[free]);
            }
            out.insert(f, &v).expect("kernel vector has matrix width");
        }
        out
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        super::rref(f, self).1
    }

    /// Gauss–Jordan inverse; `None` when singular or not square.
    pub fn inverse(&self, f: &FiniteField) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vector> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut inv: Vec<Vector> = (0..n).map(|r| super::unit_vector(n, r)).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let s = f.inv(a[col][col]).ok()?;
            a[col] = super::scale(f, s, &a[col]);
            inv[col] = super::scale(f, s, &inv[col]);
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let c = f.neg(a[r][col]);
                    let (pa, pi) = (a[col].clone(), inv[col].clone());
                    axpy(f, &mut a[r], c, &pa);
                    axpy(f, &mut inv[r], c, &pi);
                }
            }
        }
        Matrix::from_rows(inv, n).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip_over_f3() {
        let f = FiniteField::prime(3).unwrap();
        let e = |v: i64| f.from_int(v);
        let m =
            Matrix::from_rows(vec![vec![e(1), e(2), e(0)], vec![e(0), e(1), e(1)], vec![e(2), e(0), e(1)]], 3).unwrap();
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv).unwrap(), Matrix::identity(3));
        let singular = Matrix::from_rows(vec![vec![e(1), e(1)], vec![e(2), e(2)]], 2).unwrap();
        assert!(singular.inverse(&f).is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = FiniteField::prime(3).unwrap();
        let e = |v: i64| f.from_int(v);
        let m = Matrix::from_rows(vec![vec![e(1), e(2), e(1)], vec![e(2), e(1), e(2)]], 3).unwrap();
        let k = m.kernel(&f);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(crate::exactla::is_zero(&m.mul_vec(&f, v).unwrap()));
        }
    }

    #[test]
    fn pow_and_transpose() {
        let f = FiniteField::prime(2).unwrap();
        let mut n = Matrix::zeros(3, 3);
        n.set(1, 0, f.one());
        n.set(2, 1, f.one());
        assert!(!n.pow(&f, 2).unwrap().is_zero());
        assert!(n.pow(&f, 3).unwrap().is_zero());
        assert_eq!(n.transpose().transpose(), n);
    }
}
