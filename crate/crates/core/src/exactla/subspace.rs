use super::{axpy, frobenius_vector, is_zero, scale, FieldElement, FiniteField, Matrix, Vector};
use crate::error::{Error, Result};

/// A subspace of `F^ambient` held as a reduced row-echelon basis.
///
/// Rows are sorted by pivot column, each pivot entry is 1 and every other row
/// is zero in that column. This form is unique, so two subspaces are equal
/// exactly when their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| super::unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors<I, V>(f: &FiniteField, ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[FieldElement]>,
    {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            s.insert(f, v.as_ref())?;
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns carrying no pivot; the matching unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.dim());
        let mut it = self.pivots.iter().peekable();
        for c in 0..self.ambient {
            if it.peek() == Some(&&c) {
                it.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.rows.clone(), self.ambient).expect("rows have ambient length")
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: len });
        }
        Ok(())
    }

    /// Subtract the basis combination matching `v` on pivot columns, leaving
    /// the canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, f: &FiniteField, v: &mut [FieldElement]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if !x.is_zero() {
                axpy(f, v, f.neg(x), row);
            }
        }
    }

    pub fn contains(&self, f: &FiniteField, v: &[FieldElement]) -> Result<bool> {
        self.check(v.len())?;
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        Ok(is_zero(&w))
    }

    /// Add `v` to the span, keeping the basis reduced. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, f: &FiniteField, v: &[FieldElement]) -> Result<bool> {
        self.check(v.len())?;
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        let Some(pivot) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let s = f.inv(w[pivot])?;
        let w = scale(f, s, &w);
        for row in self.rows.iter_mut() {
            let x = row[pivot];
            if !x.is_zero() {
                axpy(f, row, f.neg(x), &w);
            }
        }
        let pos = self.pivots.partition_point(|&c| c < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, w);
        Ok(true)
    }

    /// Coefficients of `v` in the echelon basis; `None` if `v` is outside.
    pub fn coordinates(&self, f: &FiniteField, v: &[FieldElement]) -> Option<Vector> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vector = self.pivots.iter().map(|&c| v[c]).collect();
        let mut w = v.to_vec();
        for (row, &a) in self.rows.iter().zip(&coords) {
            axpy(f, &mut w, f.neg(a), row);
        }
        is_zero(&w).then_some(coords)
    }

    pub fn sum(&self, f: &FiniteField, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient)?;
        let (mut big, small) = if self.dim() >= other.dim() { (self.clone(), other) } else { (other.clone(), self) };
        for v in &small.rows {
            big.insert(f, v)?;
        }
        Ok(big)
    }

    /// Lattice meet via the Zassenhaus construction: echelonise `[a | a]` and
    /// `[b | 0]`; rows with vanishing left half span the intersection.
    pub fn intersect(&self, f: &FiniteField, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient)?;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(n));
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let mut big = Subspace::zero(2 * n);
        for a in &self.rows {
            let mut v = a.clone();
            v.extend_from_slice(a);
            big.insert(f, &v)?;
        }
        for b in &other.rows {
            let mut v = b.clone();
            v.extend(std::iter::repeat_n(FieldElement::ZERO, n));
            big.insert(f, &v)?;
        }
        let mut out = Subspace::zero(n);
        for (row, &c) in big.rows.iter().zip(&big.pivots) {
            if c >= n {
                out.insert(f, &row[n..])?;
            }
        }
        Ok(out)
    }

    pub fn is_subspace_of(&self, f: &FiniteField, other: &Subspace) -> Result<bool> {
        self.check(other.ambient)?;
        for v in &self.rows {
            if !other.contains(f, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vectors of this basis that extend a basis of `sub` (which must lie
    /// inside `self`) to a basis of `self`, chosen greedily in echelon order.
    pub fn complement_basis(&self, f: &FiniteField, sub: &Subspace) -> Result<Vec<Vector>> {
        self.check(sub.ambient)?;
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in &self.rows {
            if acc.insert(f, v)? {
                out.push(v.clone());
            }
        }
        Ok(out)
    }

    /// Image under the linear map `m` (acting on column vectors).
    pub fn image(&self, f: &FiniteField, m: &Matrix) -> Result<Subspace> {
        semilinear_image(f, m, 0, self)
    }
}

/// Canonical row space of `m` together with its rank.
pub fn rref(f: &FiniteField, m: &Matrix) -> (Subspace, usize) {
    let s = Subspace::from_vectors(f, m.cols(), m.row_vectors()).expect("rows have matrix width");
    let r = s.dim();
    (s, r)
}

/// Span of `T · σ^e(v)` over a basis `v` of `a`. Because `σ` is bijective
/// the image of a subspace under a semilinear map is again a subspace, so the
/// basis images suffice.
pub fn semilinear_image(f: &FiniteField, t: &Matrix, e: i64, a: &Subspace) -> Result<Subspace> {
    if !t.is_square() || t.cols() != a.ambient_dim() {
        return Err(Error::AmbientMismatch { left: t.cols(), right: a.ambient_dim() });
    }
    let mut out = Subspace::zero(t.rows());
    for v in a.basis() {
        let w = t.mul_vec(f, &frobenius_vector(f, v, e))?;
        out.insert(f, &w)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::vector_from_index;
    use std::collections::BTreeSet;

    fn f2() -> FiniteField {
        FiniteField::prime(2).unwrap()
    }

    fn v(f: &FiniteField, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    /// Brute-force element set of a subspace over a small field.
    fn elements(f: &FiniteField, s: &Subspace) -> BTreeSet<Vec<u32>> {
        let n = s.ambient_dim();
        let q = f.order() as u64;
        (0..q.pow(n as u32))
            .map(|i| vector_from_index(f, n, i))
            .filter(|x| s.contains(f, x).unwrap())
            .map(|x| x.iter().map(|e| e.index()).collect())
            .collect()
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        let (s, r) = rref(&f, &Matrix::zeros(2, 3));
        assert_eq!(r, 0);
        assert!(s.is_zero());
        let (s, r) = rref(&f, &Matrix::identity(3));
        assert_eq!(r, 3);
        assert_eq!(s, Subspace::full(3));
        let m = Matrix::from_rows(vec![v(&f, &[1, 1, 0]), v(&f, &[0, 1, 1]), v(&f, &[1, 0, 1])], 3).unwrap();
        assert_eq!(rref(&f, &m).1, 2);
    }

    #[test]
    fn intersection_matches_enumeration() {
        let f = f2();
        let a = Subspace::from_vectors(&f, 3, [v(&f, &[1, 0, 0]), v(&f, &[0, 1, 0])]).unwrap();
        let b = Subspace::from_vectors(&f, 3, [v(&f, &[0, 1, 0]), v(&f, &[0, 0, 1])]).unwrap();
        let meet = a.intersect(&f, &b).unwrap();
        let expected: BTreeSet<_> = elements(&f, &a).intersection(&elements(&f, &b)).cloned().collect();
        assert_eq!(elements(&f, &meet), expected);
        assert_eq!(meet, Subspace::from_vectors(&f, 3, [v(&f, &[0, 1, 0])]).unwrap());
        assert_eq!(a.intersect(&f, &a).unwrap(), a);
        assert_eq!(a.sum(&f, &Subspace::zero(3)).unwrap(), a);
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let f = f2();
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(matches!(a.sum(&f, &b), Err(Error::AmbientMismatch { .. })));
        assert!(matches!(a.intersect(&f, &b), Err(Error::AmbientMismatch { .. })));
        assert!(matches!(a.contains(&f, &v(&f, &[1, 0, 0])), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn semilinear_image_examples() {
        let f4 = FiniteField::with_modulus(2, &[1, 1, 1]).unwrap();
        let u = f4.parse_element("u").unwrap();
        let u1 = f4.parse_element("u+1").unwrap();
        let a = Subspace::from_vectors(&f4, 2, [vec![u, f4.one()]]).unwrap();
        let img = semilinear_image(&f4, &Matrix::identity(2), 1, &a).unwrap();
        assert_eq!(img, Subspace::from_vectors(&f4, 2, [vec![u1, f4.one()]]).unwrap());
        assert!(semilinear_image(&f4, &Matrix::zeros(2, 2), 1, &a).unwrap().is_zero());
    }

    #[test]
    fn coordinates_and_complement() {
        let f = FiniteField::prime(3).unwrap();
        let a = Subspace::from_vectors(&f, 3, [v(&f, &[1, 2, 0]), v(&f, &[0, 1, 1])]).unwrap();
        let x = v(&f, &[2, 1, 0]);
        let c = a.coordinates(&f, &x).unwrap();
        let mut rebuilt = crate::exactla::zero_vector(3);
        for (row, &k) in a.basis().iter().zip(&c) {
            axpy(&f, &mut rebuilt, k, row);
        }
        assert_eq!(rebuilt, x);
        let sub = Subspace::from_vectors(&f, 3, [v(&f, &[1, 1, 2])]).unwrap();
        assert!(sub.is_subspace_of(&f, &a).unwrap());
        let comp = a.complement_basis(&f, &sub).unwrap();
        assert_eq!(comp.len(), 1);
        assert_eq!(a.free_columns(), vec![2]);
    }
}
