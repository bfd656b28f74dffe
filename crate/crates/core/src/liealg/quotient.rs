use super::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::exactla::{FieldElement, Matrix, Subspace, Vector};

/// A subspace verified to be closed under brackets with `L` and the p-map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedIdeal {
    space: Subspace,
}

impl RestrictedIdeal {
    pub fn new(parent: &AlgebraPresentation, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != parent.dim() {
            return Err(Error::AmbientMismatch { left: space.ambient_dim(), right: parent.dim() });
        }
        if !parent.is_ideal(&space) {
            return Err(Error::NotAnIdeal("not closed under brackets with the algebra".into()));
        }
        if !parent.is_p_closed(&space) {
            return Err(Error::NotAnIdeal("not closed under the p-map".into()));
        }
        Ok(RestrictedIdeal { space })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }
}

/// `L / I` on the basis vectors of `L` at the free columns of `I`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: AlgebraPresentation,
    ideal: Subspace,
    columns: Vec<usize>,
}

impl Quotient {
    /// Image of `x ∈ L` in the quotient's coordinates.
    pub fn project(&self, x: &[FieldElement]) -> Vector {
        let mut r = x.to_vec();
        self.ideal.reduce(self.algebra.field(), &mut r);
        self.columns.iter().map(|&c| r[c]).collect()
    }

    /// The representative in `L` of the `i`-th quotient basis vector.
    pub fn lift_basis(&self, i: usize) -> Vector {
        crate::exactla::unit_vector(self.ideal.ambient_dim(), self.columns[i])
    }

    /// Representative in `L` of a quotient element.
    pub fn lift(&self, y: &[FieldElement]) -> Vector {
        let mut out = crate::exactla::zero_vector(self.ideal.ambient_dim());
        for (&c, &a) in self.columns.iter().zip(y) {
            out[c] = a;
        }
        out
    }
}

impl AlgebraPresentation {
    pub fn quotient(&self, ideal: &RestrictedIdeal) -> Quotient {
        let space = ideal.space();
        let columns = space.free_columns();
        let m = columns.len();
        let f = self.field();
        let reduce = |v: &[FieldElement]| -> Vector {
            let mut r = v.to_vec();
            space.reduce(f, &mut r);
            columns.iter().map(|&c| r[c]).collect()
        };
        let mut out = AlgebraPresentation::new(f.clone(), m);
        for (a, &i) in columns.iter().enumerate() {
            for (b, &j) in columns.iter().enumerate().skip(a + 1) {
                out.set_bracket(a, b, reduce(self.basis_bracket(i, j))).expect("indices in range");
            }
            out.set_pmap(a, reduce(self.basis_pmap(i))).expect("index in range");
        }
        let names = columns.iter().map(|&c| self.names()[c].clone()).collect();
        let algebra = out.with_names(names).expect("names are distinct");
        Quotient { algebra, ideal: space.clone(), columns }
    }

    /// Convenience: verify `space` is a restricted ideal and divide by it.
    pub fn quotient_by(&self, space: &Subspace) -> Result<Quotient> {
        Ok(self.quotient(&RestrictedIdeal::new(self, space.clone())?))
    }

    /// The same algebra on the basis given by the columns of `g`.
    pub fn change_basis(&self, g: &Matrix) -> Result<AlgebraPresentation> {
        let n = self.dim();
        if g.rows() != n || g.cols() != n {
            return Err(Error::AmbientMismatch { left: g.rows(), right: n });
        }
        let f = self.field();
        let inv = g.inverse(f).ok_or_else(|| Error::Malformed("change of basis is singular".into()))?;
        let cols: Vec<Vector> = (0..n).map(|j| g.column(j)).collect();
        let coords = |v: &[FieldElement]| inv.mul_vec(f, v).expect("square");
        let mut out = AlgebraPresentation::new(f.clone(), n);
        for i in 0..n {
            for j in i + 1..n {
                out.set_bracket(i, j, coords(&self.bracket(&cols[i], &cols[j])))?;
            }
            out.set_pmap(i, coords(&self.p_power(&cols[i])))?;
        }
        out.with_names(self.names().to_vec())
    }
}
