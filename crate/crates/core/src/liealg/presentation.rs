use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{axpy, is_zero, unit_vector, zero_vector, FieldElement, FiniteField, Matrix, Vector};

/// A restricted Lie algebra given by structure constants on a basis.
///
/// The bracket table is stored in full (`n × n`); [`set_bracket`] keeps it
/// antisymmetric. Elements are plain coordinate vectors of length `n`.
///
/// [`set_bracket`]: AlgebraPresentation::set_bracket
#[derive(Clone)]
pub struct AlgebraPresentation {
    field: FiniteField,
    dim: usize,
    brackets: Vec<Vector>,
    pmap: Vec<Vector>,
    names: Vec<String>,
    weights: Option<Vec<usize>>,
}

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraPresentation({} over {}", self.dim, self.field)?;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.basis_bracket(i, j);
                if !is_zero(v) {
                    write!(f, ", [{},{}]={}", self.names[i], self.names[j], self.format_vector(v))?;
                }
            }
        }
        for i in 0..self.dim {
            if !is_zero(&self.pmap[i]) {
                write!(f, ", {}^p={}", self.names[i], self.format_vector(&self.pmap[i]))?;
            }
        }
        write!(f, ")")
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl AlgebraPresentation {
    /// Abelian algebra of dimension `dim` with zero p-map.
    pub fn new(field: FiniteField, dim: usize) -> Self {
        AlgebraPresentation {
            field,
            dim,
            brackets: vec![zero_vector(dim); dim * dim],
            pmap: vec![zero_vector(dim); dim],
            names: default_names(dim),
            weights: None,
        }
    }

    /// Build from a full bracket table (`brackets[i * n + j] = [b_i, b_j]`).
    /// Only shapes are checked; run [`validate`](Self::validate) for the axioms.
    pub fn from_tables(field: FiniteField, dim: usize, brackets: Vec<Vector>, pmap: Vec<Vector>) -> Result<Self> {
        if brackets.len() != dim * dim || pmap.len() != dim {
            return Err(Error::Malformed(format!(
                "expected {} brackets and {} p-images, got {} and {}",
                dim * dim,
                dim,
                brackets.len(),
                pmap.len()
            )));
        }
        if brackets.iter().chain(&pmap).any(|v| v.len() != dim) {
            return Err(Error::Malformed("structure vector of wrong length".into()));
        }
        let order = field.order();
        if brackets.iter().chain(&pmap).flatten().any(|c| c.index() >= order) {
            return Err(Error::Malformed("coefficient outside the field".into()));
        }
        Ok(AlgebraPresentation { field, dim, brackets, pmap, names: default_names(dim), weights: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::Malformed(format!("{} names for dimension {}", names.len(), self.dim)));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Malformed(format!("duplicate basis name {a}")));
            }
        }
        self.names = names;
        Ok(self)
    }

    pub(crate) fn with_weights(mut self, weights: Vec<usize>) -> Self {
        debug_assert_eq!(weights.len(), self.dim);
        self.weights = Some(weights);
        self
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::Malformed(format!("basis index {i} out of range for dimension {}", self.dim)));
        }
        Ok(())
    }

    fn check_vector(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::AmbientMismatch { left: v.len(), right: self.dim });
        }
        Ok(())
    }

    /// Set `[b_i, b_j] = v` and `[b_j, b_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vector) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_vector(&v)?;
        if i == j {
            return Err(Error::Malformed(format!("bracket of {} with itself", self.names[i])));
        }
        let neg = v.iter().map(|&c| self.field.neg(c)).collect();
        self.brackets[i * self.dim + j] = v;
        self.brackets[j * self.dim + i] = neg;
        Ok(())
    }

    pub fn set_pmap(&mut self, i: usize, v: Vector) -> Result<()> {
        self.check_index(i)?;
        self.check_vector(&v)?;
        self.pmap[i] = v;
        Ok(())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Weights attached by [`graded`](Self::graded); `None` for ordinary input.
    pub fn weights(&self) -> Option<&[usize]> {
        self.weights.as_deref()
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[FieldElement] {
        &self.brackets[i * self.dim + j]
    }

    pub fn basis_pmap(&self, i: usize) -> &[FieldElement] {
        &self.pmap[i]
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.dim)
    }

    pub fn unit(&self, i: usize) -> Vector {
        unit_vector(self.dim, i)
    }

    /// Bilinear extension of the basis brackets.
    pub fn bracket(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        let f = &self.field;
        let mut out = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                axpy(f, &mut out, f.mul(a, b), self.basis_bracket(i, j));
            }
        }
        out
    }

    /// Matrix of `ad(x) = [x, -]`; column `j` is `[x, b_j]`.
    pub fn ad_matrix(&self, x: &[FieldElement]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.bracket(x, &self.unit(j))).collect();
        Matrix::from_columns(&cols, self.dim).expect("columns have algebra dimension")
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|v| is_zero(v))
    }

    /// Same field and identical structure constants (names ignored).
    pub fn same_structure(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.brackets == other.brackets && self.pmap == other.pmap
    }

    /// Coordinates as a sum of named basis vectors, e.g. `x + 2*z`.
    pub fn format_vector(&self, v: &[FieldElement]) -> String {
        let mut terms = Vec::new();
        for (i, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c == FieldElement::ONE {
                terms.push(self.names[i].clone());
            } else {
                let s = self.field.format(c);
                if s.contains('+') {
                    terms.push(format!("({s})*{}", self.names[i]));
                } else {
                    terms.push(format!("{s}*{}", self.names[i]));
                }
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Check antisymmetry, the Jacobi identity on basis triples and
    /// `ad(b^[p]) = ad(b)^p` for every basis vector.
    pub fn validate(&self) -> ValidationReport {
        let f = &self.field;
        let n = self.dim;
        let mut violations = Vec::new();
        for i in 0..n {
            if !is_zero(self.basis_bracket(i, i)) {
                violations.push(Violation::Diagonal { i });
            }
            for j in i + 1..n {
                let sum = crate::exactla::add(f, self.basis_bracket(i, j), self.basis_bracket(j, i));
                if !is_zero(&sum) {
                    violations.push(Violation::Antisymmetry { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = self.bracket(&self.unit(i), self.basis_bracket(j, k));
                    let t2 = self.bracket(&self.unit(j), self.basis_bracket(k, i));
                    let t3 = self.bracket(&self.unit(k), self.basis_bracket(i, j));
                    axpy(f, &mut acc, FieldElement::ONE, &t2);
                    axpy(f, &mut acc, FieldElement::ONE, &t3);
                    if !is_zero(&acc) {
                        violations.push(Violation::Jacobi { i, j, k });
                    }
                }
            }
        }
        let p = f.characteristic() as u64;
        for i in 0..n {
            let lhs = self.ad_matrix(&self.pmap[i]);
            let rhs = self.ad_matrix(&self.unit(i)).pow(f, p).expect("square");
            if lhs != rhs {
                violations.push(Violation::AdCompatibility { i });
            }
        }
        ValidationReport { violations }
    }

    /// `self` if [`validate`](Self::validate) finds nothing, otherwise a
    /// [`Error::Validation`] naming the first few violations.
    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::Validation(report.describe(&self.names)))
        }
    }

    /// Block sum `self ⊕ other`, basis of `self` first.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (a, b) = (self.dim, other.dim);
        let n = a + b;
        let embed = |v: &[FieldElement], offset: usize| {
            let mut out = zero_vector(n);
            out[offset..offset + v.len()].copy_from_slice(v);
            out
        };
        let mut out = AlgebraPresentation::new(self.field.clone(), n);
        for i in 0..a {
            for j in 0..a {
                out.brackets[i * n + j] = embed(self.basis_bracket(i, j), 0);
            }
            out.pmap[i] = embed(self.basis_pmap(i), 0);
        }
        for i in 0..b {
            for j in 0..b {
                out.brackets[(a + i) * n + a + j] = embed(other.basis_bracket(i, j), a);
            }
            out.pmap[a + i] = embed(other.basis_pmap(i), a);
        }
        let mut names: Vec<String> = self.names.clone();
        for name in &other.names {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push('\'');
            }
            names.push(candidate);
        }
        out.with_names(names)
    }
}

/// One failed axiom, by basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Diagonal { i: usize },
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    AdCompatibility { i: usize },
}

impl Violation {
    pub fn describe(&self, names: &[String]) -> String {
        match *self {
            Violation::Diagonal { i } => format!("[{0},{0}] is nonzero", names[i]),
            Violation::Antisymmetry { i, j } => format!("[{},{}] is not antisymmetric", names[i], names[j]),
            Violation::Jacobi { i, j, k } => {
                format!("Jacobi identity fails on ({}, {}, {})", names[i], names[j], names[k])
            }
            Violation::AdCompatibility { i } => format!("ad({0}^[p]) differs from ad({0})^p", names[i]),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, names: &[String]) -> String {
        const SHOWN: usize = 5;
        let mut parts: Vec<String> = self.violations.iter().take(SHOWN).map(|v| v.describe(names)).collect();
        if self.violations.len() > SHOWN {
            parts.push(format!("and {} more", self.violations.len() - SHOWN));
        }
        parts.join("; ")
    }
}
