use crate::env::PbwAlgebra;
use crate::exactla::{is_zero, unit_vector, zero_vector, FieldElement, FiniteField, Subspace, Vector};
use crate::liealg::AlgebraPresentation;

/// Where a restricted closure can be computed: a Lie algebra, or `u(L)`
/// with commutators and p-th powers.
pub trait Realization {
    fn field(&self) -> &FiniteField;
    fn ambient(&self) -> usize;
    fn bracket(&self, a: &[FieldElement], b: &[FieldElement]) -> Vector;
    fn p_power(&self, a: &[FieldElement]) -> Vector;
}

impl Realization for AlgebraPresentation {
    fn field(&self) -> &FiniteField {
        AlgebraPresentation::field(self)
    }

    fn ambient(&self) -> usize {
        self.dim()
    }

    fn bracket(&self, a: &[FieldElement], b: &[FieldElement]) -> Vector {
        AlgebraPresentation::bracket(self, a, b)
    }

    fn p_power(&self, a: &[FieldElement]) -> Vector {
        AlgebraPresentation::p_power(self, a)
    }
}

/// `u(L)` viewed as a restricted Lie algebra.
pub struct EnvRealization<'a>(pub &'a PbwAlgebra);

impl Realization for EnvRealization<'_> {
    fn field(&self) -> &FiniteField {
        self.0.field()
    }

    fn ambient(&self) -> usize {
        self.0.dim()
    }

    fn bracket(&self, a: &[FieldElement], b: &[FieldElement]) -> Vector {
        self.0.commutator(a, b)
    }

    fn p_power(&self, a: &[FieldElement]) -> Vector {
        self.0.pow(a, self.0.field().characteristic() as u64)
    }
}

pub(crate) const GENERATOR: u32 = u32::MAX;
pub(crate) const NEW: u32 = u32::MAX - 1;
pub(crate) const RELATION: u32 = u32::MAX - 2;
const OVERFLOW: u32 = u32::MAX - 3;

/// Restricted closure of a growing list of generators.
///
/// Basis element `k` is processed after all earlier ones: its brackets with
/// each earlier element, then its p-power. A value outside the current span
/// becomes a new basis element, otherwise its coordinates are recorded.
/// The resulting trace depends only on the structure constants seen along
/// the way, so isomorphic inputs produce identical traces, and an identical
/// trace pins down the structure constants on the closure basis.
pub struct Closure<'a, R: Realization> {
    r: &'a R,
    capacity: usize,
    basis: Vec<Vector>,
    /// Rows `[v | e_k]`, for coordinates with respect to `basis`.
    aug: Subspace,
    next: usize,
    trace: Vec<u32>,
    overflow: bool,
}

impl<R: Realization> Clone for Closure<'_, R> {
    fn clone(&self) -> Self {
        Closure {
            r: self.r,
            capacity: self.capacity,
            basis: self.basis.clone(),
            aug: self.aug.clone(),
            next: self.next,
            trace: self.trace.clone(),
            overflow: self.overflow,
        }
    }
}

impl<'a, R: Realization> Closure<'a, R> {
    /// `capacity` bounds the closure dimension; exceeding it stops the
    /// closure and marks the trace.
    pub fn new(r: &'a R, capacity: usize) -> Self {
        Closure {
            r,
            capacity,
            basis: Vec::new(),
            aug: Subspace::zero(r.ambient() + capacity),
            next: 0,
            trace: Vec::new(),
            overflow: false,
        }
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn trace(&self) -> &[u32] {
        &self.trace
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn overflowed(&self) -> bool {
        self.overflow
    }

    /// Coordinates with respect to the closure basis, if `v` is in its span.
    pub fn coords(&self, v: &[FieldElement]) -> Option<Vector> {
        let f = self.r.field();
        let n = self.r.ambient();
        let mut w = v.to_vec();
        w.extend(zero_vector(self.capacity));
        self.aug.reduce(f, &mut w);
        if !is_zero(&w[..n]) {
            return None;
        }
        Some(w[n..n + self.basis.len()].iter().map(|&c| f.neg(c)).collect())
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.coords(v).is_some()
    }

    fn push(&mut self, v: Vector) {
        let k = self.basis.len();
        let mut row = v.clone();
        row.extend(unit_vector(self.capacity, k));
        self.aug.insert(self.r.field(), &row).expect("row has augmented width");
        self.basis.push(v);
    }

    fn record(&mut self, v: Vector) {
        match self.coords(&v) {
            Some(c) => {
                self.trace.push(RELATION);
                self.trace.extend(c.iter().map(|e| e.index()));
            }
            None if self.basis.len() < self.capacity => {
                self.trace.push(NEW);
                self.push(v);
            }
            None => {
                self.trace.push(OVERFLOW);
                self.overflow = true;
            }
        }
    }

    /// Adjoin a generator and close. Returns `false`, leaving the closure
    /// untouched, if `v` already lies in the span.
    pub fn add_generator(&mut self, v: &[FieldElement]) -> bool {
        if self.overflow || self.contains(v) || self.basis.len() >= self.capacity {
            return false;
        }
        self.trace.push(GENERATOR);
        self.push(v.to_vec());
        while self.next < self.basis.len() && !self.overflow {
            let k = self.next;
            for j in 0..k {
                let c = self.r.bracket(&self.basis[j], &self.basis[k]);
                self.record(c);
                if self.overflow {
                    return true;
                }
            }
            let c = self.r.p_power(&self.basis[k]);
            self.record(c);
            self.next += 1;
        }
        true
    }
}

/// Positions in `trace` where each generator's segment ends.
pub(crate) fn segment_ends(trace: &[u32]) -> Vec<usize> {
    let mut starts: Vec<usize> = trace.iter().enumerate().filter(|(_, &t)| t == GENERATOR).map(|(i, _)| i).collect();
    starts.remove(0);
    starts.push(trace.len());
    starts
}

/// Compact text form of a trace.
pub(crate) fn encode_trace(trace: &[u32]) -> String {
    let mut s = String::with_capacity(trace.len());
    for &t in trace {
        match t {
            GENERATOR => s.push('g'),
            NEW => s.push('n'),
            RELATION => s.push('r'),
            OVERFLOW => s.push('!'),
            c if c < 10 => s.push(char::from(b'0' + c as u8)),
            c => {
                s.push('(');
                s.push_str(&c.to_string());
                s.push(')');
            }
        }
    }
    s
}
