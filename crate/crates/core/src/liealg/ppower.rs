use std::fmt;

use super::AlgebraPresentation;
use crate::exactla::{axpy, is_zero, scale, zero_vector, FieldElement, Vector};

/// Least `s` with `x^[p^s] = 0`, or `Infinite` when no such `s` exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    pub fn finite(self) -> Option<u32> {
        match self {
            Exponent::Finite(s) => Some(s),
            Exponent::Infinite => None,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(s) => write!(f, "{s}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

impl AlgebraPresentation {
    /// `Σ_{i=1}^{p-1} s_i(x, y)`, the correction in
    /// `(x+y)^[p] = x^[p] + y^[p] + Σ s_i(x, y)`.
    ///
    /// `i·s_i` is the coefficient of `λ^{i-1}` in `ad(λx+y)^{p-1}(x)`.
    pub fn jacobson_correction(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        let f = self.field();
        let p = f.characteristic() as usize;
        let mut poly: Vec<Vector> = vec![x.to_vec()];
        for _ in 0..p - 1 {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                if is_zero(c) {
                    continue;
                }
                let by = self.bracket(y, c);
                axpy(f, &mut next[d], FieldElement::ONE, &by);
                let bx = self.bracket(x, c);
                axpy(f, &mut next[d + 1], FieldElement::ONE, &bx);
            }
            poly = next;
        }
        let mut out = self.zero();
        for i in 1..p {
            let inv_i = f.inv(f.from_int(i as i64)).expect("i < p is a unit");
            axpy(f, &mut out, inv_i, &poly[i - 1]);
        }
        out
    }

    /// `x^[p]`, folding the basis expansion of `x` left to right.
    pub fn p_power(&self, x: &[FieldElement]) -> Vector {
        let f = self.field();
        let mut acc = zero_vector(self.dim());
        let mut acc_p = zero_vector(self.dim());
        let mut started = false;
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let y = scale(f, a, &self.unit(i));
            let y_p = scale(f, f.frobenius(a, 1), self.basis_pmap(i));
            if started {
                let corr = self.jacobson_correction(&acc, &y);
                axpy(f, &mut acc_p, FieldElement::ONE, &corr);
            }
            axpy(f, &mut acc_p, FieldElement::ONE, &y_p);
            axpy(f, &mut acc, FieldElement::ONE, &y);
            started = true;
        }
        acc_p
    }

    /// `x^[p^e]`.
    pub fn p_power_iter(&self, x: &[FieldElement], e: u32) -> Vector {
        let mut v = x.to_vec();
        for _ in 0..e {
            if is_zero(&v) {
                break;
            }
            v = self.p_power(&v);
        }
        v
    }

    /// The p-powers of `x` span a p-closed abelian subalgebra of dimension at
    /// most `n` on which the p-map acts semilinearly, so a p-nilpotent `x`
    /// satisfies `x^[p^n] = 0`.
    pub fn exponent(&self, x: &[FieldElement]) -> Exponent {
        let mut v = x.to_vec();
        for s in 0..=self.dim() {
            if is_zero(&v) {
                return Exponent::Finite(s as u32);
            }
            v = self.p_power(&v);
        }
        Exponent::Infinite
    }
}
