//! Finite fields `F_{p^k}` realised as `F_p[u]/(m(u))` for an explicitly
//! stored monic irreducible modulus `m`.
//!
//! Elements are packed into a `u32` whose base-`p` digits are the polynomial
//! coefficients, least significant first. Packing keeps vectors and matrices
//! dense and cheap to hash and compare; the ordering of packed values is the
//! ordering every canonical form in the crate is minimised against.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported extension degree. Irreducibility is verified by trial
/// factorisation, which stays cheap up to this bound.
pub const MAX_DEGREE: u32 = 8;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 24;

/// Fields at most this large get precomputed addition/multiplication tables.
const TABLE_ORDER: u32 = 256;

/// An element of a [`FiniteField`], stored as packed base-`p` coefficients.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The packed representation.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

struct Inner {
    p: u32,
    k: u32,
    order: u32,
    /// Monic modulus, `k + 1` coefficients, constant term first.
    modulus: Vec<u32>,
    tables: Option<Tables>,
    inverse: Vec<u32>,
}

/// The field `F_{p^k}`.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.inner.p, self.inner.k, self.inner.modulus)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{}", self.inner.p, self.inner.k)
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomial helpers over F_p, constant term first, no trailing zeros.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_pow(b[db], p - 2, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let idx = dr - db + i;
                let sub = (c as u64 * bi as u64 % p as u64) as u32;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_pow(b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// True iff the monic polynomial `m` (constant term first) is irreducible over
/// `F_p`, by trial division against every monic polynomial of degree at most
/// `deg(m)/2`.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem(m, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::with_modulus(p, &[0, 1])
    }

    /// `F_{p^k}` with the lexicographically least monic irreducible modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if k == 1 {
            return Self::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::InvalidField(format!("degree {k} outside 1..={MAX_DEGREE}")));
        }
        let count = (p as u64).pow(k);
        for code in 0..count {
            let mut m = Vec::with_capacity(k as usize + 1);
            let mut c = code;
            for _ in 0..k {
                m.push((c % p as u64) as u32);
                c /= p as u64;
            }
            m.push(1);
            if is_irreducible(&m, p) {
                return Self::with_modulus(p, &m);
            }
        }
        Err(Error::InvalidField(format!("no irreducible polynomial of degree {k} over F_{p}")))
    }

    /// `F_p[u]/(modulus)`; `modulus` lists coefficients constant term first and
    /// must be monic and irreducible.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 15 {
            return Err(Error::InvalidField(format!("characteristic {p} is not a supported prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        let k = (modulus.len() - 1) as u32;
        if k > MAX_DEGREE {
            return Err(Error::InvalidField(format!("degree {k} exceeds {MAX_DEGREE}")));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficient not reduced mod p".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        // every degree-1 modulus defines the same prime field
        let modulus: &[u32] = if k == 1 { &[0, 1] } else { modulus };
        let order = (p as u64).pow(k);
        if order > MAX_ORDER {
            return Err(Error::SizeLimit { what: "field order", value: order, limit: MAX_ORDER });
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let mut field = FiniteField {
            inner: Arc::new(Inner {
                p,
                k,
                order: order as u32,
                modulus: modulus.to_vec(),
                tables: None,
                inverse: Vec::new(),
            }),
        };
        let order = order as u32;
        let tables = if k > 1 && order <= TABLE_ORDER {
            let mut add = vec![0u32; (order * order) as usize];
            let mut mul = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    add[(a * order + b) as usize] = field.add_slow(a, b);
                    mul[(a * order + b) as usize] = field.mul_slow(a, b);
                }
            }
            Some(Tables { add, mul })
        } else {
            None
        };
        let inverse = if order <= 1 << 16 {
            let mut inv = vec![0u32; order as usize];
            for a in 1..order {
                inv[a as usize] = field.pow(FieldElement(a), order as u64 - 2).0;
            }
            inv
        } else {
            Vec::new()
        };
        let inner = Arc::get_mut(&mut field.inner).expect("fresh Arc");
        inner.tables = tables;
        inner.inverse = inverse;
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.order
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Element from its packed index; `None` when out of range.
    pub fn from_index(&self, index: u32) -> Option<FieldElement> {
        (index < self.inner.order).then_some(FieldElement(index))
    }

    /// Element from polynomial coefficients (constant term first), reduced
    /// modulo `p` and the modulus.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let p = self.inner.p;
        let reduced: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        let r =
            if reduced.len() > self.inner.k as usize { poly_rem(&reduced, &self.inner.modulus, p) } else { reduced };
        self.pack(&r)
    }

    /// The `k` coefficients of `a`, constant term first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let p = self.inner.p;
        let mut out = Vec::with_capacity(self.inner.k as usize);
        let mut v = a.0;
        for _ in 0..self.inner.k {
            out.push(v % p);
            v /= p;
        }
        out
    }

    fn pack(&self, coeffs: &[u32]) -> FieldElement {
        let p = self.inner.p;
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            v = v * p + c;
        }
        FieldElement(v)
    }

    /// All field elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.order).map(FieldElement)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.inner.k {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale = scale.wrapping_mul(p);
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p as u64;
        let k = self.inner.k as usize;
        let ca = self.coeffs(FieldElement(a));
        let cb = self.coeffs(FieldElement(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + ca[i] as u64 * cb[j] as u64) % p;
            }
        }
        let m = &self.inner.modulus;
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mi) in m.iter().enumerate().take(k) {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (p - c) * mi as u64) % p;
            }
        }
        let coeffs: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.pack(&coeffs).0
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.k == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= inner.p { s - inner.p } else { s });
        }
        match &inner.tables {
            Some(t) => FieldElement(t.add[(a.0 * inner.order + b.0) as usize]),
            None => FieldElement(self.add_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.k == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { inner.p - a.0 });
        }
        let p = inner.p;
        let mut v = a.0;
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..inner.k {
            let c = v % p;
            out += ((p - c) % p) * scale;
            v /= p;
            scale = scale.wrapping_mul(p);
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if inner.k == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % inner.p as u64) as u32);
        }
        match &inner.tables {
            Some(t) => FieldElement(t.mul[(a.0 * inner.order + b.0) as usize]),
            None => FieldElement(self.mul_slow(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.inner.inverse.is_empty() {
            return Ok(FieldElement(self.inner.inverse[a.0 as usize]));
        }
        Ok(self.pow(a, self.inner.order as u64 - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^{p^e}`; negative `e` applies the inverse automorphism.
    pub fn frobenius(&self, a: FieldElement, e: i64) -> FieldElement {
        let k = self.inner.k as i64;
        let steps = e.rem_euclid(k);
        let mut out = a;
        for _ in 0..steps {
            out = self.pow(out, self.inner.p as u64);
        }
        out
    }

    /// Human-readable form: an integer for prime fields, a polynomial in `u`
    /// otherwise.
    pub fn format(&self, a: FieldElement) -> String {
        if self.inner.k == 1 {
            return a.0.to_string();
        }
        let coeffs = self.coeffs(a);
        let mut terms = Vec::new();
        for (d, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{d}"),
            };
            let term = if d == 0 {
                c.to_string()
            } else if c == 1 {
                mono
            } else {
                format!("{c}{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Inverse of [`FiniteField::format`]; accepts `0`, `2`, `u`, `u+1`, `2u^2+u`.
    pub fn parse_element(&self, s: &str) -> Option<FieldElement> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let p = self.inner.p;
        let k = self.inner.k as usize;
        if s.bytes().all(|b| b.is_ascii_digit()) {
            let v: u64 = s.parse().ok()?;
            return (v < p as u64).then_some(FieldElement(v as u32));
        }
        let mut coeffs = vec![0u32; k.max(1)];
        for term in s.split('+') {
            if term.is_empty() {
                return None;
            }
            let (coef, deg) = match term.find('u') {
                None => (term.parse::<u64>().ok()?, 0usize),
                Some(pos) => {
                    let c = if pos == 0 { 1 } else { term[..pos].parse::<u64>().ok()? };
                    let rest = &term[pos + 1..];
                    let d = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse::<usize>().ok()? };
                    (c, d)
                }
            };
            if coef >= p as u64 || deg >= k {
                return None;
            }
            coeffs[deg] = (coeffs[deg] + coef as u32) % p;
        }
        Some(self.pack(&coeffs))
    }
}
