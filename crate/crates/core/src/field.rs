//! Finite field arithmetic for GF(p^e) with explicit polynomial moduli.
//!
//! Fields are interned: constructing the same (characteristic, degree,
//! modulus) twice yields handles to one shared instance. Elements are value
//! types tagged with their field's instance id; using an element with a
//! different field instance panics.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {p}^{e} exceeds the supported maximum 2^16")]
    OrderTooLarge { p: u32, e: u32 },
    #[error("modulus must be a monic polynomial of degree {expected} with coefficients below {p}")]
    MalformedModulus { expected: u32, p: u32 },
    #[error("modulus polynomial is reducible")]
    ReducibleModulus,
    #[error("embedding is defined over the prime subfield only: asked for GF({base_p}^{base_e}) coordinates inside GF({ext_p}^{ext_e})")]
    UnsupportedEmbedding {
        base_p: u32,
        base_e: u32,
        ext_p: u32,
        ext_e: u32,
    },
    #[error("coordinate vector has length {got}, expected {expected}")]
    CoordinateLength { expected: usize, got: usize },
}

struct FieldRepr {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, little-endian coefficients, length e + 1.
    modulus: Vec<u32>,
    id: u32,
}

/// Handle to an interned finite field GF(p^e).
///
/// Elements are canonical integers in `0..order()`: the base-p digits of the
/// integer are the coefficients of the element over the polynomial basis
/// {1, alpha, ..., alpha^(e-1)}, where alpha is a root of the modulus.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

/// An element of a specific [`Field`] instance.
///
/// Identified by (field instance id, canonical integer). Elements of
/// distinct field instances never compare equal and cannot be combined.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: u32,
    value: u32,
}

impl FieldElement {
    /// Canonical integer representation in `0..q`.
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

struct Registry {
    interned: HashMap<(u32, u32, Vec<u32>), Field>,
    next_id: u32,
}

fn registry() -> &'static Mutex<Registry> {
    static REGISTRY: OnceLock<Mutex<Registry>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        Mutex::new(Registry {
            interned: HashMap::new(),
            next_id: 0,
        })
    })
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

/// Remainder of `a` divided by monic `b`, both little-endian over GF(p).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    debug_assert_eq!(*b.last().unwrap(), 1);
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - db;
            for (j, &bj) in b.iter().enumerate().take(db) {
                let cur = r[shift + j] as u64;
                let sub = (lead as u64 * bj as u64) % p as u64;
                r[shift + j] = ((cur + p as u64 - sub) % p as u64) as u32;
            }
        }
        r.pop();
    }
    r
}

fn poly_is_zero(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut divisor = vec![0u32; d + 1];
            let mut rest = n;
            for c in divisor.iter_mut().take(d) {
                *c = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            divisor[d] = 1;
            if poly_is_zero(&poly_rem(modulus, &divisor, p)) {
                return false;
            }
        }
    }
    true
}

/// First irreducible monic polynomial of degree e over GF(p), scanning the
/// non-leading coefficients as ascending base-p integers.
fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e);
    for n in 0..count {
        let mut candidate = vec![0u32; e as usize + 1];
        let mut rest = n;
        for c in candidate.iter_mut().take(e as usize) {
            *c = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        candidate[e as usize] = 1;
        if is_irreducible(&candidate, p) {
            return candidate;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

impl Field {
    /// GF(p^e) with the default modulus (the first irreducible monic
    /// polynomial of degree e in ascending coefficient order).
    pub fn new(p: u32, e: u32) -> Result<Field, FieldError> {
        Field::build(p, e, None)
    }

    /// GF(p^e) with an explicit modulus, little-endian coefficients of
    /// length e + 1, monic, irreducible for e >= 2.
    pub fn with_modulus(p: u32, e: u32, modulus: &[u32]) -> Result<Field, FieldError> {
        Field::build(p, e, Some(modulus.to_vec()))
    }

    /// The binary field GF(2).
    pub fn binary() -> Field {
        Field::new(2, 1).expect("GF(2) is always constructible")
    }

    fn build(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if e == 0 {
            return Err(FieldError::DegreeZero);
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::OrderTooLarge { p, e })?;
        let modulus = match modulus {
            Some(m) => {
                let well_formed = m.len() == e as usize + 1
                    && *m.last().unwrap() == 1
                    && m.iter().all(|&c| c < p);
                if !well_formed {
                    return Err(FieldError::MalformedModulus { expected: e, p });
                }
                if e >= 2 && !is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus);
                }
                m
            }
            None => default_modulus(p, e),
        };
        let mut reg = registry().lock().unwrap();
        let key = (p, e, modulus.clone());
        if let Some(f) = reg.interned.get(&key) {
            return Ok(f.clone());
        }
        let id = reg.next_id;
        reg.next_id += 1;
        let field = Field(Arc::new(FieldRepr {
            p,
            e,
            q,
            modulus,
            id,
        }));
        reg.interned.insert(key, field.clone());
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.0.e
    }

    /// Number of elements, p^e.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus polynomial, little-endian, length `extension_degree() + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn element(&self, value: u32) -> FieldElement {
        assert!(value < self.0.q, "value {value} is out of range for {self}");
        FieldElement {
            field: self.0.id,
            value,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.q).map(move |v| self.element(v))
    }

    fn check(&self, x: FieldElement) -> u32 {
        assert!(
            x.field == self.0.id,
            "element belongs to a different field instance than {self}"
        );
        x.value
    }

    fn digits(&self, value: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut digits = vec![0u32; self.0.e as usize];
        let mut rest = value;
        for d in digits.iter_mut() {
            *d = rest % p;
            rest /= p;
        }
        digits
    }

    fn pack_digits(&self, digits: &[u32]) -> u32 {
        let p = self.0.p as u64;
        let mut value = 0u64;
        for &d in digits.iter().rev() {
            value = value * p + d as u64;
        }
        value as u32
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a, b) = (self.check(a), self.check(b));
        let p = self.0.p;
        if self.0.e == 1 {
            return self.element(((a as u64 + b as u64) % p as u64) as u32);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
        self.element(self.pack_digits(&sum))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let a = self.check(a);
        let p = self.0.p;
        if self.0.e == 1 {
            return self.element((p - a) % p);
        }
        let da = self.digits(a);
        let neg: Vec<u32> = da.iter().map(|&x| (p - x) % p).collect();
        self.element(self.pack_digits(&neg))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a, b) = (self.check(a), self.check(b));
        let p = self.0.p as u64;
        if self.0.e == 1 {
            return self.element(((a as u64 * b as u64) % p) as u32);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.0.e as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let rem = poly_rem(&prod, &self.0.modulus, self.0.p);
        let mut digits = vec![0u32; self.0.e as usize];
        digits[..rem.len()].copy_from_slice(&rem);
        self.element(self.pack_digits(&digits))
    }

    pub fn pow(&self, a: FieldElement, mut n: u64) -> FieldElement {
        self.check(a);
        let mut base = a;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        assert!(self.check(a) != 0, "zero has no multiplicative inverse");
        self.pow(a, self.0.q as u64 - 2)
    }

    /// Coordinates of `x` over the prime subfield `base`, with respect to the
    /// polynomial basis {1, alpha, ..., alpha^(e-1)}. The result has length
    /// `extension_degree()`; the identity embeds as (1, 0, ..., 0).
    pub fn coordinates(
        &self,
        base: &Field,
        x: FieldElement,
    ) -> Result<Vec<FieldElement>, FieldError> {
        self.check_subfield(base)?;
        let v = self.check(x);
        Ok(self
            .digits(v)
            .into_iter()
            .map(|d| base.element(d))
            .collect())
    }

    /// Inverse of [`Field::coordinates`].
    pub fn from_coordinates(
        &self,
        base: &Field,
        coords: &[FieldElement],
    ) -> Result<FieldElement, FieldError> {
        self.check_subfield(base)?;
        if coords.len() != self.0.e as usize {
            return Err(FieldError::CoordinateLength {
                expected: self.0.e as usize,
                got: coords.len(),
            });
        }
        let digits: Vec<u32> = coords.iter().map(|&c| base.check(c)).collect();
        Ok(self.element(self.pack_digits(&digits)))
    }

    fn check_subfield(&self, base: &Field) -> Result<(), FieldError> {
        if base.0.p != self.0.p || base.0.e != 1 {
            return Err(FieldError::UnsupportedEmbedding {
                base_p: base.0.p,
                base_e: base.0.e,
                ext_p: self.0.p,
                ext_e: self.0.e,
            });
        }
        Ok(())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.e)
        }
    }
}
