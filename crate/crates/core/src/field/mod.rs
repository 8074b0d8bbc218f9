//! Exact arithmetic in GF(p^n) with canonical moduli, tower embeddings,
//! Frobenius, relative trace and norm, and the polynomial machinery used to
//! locate critical values.

mod critical;
mod embedding;
pub(crate) mod gfp;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use critical::{critical_values, critical_values_in, genericity_check, CriticalValues, ExcludedSet, GenericityMode};
pub use embedding::{frobenius, rel_norm, rel_trace, Embedding, Tower};
pub use poly::{poly_roots, splitting_degree, Polynomial, RootSet};

/// Default cap on the number of elements of any field we are willing to build.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The finite field GF(p^n) = GF(p)[x] / (modulus).
///
/// Cheap to clone. Two fields compare equal when they share `p` and the
/// modulus, which for fields built by [`make_field`] means equal `(p, n)`.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

struct FieldData {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
    size: u64,
    budget: u64,
}

/// Builds GF(p^n) with the canonical modulus and the default budget.
pub fn make_field(p: u64, n: usize) -> Result<FiniteField> {
    FiniteField::with_budget(p, n, DEFAULT_BUDGET)
}

fn checked_size(p: u64, n: usize, budget: u64) -> Result<u64> {
    let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(size as u64)
}

impl FiniteField {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        make_field(p, n)
    }

    /// GF(p^n) with the lexicographically smallest monic irreducible modulus.
    pub fn with_budget(p: u64, n: usize, budget: u64) -> Result<Self> {
        if !gfp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let size = checked_size(p, n, budget)?;
        let modulus = gfp::smallest_irreducible(p, n);
        Ok(Self(Arc::new(FieldData { p, n, modulus, size, budget })))
    }

    /// GF(p)[x]/(modulus) for an explicit monic irreducible modulus.
    pub fn with_modulus(p: u64, modulus: Vec<u64>, budget: u64) -> Result<Self> {
        if !gfp::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        gfp::trim(&mut modulus);
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 || !gfp::is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus);
        }
        let n = modulus.len() - 1;
        let size = checked_size(p, n, budget)?;
        Ok(Self(Arc::new(FieldData { p, n, modulus, size, budget })))
    }

    /// Another canonical field of the same characteristic and budget.
    pub fn sibling(&self, n: usize) -> Result<Self> {
        Self::with_budget(self.p(), n, self.budget())
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn budget(&self) -> u64 {
        self.0.budget
    }

    /// Monic modulus, little-endian, length `degree + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// True when `self` embeds in `other` (same characteristic, degree divides).
    pub fn is_subfield_of(&self, other: &FiniteField) -> bool {
        self.p() == other.p() && other.degree().is_multiple_of(self.degree())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: vec![0; self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer under Z -> GF(p) -> GF(p^n).
    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = v.rem_euclid(self.p() as i64) as u64;
        e
    }

    /// The class of `x`; a generator of the field over GF(p) (not necessarily
    /// of the multiplicative group).
    pub fn gen(&self) -> FieldElement {
        let mut e = self.zero();
        if self.degree() == 1 {
            e.coeffs[0] = (self.p() - self.modulus()[0]) % self.p();
        } else {
            e.coeffs[1] = 1;
        }
        e
    }

    /// Element from base-p coefficients; shorter inputs are zero-padded.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.degree()
            )));
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c % self.p();
        }
        Ok(e)
    }

    /// Parses the display syntax: base-p digits, least significant first,
    /// separated by `:` when `p > 10`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an element of GF({}^{}): {s:?}", self.p(), self.degree()));
        let digits: Vec<u64> = if self.p() <= 10 {
            s.chars().map(|c| c.to_digit(10).map(u64::from).ok_or_else(bad)).collect::<Result<_>>()?
        } else {
            s.split(':').map(|d| d.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        if digits.is_empty() || digits.len() > self.degree() || digits.iter().any(|&d| d >= self.p()) {
            return Err(bad());
        }
        let mut coeffs = digits;
        coeffs.resize(self.degree(), 0);
        self.element(&coeffs)
    }

    /// Element with canonical index `idx` (base-p digits, little-endian).
    pub fn from_index(&self, mut idx: u64) -> FieldElement {
        debug_assert!(idx < self.size());
        let p = self.p();
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = idx % p;
            idx /= p;
        }
        e
    }

    /// All elements in canonical (index) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(move |i| self.from_index(i))
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.size()).map(move |i| self.from_index(i))
    }

    fn reduce(&self, mut prod: Vec<u64>) -> Vec<u64> {
        let p = self.p();
        let n = self.degree();
        let m = self.modulus();
        for top in (n..prod.len()).rev() {
            let c = prod[top] % p;
            if c == 0 {
                continue;
            }
            let shift = top - n;
            for (i, &mi) in m.iter().enumerate().take(n) {
                prod[shift + i] = (prod[shift + i] + (p - mi) * c) % p;
            }
            prod[top] = 0;
        }
        prod.truncate(n);
        prod.iter_mut().for_each(|c| *c %= p);
        prod
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus={:?})", self.p(), self.degree(), self.modulus())
    }
}

/// An element of a [`FiniteField`]: little-endian coefficients in the
/// power basis of the modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FiniteField,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Canonical index `sum c_i p^i`; also the enumeration order.
    pub fn index(&self) -> u64 {
        let p = self.field.p();
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    /// True when the element lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.field.size() - 2))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut ord = self.field.size() - 1;
        for l in gfp::prime_factors(ord) {
            while ord.is_multiple_of(l) && self.pow(ord / l).is_one() {
                ord /= l;
            }
        }
        Some(ord)
    }

    /// Absolute trace to GF(p), as a residue.
    pub fn absolute_trace(&self) -> u64 {
        let p = self.field.p();
        let mut acc = self.clone();
        let mut conj = self.clone();
        for _ in 1..self.field.degree() {
            conj = conj.pow(p);
            acc = &acc + &conj;
        }
        debug_assert!(acc.is_prime_field());
        acc.coeffs[0]
    }

    fn assert_same_field(&self, other: &FieldElement) {
        assert!(self.field == other.field, "field mismatch: {:?} vs {:?}", self.field, other.field);
    }

    pub fn to_repr(&self) -> ElementRepr {
        ElementRepr { p: self.field.p(), n: self.field.degree(), coeffs: self.coeffs.clone() }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl fmt::Display for FieldElement {
    /// Base-p digits, least significant first (the CLI's element syntax).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut digits: Vec<u64> = self.coeffs.clone();
        while digits.len() > 1 && digits.last() == Some(&0) {
            digits.pop();
        }
        if self.field.p() <= 10 {
            for d in digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
            write!(f, "{}", parts.join(":"))
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.p();
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + b) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.p();
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + p - b) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.field.p();
        let n = self.field.degree();
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        FieldElement { field: self.field.clone(), coeffs: self.field.reduce(prod) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p();
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Wire format of a field element: `{"p":…, "n":…, "coeffs":[…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRepr {
    pub p: u64,
    pub n: usize,
    pub coeffs: Vec<u64>,
}

impl ElementRepr {
    /// Resolves against the canonical field GF(p^n).
    pub fn resolve(&self) -> Result<FieldElement> {
        let field = make_field(self.p, self.n)?;
        if self.coeffs.len() != self.n || self.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!("malformed element {:?}", self.coeffs)));
        }
        field.element(&self.coeffs)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}
