use std::fmt;

use num_integer::Integer;

use super::{Embedding, FieldElement, FiniteField};
use crate::error::{Error, Result};

/// Dense univariate polynomial over a finite field, lowest degree first,
/// with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    base: FiniteField,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(base: &FiniteField, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != base) {
            return Err(Error::FieldMismatch);
        }
        let mut p = Self { base: base.clone(), coeffs };
        p.trim();
        Ok(p)
    }

    /// Coefficients given by canonical element indices.
    pub fn from_indices(base: &FiniteField, idx: &[u64]) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= base.size()) {
            return Err(Error::InvalidArgument(format!("coefficient index {bad} out of range")));
        }
        Self::new(base, idx.iter().map(|&i| base.from_index(i)).collect())
    }

    pub fn zero(base: &FiniteField) -> Self {
        Self { base: base.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        let base = c.field().clone();
        let mut p = Self { base, coeffs: vec![c] };
        p.trim();
        p
    }

    /// `x - a`.
    pub fn linear_root(a: &FieldElement) -> Self {
        let base = a.field().clone();
        Self { coeffs: vec![-a, base.one()], base }
    }

    pub fn x(base: &FiniteField) -> Self {
        Self { base: base.clone(), coeffs: vec![base.zero(), base.one()] }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(self.base.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &self.base.from_int((i as u64 % self.base.p()) as i64) * c)
            .collect();
        let mut d = Self { base: self.base.clone(), coeffs };
        d.trim();
        d
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.base.zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
            .collect();
        let mut s = Self { base: self.base.clone(), coeffs };
        s.trim();
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-&self.base.one()))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut s = Self { base: self.base.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() };
        s.trim();
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.base);
        }
        let mut coeffs = vec![self.base.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        let mut s = Self { base: self.base.clone(), coeffs };
        s.trim();
        s
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = lead.inv().expect("nonzero leading coefficient");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(&self.base), self.clone()));
        }
        let mut quot = vec![self.base.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = &rem[top] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &(&c * d);
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        let mut q = Self { base: self.base.clone(), coeffs: quot };
        let mut r = Self { base: self.base.clone(), coeffs: rem };
        q.trim();
        r.trim();
        Ok((q, r))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut acc = Self::constant(self.base.one()).rem(m)?;
        let mut b = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m)?;
            }
            b = b.mul(&b).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Pushes coefficients through an embedding of the base field.
    pub fn map_coeffs(&self, emb: &Embedding) -> Result<Self> {
        if emb.sub() != &self.base {
            return Err(Error::FieldMismatch);
        }
        Self::new(emb.sup(), self.coeffs.iter().map(|c| emb.apply(c)).collect())
    }

    /// Multiplicity of `a` as a root (0 when not a root).
    pub fn root_multiplicity(&self, a: &FieldElement) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear_root(a);
        let mut cur = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = cur.div_rem(&lin).expect("nonzero divisor");
            if !r.is_zero() {
                return m;
            }
            cur = q;
            m += 1;
        }
    }

    /// No repeated factor over the algebraic closure.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).degree() == Some(0)
            }
        }
    }

    /// Inverse of [`to_cli_string`](Self::to_cli_string).
    pub fn parse(base: &FiniteField, s: &str) -> Result<Self> {
        let coeffs = s.split(',').map(|c| base.parse_element(c)).collect::<Result<Vec<_>>>()?;
        Self::new(base, coeffs)
    }

    /// CLI syntax: comma-separated base-p digit strings, lowest degree first.
    pub fn to_cli_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.to_cli_string())
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_repr()))
    }
}

/// Roots of a polynomial found by scanning a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    /// Distinct roots in canonical order.
    pub roots: Vec<FieldElement>,
    /// Multiplicity of each root, aligned with `roots`.
    pub multiplicities: Vec<usize>,
    /// Degree of `gcd(f, f')`; zero iff `f` is squarefree.
    pub derivative_gcd_degree: usize,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

/// All roots of `f` in `field`, which must contain `f`'s coefficient field.
pub fn poly_roots(f: &Polynomial, field: &FiniteField) -> Result<RootSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = if f.base() == field {
        f.clone()
    } else {
        f.map_coeffs(&Embedding::new(f.base(), field)?)?
    };
    let roots: Vec<FieldElement> = field.elements().filter(|x| g.eval(x).is_zero()).collect();
    let multiplicities = roots.iter().map(|r| g.root_multiplicity(r)).collect();
    let gcd_deg = if g.is_constant() { 0 } else { g.gcd(&g.derivative()).degree().unwrap_or(0) };
    Ok(RootSet { roots, multiplicities, derivative_gcd_degree: gcd_deg })
}

/// Degree over `f`'s base field of the smallest extension containing every
/// root of `f`: the lcm of the degrees of its irreducible factors, found by
/// distinct-degree factorization.
pub fn splitting_degree(f: &Polynomial) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let base = f.base();
    let q = base.size();
    let mut rest = f.monic();
    let x = Polynomial::x(base);
    let mut h = x.clone();
    let mut lcm = 1usize;
    let mut i = 0usize;
    while rest.degree().unwrap_or(0) > 0 {
        i += 1;
        if rest.degree().unwrap() < 2 * i {
            lcm = lcm.lcm(&rest.degree().unwrap());
            break;
        }
        h = h.pow_mod(q, &rest)?;
        let g = rest.gcd(&h.sub(&x));
        if g.degree().unwrap_or(0) > 0 {
            lcm = lcm.lcm(&i);
            // strip every copy of the degree-i factors
            loop {
                let common = rest.gcd(&g);
                if common.degree() == Some(0) {
                    break;
                }
                rest = rest.div_rem(&common)?.0;
            }
            h = h.rem(&rest)?;
        }
    }
    Ok(lcm)
}
