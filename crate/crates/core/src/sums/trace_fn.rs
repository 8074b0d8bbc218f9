use num_complex::Complex64;

use super::character::Character;
use super::roots::root_complex;
use super::Domain;
use crate::error::{Error, Result};
use crate::field::{FiniteField, Polynomial};

/// Values of a trace function, indexed by canonical element index.
#[derive(Clone, Debug, PartialEq)]
pub enum Values {
    Integer(Vec<i64>),
    Complex(Vec<Complex64>),
}

impl Values {
    pub fn len(&self) -> usize {
        match self {
            Values::Integer(v) => v.len(),
            Values::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn complex_at(&self, i: usize) -> Complex64 {
        match self {
            Values::Integer(v) => Complex64::new(v[i] as f64, 0.0),
            Values::Complex(v) => v[i],
        }
    }
}

/// Where a trace function came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// `y ↦ #f⁻¹(y) − 1`.
    Kernel(Polynomial),
    Character,
    Pullback,
    Custom,
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::Kernel(_) => "kernel",
            Provenance::Character => "character",
            Provenance::Pullback => "pullback",
            Provenance::Custom => "custom",
        }
    }
}

/// A scalar function on `K` (affine domain) or `K^×`.
///
/// Stored for every element index; the entry at `0` is ignored on the
/// multiplicative domain.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceFunction {
    field: FiniteField,
    domain: Domain,
    values: Values,
    provenance: Provenance,
}

impl TraceFunction {
    pub fn new(field: &FiniteField, domain: Domain, values: Values, provenance: Provenance) -> Result<Self> {
        if values.len() as u64 != field.size() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a field of size {}",
                values.len(),
                field.size()
            )));
        }
        Ok(Self { field: field.clone(), domain, values, provenance })
    }

    pub fn integer(field: &FiniteField, domain: Domain, values: Vec<i64>) -> Result<Self> {
        Self::new(field, domain, Values::Integer(values), Provenance::Custom)
    }

    pub fn constant(field: &FiniteField, domain: Domain, c: i64) -> Self {
        Self::integer(field, domain, vec![c; field.size() as usize]).unwrap()
    }

    /// The values of a character as a trace function.
    pub fn from_character(chi: &Character) -> Self {
        let n = chi.modulus();
        let values = (0..chi.field().size())
            .map(|i| chi.exponent_at(i).map_or(Complex64::new(0.0, 0.0), |e| root_complex(n, e)))
            .collect();
        Self::new(chi.field(), chi.domain(), Values::Complex(values), Provenance::Character).unwrap()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.values, Values::Integer(_))
    }

    /// Element indices in the domain.
    pub fn domain_indices(&self) -> std::ops::Range<u64> {
        match self.domain {
            Domain::Affine => 0..self.field.size(),
            Domain::Multiplicative => 1..self.field.size(),
        }
    }

    pub fn integer_at(&self, idx: u64) -> Option<i64> {
        match &self.values {
            Values::Integer(v) => v.get(idx as usize).copied(),
            Values::Complex(_) => None,
        }
    }

    pub fn complex_at(&self, idx: u64) -> Complex64 {
        self.values.complex_at(idx as usize)
    }
}

/// `t(y) = #{x ∈ k_r : f(x) = y} − 1`, by a full scan of `k_r`.
pub fn kernel_trace_function(f: &Polynomial, domain: Domain) -> Result<TraceFunction> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::HypothesisViolation("f is constant".into()));
    }
    let field = f.base();
    let mut counts = vec![-1i64; field.size() as usize];
    for x in field.elements() {
        counts[f.eval(&x).index() as usize] += 1;
    }
    if domain == Domain::Multiplicative {
        counts[0] = 0;
    }
    TraceFunction::new(field, domain, Values::Integer(counts), Provenance::Kernel(f.clone()))
}
