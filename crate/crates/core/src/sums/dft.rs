use num_complex::Complex64;
use serde::Serialize;

use super::character::{all_characters, pullback_with, Character, FiberMaps};
use super::restricted::{ser_complex, SumMode};
use super::roots::{root_complex, CompensatedSum, CyclotomicSum};
use super::trace_fn::{Provenance, TraceFunction, Values};
use super::{Domain, TOLERANCE};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Tower};

/// A function on the characters of `(K,+)` (indexed by the parameter `a`)
/// or of `K^×` (indexed by `c = 0, …, q − 2`).
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    field: FiniteField,
    domain: Domain,
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// `Σ_x χ(x) t(x)` over the character's group, exact until the final
/// conversion when `t` is integer-valued.
pub fn pair(chi: &Character, t: &TraceFunction) -> Complex64 {
    let indices = t.domain_indices().filter(|&i| chi.exponent_at(i).is_some());
    match t.values() {
        Values::Integer(v) => {
            let mut acc = CyclotomicSum::new(chi.modulus());
            for i in indices {
                acc.add(chi.exponent_at(i).unwrap(), v[i as usize]);
            }
            acc.to_complex()
        }
        Values::Complex(v) => {
            let n = chi.modulus();
            indices.map(|i| root_complex(n, chi.exponent_at(i).unwrap()) * v[i as usize]).collect::<CompensatedSum>().value()
        }
    }
}

/// `β̂(χ) = Σ_x χ(x) β(x)` for every character of `β`'s group.
pub fn dft(beta: &TraceFunction) -> Spectrum {
    let values = all_characters(beta.field(), beta.domain()).iter().map(|chi| pair(chi, beta)).collect();
    Spectrum { field: beta.field().clone(), domain: beta.domain(), values }
}

/// `β(x) = |G|⁻¹ Σ_χ χ̄(x) β̂(χ)`.
pub fn inverse_dft(spec: &Spectrum) -> TraceFunction {
    let chars = all_characters(spec.field(), spec.domain());
    let order = chars.len() as f64;
    let values = (0..spec.field().size())
        .map(|x| {
            if spec.domain == Domain::Multiplicative && x == 0 {
                return Complex64::new(0.0, 0.0);
            }
            let s = chars
                .iter()
                .zip(&spec.values)
                .map(|(chi, b)| root_complex(chi.modulus(), chi.modulus() - chi.exponent_at(x).unwrap()) * b)
                .collect::<CompensatedSum>()
                .value();
            s / order
        })
        .collect();
    TraceFunction::new(spec.field(), spec.domain(), Values::Complex(values), Provenance::Custom).unwrap()
}

/// Fiber sums `β(x) = Σ_{Tr y = x} t(y)` (or over `N y = x`, `y ≠ 0`) on `k`.
pub fn fiber_sums(t: &TraceFunction, tower: &Tower, mode: SumMode, maps: &FiberMaps) -> Result<TraceFunction> {
    if t.field() != tower.top() {
        return Err(Error::FieldMismatch);
    }
    let map = maps.for_domain(mode.domain());
    let base = tower.base();
    let ys = t.domain_indices().filter(|&y| mode == SumMode::Trace || y != 0);
    let values = match t.values() {
        Values::Integer(v) => {
            let mut beta = vec![0i64; base.size() as usize];
            for y in ys {
                beta[map[y as usize] as usize] += v[y as usize];
            }
            Values::Integer(beta)
        }
        Values::Complex(v) => {
            let mut acc = vec![CompensatedSum::default(); base.size() as usize];
            for y in ys {
                acc[map[y as usize] as usize].add(v[y as usize]);
            }
            Values::Complex(acc.iter().map(|s| s.value()).collect())
        }
    };
    TraceFunction::new(base, mode.domain(), values, Provenance::Custom)
}

/// One character's two sides of the finite Fubini identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FubiniEntry {
    /// `a` (additive) or `c` (multiplicative) of the base character.
    pub character: u64,
    #[serde(serialize_with = "ser_complex")]
    pub dft_side: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub pullback_side: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FubiniReport {
    pub mode: SumMode,
    pub p: u64,
    pub n: usize,
    pub r: usize,
    pub characters: usize,
    pub max_error: f64,
    pub holds: bool,
    pub entries: Vec<FubiniEntry>,
}

/// For every character `χ` of `k` (or `k^×`), compares `β̂(χ)` with
/// `Σ_y χ(N y) t(y)` (resp. `Σ_y ψ(Tr y) t(y)`).
pub fn fubini_check(t: &TraceFunction, tower: &Tower, mode: SumMode) -> Result<FubiniReport> {
    let maps = FiberMaps::new(tower);
    let beta = fiber_sums(t, tower, mode, &maps)?;
    // restrict t to the summation domain of the pulled-back side
    let t_dom = if mode == SumMode::Norm && t.domain() == Domain::Affine {
        let values = match t.values() {
            Values::Integer(v) => {
                let mut v = v.clone();
                v[0] = 0;
                Values::Integer(v)
            }
            Values::Complex(v) => {
                let mut v = v.clone();
                v[0] = Complex64::new(0.0, 0.0);
                Values::Complex(v)
            }
        };
        TraceFunction::new(t.field(), Domain::Multiplicative, values, Provenance::Custom)?
    } else {
        t.clone()
    };
    let mut entries = Vec::new();
    let mut max_error = 0f64;
    for (i, chi) in all_characters(tower.base(), mode.domain()).iter().enumerate() {
        let lhs = pair(chi, &beta);
        let rhs = pair(&pullback_with(chi, tower, &maps)?, &t_dom);
        max_error = max_error.max((lhs - rhs).norm());
        entries.push(FubiniEntry { character: i as u64, dft_side: lhs, pullback_side: rhs });
    }
    Ok(FubiniReport {
        mode,
        p: tower.base().p(),
        n: tower.base().degree(),
        r: tower.r(),
        characters: entries.len(),
        max_error,
        holds: max_error <= TOLERANCE,
        entries,
    })
}
