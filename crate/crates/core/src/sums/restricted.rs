use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use super::character::FiberMaps;
use super::roots::CompensatedSum;
use super::trace_fn::{Provenance, TraceFunction, Values};
use super::{Domain, TOLERANCE};
use crate::error::{Error, Result};
use crate::field::{critical_values, ExcludedSet, FieldElement, GenericityMode, Polynomial, Tower};

/// Which fiber a restricted sum runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumMode {
    /// `Σ_{y ∈ k_r, Tr y = a}`
    Trace,
    /// `Σ_{y ∈ k_r^×, N y = a}`
    Norm,
}

impl SumMode {
    pub fn genericity(self) -> GenericityMode {
        match self {
            SumMode::Trace => GenericityMode::Additive,
            SumMode::Norm => GenericityMode::Multiplicative,
        }
    }

    pub fn domain(self) -> Domain {
        match self {
            SumMode::Trace => Domain::Affine,
            SumMode::Norm => Domain::Multiplicative,
        }
    }
}

/// Outcome of comparing a sum with its bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    Holds,
    Violated,
    /// The bound's hypotheses fail or `a` is not generic.
    NotAsserted,
}

pub(crate) fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// One restricted sum with its genericity flag and bound comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumReport {
    pub mode: SumMode,
    pub p: u64,
    pub n: usize,
    pub r: usize,
    pub q: u64,
    /// The polynomial when the summand is a kernel trace function.
    pub f: Option<String>,
    pub d: Option<usize>,
    /// `a ∈ k` in digit notation.
    pub a: String,
    pub a_index: u64,
    pub fiber_size: u64,
    #[serde(serialize_with = "ser_complex")]
    pub sum: Complex64,
    /// The sum itself when every summand is an integer.
    pub exact: Option<i64>,
    pub abs: f64,
    /// `None` when genericity could not be decided (e.g. `p | d`).
    pub generic: Option<bool>,
    /// Failed hypotheses of the bound, empty when all hold.
    pub failed_hypotheses: Vec<String>,
    pub bound: Option<f64>,
    pub status: BoundStatus,
}

impl SumReport {
    pub fn is_asserted(&self) -> bool {
        self.status != BoundStatus::NotAsserted
    }
}

/// `(d−1)^r q^{(r−1)/2}` for trace sums, `r(d−1)^r q^{(r−1)/2}` for norm sums.
pub fn sum_bound(mode: SumMode, d: usize, q: u64, r: usize) -> f64 {
    let base = ((d as f64) - 1.0).powi(r as i32) * (q as f64).powf((r as f64 - 1.0) / 2.0);
    match mode {
        SumMode::Trace => base,
        SumMode::Norm => r as f64 * base,
    }
}

/// Checks the hypotheses of the sum bound for `f` over `k_r`; returns the
/// list of failures and, when computable, the excluded set for `a`.
pub(crate) fn analyse(f: &Polynomial, tower: &Tower, mode: SumMode) -> Result<(Vec<String>, Option<ExcludedSet>)> {
    let d = f.degree().unwrap_or(0);
    let p = tower.base().p();
    let mut failed = Vec::new();
    if d == 0 {
        return Err(Error::HypothesisViolation("f is constant".into()));
    }
    if (d as u64).is_multiple_of(p) {
        failed.push(format!("p = {p} divides deg f = {d}"));
        return Ok((failed, None));
    }
    let cv = critical_values(f)?;
    if mode == SumMode::Norm {
        if !f.is_squarefree() {
            failed.push("f is not squarefree".into());
        }
        let m = cv.max_point_multiplicity();
        if m as u64 >= p {
            failed.push(format!("f' has a root of multiplicity {m} ≥ p"));
        }
    }
    let excluded = ExcludedSet::new(&cv, tower, mode.genericity())?;
    Ok((failed, Some(excluded)))
}

/// Precomputed data for evaluating many restricted sums of one function.
pub struct SumContext<'a> {
    t: &'a TraceFunction,
    tower: &'a Tower,
    maps: FiberMaps,
    analysis: [Option<(Vec<String>, Option<ExcludedSet>)>; 2],
}

impl<'a> SumContext<'a> {
    pub fn new(t: &'a TraceFunction, tower: &'a Tower) -> Result<Self> {
        if t.field() != tower.top() {
            return Err(Error::FieldMismatch);
        }
        let mut analysis = [None, None];
        if let Provenance::Kernel(f) = t.provenance() {
            for (slot, mode) in analysis.iter_mut().zip([SumMode::Trace, SumMode::Norm]) {
                *slot = Some(analyse(f, tower, mode)?);
            }
        }
        Ok(Self { t, tower, maps: FiberMaps::new(tower), analysis })
    }

    pub fn maps(&self) -> &FiberMaps {
        &self.maps
    }

    pub fn report(&self, mode: SumMode, a: &FieldElement) -> Result<SumReport> {
        let tower = self.tower;
        if a.field() != tower.base() {
            return Err(Error::FieldMismatch);
        }
        if mode == SumMode::Norm && a.is_zero() {
            return Err(Error::InvalidArgument("norm constraint needs a ≠ 0".into()));
        }
        let map = self.maps.for_domain(mode.domain());
        let target = a.index();
        let fiber = self
            .t
            .domain_indices()
            .filter(|&y| (mode == SumMode::Trace || y != 0) && map[y as usize] == target);
        let (sum, exact, fiber_size) = match self.t.values() {
            Values::Integer(v) => {
                let (s, n) = fiber.fold((0i64, 0u64), |(s, n), y| (s + v[y as usize], n + 1));
                (Complex64::new(s as f64, 0.0), Some(s), n)
            }
            Values::Complex(v) => {
                let mut acc = CompensatedSum::default();
                let mut n = 0;
                for y in fiber {
                    acc.add(v[y as usize]);
                    n += 1;
                }
                (acc.value(), None, n)
            }
        };
        let abs = sum.norm();
        let q = tower.q();
        let r = tower.r();
        let (f, d, generic, failed, bound, status) = match (self.t.provenance(), &self.analysis[mode as usize]) {
            (Provenance::Kernel(f), Some((failed, excluded))) => {
                let d = f.degree().unwrap();
                let generic = excluded.as_ref().map(|e| e.is_generic(a));
                let bound = sum_bound(mode, d, q, r);
                let status = match generic {
                    Some(true) if failed.is_empty() => {
                        if abs <= bound + TOLERANCE {
                            BoundStatus::Holds
                        } else {
                            BoundStatus::Violated
                        }
                    }
                    _ => BoundStatus::NotAsserted,
                };
                (Some(f.to_cli_string()), Some(d), generic, failed.clone(), Some(bound), status)
            }
            _ => (None, None, None, vec!["summand is not a kernel trace function".into()], None, BoundStatus::NotAsserted),
        };
        Ok(SumReport {
            mode,
            p: tower.base().p(),
            n: tower.base().degree(),
            r,
            q,
            f,
            d,
            a: a.to_string(),
            a_index: target,
            fiber_size,
            sum,
            exact,
            abs,
            generic,
            failed_hypotheses: failed,
            bound,
            status,
        })
    }

    /// Reports for every admissible `a ∈ k` (nonzero for norm sums).
    pub fn report_all(&self, mode: SumMode) -> Result<Vec<SumReport>> {
        let base = self.tower.base();
        base.elements().filter(|a| mode == SumMode::Trace || !a.is_zero()).map(|a| self.report(mode, &a)).collect()
    }
}

/// `Σ t(y)` over `Tr y = a` or `N y = a`, with genericity and bound status.
pub fn restricted_sum(t: &TraceFunction, tower: &Tower, mode: SumMode, a: &FieldElement) -> Result<SumReport> {
    SumContext::new(t, tower)?.report(mode, a)
}
