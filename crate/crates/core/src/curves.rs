//! Point counts on `y^q − y = f(x)` and `y^{q−1} = f(x)` over `k_r`, the
//! identities relating them to restricted sums of the kernel trace function,
//! the resulting bounds, and the constants `C_{d,r}`.

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElement, Polynomial, Tower};
use crate::sums::{analyse, kernel_trace_function, BoundStatus, FiberMaps, SumMode, TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    /// `y^q − y = f(x)`
    ArtinSchreier,
    /// `y^{q−1} = f(x)`
    Superelliptic,
}

impl CurveKind {
    pub fn short(self) -> &'static str {
        match self {
            CurveKind::ArtinSchreier => "as",
            CurveKind::Superelliptic => "se",
        }
    }

    fn mode(self) -> SumMode {
        match self {
            CurveKind::ArtinSchreier => SumMode::Trace,
            CurveKind::Superelliptic => SumMode::Norm,
        }
    }
}

/// A curve over `k_r` given by `f ∈ k_r[x]`, with `q = |k|`.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub kind: CurveKind,
    pub tower: Tower,
    pub f: Polynomial,
}

impl CurveSpec {
    pub fn new(kind: CurveKind, tower: Tower, f: Polynomial) -> Result<Self> {
        if f.base() != tower.top() {
            return Err(Error::FieldMismatch);
        }
        if f.degree().unwrap_or(0) == 0 {
            return Err(Error::HypothesisViolation("f is constant".into()));
        }
        Ok(Self { kind, tower, f })
    }
}

/// Exact point count with its two-way check, identity check and bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountReport {
    pub kind: CurveKind,
    pub p: u64,
    pub n: usize,
    pub r: usize,
    pub q: u64,
    pub f: String,
    pub d: usize,
    /// Affine points `(x, y) ∈ k_r²`.
    #[serde(rename = "N")]
    pub points: u64,
    /// The same count through the trace/norm fibers.
    pub fiber_count: u64,
    /// Roots of `f` in `k_r` (superelliptic only).
    pub delta: Option<u64>,
    /// `q^r`, or `q^r + δ − 1` for superelliptic curves.
    pub main_term: u64,
    pub deviation: u64,
    /// `S_Tr(t, 0)` or `S_N(t, 1)` for the kernel trace function `t`.
    pub restricted_sum: i64,
    /// Whether `N = q^r + q·S` (or `N = δ + q^r − 1 + (q−1)·S`) holds exactly.
    pub identity_ok: bool,
    pub bound: f64,
    pub generic: Option<bool>,
    pub failed_hypotheses: Vec<String>,
    pub bound_status: BoundStatus,
}

impl CountReport {
    pub fn counts_agree(&self) -> bool {
        self.points == self.fiber_count
    }
}

/// `(d−1)^r q^{(r+1)/2}` or `r(d−1)^r (q−1) q^{(r−1)/2}`.
pub fn curve_bound(kind: CurveKind, d: usize, q: u64, r: usize) -> f64 {
    let dr = (d as f64 - 1.0).powi(r as i32);
    let qf = q as f64;
    match kind {
        CurveKind::ArtinSchreier => dr * qf.powf((r as f64 + 1.0) / 2.0),
        CurveKind::Superelliptic => r as f64 * dr * (qf - 1.0) * qf.powf((r as f64 - 1.0) / 2.0),
    }
}

fn histogram(tower: &Tower, kind: CurveKind) -> Vec<u64> {
    let top = tower.top();
    let q = tower.q();
    let mut h = vec![0u64; top.size() as usize];
    for y in top.elements() {
        let v = match kind {
            CurveKind::ArtinSchreier => &y.pow(q) - &y,
            CurveKind::Superelliptic => y.pow(q - 1),
        };
        h[v.index() as usize] += 1;
    }
    h
}

/// Shared per-tower tables for counting many curves.
pub struct CountContext {
    tower: Tower,
    maps: FiberMaps,
    histograms: [Vec<u64>; 2],
}

impl CountContext {
    pub fn new(tower: &Tower) -> Self {
        Self {
            tower: tower.clone(),
            maps: FiberMaps::new(tower),
            histograms: [histogram(tower, CurveKind::ArtinSchreier), histogram(tower, CurveKind::Superelliptic)],
        }
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn count(&self, kind: CurveKind, f: &Polynomial) -> Result<CountReport> {
        let tower = &self.tower;
        if f.base() != tower.top() {
            return Err(Error::FieldMismatch);
        }
        let d = f.degree().unwrap_or(0);
        if d == 0 {
            return Err(Error::HypothesisViolation("f is constant".into()));
        }
        let top = tower.top();
        let q = tower.q();
        let qr = top.size();
        let hist = &self.histograms[kind as usize];
        let values: Vec<u64> = top.elements().map(|x| f.eval(&x).index()).collect();

        // pairs (x, y) with g(y) = f(x), grouped by the common value
        let points: u64 = values.iter().map(|&v| hist[v as usize]).sum();
        let delta = values.iter().filter(|&&v| v == 0).count() as u64;
        let (fiber_count, main_term) = match kind {
            CurveKind::ArtinSchreier => {
                let zero_trace = values.iter().filter(|&&v| self.maps.trace[v as usize] == 0).count() as u64;
                (q * zero_trace, qr)
            }
            CurveKind::Superelliptic => {
                let unit_norm = values.iter().filter(|&&v| v != 0 && self.maps.norm[v as usize] == 1).count() as u64;
                (delta + (q - 1) * unit_norm, qr + delta - 1)
            }
        };

        let mode = kind.mode();
        let t = kernel_trace_function(f, mode.domain())?;
        let target = match kind {
            CurveKind::ArtinSchreier => 0,
            CurveKind::Superelliptic => 1,
        };
        let map = self.maps.for_domain(mode.domain());
        let s: i64 = t
            .domain_indices()
            .filter(|&y| map[y as usize] == target)
            .map(|y| t.integer_at(y).unwrap())
            .sum();
        let predicted = match kind {
            CurveKind::ArtinSchreier => qr as i64 + q as i64 * s,
            CurveKind::Superelliptic => delta as i64 + qr as i64 - 1 + (q as i64 - 1) * s,
        };

        let (failed, excluded) = analyse(f, tower, mode)?;
        let a: FieldElement = tower.base().from_index(target);
        let generic = excluded.as_ref().map(|e| e.is_generic(&a));
        let deviation = points.abs_diff(main_term);
        let bound = curve_bound(kind, d, q, tower.r());
        let bound_status = match generic {
            Some(true) if failed.is_empty() => {
                if deviation as f64 <= bound + TOLERANCE {
                    BoundStatus::Holds
                } else {
                    BoundStatus::Violated
                }
            }
            _ => BoundStatus::NotAsserted,
        };
        Ok(CountReport {
            kind,
            p: tower.base().p(),
            n: tower.base().degree(),
            r: tower.r(),
            q,
            f: f.to_cli_string(),
            d,
            points,
            fiber_count,
            delta: (kind == CurveKind::Superelliptic).then_some(delta),
            main_term,
            deviation,
            restricted_sum: s,
            identity_ok: predicted == points as i64,
            bound,
            generic,
            failed_hypotheses: failed,
            bound_status,
        })
    }
}

/// Counts the affine points of one curve; see [`CountReport`].
pub fn count_points(spec: &CurveSpec) -> Result<CountReport> {
    CountContext::new(&spec.tower).count(spec.kind, &spec.f)
}

/// Whether the exact identity between `N` and the restricted sum holds.
pub fn identity_check(spec: &CurveSpec) -> Result<bool> {
    Ok(count_points(spec)?.identity_ok)
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// `C_{d,r} = Σ_{i=0}^{r−1} binom(d+r−i−2, r) · binom(r−1, i)`.
pub fn c_constant(d: u64, r: u64) -> Result<BigUint> {
    if d == 0 || r == 0 {
        return Err(Error::InvalidArgument("d and r must be positive".into()));
    }
    Ok((0..r).map(|i| binomial(d + r - i - 2, r) * binomial(r - 1, i)).sum())
}

fn ser_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

/// One row of a comparison table: table 1 holds `C_{d,r}`, table 2 holds
/// `⌈C_{rd−r+1,r} / r⌉`; both next to `(d−1)^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub table: u8,
    pub d: u64,
    pub r: u64,
    #[serde(serialize_with = "ser_big")]
    pub c_value: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub power_value: BigUint,
}

/// Both comparison tables for `d` and each `r` in `rs`, table 1 first.
pub fn comparison_tables(d: u64, rs: &[u64]) -> Result<Vec<TableRow>> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let power = |r: u64| BigUint::from(d - 1).pow(r as u32);
    let mut rows = Vec::with_capacity(2 * rs.len());
    for &r in rs {
        rows.push(TableRow { table: 1, d, r, c_value: c_constant(d, r)?, power_value: power(r) });
    }
    for &r in rs {
        let c = c_constant(r * d - r + 1, r)?;
        let value = c.div_ceil(&BigUint::from(r));
        rows.push(TableRow { table: 2, d, r, c_value: value, power_value: power(r) });
    }
    Ok(rows)
}

/// Which polynomials a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepSelection {
    /// Every monic polynomial of degree `d` over `k_r`, in canonical order.
    All,
    /// `count` monic polynomials drawn with a seeded generator.
    Sample { count: usize, seed: u64 },
}

/// Largest number of polynomials an exhaustive sweep will visit.
pub const SWEEP_LIMIT: u128 = 1_000_000;

/// Aggregate of a sweep; `reports` are in visiting order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub kind: CurveKind,
    pub p: u64,
    pub n: usize,
    pub r: usize,
    pub d: usize,
    pub total: usize,
    pub count_mismatches: usize,
    pub identity_failures: usize,
    pub bound_holds: usize,
    pub bound_violations: usize,
    pub not_asserted: usize,
    pub reports: Vec<CountReport>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.count_mismatches == 0 && self.identity_failures == 0 && self.bound_violations == 0
    }
}

/// Monic polynomial of degree `d` whose lower coefficients are the
/// base-`|k_r|` digits of `idx`, constant term first.
fn monic_from_index(tower: &Tower, d: usize, mut idx: u128) -> Polynomial {
    let top = tower.top();
    let size = top.size() as u128;
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..d {
        coeffs.push(top.from_index((idx % size) as u64));
        idx /= size;
    }
    coeffs.push(top.one());
    Polynomial::new(top, coeffs).expect("coefficients lie in k_r")
}

/// Counts points for every selected monic `f` of degree `d`.
pub fn sweep(kind: CurveKind, tower: &Tower, d: usize, selection: SweepSelection) -> Result<SweepReport> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let size = tower.top().size() as u128;
    let total = size.checked_pow(d as u32).unwrap_or(u128::MAX);
    let indices: Vec<u128> = match selection {
        SweepSelection::All => {
            if total > SWEEP_LIMIT {
                return Err(Error::BudgetExceeded { size: total, budget: SWEEP_LIMIT as u64 });
            }
            (0..total).collect()
        }
        SweepSelection::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| rng.gen_range(0..total)).collect()
        }
    };
    let ctx = CountContext::new(tower);
    let reports = indices
        .par_iter()
        .map(|&i| ctx.count(kind, &monic_from_index(tower, d, i)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = SweepReport {
        kind,
        p: tower.base().p(),
        n: tower.base().degree(),
        r: tower.r(),
        d,
        total: reports.len(),
        count_mismatches: 0,
        identity_failures: 0,
        bound_holds: 0,
        bound_violations: 0,
        not_asserted: 0,
        reports: Vec::new(),
    };
    for rep in &reports {
        out.count_mismatches += usize::from(!rep.counts_agree());
        out.identity_failures += usize::from(!rep.identity_ok);
        match rep.bound_status {
            BoundStatus::Holds => out.bound_holds += 1,
            BoundStatus::Violated => out.bound_violations += 1,
            BoundStatus::NotAsserted => out.not_asserted += 1,
        }
    }
    out.reports = reports;
    Ok(out)
}
