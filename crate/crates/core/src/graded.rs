//! Graded tensor induction: `Q = P ⊗ F*P ⊗ ⋯ ⊗ F^{(r−1)*}P` for a graded
//! piece-wise representation `P`, with the Frobenius acting by cyclic rotation
//! of the tensor factors and the Koszul sign `(−1)^{i_0(i_1+⋯+i_{r−1})}`.
//!
//! Differentials are not modelled; only the graded pieces and the action of
//! `F^r` on each of them.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::random::unimodular;
use crate::rep::{digits, Matrix, Scalar, DEFAULT_MATRIX_BUDGET};

/// Size limits for graded inputs and the induced pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradedLimits {
    pub min_degree: i64,
    pub max_degree: i64,
    pub max_piece_dim: usize,
    /// Largest dimension of a single induced piece `Q^m`.
    pub matrix_budget: usize,
}

impl Default for GradedLimits {
    fn default() -> Self {
        Self { min_degree: -8, max_degree: 8, max_piece_dim: 4, matrix_budget: DEFAULT_MATRIX_BUDGET }
    }
}

/// Bounded graded representation: degree `i` ↦ matrix of `F^r` on `P^i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct GradedRep<T> {
    pieces: BTreeMap<i64, Matrix<T>>,
}

impl<T: Scalar> GradedRep<T> {
    pub fn new(pieces: BTreeMap<i64, Matrix<T>>) -> Result<Self> {
        Self::with_limits(pieces, &GradedLimits::default())
    }

    pub fn with_limits(pieces: BTreeMap<i64, Matrix<T>>, limits: &GradedLimits) -> Result<Self> {
        let rep = Self { pieces };
        rep.validate(limits)?;
        Ok(rep)
    }

    pub fn validate(&self, limits: &GradedLimits) -> Result<()> {
        for (&i, m) in &self.pieces {
            if i < limits.min_degree || i > limits.max_degree {
                return Err(Error::InvalidArgument(format!(
                    "degree {i} outside [{}, {}]",
                    limits.min_degree, limits.max_degree
                )));
            }
            if m.rows() == 0 || m.rows() > limits.max_piece_dim {
                return Err(Error::InvalidArgument(format!(
                    "piece in degree {i} has dimension {} (allowed 1..={})",
                    m.rows(),
                    limits.max_piece_dim
                )));
            }
            if !m.is_invertible() {
                return Err(Error::InvalidArgument(format!("action on degree {i} is not invertible")));
            }
        }
        Ok(())
    }

    pub fn pieces(&self) -> &BTreeMap<i64, Matrix<T>> {
        &self.pieces
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.pieces.get(&degree).map_or(0, |m| m.rows())
    }

    /// `Σ_i (−1)^i Tr(F_i)`.
    pub fn alternating_trace(&self) -> T {
        self.pieces.iter().fold(T::zero(), |acc, (&i, m)| acc + sign::<T>(i) * m.trace())
    }
}

fn sign<T: Scalar>(e: i64) -> T {
    if e.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// One degree `m` of the induced object.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar"))]
pub struct InducedPiece<T> {
    pub degree: i64,
    /// Degree tuples `(i_0,…,i_{r−1})` with sum `degree`, lexicographic.
    pub summands: Vec<Vec<i64>>,
    /// Offset of each summand block in the basis.
    pub offsets: Vec<usize>,
    pub dim: usize,
    /// Matrix of `F` on `Q^m`.
    pub action: Matrix<T>,
}

/// The induced graded object `Q` with its Frobenius action.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar"))]
pub struct GradedInduced<T> {
    pub r: usize,
    pub pieces: Vec<InducedPiece<T>>,
}

fn tuples(degrees: &[i64], r: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t| {
                degrees.iter().map(move |&d| {
                    let mut t = t.clone();
                    t.push(d);
                    t
                })
            })
            .collect();
    }
    out
}

fn flat_index(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (&a, &d)| acc * d + a)
}

/// Builds every `Q^m` with `F(m_0⊗⋯⊗m_{r−1}) = (−1)^{i_0(m−i_0)} m_1⊗⋯⊗m_{r−1}⊗F_{i_0}(m_0)`.
pub fn graded_tensor_induce<T: Scalar>(p: &GradedRep<T>, r: usize) -> Result<GradedInduced<T>> {
    graded_tensor_induce_with_budget(p, r, DEFAULT_MATRIX_BUDGET)
}

pub fn graded_tensor_induce_with_budget<T: Scalar>(p: &GradedRep<T>, r: usize, budget: usize) -> Result<GradedInduced<T>> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let degrees: Vec<i64> = p.pieces.keys().copied().collect();
    let mut by_degree: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    for t in tuples(&degrees, r) {
        by_degree.entry(t.iter().sum()).or_default().push(t);
    }
    let layouts: Vec<(i64, Vec<Vec<i64>>, Vec<usize>, usize)> = by_degree
        .into_iter()
        .map(|(m, summands)| {
            let mut offsets = Vec::with_capacity(summands.len());
            let mut dim = 0u128;
            for t in &summands {
                offsets.push(dim as usize);
                dim += t.iter().map(|&i| p.dim(i) as u128).product::<u128>();
                if dim > budget as u128 {
                    return Err(Error::MatrixBudget { dim, budget });
                }
            }
            Ok((m, summands, offsets, dim as usize))
        })
        .collect::<Result<_>>()?;
    let pieces = layouts
        .into_par_iter()
        .map(|(m, summands, offsets, dim)| {
            let action = piece_action(p, m, &summands, &offsets, dim);
            InducedPiece { degree: m, summands, offsets, dim, action }
        })
        .collect();
    Ok(GradedInduced { r, pieces })
}

fn piece_action<T: Scalar>(p: &GradedRep<T>, m: i64, summands: &[Vec<i64>], offsets: &[usize], dim: usize) -> Matrix<T> {
    let r = summands[0].len();
    let position: BTreeMap<&[i64], usize> = summands.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();
    let mut action = Matrix::zeros(dim, dim);
    for (k, t) in summands.iter().enumerate() {
        let dims: Vec<usize> = t.iter().map(|&i| p.dim(i)).collect();
        let mut rotated = t[1..].to_vec();
        rotated.push(t[0]);
        let target = position[rotated.as_slice()];
        let target_dims: Vec<usize> = rotated.iter().map(|&i| p.dim(i)).collect();
        let s = sign::<T>(t[0] * (m - t[0]));
        let f0 = &p.pieces[&t[0]];
        let block: usize = dims.iter().product();
        for col in 0..block {
            let a = mixed_digits(col, &dims);
            let mut b: Vec<usize> = a[1..].to_vec();
            b.push(0);
            for c in 0..dims[0] {
                let entry = f0.get(c, a[0]);
                if entry.is_zero() {
                    continue;
                }
                b[r - 1] = c;
                let row = offsets[target] + flat_index(&b, &target_dims);
                action.set(row, offsets[k] + col, s.clone() * entry.clone());
            }
        }
    }
    action
}

fn mixed_digits(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    if dims.iter().all(|&d| d == dims[0]) {
        return digits(idx, dims[0], dims.len());
    }
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

impl<T: Scalar> GradedInduced<T> {
    pub fn piece(&self, degree: i64) -> Option<&InducedPiece<T>> {
        self.pieces.iter().find(|q| q.degree == degree)
    }
}

/// Per-degree trace of `F` on `Q^m` next to the closed form.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar"))]
pub struct DegreeTrace<T> {
    pub degree: i64,
    pub dim: usize,
    #[serde(serialize_with = "ser_exact")]
    pub trace: T,
    /// `0` if `r ∤ m`, else `(−1)^{i(r−1)} Tr(F_i)` with `m = ir`.
    #[serde(serialize_with = "ser_exact")]
    pub predicted: T,
}

/// Traces of the graded induction and the alternating-sum comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar"))]
pub struct GradedTraceReport<T> {
    pub r: usize,
    pub degrees: Vec<DegreeTrace<T>>,
    /// `Σ_m (−1)^m Tr(F | Q^m)`.
    #[serde(serialize_with = "ser_exact")]
    pub alternating_sum: T,
    /// `Σ_i (−1)^i Tr(F_i)`.
    #[serde(serialize_with = "ser_exact")]
    pub expected_alternating_sum: T,
}

fn ser_exact<T: Scalar, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_exact_string())
}

impl<T: Scalar> GradedTraceReport<T> {
    pub fn per_degree_ok(&self) -> bool {
        self.degrees.iter().all(|d| d.trace == d.predicted)
    }

    pub fn alternating_ok(&self) -> bool {
        self.alternating_sum == self.expected_alternating_sum
    }

    pub fn holds(&self) -> bool {
        self.per_degree_ok() && self.alternating_ok()
    }
}

/// Traces of `F` on every `Q^m`, compared with the source pieces of `p`.
pub fn graded_trace<T: Scalar>(p: &GradedRep<T>, q: &GradedInduced<T>) -> GradedTraceReport<T> {
    let r = q.r as i64;
    let degrees: Vec<DegreeTrace<T>> = q
        .pieces
        .iter()
        .map(|piece| {
            let m = piece.degree;
            let predicted = if m.rem_euclid(r) != 0 {
                T::zero()
            } else {
                let i = m / r;
                p.pieces.get(&i).map_or(T::zero(), |f| sign::<T>(i * (r - 1)) * f.trace())
            };
            DegreeTrace { degree: m, dim: piece.dim, trace: piece.action.trace(), predicted }
        })
        .collect();
    let alternating_sum = degrees.iter().fold(T::zero(), |acc, d| acc + sign::<T>(d.degree) * d.trace.clone());
    GradedTraceReport { r: q.r, degrees, alternating_sum, expected_alternating_sum: p.alternating_trace() }
}

/// Checks that `F^r` on each summand `(t_0,…,t_{r−1})` equals
/// `Π_k (−1)^{t_k(m−t_k)} · F_{t_0}⊗⋯⊗F_{t_{r−1}}`.
pub fn check_rth_power<T: Scalar>(p: &GradedRep<T>, q: &GradedInduced<T>) -> bool {
    q.pieces.iter().all(|piece| {
        let power = piece.action.pow(q.r as u64);
        let mut expected = Matrix::zeros(piece.dim, piece.dim);
        for (t, &off) in piece.summands.iter().zip(&piece.offsets) {
            let s = t.iter().fold(T::one(), |acc, &tk| acc * sign::<T>(tk * (piece.degree - tk)));
            let mut block = Matrix::identity(1);
            for &tk in t {
                block = block.kronecker(&p.pieces[&tk]);
            }
            let block = block.scale(&s);
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    expected.set(off + i, off + j, block.get(i, j).clone());
                }
            }
        }
        power == expected
    })
}

/// A random graded integer representation: each degree in `degrees` is
/// present with probability 3/4 (at least one is kept), with dimension in
/// `1..=max_dim` and action `U·P` for a unimodular `U` and a signed
/// permutation `P`.
pub fn random_graded_rep<R: Rng>(degrees: std::ops::RangeInclusive<i64>, max_dim: usize, rng: &mut R) -> GradedRep<i64> {
    let all: Vec<i64> = degrees.collect();
    let mut pieces = BTreeMap::new();
    for &i in &all {
        if rng.gen_bool(0.75) {
            pieces.insert(i, random_invertible(rng.gen_range(1..=max_dim), rng));
        }
    }
    if pieces.is_empty() {
        let i = all[rng.gen_range(0..all.len())];
        pieces.insert(i, random_invertible(rng.gen_range(1..=max_dim), rng));
    }
    GradedRep { pieces }
}

fn random_invertible<R: Rng>(dim: usize, rng: &mut R) -> Matrix<i64> {
    let (u, _) = unimodular(dim, 2 * dim, rng);
    let mut perm: Vec<usize> = (0..dim).collect();
    rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), rng);
    let mut p = Matrix::zeros(dim, dim);
    for (col, &row) in perm.iter().enumerate() {
        p.set(row, col, if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    // an occasional scalar factor keeps traces from being always ±1-ish
    let c = [1, 1, 2, -3][rng.gen_range(0..4)];
    u.mul(&p).scale(&c)
}
