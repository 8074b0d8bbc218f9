use std::fmt::{self, Debug};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact scalar ring for representation matrices.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// `self / rhs` when the quotient exists in the ring.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// Decimal (or `num/den`) string, the wire format.
    fn to_exact_string(&self) -> String;

    fn parse_exact(s: &str) -> Result<Self>;
}

impl Scalar for i64 {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0 && self % rhs == 0).then(|| self / rhs)
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_exact_string(&self) -> String {
        self.to_string()
    }
    fn parse_exact(s: &str) -> Result<Self> {
        s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
    }
}

impl Scalar for BigInt {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, rhs);
        r.is_zero().then_some(q)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_exact_string(&self) -> String {
        self.to_string()
    }
    fn parse_exact(s: &str) -> Result<Self> {
        s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
    }
}

impl Scalar for BigRational {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_exact_string(&self) -> String {
        self.to_string()
    }
    fn parse_exact(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

/// Dense row-major matrix over an exact scalar ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| T::from_i64(v)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn scalar(v: T) -> Self {
        Self { rows: 1, cols: 1, data: vec![v] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * rhs.cols + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn kronecker(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a.clone() * rhs.get(k, l).clone());
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.data.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i * n + j].clone() * a[k * n + k].clone() - a[i * n + k].clone() * a[k * n + j].clone();
                    a[i * n + j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * a[n * n - 1].clone()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && !self.determinant().is_zero()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_exact_string()).collect()).collect()
    }

    pub fn parse_rows(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| T::parse_exact(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }
}

impl<T: Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for row in self.data.chunks(self.cols.max(1)) {
            list.entry(&row);
        }
        list.finish()
    }
}

/// Rows of exact strings on the wire; integers are also accepted on input.
impl<T: Scalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Int(i64),
    Text(String),
}

impl<'de, T: Scalar> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<EntryRepr>>::deserialize(d)?;
        let rows: Vec<Vec<String>> = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| match e {
                        EntryRepr::Int(v) => v.to_string(),
                        EntryRepr::Text(s) => s,
                    })
                    .collect()
            })
            .collect();
        Self::parse_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Mixed-radix digits of `idx` with uniform base `dim`, most significant first.
pub(crate) fn digits(mut idx: usize, dim: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = idx % dim;
        idx /= dim;
    }
    out
}

/// The operator `m_1⊗⋯⊗m_d ↦ A_1 m_{τ(1)} ⊗ ⋯ ⊗ A_d m_{τ(d)}` on `(F^dim)^{⊗d}`.
///
/// Basis vectors `e_{a_1}⊗⋯⊗e_{a_d}` are ordered lexicographically with
/// `a_1` most significant, so entry `[a, b] = Π_i A_i[a_i, b_{τ(i)}]`.
pub fn permuted_kronecker<T: Scalar>(factors: &[&Matrix<T>], tau: &[usize], dim: usize) -> Matrix<T> {
    let d = factors.len();
    assert_eq!(tau.len(), d);
    let total = dim.pow(d as u32);
    let all_digits: Vec<Vec<usize>> = (0..total).map(|i| digits(i, dim, d)).collect();
    let mut out = Matrix::zeros(total, total);
    for (a, ad) in all_digits.iter().enumerate() {
        for (b, bd) in all_digits.iter().enumerate() {
            let mut acc = T::one();
            for i in 0..d {
                let f = factors[i].get(ad[i], bd[tau[i]]);
                if f.is_zero() {
                    acc = T::zero();
                    break;
                }
                acc = acc * f.clone();
            }
            if !acc.is_zero() {
                out.set(a, b, acc);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = BigRational;

    #[test]
    fn determinant_and_inverse_checks() {
        let m = Matrix::<i64>::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant(), 2 * (12 - 1) - 4);
        let sing = Matrix::<i64>::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(!sing.is_invertible());
        let swap = Matrix::<i64>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.determinant(), -1);
        let q = Matrix::<Q>::from_i64_rows(&[&[0, 2], &[3, 1]]);
        assert_eq!(q.determinant(), Q::from_i64(-6));
    }

    #[test]
    fn permuted_kronecker_identity_perm_is_kronecker() {
        let a = Matrix::<i64>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let b = Matrix::<i64>::from_i64_rows(&[&[0, 5], &[6, 7]]);
        assert_eq!(permuted_kronecker(&[&a, &b], &[0, 1], 2), a.kronecker(&b));
    }

    #[test]
    fn swap_operator() {
        let id = Matrix::<i64>::identity(2);
        let swap = permuted_kronecker(&[&id, &id], &[1, 0], 2);
        // e_a ⊗ e_b ↦ e_b ⊗ e_a
        assert_eq!(swap.trace(), 2);
        assert!(swap.mul(&swap).is_identity());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(Q::parse_exact("-3/6").unwrap(), Q::new((-1).into(), 2.into()));
        assert!(Q::parse_exact("1/0").is_err());
        assert!(i64::parse_exact("x").is_err());
        let m = Matrix::<Q>::from_i64_rows(&[&[1, -2]]);
        assert_eq!(Matrix::<Q>::parse_rows(&m.to_string_rows()).unwrap(), m);
    }
}
