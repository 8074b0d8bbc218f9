use serde::Serialize;

use super::{permuted_kronecker, Matrix, MatrixRep, Scalar, Subgroup};
use crate::error::{Error, Result};

/// Largest induced dimension `dim^d` we build by default.
pub const DEFAULT_MATRIX_BUDGET: usize = 4096;

fn check_rep<T: Scalar>(h: &Subgroup, rep: &MatrixRep<T>) -> Result<()> {
    if **rep.group() != **h.parent() || rep.elements() != h.members() {
        return Err(Error::InvalidArgument("representation is not defined on this subgroup".into()));
    }
    Ok(())
}

fn induced_dim(dim: usize, d: usize, budget: usize) -> Result<usize> {
    let total = (dim as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::MatrixBudget { dim: total, budget });
    }
    Ok(total as usize)
}

/// Matrix of `g` under `⊗-Ind_H^G ρ` for the subgroup's coset representatives.
///
/// With `g_i g = h_i g_{τ(i)}`, the operator is
/// `m_1⊗⋯⊗m_d ↦ ρ(h_1) m_{τ(1)} ⊗ ⋯ ⊗ ρ(h_d) m_{τ(d)}`.
pub fn induced_matrix<T: Scalar>(h: &Subgroup, rep: &MatrixRep<T>, g: usize) -> Matrix<T> {
    let group = h.parent();
    let d = h.index();
    let mut tau = Vec::with_capacity(d);
    let mut factors = Vec::with_capacity(d);
    for &gi in h.coset_reps() {
        let (hi, j) = h.decompose(group.mul(gi, g));
        tau.push(j);
        factors.push(rep.image(hi));
    }
    permuted_kronecker(&factors, &tau, rep.dim())
}

/// Tensor induction of a representation of `H` to `G = parent(H)`.
/// Normality of `H` is not required.
pub fn tensor_induction<T: Scalar>(h: &Subgroup, rep: &MatrixRep<T>) -> Result<MatrixRep<T>> {
    tensor_induction_with_budget(h, rep, DEFAULT_MATRIX_BUDGET)
}

pub fn tensor_induction_with_budget<T: Scalar>(h: &Subgroup, rep: &MatrixRep<T>, budget: usize) -> Result<MatrixRep<T>> {
    check_rep(h, rep)?;
    induced_dim(rep.dim(), h.index(), budget)?;
    let group = h.parent();
    let images = (0..group.order()).map(|g| induced_matrix(h, rep, g)).collect();
    MatrixRep::of_group(group, images)
}

/// Both sides of `Tr(⊗-Ind ρ (g)) = Tr(ρ(g^r))`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrobeniusTrace<T> {
    pub element: usize,
    pub index: usize,
    pub lhs: T,
    pub rhs: T,
}

impl<T: Scalar> FrobeniusTrace<T> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// For cyclic `G ⊃ H` of index `r` and `g` with `gH` generating `G/H`,
/// computes the trace of the tensor induction at `g` and the trace of
/// `ρ(g^r)`.
pub fn frobenius_trace_check<T: Scalar>(h: &Subgroup, rep: &MatrixRep<T>, g: usize) -> Result<FrobeniusTrace<T>> {
    check_rep(h, rep)?;
    let group = h.parent();
    if !group.is_cyclic() {
        return Err(Error::InvalidGroup("trace identity needs a cyclic group".into()));
    }
    let r = h.index();
    induced_dim(rep.dim(), r, DEFAULT_MATRIX_BUDGET)?;
    // order of gH in G/H must be r
    let mut x = g;
    let mut k = 1;
    while !h.contains(x) {
        x = group.mul(x, g);
        k += 1;
    }
    if k != r {
        return Err(Error::NotGenerator);
    }
    let lhs = induced_matrix(h, rep, g).trace();
    let rhs = rep.image(group.pow(g, r as u64)).trace();
    Ok(FrobeniusTrace { element: g, index: r, lhs, rhs })
}

/// Runs [`frobenius_trace_check`] at every `g` whose coset generates `G/H`.
pub fn frobenius_trace_check_all<T: Scalar>(h: &Subgroup, rep: &MatrixRep<T>) -> Result<Vec<FrobeniusTrace<T>>> {
    let mut out = Vec::new();
    for g in 0..h.parent().order() {
        match frobenius_trace_check(h, rep, g) {
            Ok(t) => out.push(t),
            Err(Error::NotGenerator) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::rep::FiniteGroup;

    fn z4_example() -> (Subgroup, MatrixRep<i64>) {
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let h = Subgroup::new(&g, &[0, 2]).unwrap();
        let rep = MatrixRep::of_subgroup(&h, vec![Matrix::scalar(1), Matrix::scalar(-1)]).unwrap();
        (h, rep)
    }

    #[test]
    fn z4_hand_oracle() {
        let (h, rep) = z4_example();
        assert_eq!(h.coset_reps(), &[0, 1]);
        let ind = tensor_induction(&h, &rep).unwrap();
        ind.check_homomorphism().unwrap();
        // g = 1: g_1 g = 1 = 0 + g_2, g_2 g = 2 = 2 + g_1, value ρ(0)ρ(2) = -1
        assert_eq!(ind.image(1), &Matrix::scalar(-1));
        let t = frobenius_trace_check(&h, &rep, 1).unwrap();
        assert_eq!((t.lhs, t.rhs), (-1, -1));
        assert_eq!(frobenius_trace_check(&h, &rep, 2).unwrap_err(), Error::NotGenerator);
    }

    #[test]
    fn index_one_is_identity() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let h = Subgroup::new(&g, &[0, 1, 2]).unwrap();
        let m = Matrix::<i64>::from_i64_rows(&[&[0, -1], &[1, -1]]);
        let rep = MatrixRep::from_generators(&g, &[0, 1, 2], &[(1, m)]).unwrap();
        let ind = tensor_induction(&h, &rep).unwrap();
        assert!(ind.same_matrices(&rep));
    }

    #[test]
    fn trivial_rep_induces_trivial() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let h = Subgroup::new(&s3, &s3.generated(&[1])).unwrap();
        let rep = MatrixRep::of_subgroup(&h, vec![Matrix::<i64>::identity(1); 2]).unwrap();
        let ind = tensor_induction(&h, &rep).unwrap();
        assert!(ind.images().iter().all(|m| m.is_identity()));
    }

    #[test]
    fn non_normal_induction_is_homomorphism() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let h = Subgroup::new(&s3, &s3.generated(&[1])).unwrap();
        assert!(!h.is_normal());
        let rep = MatrixRep::of_subgroup(&h, vec![Matrix::<i64>::identity(2), Matrix::from_i64_rows(&[&[0, 1], &[1, 0]])]).unwrap();
        let ind = tensor_induction(&h, &rep).unwrap();
        assert_eq!(ind.dim(), 8);
        ind.check_homomorphism().unwrap();
    }

    #[test]
    fn budget_refuses_large_powers() {
        let g = Arc::new(FiniteGroup::cyclic(8).unwrap());
        let h = Subgroup::of_index_in_cyclic(&g, 8).unwrap();
        let rep = MatrixRep::of_subgroup(&h, vec![Matrix::<i64>::identity(3)]).unwrap();
        assert!(matches!(tensor_induction_with_budget(&h, &rep, 1000), Err(Error::MatrixBudget { .. })));
    }
}
