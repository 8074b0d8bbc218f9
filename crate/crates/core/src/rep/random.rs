//! Seeded generators of integer representations for randomized checks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{FiniteGroup, Matrix, MatrixRep, Subgroup};
use crate::error::{Error, Result};

/// A random unimodular integer matrix and its inverse, as a product of
/// `steps` elementary row operations.
pub fn unimodular<R: Rng>(dim: usize, steps: usize, rng: &mut R) -> (Matrix<i64>, Matrix<i64>) {
    let mut u = Matrix::identity(dim);
    let mut u_inv = Matrix::identity(dim);
    if dim < 2 {
        return (u, u_inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = Matrix::identity(dim);
        e.set(i, j, c);
        let mut e_inv = Matrix::identity(dim);
        e_inv.set(i, j, -c);
        u = e.mul(&u);
        u_inv = u_inv.mul(&e_inv);
    }
    (u, u_inv)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All signed permutation matrices of size `dim` whose order divides `m`.
pub fn signed_permutations_of_order_dividing(dim: usize, m: u64) -> Vec<Matrix<i64>> {
    let mut out = Vec::new();
    for perm in permutations(dim) {
        for signs in 0..(1u32 << dim) {
            let mut p = Matrix::zeros(dim, dim);
            for (col, &row) in perm.iter().enumerate() {
                p.set(row, col, if signs >> col & 1 == 1 { -1 } else { 1 });
            }
            if p.pow(m).is_identity() {
                out.push(p);
            }
        }
    }
    out
}

/// A random integer representation of a cyclic subgroup `H`: the generator
/// maps to `U P U⁻¹` with `P` a signed permutation of order dividing `|H|`.
pub fn random_cyclic_rep<R: Rng>(h: &Subgroup, dim: usize, rng: &mut R) -> Result<MatrixRep<i64>> {
    let group = h.parent();
    let order = h.members().len();
    let gen = h
        .members()
        .iter()
        .copied()
        .find(|&x| group.element_order(x) == order)
        .ok_or_else(|| Error::InvalidSubgroup("subgroup is not cyclic".into()))?;
    let candidates = signed_permutations_of_order_dividing(dim, order as u64);
    let p = candidates.choose(rng).expect("identity always qualifies");
    let (u, u_inv) = unimodular(dim, 2 * dim, rng);
    let a = u.mul(p).mul(&u_inv);
    MatrixRep::from_generators(group, h.members(), &[(gen, a)])
}

/// A random integer representation of `G` of dimension at most `max_dim`:
/// the permutation action on the left cosets of a random cyclic subgroup,
/// possibly twisted by its sign and extended by a one-dimensional summand,
/// then conjugated by a random unimodular matrix.
pub fn random_group_rep<R: Rng>(group: &Arc<FiniteGroup>, max_dim: usize, rng: &mut R) -> Result<MatrixRep<i64>> {
    let n = group.order();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| group.generated(&[x]))
        .filter(|k| n / k.len() < max_dim.max(2))
        .collect();
    let k = candidates.choose(rng).ok_or_else(|| Error::InvalidArgument("max_dim too small".into()))?;
    // left cosets yK, labelled by their smallest element
    let label = |y: usize| k.iter().map(|&x| group.mul(y, x)).min().unwrap();
    let mut cosets: Vec<usize> = (0..n).map(label).collect();
    cosets.sort_unstable();
    cosets.dedup();
    let m = cosets.len();
    let perm_of = |g: usize| -> Matrix<i64> {
        let mut p = Matrix::zeros(m, m);
        for (col, &y) in cosets.iter().enumerate() {
            let row = cosets.binary_search(&label(group.mul(g, y))).unwrap();
            p.set(row, col, 1);
        }
        p
    };
    let twist = rng.gen_bool(0.5);
    let extra = rng.gen_range(0..3); // none, trivial or sign summand
    let (u, u_inv) = {
        let dim = m + usize::from(extra > 0);
        unimodular(dim, 2 * dim, rng)
    };
    let images = (0..n)
        .map(|g| {
            let p = perm_of(g);
            let sign = p.determinant();
            let mut block = if twist { p.scale(&sign) } else { p };
            match extra {
                1 => block = block.direct_sum(&Matrix::identity(1)),
                2 => block = block.direct_sum(&Matrix::scalar(sign)),
                _ => {}
            }
            u.mul(&block).mul(&u_inv)
        })
        .collect();
    let rep = MatrixRep::of_group(group, images)?;
    rep.check_homomorphism()?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn unimodular_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 1..5 {
            let (u, ui) = unimodular(dim, 8, &mut rng);
            assert!(u.mul(&ui).is_identity());
            assert_eq!(u.determinant().abs(), 1);
        }
    }

    #[test]
    fn signed_perm_counts() {
        // all 2^2·2 = 8 signed 2×2 permutations have order dividing 4
        assert_eq!(signed_permutations_of_order_dividing(2, 4).len(), 8);
        // order dividing 1: only the identity
        assert_eq!(signed_permutations_of_order_dividing(3, 1).len(), 1);
    }

    #[test]
    fn random_reps_are_homomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [FiniteGroup::cyclic(6), FiniteGroup::dihedral(4), FiniteGroup::symmetric(3)] {
            let g = Arc::new(g.unwrap());
            for _ in 0..5 {
                random_group_rep(&g, 8, &mut rng).unwrap().check_homomorphism().unwrap();
            }
        }
        let g = Arc::new(FiniteGroup::cyclic(12).unwrap());
        let h = Subgroup::of_index_in_cyclic(&g, 3).unwrap();
        for dim in 1..=3 {
            let rep = random_cyclic_rep(&h, dim, &mut rng).unwrap();
            assert_eq!(rep.dim(), dim);
        }
    }
}
