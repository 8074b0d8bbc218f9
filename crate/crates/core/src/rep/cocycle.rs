//! Representations of `G` as representations of a normal subgroup `H`
//! together with descent isomorphisms `Ψ_σ : ρ → σ̃*ρ`, one per coset.

use super::induction::DEFAULT_MATRIX_BUDGET;
use super::{permuted_kronecker, Matrix, MatrixRep, Scalar, Subgroup};
use crate::error::{Error, Result};

/// `g*ρ : h ↦ ρ(g h g⁻¹)`, defined when `H` is normal.
pub fn conjugate_rep<T: Scalar>(rep: &MatrixRep<T>, h: &Subgroup, g: usize) -> Result<MatrixRep<T>> {
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    let group = h.parent();
    let images = h.members().iter().map(|&x| rep.image(group.conjugate(g, x)).clone()).collect();
    MatrixRep::of_subgroup(h, images)
}

/// An object of the cocycle category: `(ρ, {Ψ_σ})` with chosen lifts `σ̃`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleDatum<T> {
    subgroup: Subgroup,
    rep: MatrixRep<T>,
    lifts: Vec<usize>,
    psi: Vec<Matrix<T>>,
}

fn check_lifts(h: &Subgroup, lifts: &[usize]) -> Result<()> {
    if !h.is_normal() {
        return Err(Error::NotNormal);
    }
    if lifts.len() != h.index() {
        return Err(Error::InvalidCocycle(format!("{} lifts for {} cosets", lifts.len(), h.index())));
    }
    for (i, &l) in lifts.iter().enumerate() {
        if l >= h.parent().order() || h.coset_of(l) != i {
            return Err(Error::InvalidCocycle(format!("lift {l} does not lie in coset {i}")));
        }
    }
    if lifts[h.identity_coset()] != 0 {
        return Err(Error::InvalidCocycle("the identity coset must lift to the identity".into()));
    }
    Ok(())
}

impl<T: Scalar> CocycleDatum<T> {
    /// Builds and validates a datum. `lifts[i]` lifts coset `i` of `subgroup`.
    pub fn new(subgroup: &Subgroup, rep: MatrixRep<T>, lifts: Vec<usize>, psi: Vec<Matrix<T>>) -> Result<Self> {
        let datum = Self { subgroup: subgroup.clone(), rep, lifts, psi };
        datum.validate()?;
        Ok(datum)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn rep(&self) -> &MatrixRep<T> {
        &self.rep
    }

    pub fn lifts(&self) -> &[usize] {
        &self.lifts
    }

    pub fn psi(&self) -> &[Matrix<T>] {
        &self.psi
    }

    /// Coset of `σ̃ τ̃`.
    pub fn quotient_mul(&self, sigma: usize, tau: usize) -> usize {
        quotient_mul(&self.subgroup, &self.lifts, sigma, tau)
    }

    /// `h_{σ,τ} = σ̃ τ̃ (στ)̃⁻¹ ∈ H`.
    pub fn h(&self, sigma: usize, tau: usize) -> usize {
        h_sigma_tau(&self.subgroup, &self.lifts, sigma, tau)
    }

    /// Checks every invariant: lifts, `Ψ_identity = 1`, intertwining
    /// `Ψ_σ ρ(h) = ρ(σ̃ h σ̃⁻¹) Ψ_σ` and the cocycle condition
    /// `Ψ_σ Ψ_τ = ρ(h_{σ,τ}) Ψ_{στ}`. Invertibility of each `Ψ_σ` follows
    /// from the last one at `τ = σ⁻¹`, so no determinant is taken.
    pub fn validate(&self) -> Result<()> {
        let h = &self.subgroup;
        check_lifts(h, &self.lifts)?;
        if **self.rep.group() != **h.parent() || self.rep.elements() != h.members() {
            return Err(Error::InvalidCocycle("representation is not defined on H".into()));
        }
        self.rep.check_homomorphism()?;
        let dim = self.rep.dim();
        if self.psi.len() != h.index() || self.psi.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidCocycle("one dim×dim Ψ per coset required".into()));
        }
        if !self.psi[h.identity_coset()].is_identity() {
            return Err(Error::InvalidCocycle("Ψ of the identity coset is not the identity".into()));
        }
        let group = h.parent();
        for (s, psi) in self.psi.iter().enumerate() {
            for &x in h.members() {
                let lhs = psi.mul(self.rep.image(x));
                let rhs = self.rep.image(group.conjugate(self.lifts[s], x)).mul(psi);
                if lhs != rhs {
                    return Err(Error::InvalidCocycle(format!("Ψ_{s} does not intertwine at {x}")));
                }
            }
        }
        for s in 0..h.index() {
            for t in 0..h.index() {
                let lhs = self.psi[s].mul(&self.psi[t]);
                let rhs = self.rep.image(self.h(s, t)).mul(&self.psi[self.quotient_mul(s, t)]);
                if lhs != rhs {
                    return Err(Error::InvalidCocycle(format!("cocycle condition fails at ({s},{t})")));
                }
            }
        }
        Ok(())
    }
}

fn quotient_mul(h: &Subgroup, lifts: &[usize], sigma: usize, tau: usize) -> usize {
    h.coset_of(h.parent().mul(lifts[sigma], lifts[tau]))
}

fn h_sigma_tau(h: &Subgroup, lifts: &[usize], sigma: usize, tau: usize) -> usize {
    let g = h.parent();
    let st = quotient_mul(h, lifts, sigma, tau);
    g.mul(g.mul(lifts[sigma], lifts[tau]), g.inv(lifts[st]))
}

/// `π ↦ (π|_H, Ψ_σ = π(σ̃))`.
pub fn restrict_to_cocycle<T: Scalar>(pi: &MatrixRep<T>, h: &Subgroup, lifts: &[usize]) -> Result<CocycleDatum<T>> {
    check_lifts(h, lifts)?;
    let rep = pi.restrict(h)?;
    let psi = lifts.iter().map(|&l| pi.image(l).clone()).collect();
    CocycleDatum::new(h, rep, lifts.to_vec(), psi)
}

/// `π(h σ̃) = ρ(h) ∘ Ψ_σ`; the homomorphism property is verified on the
/// full table before returning.
pub fn reconstruct_from_cocycle<T: Scalar>(datum: &CocycleDatum<T>) -> Result<MatrixRep<T>> {
    datum.validate()?;
    let h = datum.subgroup();
    let group = h.parent();
    let images = (0..group.order())
        .map(|g| {
            let s = h.coset_of(g);
            let x = group.mul(g, group.inv(datum.lifts[s]));
            datum.rep.image(x).mul(&datum.psi[s])
        })
        .collect();
    let pi = MatrixRep::of_group(group, images)?;
    pi.check_homomorphism()?;
    Ok(pi)
}

/// The datum of `⊗-Ind ρ`: `ℳ = ⊗_τ τ̃*M` as a representation of `H`,
/// and `Ψ_σ : ⊗ m_τ ↦ ⊗ ρ(h_{τ,σ}) m_{τσ}`.
pub fn tensor_induction_datum<T: Scalar>(h: &Subgroup, rep: &MatrixRep<T>, lifts: &[usize]) -> Result<CocycleDatum<T>> {
    check_lifts(h, lifts)?;
    let d = h.index();
    let dim = rep.dim();
    let total = (dim as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > DEFAULT_MATRIX_BUDGET as u128 {
        return Err(Error::MatrixBudget { dim: total, budget: DEFAULT_MATRIX_BUDGET });
    }
    let group = h.parent();
    let identity_perm: Vec<usize> = (0..d).collect();
    let m_images = h
        .members()
        .iter()
        .map(|&x| {
            let factors: Vec<&Matrix<T>> = lifts.iter().map(|&l| rep.image(group.conjugate(l, x))).collect();
            permuted_kronecker(&factors, &identity_perm, dim)
        })
        .collect();
    let big_rep = MatrixRep::of_subgroup(h, m_images)?;
    let psi = (0..d)
        .map(|s| {
            let tau: Vec<usize> = (0..d).map(|t| quotient_mul(h, lifts, t, s)).collect();
            let factors: Vec<&Matrix<T>> = (0..d).map(|t| rep.image(h_sigma_tau(h, lifts, t, s))).collect();
            permuted_kronecker(&factors, &tau, dim)
        })
        .collect();
    CocycleDatum::new(h, big_rep, lifts.to_vec(), psi)
}

/// Tensor induction computed through the cocycle description.
pub fn tensor_induction_via_cocycle<T: Scalar>(h: &Subgroup, rep: &MatrixRep<T>, lifts: &[usize]) -> Result<MatrixRep<T>> {
    reconstruct_from_cocycle(&tensor_induction_datum(h, rep, lifts)?)
}
