use std::collections::VecDeque;
use std::sync::Arc;

use super::{FiniteGroup, Matrix, Scalar, Subgroup};
use crate::error::{Error, Result};

/// A matrix representation of a group, or of a subgroup given by its
/// element indices inside a parent group.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep<T> {
    group: Arc<FiniteGroup>,
    elements: Vec<usize>,
    slot: Vec<Option<usize>>,
    dim: usize,
    images: Vec<Matrix<T>>,
}

impl<T: Scalar> MatrixRep<T> {
    /// `images[i]` is the matrix of `elements[i]`. Shapes are checked here;
    /// the homomorphism property is checked by [`check_homomorphism`].
    ///
    /// [`check_homomorphism`]: MatrixRep::check_homomorphism
    pub fn new(group: &Arc<FiniteGroup>, elements: Vec<usize>, images: Vec<Matrix<T>>) -> Result<Self> {
        if elements.len() != images.len() {
            return Err(Error::DimensionMismatch("one matrix per element required".into()));
        }
        let dim = images.first().map(|m| m.rows()).ok_or_else(|| Error::DimensionMismatch("no elements".into()))?;
        if dim == 0 || images.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("matrices must be square of a common positive size".into()));
        }
        let mut slot = vec![None; group.order()];
        for (i, &g) in elements.iter().enumerate() {
            if g >= group.order() || slot[g].is_some() {
                return Err(Error::InvalidArgument(format!("bad element index {g}")));
            }
            slot[g] = Some(i);
        }
        Ok(Self { group: group.clone(), elements, slot, dim, images })
    }

    /// Representation of the whole group; `images[g]` for each element `g`.
    pub fn of_group(group: &Arc<FiniteGroup>, images: Vec<Matrix<T>>) -> Result<Self> {
        Self::new(group, (0..group.order()).collect(), images)
    }

    /// Representation of a subgroup; `images` aligned with `h.members()`.
    pub fn of_subgroup(h: &Subgroup, images: Vec<Matrix<T>>) -> Result<Self> {
        Self::new(h.parent(), h.members().to_vec(), images)
    }

    /// Extends generator images multiplicatively over `elements` and checks
    /// that the result is well defined and a homomorphism.
    pub fn from_generators(group: &Arc<FiniteGroup>, elements: &[usize], gens: &[(usize, Matrix<T>)]) -> Result<Self> {
        let dim = gens.first().map(|(_, m)| m.rows()).unwrap_or(1);
        let mut img: Vec<Option<Matrix<T>>> = vec![None; group.order()];
        img[0] = Some(Matrix::identity(dim));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, ms) in gens {
                let y = group.mul(x, *s);
                let my = img[x].as_ref().unwrap().mul(ms);
                match &img[y] {
                    Some(existing) if *existing != my => {
                        return Err(Error::NotHomomorphism(format!("generator images inconsistent at {y}")));
                    }
                    Some(_) => {}
                    None => {
                        img[y] = Some(my);
                        queue.push_back(y);
                    }
                }
            }
        }
        let images = elements
            .iter()
            .map(|&g| img[g].clone().ok_or_else(|| Error::NotHomomorphism(format!("{g} not generated"))))
            .collect::<Result<Vec<_>>>()?;
        let rep = Self::new(group, elements.to_vec(), images)?;
        rep.check_homomorphism()?;
        Ok(rep)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, g: usize) -> bool {
        self.slot.get(g).is_some_and(|s| s.is_some())
    }

    pub fn try_image(&self, g: usize) -> Option<&Matrix<T>> {
        self.slot.get(g).copied().flatten().map(|i| &self.images[i])
    }

    /// Matrix of `g`; panics when `g` is outside the represented group.
    pub fn image(&self, g: usize) -> &Matrix<T> {
        self.try_image(g).unwrap_or_else(|| panic!("element {g} not in the represented group"))
    }

    pub fn images(&self) -> &[Matrix<T>] {
        &self.images
    }

    /// `(element, trace)` pairs in element order.
    pub fn character(&self) -> Vec<(usize, T)> {
        self.elements.iter().zip(&self.images).map(|(&g, m)| (g, m.trace())).collect()
    }

    /// Exhaustive check over the multiplication table of the represented group.
    pub fn check_homomorphism(&self) -> Result<()> {
        if !self.contains(0) || !self.image(0).is_identity() {
            return Err(Error::NotHomomorphism("identity does not map to the identity matrix".into()));
        }
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                let ab = self.group.mul(a, b);
                let m = self.try_image(ab).ok_or_else(|| Error::NotHomomorphism("element set not closed".into()))?;
                if *m != self.images[i].mul(&self.images[j]) {
                    return Err(Error::NotHomomorphism(format!("ρ({a}·{b}) ≠ ρ({a})ρ({b})")));
                }
            }
        }
        Ok(())
    }

    /// Restriction to a subgroup of the represented group.
    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        let images = h
            .members()
            .iter()
            .map(|&g| self.try_image(g).cloned().ok_or_else(|| Error::InvalidSubgroup(format!("{g} not represented"))))
            .collect::<Result<Vec<_>>>()?;
        Self::of_subgroup(h, images)
    }

    pub fn map_scalars<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> MatrixRep<U> {
        MatrixRep {
            group: self.group.clone(),
            elements: self.elements.clone(),
            slot: self.slot.clone(),
            dim: self.dim,
            images: self.images.iter().map(|m| m.map(f)).collect(),
        }
    }

    /// Elementwise equality of the images (same element set required).
    pub fn same_matrices(&self, other: &Self) -> bool {
        self.elements == other.elements && self.images == other.images
    }
}
