use std::collections::HashMap;

use super::{FieldElement, FiniteField};
use crate::error::{Error, Result};

/// A ring embedding `sub -> sup` determined by the image of `sub`'s generator.
///
/// The image is the root of `sub`'s modulus in `sup` with the smallest
/// canonical index, so the embedding is a deterministic function of the two
/// fields.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: FiniteField,
    sup: FiniteField,
    image_of_generator: FieldElement,
    basis_images: Vec<FieldElement>,
    inverse: HashMap<u64, u64>,
}

impl Embedding {
    pub fn new(sub: &FiniteField, sup: &FiniteField) -> Result<Self> {
        if !sub.is_subfield_of(sup) {
            return Err(Error::NotSubfield { sub: sub.degree(), sup: sup.degree() });
        }
        let root = if sub.degree() == 1 {
            sup.from_int(-(sub.modulus()[0] as i64))
        } else {
            let coeffs: Vec<FieldElement> = sub.modulus().iter().map(|&c| sup.from_int(c as i64)).collect();
            sup.elements()
                .find(|z| {
                    coeffs.iter().rev().fold(sup.zero(), |acc, c| &(&acc * z) + c).is_zero()
                })
                .ok_or(Error::EmbeddingFailed)?
        };
        let mut basis_images = Vec::with_capacity(sub.degree());
        let mut power = sup.one();
        for _ in 0..sub.degree() {
            basis_images.push(power.clone());
            power = &power * &root;
        }
        let mut emb = Self {
            sub: sub.clone(),
            sup: sup.clone(),
            image_of_generator: root,
            basis_images,
            inverse: HashMap::new(),
        };
        let inverse = sub.elements().map(|x| (emb.apply(&x).index(), x.index())).collect();
        emb.inverse = inverse;
        Ok(emb)
    }

    pub fn sub(&self) -> &FiniteField {
        &self.sub
    }

    pub fn sup(&self) -> &FiniteField {
        &self.sup
    }

    pub fn image_of_generator(&self) -> &FieldElement {
        &self.image_of_generator
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field() == &self.sub, "element not in the embedding's domain");
        let p = self.sup.p();
        let mut out = vec![0u64; self.sup.degree()];
        for (&c, img) in x.coeffs().iter().zip(&self.basis_images) {
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(img.coeffs()) {
                *o = (*o + c * b) % p;
            }
        }
        FieldElement { field: self.sup.clone(), coeffs: out }
    }

    pub fn contains(&self, y: &FieldElement) -> bool {
        self.inverse.contains_key(&y.index())
    }

    pub fn preimage(&self, y: &FieldElement) -> Result<FieldElement> {
        if y.field() != &self.sup {
            return Err(Error::FieldMismatch);
        }
        self.inverse
            .get(&y.index())
            .map(|&i| self.sub.from_index(i))
            .ok_or(Error::NotInImage)
    }

    /// Canonical index in `sub` of the preimage of a `sup` element index.
    pub fn preimage_index(&self, sup_index: u64) -> Option<u64> {
        self.inverse.get(&sup_index).copied()
    }
}

/// A tower `k ⊂ k_r` with its embedding, and the relative Frobenius,
/// trace and norm.
#[derive(Clone, Debug)]
pub struct Tower {
    embedding: Embedding,
    r: usize,
}

impl Tower {
    pub fn new(base: &FiniteField, top: &FiniteField) -> Result<Self> {
        let embedding = Embedding::new(base, top)?;
        Ok(Self { r: top.degree() / base.degree(), embedding })
    }

    /// The canonical tower GF(p^n) ⊂ GF(p^{nr}).
    pub fn canonical(p: u64, n: usize, r: usize) -> Result<Self> {
        let base = super::make_field(p, n)?;
        let top = base.sibling(n * r)?;
        Self::new(&base, &top)
    }

    pub fn base(&self) -> &FiniteField {
        self.embedding.sub()
    }

    pub fn top(&self) -> &FiniteField {
        self.embedding.sup()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// Relative degree `[k_r : k]`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// `q = |k|`.
    pub fn q(&self) -> u64 {
        self.base().size()
    }

    pub fn embed(&self, a: &FieldElement) -> FieldElement {
        self.embedding.apply(a)
    }

    /// `y ↦ y^q`.
    pub fn frobenius(&self, y: &FieldElement) -> FieldElement {
        y.pow(self.q())
    }

    fn conjugates(&self, y: &FieldElement) -> impl Iterator<Item = FieldElement> + '_ {
        let mut cur = Some(y.clone());
        let q = self.q();
        (0..self.r).map(move |_| {
            let c = cur.take().unwrap();
            cur = Some(c.pow(q));
            c
        })
    }

    /// `Σ_{i<r} y^{q^i}`, as an element of `k_r`.
    pub fn trace_in_top(&self, y: &FieldElement) -> FieldElement {
        self.conjugates(y).fold(self.top().zero(), |acc, c| &acc + &c)
    }

    /// `Π_{i<r} y^{q^i}`, as an element of `k_r`.
    pub fn norm_in_top(&self, y: &FieldElement) -> FieldElement {
        self.conjugates(y).fold(self.top().one(), |acc, c| &acc * &c)
    }

    pub fn trace(&self, y: &FieldElement) -> FieldElement {
        self.embedding.preimage(&self.trace_in_top(y)).expect("relative trace lands in the base field")
    }

    pub fn norm(&self, y: &FieldElement) -> FieldElement {
        self.embedding.preimage(&self.norm_in_top(y)).expect("relative norm lands in the base field")
    }

    pub fn trace_index(&self, y: &FieldElement) -> u64 {
        self.embedding.preimage_index(self.trace_in_top(y).index()).expect("trace in base field")
    }

    pub fn norm_index(&self, y: &FieldElement) -> u64 {
        self.embedding.preimage_index(self.norm_in_top(y).index()).expect("norm in base field")
    }
}

/// `x ↦ x^{|base|}` on the field containing `x`.
pub fn frobenius(x: &FieldElement, base: &FiniteField) -> Result<FieldElement> {
    if !base.is_subfield_of(x.field()) {
        return Err(Error::NotSubfield { sub: base.degree(), sup: x.field().degree() });
    }
    Ok(x.pow(base.size()))
}

fn tower_for(y: &FieldElement, top: &FiniteField, bottom: &FiniteField) -> Result<Tower> {
    if y.field() != top {
        return Err(Error::FieldMismatch);
    }
    Tower::new(bottom, top)
}

/// Relative trace `Tr_{top/bottom}(y)`, returned as an element of `bottom`.
pub fn rel_trace(y: &FieldElement, top: &FiniteField, bottom: &FiniteField) -> Result<FieldElement> {
    Ok(tower_for(y, top, bottom)?.trace(y))
}

/// Relative norm `N_{top/bottom}(y)`, returned as an element of `bottom`.
pub fn rel_norm(y: &FieldElement, top: &FiniteField, bottom: &FiniteField) -> Result<FieldElement> {
    Ok(tower_for(y, top, bottom)?.norm(y))
}
