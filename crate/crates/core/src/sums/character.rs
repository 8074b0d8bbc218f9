use std::sync::Arc;

use serde::Serialize;

use super::roots::RootOfUnity;
use super::Domain;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField, Tower};

/// Discrete logarithms in `K^×` with respect to the first element (in
/// canonical order) of full multiplicative order.
#[derive(Clone, Debug)]
pub struct DiscreteLog {
    field: FiniteField,
    generator: FieldElement,
    /// `log[index(x)]`; unused at index 0.
    log: Vec<u64>,
    /// `exp[j] = index(g^j)`.
    exp: Vec<u64>,
}

impl DiscreteLog {
    pub fn new(field: &FiniteField) -> Self {
        let m = field.size() - 1;
        let generator = field
            .units()
            .find(|x| x.multiplicative_order() == Some(m))
            .expect("the multiplicative group is cyclic");
        let mut log = vec![0; field.size() as usize];
        let mut exp = Vec::with_capacity(m as usize);
        let mut x = field.one();
        for j in 0..m {
            log[x.index() as usize] = j;
            exp.push(x.index());
            x = &x * &generator;
        }
        Self { field: field.clone(), generator, log, exp }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn log(&self, x: &FieldElement) -> Option<u64> {
        (!x.is_zero()).then(|| self.log[x.index() as usize])
    }

    pub fn log_index(&self, idx: u64) -> Option<u64> {
        (idx != 0).then(|| self.log[idx as usize])
    }

    pub fn exp(&self, j: u64) -> FieldElement {
        self.field.from_index(self.exp[(j % self.exp.len() as u64) as usize])
    }
}

/// How a character was obtained.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CharacterParameter {
    /// `x ↦ ψ(ax)` on `(K, +)`, with `a` given by its index.
    Additive { a: u64 },
    /// `g^j ↦ ζ_{q−1}^{cj}` on `K^×`.
    Multiplicative { c: u64 },
    /// `y ↦ χ(N y)` or `y ↦ ψ(Tr y)` for a character of the base field.
    Pullback { base: Box<CharacterParameter>, r: usize },
}

/// A character of `(K, +)` or `K^×` with exact root-of-unity values.
///
/// Values are stored as exponents over a common `ζ_N`: `N = p` for additive
/// characters and `N = q − 1` for multiplicative ones.
#[derive(Clone, Debug)]
pub struct Character {
    field: FiniteField,
    domain: Domain,
    parameter: CharacterParameter,
    modulus: u64,
    exponents: Arc<Vec<u64>>,
}

/// Absolute traces of every element of `field`, by index.
pub(crate) fn absolute_trace_table(field: &FiniteField) -> Vec<u64> {
    let p = field.p();
    // AbsTr is GF(p)-linear; evaluate on the power basis and extend
    let basis: Vec<u64> = (0..field.degree())
        .map(|i| {
            let mut c = vec![0; field.degree()];
            c[i] = 1;
            field.element(&c).unwrap().absolute_trace()
        })
        .collect();
    field
        .elements()
        .map(|x| x.coeffs().iter().zip(&basis).map(|(c, t)| c * t).sum::<u64>() % p)
        .collect()
}

/// `x ↦ ζ_p^{AbsTr(ax)}`.
pub fn additive_character(field: &FiniteField, a: &FieldElement) -> Result<Character> {
    if a.field() != field {
        return Err(Error::FieldMismatch);
    }
    let tr = absolute_trace_table(field);
    let exponents = field.elements().map(|x| tr[(a * &x).index() as usize]).collect();
    Ok(Character {
        field: field.clone(),
        domain: Domain::Affine,
        parameter: CharacterParameter::Additive { a: a.index() },
        modulus: field.p(),
        exponents: Arc::new(exponents),
    })
}

/// `g^j ↦ ζ_{q−1}^{cj}` for the canonical generator `g`.
pub fn multiplicative_character(field: &FiniteField, c: u64) -> Character {
    multiplicative_character_with(&DiscreteLog::new(field), c)
}

pub fn multiplicative_character_with(dlog: &DiscreteLog, c: u64) -> Character {
    let field = dlog.field();
    let m = field.size() - 1;
    let c = c % m;
    let mut exponents = vec![0; field.size() as usize];
    for (idx, e) in exponents.iter_mut().enumerate().skip(1) {
        *e = (c as u128 * dlog.log_index(idx as u64).unwrap() as u128 % m as u128) as u64;
    }
    Character {
        field: field.clone(),
        domain: Domain::Multiplicative,
        parameter: CharacterParameter::Multiplicative { c },
        modulus: m,
        exponents: Arc::new(exponents),
    }
}

/// Relative trace and norm of every element of `k_r`, as base-field indices.
#[derive(Clone, Debug)]
pub struct FiberMaps {
    pub trace: Vec<u64>,
    pub norm: Vec<u64>,
}

impl FiberMaps {
    pub fn new(tower: &Tower) -> Self {
        let top = tower.top();
        let norm_exp = (top.size() - 1) / (tower.q() - 1);
        let emb = tower.embedding();
        let mut trace = Vec::with_capacity(top.size() as usize);
        let mut norm = Vec::with_capacity(top.size() as usize);
        for y in top.elements() {
            trace.push(tower.trace_index(&y));
            norm.push(emb.preimage_index(y.pow(norm_exp).index()).expect("norm lies in the base field"));
        }
        Self { trace, norm }
    }

    /// The map `y ↦ Tr y` (affine) or `y ↦ N y` (multiplicative).
    pub fn for_domain(&self, domain: Domain) -> &[u64] {
        match domain {
            Domain::Affine => &self.trace,
            Domain::Multiplicative => &self.norm,
        }
    }
}

impl Character {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn parameter(&self) -> &CharacterParameter {
        &self.parameter
    }

    /// `N` such that all values are powers of `ζ_N`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Exponent of the value at the element with canonical index `idx` over `ζ_N`.
    pub fn exponent_at(&self, idx: u64) -> Option<u64> {
        if self.domain == Domain::Multiplicative && idx == 0 {
            return None;
        }
        self.exponents.get(idx as usize).copied()
    }

    pub fn value_at(&self, idx: u64) -> Option<RootOfUnity> {
        self.exponent_at(idx).map(|e| RootOfUnity::new(self.modulus, e))
    }

    /// `χ(x)`; `None` at `0` for multiplicative characters.
    pub fn value(&self, x: &FieldElement) -> Option<RootOfUnity> {
        if x.field() != &self.field {
            return None;
        }
        self.value_at(x.index())
    }

    fn domain_indices(&self) -> std::ops::Range<u64> {
        match self.domain {
            Domain::Affine => 0..self.field.size(),
            Domain::Multiplicative => 1..self.field.size(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.domain_indices().all(|i| self.exponents[i as usize] == 0)
    }

    /// Order of the character as an element of the dual group.
    pub fn order(&self) -> u64 {
        self.domain_indices().fold(1, |acc, i| {
            num_integer::lcm(acc, RootOfUnity::new(self.modulus, self.exponents[i as usize]).order())
        })
    }

    /// Exhaustive check of `χ(x∘y) = χ(x)χ(y)` over the whole group.
    pub fn check_homomorphism(&self) -> bool {
        let elems: Vec<FieldElement> = self.domain_indices().map(|i| self.field.from_index(i)).collect();
        let m = self.modulus;
        elems.iter().all(|x| {
            let ex = self.exponents[x.index() as usize];
            elems.iter().all(|y| {
                let z = match self.domain {
                    Domain::Affine => x + y,
                    Domain::Multiplicative => x * y,
                };
                self.exponents[z.index() as usize] == (ex + self.exponents[y.index() as usize]) % m
            })
        })
    }
}

/// Pulls a character of `k` back to `k_r`: `y ↦ χ(N y)` for multiplicative
/// characters, `y ↦ ψ(Tr y)` for additive ones.
pub fn pullback_by_norm(chi: &Character, tower: &Tower) -> Result<Character> {
    pullback_with(chi, tower, &FiberMaps::new(tower))
}

pub fn pullback_with(chi: &Character, tower: &Tower, maps: &FiberMaps) -> Result<Character> {
    if chi.field() != tower.base() {
        return Err(Error::FieldMismatch);
    }
    let map = maps.for_domain(chi.domain);
    let exponents = map
        .iter()
        .enumerate()
        .map(|(y, &x)| if chi.domain == Domain::Multiplicative && y == 0 { 0 } else { chi.exponents[x as usize] })
        .collect();
    Ok(Character {
        field: tower.top().clone(),
        domain: chi.domain,
        parameter: CharacterParameter::Pullback { base: Box::new(chi.parameter.clone()), r: tower.r() },
        modulus: chi.modulus,
        exponents: Arc::new(exponents),
    })
}

/// All characters of the group `domain` of `field`: additive ones indexed
/// by `a` in canonical order, multiplicative ones by `c = 0, …, q − 2`.
pub fn all_characters(field: &FiniteField, domain: Domain) -> Vec<Character> {
    match domain {
        Domain::Affine => field.elements().map(|a| additive_character(field, &a).unwrap()).collect(),
        Domain::Multiplicative => {
            let dlog = DiscreteLog::new(field);
            (0..field.size() - 1).map(|c| multiplicative_character_with(&dlog, c)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::sums::roots::CyclotomicSum;

    fn character_sum(chi: &Character) -> num_complex::Complex64 {
        let mut s = CyclotomicSum::new(chi.modulus());
        for i in chi.domain_indices() {
            s.add(chi.exponent_at(i).unwrap(), 1);
        }
        s.to_complex()
    }

    #[test]
    fn additive_values_on_gf9() {
        let k = make_field(3, 2).unwrap();
        let psi = additive_character(&k, &k.one()).unwrap();
        let mut counts = [0; 3];
        for x in k.elements() {
            let v = psi.value(&x).unwrap();
            assert_eq!(v.pow(3), RootOfUnity::one());
            counts[v.exponent_over(3) as usize] += 1;
        }
        assert_eq!(counts, [3, 3, 3]);
        assert!(psi.check_homomorphism());
        assert_eq!(psi.order(), 3);
    }

    #[test]
    fn orthogonality_of_single_characters() {
        for (p, n) in [(2, 3), (3, 2), (5, 1), (7, 1)] {
            let k = make_field(p, n).unwrap();
            for chi in all_characters(&k, Domain::Affine).into_iter().chain(all_characters(&k, Domain::Multiplicative)) {
                let s = character_sum(&chi);
                let expected = if chi.is_trivial() {
                    match chi.domain() {
                        Domain::Affine => k.size() as f64,
                        Domain::Multiplicative => (k.size() - 1) as f64,
                    }
                } else {
                    0.0
                };
                assert!((s - expected).norm() < 1e-9, "{:?}", chi.parameter());
                assert!(chi.check_homomorphism());
            }
        }
    }

    #[test]
    fn quadratic_character_of_gf9() {
        let k = make_field(3, 2).unwrap();
        let chi = multiplicative_character(&k, 4);
        for x in k.units() {
            let is_square = k.units().any(|y| &y * &y == x);
            let v = chi.value(&x).unwrap();
            assert_eq!(v, RootOfUnity::new(2, if is_square { 0 } else { 1 }));
        }
        assert_eq!(chi.order(), 2);
    }

    #[test]
    fn generator_is_first_primitive() {
        let k = make_field(5, 1).unwrap();
        let d = DiscreteLog::new(&k);
        assert_eq!(d.generator().index(), 2);
        let k = make_field(7, 1).unwrap();
        assert_eq!(DiscreteLog::new(&k).generator().index(), 3);
    }

    #[test]
    fn pullbacks_are_characters() {
        let t = Tower::canonical(3, 1, 2).unwrap();
        for domain in [Domain::Affine, Domain::Multiplicative] {
            for chi in all_characters(t.base(), domain) {
                let pb = pullback_by_norm(&chi, &t).unwrap();
                assert!(pb.check_homomorphism());
                assert_eq!(chi.order() % pb.order(), 0);
                assert_eq!(chi.is_trivial(), pb.is_trivial());
            }
        }
    }

    #[test]
    fn additive_pullback_matches_embedded_parameter() {
        // ψ_a(Tr y) = ψ_{a}(y) on k_r when the absolute trace factors through Tr
        let t = Tower::canonical(2, 2, 2).unwrap();
        for a in t.base().elements() {
            let pb = pullback_by_norm(&additive_character(t.base(), &a).unwrap(), &t).unwrap();
            let direct = additive_character(t.top(), &t.embed(&a)).unwrap();
            for y in t.top().elements() {
                assert_eq!(pb.value(&y), direct.value(&y));
            }
        }
    }

    #[test]
    fn multiplicative_pullback_closed_form() {
        // N(g_r) = g_k^e, so χ_c ∘ N = χ'_{c·e·(q^r−1)/(q−1)} on k_r^×
        let t = Tower::canonical(3, 1, 2).unwrap();
        let (dk, dr) = (DiscreteLog::new(t.base()), DiscreteLog::new(t.top()));
        let e = dk.log(&t.norm(dr.generator())).unwrap();
        let ratio = (t.top().size() - 1) / (t.q() - 1);
        for c in 0..t.q() - 1 {
            let pb = pullback_by_norm(&multiplicative_character_with(&dk, c), &t).unwrap();
            let direct = multiplicative_character_with(&dr, c * e * ratio);
            for y in t.top().units() {
                assert_eq!(pb.value(&y), direct.value(&y));
            }
        }
    }
}
