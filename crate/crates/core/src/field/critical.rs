use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{poly_roots, splitting_degree, Embedding, FieldElement, FiniteField, Polynomial, Tower};
use crate::error::{Error, Result};

/// Critical points and values of `f`, computed in a splitting field of `f'`.
#[derive(Clone, Debug)]
pub struct CriticalValues {
    /// Splitting field `L` of `f'`, an extension of `f`'s base field.
    pub field: FiniteField,
    /// Embedding of `f`'s base field into `L`.
    pub embedding: Embedding,
    /// Roots of `f'` in `L` with multiplicities.
    pub points: Vec<(FieldElement, usize)>,
    /// Distinct values `f(ρ)`, canonical order.
    pub values: Vec<FieldElement>,
}

impl CriticalValues {
    /// Largest multiplicity of a root of `f'` (0 when there are none).
    pub fn max_point_multiplicity(&self) -> usize {
        self.points.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }
}

fn check_hypotheses(f: &Polynomial) -> Result<usize> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::HypothesisViolation("f is constant".into()));
    }
    if (d as u64).is_multiple_of(f.base().p()) {
        return Err(Error::HypothesisViolation(format!(
            "deg f = {d} is divisible by p = {}",
            f.base().p()
        )));
    }
    Ok(d)
}

/// `S = { f(ρ) : f'(ρ) = 0 }` in the splitting field of `f'` over `f`'s
/// base field.
pub fn critical_values(f: &Polynomial) -> Result<CriticalValues> {
    critical_values_in(f, 1)
}

/// As [`critical_values`], but computed in the extension of degree
/// `extra · m` where `m` is the splitting degree of `f'`.
pub fn critical_values_in(f: &Polynomial, extra: usize) -> Result<CriticalValues> {
    check_hypotheses(f)?;
    if extra == 0 {
        return Err(Error::InvalidArgument("extension factor must be positive".into()));
    }
    let base = f.base();
    let df = f.derivative();
    let m = if df.is_constant() { 1 } else { splitting_degree(&df)? };
    let field = base.sibling(base.degree() * m * extra)?;
    let embedding = Embedding::new(base, &field)?;
    let lifted = f.map_coeffs(&embedding)?;
    let (points, values) = if df.is_constant() {
        (Vec::new(), Vec::new())
    } else {
        let roots = poly_roots(&df, &field)?;
        let values: BTreeSet<u64> = roots.roots.iter().map(|r| lifted.eval(r).index()).collect();
        let points = roots.roots.into_iter().zip(roots.multiplicities).collect();
        (points, values.into_iter().map(|i| field.from_index(i)).collect())
    };
    Ok(CriticalValues { field, embedding, points, values })
}

/// Which Frobenius-twisted combination of critical values must be avoided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenericityMode {
    /// `a ∉ S + F(S) + ⋯ + F^{r-1}(S)`
    Additive,
    /// `a ∉ S · F(S) ⋯ F^{r-1}(S)`
    Multiplicative,
}

/// The excluded set `S + F(S) + ⋯` (or the product set) for one polynomial,
/// held in the splitting field together with the embedding of `k`.
#[derive(Clone, Debug)]
pub struct ExcludedSet {
    members: BTreeSet<u64>,
    field: FiniteField,
    base_to_field: Vec<u64>,
}

impl ExcludedSet {
    pub fn new(cv: &CriticalValues, tower: &Tower, mode: GenericityMode) -> Result<Self> {
        if cv.embedding.sub() != tower.top() {
            return Err(Error::FieldMismatch);
        }
        let q = tower.q();
        let r = tower.r();
        // twisted[i] = F^i(S)
        let mut twisted: Vec<Vec<FieldElement>> = Vec::with_capacity(r);
        let mut cur = cv.values.clone();
        for _ in 0..r {
            let next = cur.iter().map(|s| s.pow(q)).collect();
            twisted.push(std::mem::replace(&mut cur, next));
        }
        let mut members = BTreeSet::new();
        if !cv.values.is_empty() {
            let unit = match mode {
                GenericityMode::Additive => cv.field.zero(),
                GenericityMode::Multiplicative => cv.field.one(),
            };
            let mut partial = vec![unit];
            for layer in &twisted {
                let mut next = Vec::with_capacity(partial.len() * layer.len());
                for acc in &partial {
                    for s in layer {
                        next.push(match mode {
                            GenericityMode::Additive => acc + s,
                            GenericityMode::Multiplicative => acc * s,
                        });
                    }
                }
                next.sort_by_key(|e| e.index());
                next.dedup();
                partial = next;
            }
            members = partial.iter().map(|e| e.index()).collect();
        }
        // a ∈ k ↦ image in L through k ⊂ k_r ⊂ L
        let base_to_field = tower
            .base()
            .elements()
            .map(|a| cv.embedding.apply(&tower.embed(&a)).index())
            .collect();
        Ok(Self { members, field: cv.field.clone(), base_to_field })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether `a ∈ k` avoids the excluded set.
    pub fn is_generic(&self, a: &FieldElement) -> bool {
        !self.members.contains(&self.base_to_field[a.index() as usize])
    }
}

/// True iff `a ∈ k` avoids the Frobenius-twisted sum (or product) set of the
/// critical values of `f ∈ k_r[x]`.
pub fn genericity_check(a: &FieldElement, f: &Polynomial, tower: &Tower, mode: GenericityMode) -> Result<bool> {
    if a.field() != tower.base() || f.base() != tower.top() {
        return Err(Error::FieldMismatch);
    }
    let cv = critical_values(f)?;
    Ok(ExcludedSet::new(&cv, tower, mode)?.is_generic(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn x_squared_over_gf3() {
        let k = make_field(3, 1).unwrap();
        let f = Polynomial::from_indices(&k, &[0, 0, 1]).unwrap();
        let cv = critical_values(&f).unwrap();
        assert_eq!(cv.values.len(), 1);
        assert!(cv.values[0].is_zero());
        assert_eq!(cv.points.len(), 1);
    }

    #[test]
    fn linear_has_no_critical_values() {
        let k = make_field(3, 2).unwrap();
        let f = Polynomial::from_indices(&k, &[0, 1]).unwrap();
        let cv = critical_values(&f).unwrap();
        assert!(cv.values.is_empty());
        let t = Tower::canonical(3, 1, 2).unwrap();
        for a in t.base().elements() {
            assert!(genericity_check(&a, &f, &t, GenericityMode::Additive).unwrap());
            assert!(genericity_check(&a, &f, &t, GenericityMode::Multiplicative).unwrap());
        }
    }

    #[test]
    fn char2_cubic() {
        // f = x^3 + x over GF(2): f' = x^2 + 1 = (x+1)^2
        let k = make_field(2, 1).unwrap();
        let f = Polynomial::from_indices(&k, &[0, 1, 0, 1]).unwrap();
        let cv = critical_values(&f).unwrap();
        assert_eq!(cv.field.degree(), 1);
        assert_eq!(cv.points, vec![(k.one(), 2)]);
        assert_eq!(cv.values, vec![f.eval(&k.one())]);
        assert!(cv.values[0].is_zero());
    }

    #[test]
    fn degree_divisible_by_p_rejected() {
        let k = make_field(3, 1).unwrap();
        let f = Polynomial::from_indices(&k, &[0, 1, 0, 1]).unwrap();
        assert!(matches!(critical_values(&f), Err(Error::HypothesisViolation(_))));
        let c = Polynomial::from_indices(&k, &[2]).unwrap();
        assert!(matches!(critical_values(&c), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn genericity_x_squared_r2() {
        let t = Tower::canonical(3, 1, 2).unwrap();
        let f = Polynomial::from_indices(t.top(), &[0, 0, 1]).unwrap();
        let k = t.base();
        assert!(genericity_check(&k.one(), &f, &t, GenericityMode::Additive).unwrap());
        assert!(!genericity_check(&k.zero(), &f, &t, GenericityMode::Additive).unwrap());
    }

    #[test]
    fn multiplicative_excluded_one() {
        // f = x^2 + 1 over GF(3): f' = 2x, S = {f(0)} = {1}
        for r in 1..=3 {
            let t = Tower::canonical(3, 1, r).unwrap();
            let f = Polynomial::from_indices(t.top(), &[1, 0, 1]).unwrap();
            let k = t.base();
            assert!(!genericity_check(&k.one(), &f, &t, GenericityMode::Multiplicative).unwrap());
            assert!(genericity_check(&k.from_int(2), &f, &t, GenericityMode::Multiplicative).unwrap());
        }
    }

    #[test]
    fn verdict_independent_of_splitting_field() {
        let t = Tower::canonical(3, 1, 2).unwrap();
        let top = t.top();
        for c0 in 0..9 {
            for c1 in 0..9 {
                let f = Polynomial::from_indices(top, &[c0, c1, 1]).unwrap();
                for mode in [GenericityMode::Additive, GenericityMode::Multiplicative] {
                    let small = ExcludedSet::new(&critical_values_in(&f, 1).unwrap(), &t, mode).unwrap();
                    let big = ExcludedSet::new(&critical_values_in(&f, 2).unwrap(), &t, mode).unwrap();
                    for a in t.base().elements() {
                        assert_eq!(small.is_generic(&a), big.is_generic(&a));
                    }
                }
            }
        }
        // quartics over GF(3) whose derivative needs a cubic extension
        let t1 = Tower::canonical(3, 1, 1).unwrap();
        for c in [[1u64, 1, 0, 0, 1], [2, 0, 1, 2, 1], [0, 2, 2, 1, 1]] {
            let f = Polynomial::from_indices(t1.top(), &c).unwrap();
            let a = critical_values_in(&f, 1).unwrap();
            let b = critical_values_in(&f, 2).unwrap();
            assert_eq!(b.field.degree(), 2 * a.field.degree());
            for mode in [GenericityMode::Additive, GenericityMode::Multiplicative] {
                let sa = ExcludedSet::new(&a, &t1, mode).unwrap();
                let sb = ExcludedSet::new(&b, &t1, mode).unwrap();
                for x in t1.base().elements() {
                    assert_eq!(sa.is_generic(&x), sb.is_generic(&x));
                }
            }
        }
    }
}
