use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on group order for table-based groups.
pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group stored as a multiplication table, identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    labels: Vec<String>,
    cyclic_generator: Option<usize>,
}

impl FiniteGroup {
    /// Validates identity, closure, associativity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroup(format!("order {n} exceeds {MAX_GROUP_ORDER}")));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not n×n over 0..n".into()));
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!("({a}{b}){c} ≠ {a}({b}{c})")));
                    }
                }
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| m(a, b) == 0 && m(b, a) == 0) {
                Some(b) => inverses[a] = b,
                None => return Err(Error::InvalidGroup(format!("{a} has no inverse"))),
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(Error::InvalidGroup("label count differs from order".into()));
        }
        let mut g = Self { order: n, table: flat, inverses, labels, cyclic_generator: None };
        g.cyclic_generator = (0..n).find(|&x| g.element_order(x) == n);
        Ok(g)
    }

    /// Z/n with element `i` the residue `i`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table, None)
    }

    /// Dihedral group of order 2n; element `i + n·j` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidGroup("dihedral of order 0".into()));
        }
        let idx = |i: usize, j: usize| i % n + n * j;
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for (a, row) in table.iter_mut().enumerate() {
            let (i1, j1) = (a % n, a / n);
            for (b, slot) in row.iter_mut().enumerate() {
                let (i2, j2) = (b % n, b / n);
                // r^i1 s^j1 r^i2 s^j2 = r^{i1 ± i2} s^{j1+j2}
                let i = if j1 == 0 { i1 + i2 } else { i1 + n - i2 };
                *slot = idx(i, (j1 + j2) % 2);
            }
        }
        let labels = (0..2 * n).map(|a| format!("r{}s{}", a % n, a / n)).collect();
        Self::from_table(table, Some(labels))
    }

    /// Symmetric group on `k` points, permutations in lexicographic order.
    pub fn symmetric(k: usize) -> Result<Self> {
        let mut perms: Vec<Vec<usize>> = vec![(0..k).collect()];
        let mut cur: Vec<usize> = (0..k).collect();
        while next_permutation(&mut cur) {
            perms.push(cur.clone());
        }
        let pos = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        // (a·b)(x) = a(b(x))
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| pos(&b.iter().map(|&x| a[x]).collect())).collect())
            .collect();
        let labels = perms.iter().map(|p| format!("{p:?}")).collect();
        Self::from_table(table, Some(labels))
    }

    /// Direct product; element `(a, b)` has index `a·|H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let (n, m) = (g.order(), h.order());
        let table = (0..n * m)
            .map(|x| (0..n * m).map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m)).collect())
            .collect();
        let labels = (0..n * m).map(|x| format!("({},{})", g.labels[x / m], h.labels[x % m])).collect();
        Self::from_table(table, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        // g h g⁻¹
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn cyclic_generator(&self) -> Option<usize> {
        self.cyclic_generator
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator.is_some()
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|c| c.to_vec()).collect()
    }

    /// Members of the subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A subgroup `H ⊆ G` with an ordered set of right-coset representatives
/// `g_1, …, g_d` (so `G = ⊔ H g_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    is_member: Vec<bool>,
    coset_reps: Vec<usize>,
    coset_of: Vec<usize>,
    normal: bool,
}

impl Subgroup {
    /// Coset representatives default to the smallest element of each right
    /// coset, ordered by that element; the identity coset comes first.
    pub fn new(parent: &Arc<FiniteGroup>, members: &[usize]) -> Result<Self> {
        let n = parent.order();
        let mut is_member = vec![false; n];
        for &m in members {
            if m >= n {
                return Err(Error::InvalidSubgroup(format!("element {m} out of range")));
            }
            is_member[m] = true;
        }
        if !is_member[0] {
            return Err(Error::InvalidSubgroup("missing identity".into()));
        }
        let members: Vec<usize> = (0..n).filter(|&x| is_member[x]).collect();
        for &a in &members {
            for &b in &members {
                if !is_member[parent.mul(a, b)] {
                    return Err(Error::InvalidSubgroup("not closed under multiplication".into()));
                }
            }
        }
        let mut reps = Vec::new();
        let mut assigned = vec![false; n];
        for g in 0..n {
            if assigned[g] {
                continue;
            }
            reps.push(g);
            for &h in &members {
                assigned[parent.mul(h, g)] = true;
            }
        }
        let normal = (0..n).all(|g| members.iter().all(|&h| is_member[parent.conjugate(g, h)]));
        let mut sub = Self { parent: parent.clone(), members, is_member, coset_reps: Vec::new(), coset_of: Vec::new(), normal };
        sub.set_reps(reps)?;
        Ok(sub)
    }

    /// Same subgroup with a different ordered choice of right-coset
    /// representatives (one per coset, in any order).
    pub fn with_coset_reps(&self, reps: Vec<usize>) -> Result<Self> {
        let mut s = self.clone();
        s.set_reps(reps)?;
        Ok(s)
    }

    fn set_reps(&mut self, reps: Vec<usize>) -> Result<()> {
        let n = self.parent.order();
        let mut coset_of = vec![usize::MAX; n];
        for (i, &g) in reps.iter().enumerate() {
            if g >= n {
                return Err(Error::InvalidSubgroup(format!("representative {g} out of range")));
            }
            for &h in &self.members {
                let x = self.parent.mul(h, g);
                if coset_of[x] != usize::MAX {
                    return Err(Error::InvalidSubgroup("two representatives of one coset".into()));
                }
                coset_of[x] = i;
            }
        }
        if coset_of.contains(&usize::MAX) {
            return Err(Error::InvalidSubgroup("representatives do not cover G".into()));
        }
        self.coset_reps = reps;
        self.coset_of = coset_of;
        Ok(())
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, g: usize) -> bool {
        self.is_member[g]
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// Index `i` of the right coset `H g_i` containing `x`.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Writes `x = h · g_i`, returning `(h, i)`.
    pub fn decompose(&self, x: usize) -> (usize, usize) {
        let i = self.coset_of[x];
        let h = self.parent.mul(x, self.parent.inv(self.coset_reps[i]));
        debug_assert!(self.is_member[h]);
        (h, i)
    }

    /// Index of the coset containing the identity.
    pub fn identity_coset(&self) -> usize {
        self.coset_of[0]
    }

    /// The subgroup of `Z/n` (or any cyclic group with the given generator)
    /// of index `r`: the powers of `gen^r`.
    pub fn of_index_in_cyclic(parent: &Arc<FiniteGroup>, r: usize) -> Result<Self> {
        let gen = parent.cyclic_generator().ok_or_else(|| Error::InvalidGroup("group is not cyclic".into()))?;
        if r == 0 || !parent.order().is_multiple_of(r) {
            return Err(Error::InvalidSubgroup(format!("index {r} does not divide {}", parent.order())));
        }
        let h = parent.pow(gen, r as u64);
        Self::new(parent, &parent.generated(&[h]))
    }
}
