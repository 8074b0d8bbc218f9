//! JSON description of a subgroup representation to be induced.
//!
//! ```json
//! {"group": {"cyclic": 6}, "subgroup": [0, 2, 4],
//!  "generators": [{"element": 2, "matrix": [["0", "-1"], ["1", "-1"]]}]}
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, Matrix, MatrixRep, Scalar, Subgroup};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    /// Multiplication table with the identity at index 0.
    Table(Vec<Vec<usize>>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n),
            GroupSpec::Symmetric(k) => FiniteGroup::symmetric(*k),
            GroupSpec::Table(t) => FiniteGroup::from_table(t.clone(), None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct GeneratorImage<T> {
    pub element: usize,
    pub matrix: Matrix<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct InductionInput<T> {
    pub group: GroupSpec,
    pub subgroup: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coset_reps: Option<Vec<usize>>,
    pub generators: Vec<GeneratorImage<T>>,
}

impl<T: Scalar> InductionInput<T> {
    pub fn build(&self) -> Result<(Subgroup, MatrixRep<T>)> {
        let group = Arc::new(self.group.build()?);
        let mut h = Subgroup::new(&group, &self.subgroup)?;
        if let Some(reps) = &self.coset_reps {
            h = h.with_coset_reps(reps.clone())?;
        }
        let gens: Vec<(usize, Matrix<T>)> = self.generators.iter().map(|g| (g.element, g.matrix.clone())).collect();
        let rep = MatrixRep::from_generators(&group, h.members(), &gens)?;
        Ok((h, rep))
    }
}
