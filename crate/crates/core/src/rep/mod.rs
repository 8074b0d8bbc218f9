//! Finite groups as multiplication tables, exact matrix representations,
//! tensor induction and the cocycle description of representations of a
//! group through a normal subgroup.

mod cocycle;
mod group;
mod induction;
mod matrix;
pub mod random;
mod representation;
pub mod serial;

pub use cocycle::{
    conjugate_rep, reconstruct_from_cocycle, restrict_to_cocycle, tensor_induction_datum, tensor_induction_via_cocycle,
    CocycleDatum,
};
pub use group::{FiniteGroup, Subgroup, MAX_GROUP_ORDER};
pub use induction::{
    frobenius_trace_check, frobenius_trace_check_all, induced_matrix, tensor_induction, tensor_induction_with_budget,
    FrobeniusTrace, DEFAULT_MATRIX_BUDGET,
};
pub use matrix::{permuted_kronecker, Matrix, Scalar};
pub(crate) use matrix::digits;
pub use representation::MatrixRep;

/// Default exact scalar ring.
pub type Rational = num_rational::BigRational;
