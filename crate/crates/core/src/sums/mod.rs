//! Characters of `(k,+)` and `k^×` with exact root-of-unity values, kernel
//! trace functions `y ↦ #f⁻¹(y) − 1`, trace- and norm-restricted sums with
//! their bounds, and the discrete Fourier transform on both groups.

mod character;
mod dft;
mod restricted;
mod roots;
mod trace_fn;

use serde::{Deserialize, Serialize};

pub use character::{
    additive_character, all_characters, multiplicative_character, multiplicative_character_with, pullback_by_norm,
    pullback_with, Character, CharacterParameter, DiscreteLog, FiberMaps,
};
pub use dft::{dft, fiber_sums, fubini_check, inverse_dft, pair, FubiniEntry, FubiniReport, Spectrum};
pub(crate) use restricted::analyse;
pub use restricted::{restricted_sum, sum_bound, BoundStatus, SumContext, SumMode, SumReport};
pub use roots::{root_complex, CompensatedSum, CyclotomicSum, RootOfUnity};
pub use trace_fn::{kernel_trace_function, Provenance, TraceFunction, Values};

/// Absolute tolerance for comparisons of complex sums.
pub const TOLERANCE: f64 = 1e-9;

/// The group a function or character lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// `(K, +)`
    Affine,
    /// `K^×`
    Multiplicative,
}
