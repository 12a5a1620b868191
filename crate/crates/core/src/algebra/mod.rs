//! Structure-constant algebras, derivations, Lie closures and the envelope
//! through which `U(L)` acts.

pub mod builtin;
mod derivation;
mod lie;
mod structure_algebra;

pub use builtin::{builtin, direct_sum, direct_sum_derivation, full_matrix, truncated_grassmann, ut};
pub use derivation::{check_derivation, inner_derivation, leibniz_failure, Derivation};
pub use lie::{lie_closure, Envelope, LieAction};
pub use structure_algebra::{AlgebraElement, StructureAlgebra};

use crate::error::Result;
use crate::linalg::Subspace;

/// Span of `b^u` over `b` in `s` and `u` in the envelope basis (identity
/// excluded when `include_identity` is false).
pub fn subspace_under_action(s: &Subspace, envelope: &Envelope, include_identity: bool) -> Result<Subspace> {
    envelope.act_on(s, include_identity)
}
