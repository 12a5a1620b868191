//! Multilinear polynomials with derivation exponents: evaluation, codimensions,
//! identity spaces, consequence closure and containment of identities.

mod codim;
mod consequence;
mod containment;
mod eval;
mod poly;
mod spanning;

pub use codim::{
    codim, derive_polynomial, evaluation_matrix, identity_space, is_identity, monomial_basis, polynomial_from_coords,
    IdentityCheck, IdentityReport, RankMode,
};
pub use consequence::consequences_space;
pub use containment::{containment_check, generator_words, ContainmentResult};
pub use eval::{Evaluator, MonomialIndexing};
pub use poly::{normalize_word, ExponentWord, LMonomial, LPolynomial};
pub use spanning::{spanning_rank, ut2_eps_spanning_set, ut2_spanning_set};
