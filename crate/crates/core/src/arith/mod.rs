//! Scalars, monomials, term orders and sparse polynomials.

pub(crate) mod dense;
mod factor;
mod field;
mod monomial;
mod order;
mod poly;

pub use factor::{squarefree_part, univariate_roots, DEFAULT_SCAN_BUDGET};
pub use field::{Embedding, Field, FieldSpec, Scalar};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::{central_names, plain_names, Polynomial};
