//! The Weyl algebra `A_n = F[x_1..x_n]<d_1..d_n>` with `[d_i, x_j] = delta_ij`,
//! optionally localized at a monomial.

mod center;
mod element;
mod matrix;
mod module;

pub use center::{central_x, central_y, BasisKey, CentralDecomposition};
pub(crate) use element::leibniz_coefficient;
pub use element::{Exp, WeylElement, WeylRing};
pub use matrix::WeylMatrix;
pub use module::ModulePresentation;
pub(crate) use module::{from_polynomial, to_polynomial};
