//! Commutative (and Weyl) Gröbner bases, Hilbert polynomials, module
//! operations, resolutions and Ext.

mod engine;
mod hilbert;
mod ops;
mod resolution;

pub use engine::{Algebra, Budget, Column, GroebnerBasis, ModuleOrder, Ring, SVec, Term, TermOrder};
pub use hilbert::{
    dimension_and_degree, hilbert_from_leading_terms, hilbert_numerator, hilbert_polynomial, HilbertPolynomial,
};
pub use ops::{
    annihilator, blocks, ideal_intersection, ideals_equal, is_zero_module, poly_gcd, prune, saturation, syzygies,
    Presentation,
};
pub use resolution::{ext_module, ext_modules, free_resolution, FreeResolution};
