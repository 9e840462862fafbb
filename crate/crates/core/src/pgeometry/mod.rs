//! Characteristic-p geometry of Weyl-algebra modules: p-curvature, the Cartier
//! operator, presentations over the center and p-supports.

mod cartier;
mod center;
mod connection;
mod direct_image;
mod support;

pub use cartier::{cartier_1form, OneForm};
pub use center::{
    center_presentation, center_presentation_with, connection_center_presentation, CenterPresentation,
    DEFAULT_CENTER_LIMIT,
};
pub use connection::{nilpotency_index, p_curvature_matrices, p_curvature_rank1, ConnectionSpec, CurvatureData};
pub use direct_image::direct_image_coordinate_immersion;
pub use support::{
    p_support, p_support_connection, p_support_connection_with, p_support_with, support_of_center_module,
    PSupportResult,
};
