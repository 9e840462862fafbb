//! Checks run on p-supports: Lagrangian verdicts from sampled smooth points,
//! purity through double Ext, degrees, generic ranks and the bound reports.

mod bounds;
mod lagrangian;
mod linalg;
mod points;
mod purity;

pub use bounds::{
    bounds_report, central_ideal, generic_rank_estimate, hilbert_scaling_check, ideal_strings, linear_certificate,
    support_components, AggregateBound, BoundsReport, Component, ComponentBound, IrreducibilityCertificate,
    RankEstimate, ScalingCheck,
};
pub use lagrangian::{lagrangian_verdict, rees_degree, LagrangianVerdict, SymplecticFrame, VerdictStatus, MIN_POINTS};
pub use linalg::{kernel, rank};
pub use points::{sample_smooth_points, SampleOptions, SmoothPoint};
pub use purity::{purity_of_blocks, purity_of_module, purity_test, Purity};
