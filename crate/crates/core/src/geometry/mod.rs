//! Parameter-space geometry of the family `z^(n+m) + b·z̄^m + c`.

pub mod discriminant;
pub mod intersect;
pub mod locus;
pub mod rays;
pub mod singular;
pub mod uj;

pub use discriminant::discriminant_analytic;
pub use locus::{b_locus_curve, b_locus_params, c_locus_curve, c_locus_params, LocusKind, LocusSample, TrochoidParams};
pub use rays::{on_ray, ray_set, Parity, Ray, RayTest};
pub use singular::{
    b_locus_double_points, check_published_rho, critical_circle_radius, cusp_candidates, cusp_radius, double_root_angle,
    rho_transition, singular_disk_radius, singular_report, DoublePoint, PublishedRho, RhoSweep, SingularReport,
};
pub use uj::{classify_uj, UjEntry, UjReport};
