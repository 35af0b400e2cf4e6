//! Numerical hyperbolic geometry: Lobachevsky function, Klein-model
//! tetrahedron volumes, decay and face-angle studies, and the volume form on
//! plane curves.

mod curve;
mod klein;
mod lobachevsky;
pub mod quadrature;
mod study;

pub use curve::{integrate_eta, loop_path, track_curve, CurvePath, TrackError, TrackOptions};
pub use klein::{
    klein_distance, klein_volume, law_of_sines_sides, regular_directions, regular_ideal_tet, regular_radius,
    regular_tet, triangle_angle, KleinTetrahedron, Vec3, VolumeEstimate,
};
pub use lobachevsky::{ideal_tet_volume, lobachevsky, v3};
pub use study::{
    epsilon_decay_report, face_angle_check, law_of_sines_check, tail_bound, AngleSample, DecayReport, DecayRow,
    FaceAngleReport,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VolumeError {
    #[error("bad angles: {0}")]
    BadAngles(String),
    #[error("degenerate tetrahedron: {0}")]
    Degenerate(String),
    #[error("quadrature did not converge (achieved error estimate {achieved:e})")]
    NotConverged { achieved: f64 },
    #[error("sampler produced no qualifying tetrahedra")]
    NoSamples,
    #[error("bad input: {0}")]
    BadInput(String),
}
