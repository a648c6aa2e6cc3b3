use thiserror::Error;

use crate::oracle::IterationReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("anchor points are collinear (doubled area {area:e} at scale {scale:e})")]
    CollinearAnchors { area: f64, scale: f64 },

    #[error("anchor points are coplanar (orientation determinant {volume:e} at scale {scale:e})")]
    DegenerateTetrahedron { volume: f64, scale: f64 },

    #[error("weights must be finite and strictly positive, got {0:?}")]
    InvalidWeights(Vec<f64>),

    #[error("coordinates must be finite")]
    NonFiniteCoordinates,

    #[error("weights {0:?} violate their own triangle inequality")]
    NonTriangularWeights([f64; 3]),

    #[error("target point is not strictly inside the simplex (barycentric coordinates {0:?})")]
    TargetNotInterior(Vec<f64>),

    #[error("candidate point coincides with anchor {0}")]
    CandidateAtAnchor(usize),

    #[error("no convergence after {} iterations (last step {:e})", .0.iterations, .0.final_step)]
    MaxIterationsExceeded(IterationReport),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
