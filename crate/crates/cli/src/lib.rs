//! Command-line front end for the torricelli solver: instance files in,
//! line-delimited JSON result records out.

pub mod app;
pub mod corpus;
pub mod instance;
pub mod pipeline;
pub mod record;

pub use app::run;
pub use instance::{parse_instances, Instance, Options, Problem, ProblemKind};
pub use record::{ErrorRecord, OracleComparison, ResultRecord, Status};

/// Exit code when every record succeeded.
pub const EXIT_OK: i32 = 0;
/// Exit code for invalid input.
pub const EXIT_INVALID_INPUT: i32 = 2;
/// Exit code for a failed self-check.
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error(transparent)]
    Solver(#[from] torricelli::Error),
    #[error("oracle disagrees with the closed form: {0}")]
    OracleDisagreement(String),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        use torricelli::Error as E;
        match self {
            CliError::Malformed(_) => EXIT_INVALID_INPUT,
            CliError::OracleDisagreement(_) => EXIT_INCONSISTENT,
            CliError::Solver(e) => match e {
                E::CollinearAnchors { .. }
                | E::DegenerateTetrahedron { .. }
                | E::InvalidWeights(_)
                | E::NonFiniteCoordinates
                | E::TargetNotInterior(_) => EXIT_INVALID_INPUT,
                E::NonTriangularWeights(_)
                | E::CandidateAtAnchor(_)
                | E::MaxIterationsExceeded(_)
                | E::InternalInconsistency(_) => EXIT_INCONSISTENT,
            },
        }
    }

    /// Stable machine-readable name.
    pub fn kind(&self) -> &'static str {
        use torricelli::Error as E;
        match self {
            CliError::Malformed(_) => "malformed_input",
            CliError::OracleDisagreement(_) => "oracle_disagreement",
            CliError::Solver(e) => match e {
                E::CollinearAnchors { .. } => "collinear_anchors",
                E::DegenerateTetrahedron { .. } => "degenerate_tetrahedron",
                E::InvalidWeights(_) => "invalid_weights",
                E::NonFiniteCoordinates => "non_finite_coordinates",
                E::TargetNotInterior(_) => "target_not_interior",
                E::NonTriangularWeights(_) => "non_triangular_weights",
                E::CandidateAtAnchor(_) => "candidate_at_anchor",
                E::MaxIterationsExceeded(_) => "max_iterations_exceeded",
                E::InternalInconsistency(_) => "internal_inconsistency",
            },
        }
    }
}
