//! Closed-form solver for the weighted three-point facility location problem
//! (the weighted Fermat-Torricelli point), its equal-weight specialization,
//! the inverse weight-assignment problem in two and three dimensions, and an
//! iterative oracle used to cross-check all of them.

pub mod classical;
pub mod error;
pub mod geometry;
pub mod inverse;
pub mod objective;
pub mod oracle;
pub mod solver;

pub use classical::{fermat_point_area_free, solve_classical};
pub use error::{Error, Result};
pub use geometry::{doubled_area, signed_doubled_area, PlanarPoint, SpatialPoint};
pub use inverse::{
    inverse_min_value_2d, inverse_min_value_3d, inverse_weights_2d, inverse_weights_3d,
    power_of_point_2d, InverseSolution, TetrahedronInstance,
};
pub use oracle::{grid_refine, stationarity_residual, weiszfeld, IterationReport, WeiszfeldConfig};
pub use solver::{
    k_coefficients, minimum_d, side_lengths, solve, vertex_test, weight_sigma, Diagnostics, Regime,
    SideLengths, Solution, Solver, TriangleInstance, WeightTriple,
};
