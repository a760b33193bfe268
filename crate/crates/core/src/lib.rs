//! Numerical companion for thin obstacle problems whose free boundaries have
//! prescribed geometry.
//!
//! * [`polyalg`]: polynomials, harmonic extensions, negativity certificates.
//! * [`vi_solver`]: finite-difference thin obstacle solver (PSOR) and a
//!   brute-force complementarity oracle.
//! * [`setgeom`]: contact and positivity sets on the thin plane.
//! * [`pipelines`]: the constructions, each producing a checked report.

pub mod pipelines;
pub mod polyalg;
pub mod setgeom;
pub mod vi_solver;

pub use pipelines::{Check, GridParams, PipelineOutcome, PipelineReport};
pub use polyalg::{parse_poly, Polynomial};
pub use setgeom::ThinSet;
pub use vi_solver::{ObstacleProblemSpec, SolutionField, SolverDomain};
