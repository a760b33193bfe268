//! Finite-difference thin obstacle solver on the half box `[-L,L]^n x [0,L]`.
//!
//! The problem is even in `z`, so only `z >= 0` is stored and the plane
//! `z = 0` carries the obstacle through a mirrored stencil.

mod domain;
pub mod io;
mod oracle;
mod problem;
mod psor;
mod residuals;

pub use domain::{build_domain, build_domain_with_budget, SolverDomain, DEFAULT_NODE_BUDGET};
pub use oracle::{lcp_bruteforce, ENUMERATION_LIMIT, FALLBACK_LIMIT};
pub use problem::{default_max_sweeps, near_optimal_omega, ObstacleProblemSpec, DEFAULT_OMEGA, DEFAULT_TOL};
pub use psor::{solve_thin_obstacle, solve_with, SolveOptions, SweepOrder};
pub use residuals::{discrete_laplacian, residuals, Residuals};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("grid would have {nodes} nodes, budget is {budget}")]
    NodeBudgetExceeded { nodes: usize, budget: usize },
    #[error("invalid problem: {0}")]
    InvalidSpec(String),
    #[error("oracle limited to small problems, got {free} free nodes")]
    OracleTooLarge { free: usize },
    #[error("no contact assignment satisfies the complementarity conditions")]
    NoConsistentAssignment,
}

/// Converged (or capped) PSOR iterate.
#[derive(Clone, Debug)]
pub struct SolutionField {
    pub domain: SolverDomain,
    pub values: Vec<f64>,
    pub sweeps_used: usize,
    pub converged: bool,
    /// Largest nodal change in the last sweep.
    pub final_update: f64,
}

impl SolutionField {
    pub fn at(&self, i: usize, j: usize, k: usize) -> f64 {
        self.values[self.domain.index(i, j, k)]
    }

    /// Values on the plane `z = 0`, indexed like the obstacle.
    pub fn plane_values(&self) -> Vec<f64> {
        let nz = self.domain.dims()[2];
        (0..self.domain.plane_count()).map(|p| self.values[p * nz]).collect()
    }

    pub fn max_abs_diff(&self, other: &SolutionField) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}
