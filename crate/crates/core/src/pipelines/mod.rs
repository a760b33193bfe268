//! End-to-end constructions: build the data, solve, extract the sets and
//! check the predicted inclusions.

mod approx;
mod common;
mod compact;
mod named;
mod polysets;
mod positivity;
mod report;
mod rho;
mod subsets;
pub mod verify;

pub use approx::{run_thm_approx, ApproxParams};
pub use common::{default_tau, GridParams, PipelineOutcome};
pub use compact::run_compact_contact;
pub use named::{default_grid, run_named_example, NAMED_EXAMPLES};
pub use polysets::{run_prop_polysets, KChoice};
pub use positivity::run_bounded_positivity;
pub use report::{Check, PipelineReport};
pub use rho::{rho_bar, rho_bar_numeric};
pub use subsets::{run_prop_subsets, SubsetParams};

use thiserror::Error;

use crate::polyalg::PolyError;
use crate::setgeom::GeomError;
use crate::vi_solver::SolverError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown example '{0}'")]
    UnknownExample(String),
}
