use crate::polyalg::Polynomial;
use crate::setgeom::{extract_thin_sets, ThinSets};
use crate::vi_solver::{
    build_domain, near_optimal_omega, residuals, solve_with, ObstacleProblemSpec, SolutionField, SolveOptions,
    SolverDomain, SweepOrder,
};

use super::{PipelineError, PipelineReport};

/// Sphere samples for the boundedness certificate.
pub(crate) const CLASS_SAMPLES: usize = 4096;

/// Grid and solver settings shared by the pipelines.
#[derive(Clone, Debug, PartialEq)]
pub struct GridParams {
    pub half_width: f64,
    pub spacing: f64,
    /// `None` picks `2/(1 + sin(pi h / 2L))`.
    pub omega: Option<f64>,
    pub tol: f64,
    /// `None` uses [`default_tau`].
    pub tau_c: Option<f64>,
    pub max_sweeps: Option<usize>,
    pub order: SweepOrder,
}

impl GridParams {
    /// L = 4, h = 1/16: 129 x 129 x 65 nodes.
    pub fn pinned() -> Self {
        GridParams {
            half_width: 4.0,
            spacing: 1.0 / 16.0,
            omega: None,
            tol: 1e-10,
            tau_c: None,
            max_sweeps: None,
            order: SweepOrder::Lexicographic,
        }
    }

    /// L = 6 with the same node counts, for the slower far field of positivity runs.
    pub fn positivity() -> Self {
        GridParams { half_width: 6.0, spacing: 3.0 / 32.0, ..GridParams::pinned() }
    }

    pub fn with_grid(mut self, half_width: f64, spacing: f64) -> Self {
        self.half_width = half_width;
        self.spacing = spacing;
        self
    }

    pub fn domain(&self, n: usize) -> Result<SolverDomain, PipelineError> {
        Ok(build_domain(n, self.half_width, self.spacing)?)
    }

    pub fn budget(&self) -> f64 {
        2.0 / self.half_width
    }

    pub(crate) fn configure(&self, spec: ObstacleProblemSpec) -> Result<ObstacleProblemSpec, PipelineError> {
        let omega = self.omega.unwrap_or_else(|| near_optimal_omega(&spec.domain));
        let mut spec = spec.with_omega(omega)?.with_tol(self.tol)?;
        if let Some(s) = self.max_sweeps {
            spec = spec.with_max_sweeps(s);
        }
        Ok(spec)
    }

    pub(crate) fn solve(&self, spec: &ObstacleProblemSpec, initial: Option<&[f64]>) -> SolutionField {
        solve_with(spec, &SolveOptions { order: self.order, initial })
    }

    pub(crate) fn tau(&self, spec: &ObstacleProblemSpec) -> f64 {
        self.tau_c.unwrap_or_else(|| default_tau(spec))
    }

    pub(crate) fn echo(&self, report: &mut PipelineReport) {
        report.input("L", self.half_width);
        report.input("h", self.spacing);
        report.input("tol", self.tol);
        if let Some(w) = self.omega {
            report.input("omega", w);
        }
        if let Some(t) = self.tau_c {
            report.input("tau_c", t);
        }
        if let Some(s) = self.max_sweeps {
            report.input("max_sweeps", s as f64);
        }
        if let SweepOrder::RedBlack { workers } = self.order {
            report.input("workers", workers as f64);
        }
    }
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams::pinned()
    }
}

/// Contact threshold: `1000 tol` relative to the size of the data.
pub fn default_tau(spec: &ObstacleProblemSpec) -> f64 {
    1000.0 * spec.tol * spec.data_scale()
}

/// Everything a pipeline produced, for rendering and further checks.
#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub report: PipelineReport,
    pub spec: ObstacleProblemSpec,
    pub field: SolutionField,
    pub sets: ThinSets,
    /// Polynomial whose zero level set is drawn on overlays.
    pub overlay: Option<Polynomial>,
    /// Secondary solves (barriers, earlier ladder rungs).
    pub aux: Vec<(String, SolutionField)>,
}

/// Evaluate a thin-plane polynomial at every plane node.
pub(crate) fn plane_eval(p: &Polynomial, domain: &SolverDomain) -> Vec<f64> {
    (0..domain.plane_count()).map(|q| p.eval_unchecked(&domain.plane_point(q))).collect()
}

/// Evaluate a polynomial in `(x', z)` at every node.
pub(crate) fn node_eval(p: &Polynomial, domain: &SolverDomain) -> Vec<f64> {
    let [nx, ny, nz] = domain.dims();
    let mut out = Vec::with_capacity(domain.node_count());
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nz {
                out.push(p.eval_unchecked(&domain.node_point(i, j, k)));
            }
        }
    }
    out
}

/// Free nodes one step inside the outer boundary.
pub(crate) fn ring_nodes(domain: &SolverDomain) -> Vec<usize> {
    let [nx, ny, nz] = domain.dims();
    let two = domain.n() == 2;
    let mut out = Vec::new();
    for i in 1..nx - 1 {
        for j in 0..ny {
            if two && (j == 0 || j == ny - 1) {
                continue;
            }
            for k in 0..nz - 1 {
                let near = i == 1 || i == nx - 2 || k == nz - 2 || (two && (j == 1 || j == ny - 2));
                if near {
                    out.push(domain.index(i, j, k));
                }
            }
        }
    }
    out
}

/// Solver diagnostics and the convergence/residual/boundary checks every solve gets.
pub(crate) fn solve_checks(report: &mut PipelineReport, prefix: &str, spec: &ObstacleProblemSpec, field: &SolutionField) {
    let h = spec.domain.spacing();
    let r = residuals(field, spec);
    report.diag(&format!("{prefix}sweeps"), field.sweeps_used as f64);
    report.diag(&format!("{prefix}final_update"), field.final_update);
    report.diag(&format!("{prefix}omega"), spec.omega);
    report.diag(&format!("{prefix}residual.harmonic"), r.harmonic);
    report.diag(&format!("{prefix}residual.supersolution"), r.supersolution);
    report.diag(&format!("{prefix}residual.complementarity"), r.complementarity);
    report.diag(&format!("{prefix}residual.obstacle"), r.obstacle);
    report.check_true(&format!("{prefix}solver converged"), "discrete variational inequality", field.converged);
    report.check_le(
        &format!("{prefix}equation residual"),
        "discrete variational inequality",
        r.max_equation(),
        10.0 * spec.tol / (h * h),
    );
    report.check_eq(&format!("{prefix}boundary mismatch"), "Dirichlet data", r.boundary, 0.0);
}

/// `p = H - c` with `H` homogeneous of positive degree and `c > 0`.
pub(crate) fn homogeneous_minus_constant(p: &Polynomial) -> bool {
    let zero = vec![0u32; p.dim()];
    let c = p.coefficient(&zero);
    let mut degrees = p.terms().filter(|(e, _)| e.iter().any(|&a| a > 0)).map(|(e, _)| e.iter().sum::<u32>());
    let first = match degrees.next() {
        Some(d) => d,
        None => return false,
    };
    c < 0.0 && degrees.all(|d| d == first)
}

pub(crate) fn sets_of(field: &SolutionField, spec: &ObstacleProblemSpec, tau: f64) -> ThinSets {
    extract_thin_sets(field, spec, tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    #[test]
    fn homogeneous_detection() {
        assert!(homogeneous_minus_constant(&parse_poly("x1^2+x2^2-1", 2).unwrap()));
        assert!(homogeneous_minus_constant(&parse_poly("(x1^2+x2^2)^4-1", 2).unwrap()));
        assert!(!homogeneous_minus_constant(&parse_poly("x1^2+x2^2+1", 2).unwrap()));
        assert!(!homogeneous_minus_constant(&parse_poly("8*x1^2+8*(x2^2-1)^2-1", 2).unwrap()));
        assert!(!homogeneous_minus_constant(&parse_poly("1", 2).unwrap()));
    }

    #[test]
    fn ring_is_one_layer() {
        let d = build_domain(2, 1.0, 0.25).unwrap();
        // 9 x 9 x 5 nodes, free block 7 x 7 x 4, inner block 5 x 5 x 3
        assert_eq!(ring_nodes(&d).len(), 7 * 7 * 4 - 5 * 5 * 3);
    }
}
