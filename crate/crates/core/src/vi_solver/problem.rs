use super::{SolverDomain, SolverError};

/// Discrete thin obstacle problem on a [`SolverDomain`].
///
/// `obstacle` has one entry per plane node; `boundary` one entry per outer
/// boundary node, in the order of [`SolverDomain::boundary_nodes`].
#[derive(Clone, Debug)]
pub struct ObstacleProblemSpec {
    pub domain: SolverDomain,
    pub obstacle: Vec<f64>,
    pub boundary: Vec<f64>,
    pub omega: f64,
    pub tol: f64,
    pub max_sweeps: usize,
    boundary_nodes: Vec<usize>,
}

pub const DEFAULT_OMEGA: f64 = 1.8;
pub const DEFAULT_TOL: f64 = 1e-8;

pub fn default_max_sweeps(domain: &SolverDomain) -> usize {
    50 * domain.cells() * domain.cells()
}

impl ObstacleProblemSpec {
    pub fn new(domain: SolverDomain, obstacle: Vec<f64>, boundary: Vec<f64>) -> Result<Self, SolverError> {
        let boundary_nodes = domain.boundary_nodes();
        if obstacle.len() != domain.plane_count() {
            return Err(SolverError::InvalidSpec(format!(
                "obstacle has {} values for {} plane nodes",
                obstacle.len(),
                domain.plane_count()
            )));
        }
        if boundary.len() != boundary_nodes.len() {
            return Err(SolverError::InvalidSpec(format!(
                "boundary has {} values for {} boundary nodes",
                boundary.len(),
                boundary_nodes.len()
            )));
        }
        if boundary.iter().any(|v| !v.is_finite()) {
            return Err(SolverError::InvalidSpec("boundary data must be finite".into()));
        }
        if obstacle.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(SolverError::InvalidSpec("obstacle must not be NaN or +inf".into()));
        }
        let max_sweeps = default_max_sweeps(&domain);
        Ok(ObstacleProblemSpec {
            domain,
            obstacle,
            boundary,
            omega: DEFAULT_OMEGA,
            tol: DEFAULT_TOL,
            max_sweeps,
            boundary_nodes,
        })
    }

    /// Build from an obstacle function of the thin coordinates and boundary
    /// data as a function of the full coordinates `(x', z)`.
    pub fn from_fns(
        domain: SolverDomain,
        obstacle: impl Fn(&[f64]) -> f64,
        boundary: impl Fn(&[f64]) -> f64,
    ) -> Result<Self, SolverError> {
        let phi: Vec<f64> = (0..domain.plane_count()).map(|p| obstacle(&domain.plane_point(p))).collect();
        let [_, ny, nz] = domain.dims();
        let g: Vec<f64> = domain
            .boundary_nodes()
            .into_iter()
            .map(|idx| {
                let k = idx % nz;
                let j = (idx / nz) % ny;
                let i = idx / (nz * ny);
                boundary(&domain.node_point(i, j, k))
            })
            .collect();
        ObstacleProblemSpec::new(domain, phi, g)
    }

    pub fn with_omega(mut self, omega: f64) -> Result<Self, SolverError> {
        if !(omega > 0.0 && omega < 2.0) {
            return Err(SolverError::InvalidSpec(format!("omega must lie in (0,2), got {omega}")));
        }
        self.omega = omega;
        Ok(self)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self, SolverError> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(SolverError::InvalidSpec(format!("tol must be positive, got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn with_max_sweeps(mut self, sweeps: usize) -> Self {
        self.max_sweeps = sweeps.max(1);
        self
    }

    pub fn boundary_nodes(&self) -> &[usize] {
        &self.boundary_nodes
    }

    /// Plane boundary nodes where the boundary data sit strictly below the obstacle.
    pub fn compatibility_violations(&self) -> usize {
        let nz = self.domain.dims()[2];
        self.boundary_nodes
            .iter()
            .zip(&self.boundary)
            .filter(|(&idx, &g)| idx % nz == 0 && g < self.obstacle[idx / nz])
            .count()
    }

    /// Largest value the solution can take: `max(max obstacle, max boundary)`.
    pub fn data_scale(&self) -> f64 {
        let a = self.obstacle.iter().cloned().fold(0.0f64, f64::max);
        let b = self.boundary.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        a.max(b).max(1.0)
    }
}

/// Near-optimal SOR factor `2/(1 + sin(pi h / 2L))` for the mirrored box.
pub fn near_optimal_omega(domain: &SolverDomain) -> f64 {
    let s = (std::f64::consts::PI / (2.0 * domain.cells() as f64)).sin();
    2.0 / (1.0 + s)
}
