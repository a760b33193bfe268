use serde::Serialize;

use super::{ObstacleProblemSpec, SolutionField};

/// Discrete optimality residuals of a field, in units of the Laplacian (`1/h^2`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Residuals {
    /// max |L_h u| over free nodes off the plane and plane nodes strictly above the obstacle.
    pub harmonic: f64,
    /// max positive part of L_h u over all free nodes.
    pub supersolution: f64,
    /// max |min(u - phi, -L_h u)| over free plane nodes.
    pub complementarity: f64,
    /// max (phi - u)^+ over free plane nodes.
    pub obstacle: f64,
    /// max |u - g| over boundary nodes.
    pub boundary: f64,
}

impl Residuals {
    pub fn max_equation(&self) -> f64 {
        self.harmonic.max(self.supersolution).max(self.complementarity)
    }
}

/// Discrete Laplacian at a free node, with the mirror rule on the plane.
pub fn discrete_laplacian(values: &[f64], spec: &ObstacleProblemSpec, i: usize, j: usize, k: usize) -> f64 {
    let d = &spec.domain;
    let [_, ny, nz] = d.dims();
    let si = ny * nz;
    let c = d.index(i, j, k);
    let mut s = values[c - si] + values[c + si];
    let mut diag = 4.0;
    if d.n() == 2 {
        s += values[c - nz] + values[c + nz];
        diag += 2.0;
    }
    s += if k == 0 { 2.0 * values[c + 1] } else { values[c - 1] + values[c + 1] };
    let h = d.spacing();
    (s - diag * values[c]) / (h * h)
}

pub fn residuals(field: &SolutionField, spec: &ObstacleProblemSpec) -> Residuals {
    let d = &spec.domain;
    let [nx, ny, nz] = d.dims();
    let u = &field.values;
    let mut r = Residuals { harmonic: 0.0, supersolution: 0.0, complementarity: 0.0, obstacle: 0.0, boundary: 0.0 };
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nz {
                if d.is_boundary(i, j, k) {
                    continue;
                }
                let lap = discrete_laplacian(u, spec, i, j, k);
                r.supersolution = r.supersolution.max(lap);
                if k == 0 {
                    let gap = u[d.index(i, j, 0)] - spec.obstacle[d.plane_index(i, j)];
                    r.obstacle = r.obstacle.max(-gap);
                    r.complementarity = r.complementarity.max(gap.min(-lap).abs());
                    if gap > 0.0 {
                        r.harmonic = r.harmonic.max(lap.abs());
                    }
                } else {
                    r.harmonic = r.harmonic.max(lap.abs());
                }
            }
        }
    }
    for (&idx, &g) in spec.boundary_nodes().iter().zip(&spec.boundary) {
        r.boundary = r.boundary.max((u[idx] - g).abs());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vi_solver::{build_domain, solve_thin_obstacle};

    fn field_of(spec: &ObstacleProblemSpec, v: f64) -> SolutionField {
        SolutionField {
            domain: spec.domain.clone(),
            values: vec![v; spec.domain.node_count()],
            sweeps_used: 0,
            converged: true,
            final_update: 0.0,
        }
    }

    #[test]
    fn constant_one_field_is_exact() {
        let d = build_domain(2, 1.0, 0.25).unwrap();
        let spec = ObstacleProblemSpec::from_fns(d, |_| 0.0, |_| 1.0).unwrap();
        let r = residuals(&field_of(&spec, 1.0), &spec);
        assert_eq!(r, Residuals { harmonic: 0.0, supersolution: 0.0, complementarity: 0.0, obstacle: 0.0, boundary: 0.0 });
    }

    #[test]
    fn zero_field_under_negative_obstacle_is_exact() {
        let d = build_domain(2, 1.0, 0.25).unwrap();
        let spec = ObstacleProblemSpec::from_fns(d, |_| -1.0, |_| 0.0).unwrap();
        let r = residuals(&field_of(&spec, 0.0), &spec);
        assert_eq!(r.max_equation(), 0.0);
        assert_eq!(r.boundary, 0.0);
    }

    #[test]
    fn converged_solve_has_small_residuals() {
        // obstacle -(|x|^2 - 1) with zero boundary data
        let d = build_domain(2, 2.0, 0.125).unwrap();
        let h = d.spacing();
        let spec = ObstacleProblemSpec::from_fns(d, |x| 1.0 - x[0] * x[0] - x[1] * x[1], |_| 0.0).unwrap();
        let f = solve_thin_obstacle(&spec);
        assert!(f.converged);
        let r = residuals(&f, &spec);
        let bound = 10.0 * spec.tol / (h * h);
        assert!(r.max_equation() <= bound, "{r:?} vs {bound}");
        assert_eq!(r.boundary, 0.0);
        assert_eq!(r.obstacle, 0.0);
    }
}
