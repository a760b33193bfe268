//! Reference solutions for small problems, assembled independently of the PSOR kernel.

use nalgebra::{DMatrix, DVector};

use super::{ObstacleProblemSpec, SolutionField, SolverError};

/// Free-node limit for exhaustive contact enumeration.
pub const ENUMERATION_LIMIT: usize = 25;
/// Free-node limit for the long-run projected iteration fallback.
pub const FALLBACK_LIMIT: usize = 2000;

/// Explicit row of the discrete operator: `sum c_m u_m - diag u = 0`.
struct Row {
    node: usize,
    plane: Option<usize>,
    diag: f64,
    nbrs: Vec<(usize, f64)>,
}

fn assemble(spec: &ObstacleProblemSpec) -> Vec<Row> {
    let d = &spec.domain;
    let [nx, ny, nz] = d.dims();
    let mut rows = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nz {
                if d.is_boundary(i, j, k) {
                    continue;
                }
                let mut nbrs: Vec<(usize, f64)> = Vec::new();
                let mut push = |a: usize, b: usize, c: usize| {
                    let idx = d.index(a, b, c);
                    match nbrs.iter_mut().find(|(m, _)| *m == idx) {
                        Some(e) => e.1 += 1.0,
                        None => nbrs.push((idx, 1.0)),
                    }
                };
                push(i - 1, j, k);
                push(i + 1, j, k);
                if d.n() == 2 {
                    push(i, j - 1, k);
                    push(i, j + 1, k);
                }
                // the ghost node below the plane mirrors k = 1
                let below = if k == 0 { 1 } else { k - 1 };
                push(i, j, below);
                push(i, j, k + 1);
                rows.push(Row {
                    node: d.index(i, j, k),
                    plane: if k == 0 { Some(d.plane_index(i, j)) } else { None },
                    diag: 2.0 * (d.n() as f64 + 1.0),
                    nbrs,
                });
            }
        }
    }
    rows
}

fn base_values(spec: &ObstacleProblemSpec) -> Vec<f64> {
    let mut u = vec![0.0; spec.domain.node_count()];
    for (&idx, &g) in spec.boundary_nodes().iter().zip(&spec.boundary) {
        u[idx] = g;
    }
    u
}

/// Exact solution of the discrete complementarity problem.
///
/// Enumerates every contact/free assignment of the plane nodes when there are
/// at most [`ENUMERATION_LIMIT`] free nodes, solving each linear system
/// densely; otherwise runs projected Gauss-Seidel to `1e-13` on explicitly
/// assembled rows (up to [`FALLBACK_LIMIT`] free nodes).
pub fn lcp_bruteforce(spec: &ObstacleProblemSpec) -> Result<SolutionField, SolverError> {
    let rows = assemble(spec);
    if rows.len() > FALLBACK_LIMIT {
        return Err(SolverError::OracleTooLarge { free: rows.len() });
    }
    if rows.len() > ENUMERATION_LIMIT {
        return Ok(projected_iteration(spec, &rows));
    }
    let plane_rows: Vec<usize> = (0..rows.len()).filter(|&r| rows[r].plane.is_some()).collect();
    let scale = spec.data_scale();
    let mut pos = vec![usize::MAX; spec.domain.node_count()];
    for mask in 0u64..(1u64 << plane_rows.len()) {
        let mut u = base_values(spec);
        let mut contact = vec![false; rows.len()];
        for (b, &r) in plane_rows.iter().enumerate() {
            if mask >> b & 1 == 1 {
                contact[r] = true;
                u[rows[r].node] = spec.obstacle[rows[r].plane.unwrap()];
            }
        }
        let unknown: Vec<usize> = (0..rows.len()).filter(|&r| !contact[r]).collect();
        for (c, &r) in unknown.iter().enumerate() {
            pos[rows[r].node] = c;
        }
        let m = unknown.len();
        let mut a = DMatrix::<f64>::zeros(m, m);
        let mut rhs = DVector::<f64>::zeros(m);
        for (c, &r) in unknown.iter().enumerate() {
            a[(c, c)] = rows[r].diag;
            for &(nb, w) in &rows[r].nbrs {
                let col = pos[nb];
                if col != usize::MAX {
                    a[(c, col)] -= w;
                } else {
                    rhs[c] += w * u[nb];
                }
            }
        }
        for &r in &unknown {
            pos[rows[r].node] = usize::MAX;
        }
        // nalgebra's LU solve underflows on 0x0 systems
        let sol = if m == 0 {
            rhs
        } else {
            match a.lu().solve(&rhs) {
                Some(s) => s,
                None => continue,
            }
        };
        for (c, &r) in unknown.iter().enumerate() {
            u[rows[r].node] = sol[c];
        }
        let eps = 1e-11 * scale;
        let feasible = rows.iter().enumerate().all(|(r, row)| match row.plane {
            Some(_) if contact[r] => {
                let s: f64 = row.nbrs.iter().map(|&(nb, w)| w * u[nb]).sum::<f64>() - row.diag * u[row.node];
                s <= eps
            }
            Some(p) => u[row.node] >= spec.obstacle[p] - eps,
            None => true,
        });
        if feasible {
            return Ok(SolutionField {
                domain: spec.domain.clone(),
                values: u,
                sweeps_used: 0,
                converged: true,
                final_update: 0.0,
            });
        }
    }
    Err(SolverError::NoConsistentAssignment)
}

fn projected_iteration(spec: &ObstacleProblemSpec, rows: &[Row]) -> SolutionField {
    let mut u = base_values(spec);
    let tol = 1e-13 * spec.data_scale();
    let mut sweeps = 0;
    let mut converged = false;
    let mut last = f64::INFINITY;
    while sweeps < 2_000_000 {
        let mut maxdiff = 0.0f64;
        for row in rows {
            let s: f64 = row.nbrs.iter().map(|&(nb, w)| w * u[nb]).sum();
            let mut new = s / row.diag;
            if let Some(p) = row.plane {
                new = new.max(spec.obstacle[p]);
            }
            maxdiff = maxdiff.max((new - u[row.node]).abs());
            u[row.node] = new;
        }
        sweeps += 1;
        last = maxdiff;
        if maxdiff < tol {
            converged = true;
            break;
        }
    }
    SolutionField { domain: spec.domain.clone(), values: u, sweeps_used: sweeps, converged, final_update: last }
}
