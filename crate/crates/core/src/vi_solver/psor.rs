//! Projected successive over-relaxation.
//!
//! Interior nodes use the 7-point (5-point for `n = 1`) Laplacian. Plane nodes
//! reflect across `z = 0`, so their vertical neighbour counts twice. Each
//! update is `u <- max(phi, u + omega (gs - u))` on the plane and the plain
//! SOR update elsewhere.

use rayon::prelude::*;

use super::{ObstacleProblemSpec, SolutionField, SolverDomain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SweepOrder {
    #[default]
    Lexicographic,
    /// Two-colour ordering; each colour is updated in parallel on a pool of
    /// `workers` threads. Results do not depend on `workers`.
    RedBlack { workers: usize },
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions<'a> {
    pub order: SweepOrder,
    /// Starting field; plane values are projected onto the obstacle and
    /// boundary values are overwritten.
    pub initial: Option<&'a [f64]>,
}

pub fn solve_thin_obstacle(spec: &ObstacleProblemSpec) -> SolutionField {
    solve_with(spec, &SolveOptions::default())
}

pub fn solve_with(spec: &ObstacleProblemSpec, opts: &SolveOptions<'_>) -> SolutionField {
    let d = &spec.domain;
    let mut u = match opts.initial {
        Some(init) if init.len() == d.node_count() => init.to_vec(),
        _ => vec![0.0; d.node_count()],
    };
    for (&idx, &g) in spec.boundary_nodes().iter().zip(&spec.boundary) {
        u[idx] = g;
    }
    let nz = d.dims()[2];
    for p in 0..d.plane_count() {
        if !d.plane_on_edge(p) && u[p * nz] < spec.obstacle[p] {
            u[p * nz] = spec.obstacle[p];
        }
    }
    let mut sweeps = 0;
    let mut converged = false;
    let mut last = f64::INFINITY;
    match opts.order {
        SweepOrder::Lexicographic => {
            let mut lat = vec![0.0; nz];
            while sweeps < spec.max_sweeps {
                last = sweep_lexicographic(&mut u, &spec.obstacle, d, spec.omega, &mut lat);
                sweeps += 1;
                if last < spec.tol {
                    converged = true;
                    break;
                }
            }
        }
        SweepOrder::RedBlack { workers } => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool");
            pool.install(|| {
                let mut scratch = u.clone();
                while sweeps < spec.max_sweeps {
                    let a = sweep_colour(&u, &mut scratch, &spec.obstacle, d, spec.omega, 0);
                    std::mem::swap(&mut u, &mut scratch);
                    let b = sweep_colour(&u, &mut scratch, &spec.obstacle, d, spec.omega, 1);
                    std::mem::swap(&mut u, &mut scratch);
                    last = a.max(b);
                    sweeps += 1;
                    if last < spec.tol {
                        converged = true;
                        break;
                    }
                }
            });
        }
    }
    SolutionField { domain: d.clone(), values: u, sweeps_used: sweeps, converged, final_update: last }
}

/// Strides of the lateral neighbours of a node, as offsets into the value array.
fn lateral_strides(d: &SolverDomain) -> ([usize; 2], bool) {
    let [_, ny, nz] = d.dims();
    ([ny * nz, nz], d.n() == 2)
}

fn sweep_lexicographic(u: &mut [f64], phi: &[f64], d: &SolverDomain, omega: f64, lat: &mut [f64]) -> f64 {
    let [nx, ny, nz] = d.dims();
    let ([si, sj], two) = lateral_strides(d);
    let inv = 1.0 / (2.0 * (d.n() as f64 + 1.0));
    let (jlo, jhi) = if two { (1, ny - 1) } else { (0, 1) };
    let mut maxdiff = 0.0f64;
    for i in 1..nx - 1 {
        for j in jlo..jhi {
            let base = (i * ny + j) * nz;
            let m = nz - 1;
            {
                let w = &u[base - si..base - si + m];
                let e = &u[base + si..base + si + m];
                if two {
                    let s = &u[base - sj..base - sj + m];
                    let n = &u[base + sj..base + sj + m];
                    for k in 0..m {
                        lat[k] = w[k] + e[k] + s[k] + n[k];
                    }
                } else {
                    for k in 0..m {
                        lat[k] = w[k] + e[k];
                    }
                }
            }
            let row = &mut u[base..base + nz];
            let ob = phi[i * ny + j];
            let old = row[0];
            let gs = (lat[0] + 2.0 * row[1]) * inv;
            let mut new = old + omega * (gs - old);
            if new < ob {
                new = ob;
            }
            row[0] = new;
            maxdiff = maxdiff.max((new - old).abs());
            for k in 1..m {
                let old = row[k];
                let gs = (lat[k] + row[k - 1] + row[k + 1]) * inv;
                let new = old + omega * (gs - old);
                row[k] = new;
                maxdiff = maxdiff.max((new - old).abs());
            }
        }
    }
    maxdiff
}

/// One colour of a red-black sweep: writes the full field into `out`.
fn sweep_colour(u: &[f64], out: &mut [f64], phi: &[f64], d: &SolverDomain, omega: f64, colour: usize) -> f64 {
    let [nx, ny, nz] = d.dims();
    let ([si, sj], two) = lateral_strides(d);
    let inv = 1.0 / (2.0 * (d.n() as f64 + 1.0));
    out.par_chunks_mut(si)
        .enumerate()
        .map(|(i, slab)| {
            let off = i * si;
            slab.copy_from_slice(&u[off..off + si]);
            if i == 0 || i == nx - 1 {
                return 0.0;
            }
            let mut maxdiff = 0.0f64;
            for j in 0..ny {
                if two && (j == 0 || j == ny - 1) {
                    continue;
                }
                let base = off + j * nz;
                let start = (colour + i + j) % 2;
                for k in (start..nz - 1).step_by(2) {
                    let c = base + k;
                    let mut s = u[c - si] + u[c + si];
                    if two {
                        s += u[c - sj] + u[c + sj];
                    }
                    s += if k == 0 { 2.0 * u[c + 1] } else { u[c - 1] + u[c + 1] };
                    let old = u[c];
                    let mut new = old + omega * (s * inv - old);
                    if k == 0 && new < phi[i * ny + j] {
                        new = phi[i * ny + j];
                    }
                    slab[j * nz + k] = new;
                    maxdiff = maxdiff.max((new - old).abs());
                }
            }
            maxdiff
        })
        .reduce(|| 0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vi_solver::build_domain;

    #[test]
    fn constant_boundary_gives_constant_field() {
        let d = build_domain(2, 1.0, 0.25).unwrap();
        let spec = ObstacleProblemSpec::from_fns(d, |_| 0.0, |_| 1.0).unwrap().with_tol(1e-12).unwrap();
        let f = solve_thin_obstacle(&spec);
        assert!(f.converged);
        assert!(f.values.iter().all(|v| (v - 1.0).abs() < 1e-10));
    }

    #[test]
    fn obstacle_below_zero_gives_zero() {
        let d = build_domain(1, 1.0, 0.25).unwrap();
        let spec = ObstacleProblemSpec::from_fns(d, |_| -1.0, |_| 0.0).unwrap();
        let f = solve_thin_obstacle(&spec);
        assert!(f.converged);
        assert!(f.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn red_black_matches_lexicographic() {
        let d = build_domain(2, 1.0, 0.125).unwrap();
        let spec = ObstacleProblemSpec::from_fns(d, |x| 0.5 - x[0] * x[0] - 2.0 * x[1] * x[1], |_| 0.0)
            .unwrap()
            .with_tol(1e-13)
            .unwrap();
        let a = solve_thin_obstacle(&spec);
        let b = solve_with(&spec, &SolveOptions { order: SweepOrder::RedBlack { workers: 2 }, initial: None });
        assert!(a.converged && b.converged);
        let diff = a.values.iter().zip(&b.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(diff < 1e-10, "{diff}");
    }

    #[test]
    fn sweep_cap_reports_non_convergence() {
        let d = build_domain(2, 1.0, 0.125).unwrap();
        let spec = ObstacleProblemSpec::from_fns(d, |_| 1.0, |_| 0.0).unwrap().with_max_sweeps(3);
        let f = solve_thin_obstacle(&spec);
        assert!(!f.converged);
        assert_eq!(f.sweeps_used, 3);
    }
}
