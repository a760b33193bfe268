//! Randomised property suites: the solver against the exhaustive oracle, the
//! comparison principle, and algebraic identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyalg::{harmonic_extension, laplacian_poly, parse_poly, Parity, Polynomial};
use crate::setgeom::{hausdorff, ThinSet};
use crate::vi_solver::{build_domain, lcp_bruteforce, solve_thin_obstacle, ObstacleProblemSpec, SolverDomain};

use super::{rho_bar, rho_bar_numeric, PipelineError, PipelineReport};

/// Aggregate of one randomised suite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteResult {
    pub cases: usize,
    /// Worst measured quantity (difference or violation).
    pub worst: f64,
    pub failures: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyCounts {
    pub oracle: usize,
    pub comparison: usize,
    pub algebra: usize,
}

impl Default for VerifyCounts {
    fn default() -> Self {
        VerifyCounts { oracle: 200, comparison: 50, algebra: 100 }
    }
}

/// Random domain with at most 25 plane nodes (and at most 25 free nodes).
fn small_domain(rng: &mut ChaCha8Rng) -> SolverDomain {
    let h = [0.25, 0.5, 1.0][rng.random_range(0..3)];
    if rng.random_bool(0.5) {
        build_domain(2, 2.0 * h, h).expect("small domain")
    } else {
        let cells = rng.random_range(2..=3);
        build_domain(1, cells as f64 * h, h).expect("small domain")
    }
}

fn random_spec(rng: &mut ChaCha8Rng, d: &SolverDomain) -> ObstacleProblemSpec {
    let obstacle: Vec<f64> = (0..d.plane_count()).map(|_| rng.random_range(-1.0..1.0)).collect();
    let boundary: Vec<f64> = (0..d.boundary_nodes().len()).map(|_| rng.random_range(-0.5..0.5)).collect();
    ObstacleProblemSpec::new(d.clone(), obstacle, boundary).expect("valid random spec")
}

/// PSOR against exhaustive enumeration of contact sets; passes at `1e-8`.
pub fn oracle_suite(seed: u64, count: usize) -> Result<SuiteResult, PipelineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..count {
        let d = small_domain(&mut rng);
        let omega = rng.random_range(1.0..1.9);
        let spec = random_spec(&mut rng, &d).with_omega(omega)?.with_tol(1e-13)?.with_max_sweeps(100_000);
        let psor = solve_thin_obstacle(&spec);
        let exact = lcp_bruteforce(&spec)?;
        let diff = psor.max_abs_diff(&exact);
        worst = worst.max(diff);
        if diff > 1e-8 || !psor.converged {
            failures += 1;
        }
    }
    Ok(SuiteResult { cases: count, worst, failures })
}

/// Ordered data give ordered solutions; passes at `1e-7`.
pub fn comparison_suite(seed: u64, count: usize) -> Result<SuiteResult, PipelineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..count {
        let h = [0.125, 0.25][rng.random_range(0..2)];
        let d = build_domain(2, rng.random_range(2..=4) as f64 * h, h)?;
        let lo = random_spec(&mut rng, &d).with_tol(1e-11)?;
        let ob: Vec<f64> = lo.obstacle.iter().map(|v| v + rng.random_range(0.0..0.5)).collect();
        let bd: Vec<f64> = lo.boundary.iter().map(|v| v + rng.random_range(0.0..0.5)).collect();
        let hi = ObstacleProblemSpec::new(d.clone(), ob, bd)?.with_tol(1e-11)?;
        let u1 = solve_thin_obstacle(&lo);
        let u2 = solve_thin_obstacle(&hi);
        let violation = u1.values.iter().zip(&u2.values).map(|(a, b)| a - b).fold(0.0, f64::max);
        worst = worst.max(violation);
        if violation > 1e-7 || !u1.converged || !u2.converged {
            failures += 1;
        }
    }
    Ok(SuiteResult { cases: count, worst, failures })
}

fn random_poly(rng: &mut ChaCha8Rng, dim: usize) -> Polynomial {
    let terms = rng.random_range(1..6);
    Polynomial::from_terms(
        dim,
        (0..terms).map(|_| {
            let e: Vec<u32> = (0..dim).map(|_| rng.random_range(0..5)).collect();
            (e, rng.random_range(-4i32..=4) as f64)
        }),
    )
}

/// Harmonic extensions are harmonic with the right trace; printing round-trips.
pub fn algebra_suite(seed: u64, count: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut worst = 0.0f64;
    for _ in 0..count {
        let dim = rng.random_range(1..=3);
        let p = random_poly(&mut rng, dim);
        for parity in [Parity::Even, Parity::Odd] {
            let ext = harmonic_extension(&p, parity);
            let lap = laplacian_poly(&ext);
            worst = worst.max(lap.max_abs_coef());
            if !lap.is_zero_within(ext.max_abs_coef().max(1.0)) {
                failures += 1;
            }
        }
        let x: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.5..1.5)).collect();
        let mut xz = x.clone();
        xz.push(0.0);
        let even = harmonic_extension(&p, Parity::Even).eval_unchecked(&xz);
        if (even - p.eval_unchecked(&x)).abs() > 1e-9 * (1.0 + even.abs()) {
            failures += 1;
        }
        match parse_poly(&p.to_string(), dim) {
            Ok(q) if q == p => {}
            _ => failures += 1,
        }
    }
    SuiteResult { cases: count, worst, failures }
}

/// Hausdorff distance is symmetric and satisfies the triangle inequality.
pub fn geometry_suite(seed: u64, count: usize) -> Result<SuiteResult, PipelineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = build_domain(2, 1.0, 0.125)?;
    let mut failures = 0;
    let mut worst = 0.0f64;
    let random_set = |rng: &mut ChaCha8Rng| {
        let mut s = ThinSet::empty(&d);
        while s.is_empty() {
            s.mask = (0..d.plane_count()).map(|_| rng.random_bool(0.1)).collect();
        }
        s
    };
    for _ in 0..count {
        let (a, b, c) = (random_set(&mut rng), random_set(&mut rng), random_set(&mut rng));
        let ab = hausdorff(&a, &b)?;
        let ba = hausdorff(&b, &a)?;
        let tri = hausdorff(&a, &c)? - ab - hausdorff(&b, &c)?;
        worst = worst.max((ab - ba).abs()).max(tri);
        if ab != ba || tri > 1e-12 {
            failures += 1;
        }
    }
    Ok(SuiteResult { cases: count, worst, failures })
}

/// All suites as one report.
pub fn run_verify(seed: u64, counts: VerifyCounts) -> Result<PipelineReport, PipelineError> {
    let mut r = PipelineReport::new("verify");
    r.input("seed", seed as f64);
    r.input("oracle_cases", counts.oracle as f64);
    r.input("comparison_cases", counts.comparison as f64);
    r.input("algebra_cases", counts.algebra as f64);
    let o = oracle_suite(seed, counts.oracle)?;
    r.diag("oracle.max_diff", o.worst);
    r.check_eq("PSOR matches exhaustive oracle to 1e-8", "discrete complementarity problem", o.failures as f64, 0.0);
    let c = comparison_suite(seed.wrapping_add(1), counts.comparison)?;
    r.diag("comparison.max_violation", c.worst);
    r.check_eq("ordered data give ordered solutions", "comparison principle", c.failures as f64, 0.0);
    let a = algebra_suite(seed.wrapping_add(2), counts.algebra);
    r.diag("algebra.max_laplacian_coef", a.worst);
    r.check_eq("harmonic extensions and printing", "harmonic extension of the obstacle", a.failures as f64, 0.0);
    let g = geometry_suite(seed.wrapping_add(3), counts.algebra)?;
    r.diag("geometry.worst", g.worst);
    r.check_eq("Hausdorff symmetric and triangular", "distance between sets", g.failures as f64, 0.0);
    let rho_err = (2..=4u32)
        .flat_map(|n| (2..=16u32).map(move |k| (rho_bar(k, n) - rho_bar_numeric(k, n)).abs()))
        .fold(0.0, f64::max);
    r.check_le("rho_bar closed form vs barrier minimisation", "inner radius of the contact set", rho_err, 1e-10);
    Ok(r)
}
