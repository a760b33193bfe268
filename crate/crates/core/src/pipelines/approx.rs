//! Approximating a compact set `K` by a contact set, through a polynomial fit
//! of the distance function.

use crate::polyalg::{fit_distance_poly, FitResult, Polynomial};
use crate::setgeom::{distance_to_set, eta_bar, hausdorff, ThinSet};
use crate::vi_solver::SolverDomain;

use super::common::plane_eval;
use super::{run_prop_subsets, GridParams, PipelineError, PipelineOutcome, PipelineReport, SubsetParams};

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxParams {
    pub subsets: SubsetParams,
    /// Fit degrees tried in order until the residual target is met.
    pub fit_degrees: Vec<u32>,
    /// Largest exponent `k` in `(3/2 |x|)^{2k}`.
    pub k_cap: u32,
}

impl Default for ApproxParams {
    fn default() -> Self {
        ApproxParams {
            subsets: SubsetParams { grid: GridParams::pinned().with_grid(2.0, 1.0 / 32.0), ..SubsetParams::default() },
            fit_degrees: (1..=10).map(|m| 2 * m).collect(),
            k_cap: 64,
        }
    }
}

/// Nearest plane node of every point, as a set.
fn snap(points: &[[f64; 2]], domain: &SolverDomain) -> Result<ThinSet, PipelineError> {
    let mut set = ThinSet::empty(domain);
    let h = domain.spacing();
    let c = domain.cells() as f64;
    let [nx, ny, _] = domain.dims();
    for p in points {
        let i = (p[0] / h).round() + c;
        let j = (p[1] / h).round() + c;
        if i < 0.0 || j < 0.0 || i as usize >= nx || j as usize >= ny {
            return Err(PipelineError::Precondition(format!("point {p:?} lies outside the domain")));
        }
        set.mask[domain.plane_index(i as usize, j as usize)] = true;
    }
    Ok(set)
}

/// Centre and factor mapping `K` into `B_{1/4}`; identity when it already fits.
fn normalisation(points: &[[f64; 2]]) -> ([f64; 2], f64) {
    let r = points.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
    if r <= 0.25 {
        return ([0.0, 0.0], 1.0);
    }
    let lo = points.iter().fold([f64::INFINITY; 2], |m, p| [m[0].min(p[0]), m[1].min(p[1])]);
    let hi = points.iter().fold([f64::NEG_INFINITY; 2], |m, p| [m[0].max(p[0]), m[1].max(p[1])]);
    let c = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
    let rc = points.iter().map(|p| (p[0] - c[0]).hypot(p[1] - c[1])).fold(0.0, f64::max);
    (c, if rc > 0.25 { 0.25 / rc } else { 1.0 })
}

/// Build `f` with `{f <= 0}` close to `K`, then the contact set squeezed
/// around `{f <= 0}`; checks both Hausdorff distances against `2 eps`.
pub fn run_thm_approx(points: &[[f64; 2]], eps: f64, params: &ApproxParams) -> Result<PipelineOutcome, PipelineError> {
    if points.is_empty() {
        return Err(PipelineError::Precondition("K is empty".into()));
    }
    if !(eps > 0.0) {
        return Err(PipelineError::Precondition(format!("eps must be positive, got {eps}")));
    }
    let mut report = PipelineReport::new("thm_approx");
    report.input("points", points.len() as f64);
    report.input("eps", eps);
    report.input("fit_degrees", params.fit_degrees.iter().map(|&d| d as f64).collect::<Vec<f64>>());
    report.input("k_cap", params.k_cap as f64);

    let (center, scale) = normalisation(points);
    let moved: Vec<[f64; 2]> = points.iter().map(|p| [scale * (p[0] - center[0]), scale * (p[1] - center[1])]).collect();
    let eps_s = scale * eps;
    if scale != 1.0 || center != [0.0, 0.0] {
        report.note(format!("K mapped into B_1/4 by x -> {scale} (x - {center:?}); distances reported in original units"));
    }
    report.diag("scale", scale);

    let grid = &params.subsets.grid;
    let domain = grid.domain(2)?;
    let k_set = snap(&moved, &domain)?;
    let dist = distance_to_set(&k_set);
    let unit = ThinSet::ball(&domain, &[0.0, 0.0], 1.0);
    let eta = eta_bar(&unit, &dist, eps_s)?;
    report.diag("eta_bar", eta.value);
    if eta.fallback {
        report.note("no raster node of B_1 is farther than eps from K; eta_bar is the minimum of d");
    }

    // fit d on the unit-ball raster
    let samples: Vec<Vec<f64>> = unit.members().map(|p| domain.plane_point(p)).collect();
    let values: Vec<f64> = unit.members().map(|p| dist[p]).collect();
    let target = eta.value / 4.0;
    report.diag("fit_target", target);
    let mut best: Option<FitResult> = None;
    for &deg in &params.fit_degrees {
        let fit = fit_distance_poly(&samples, &values, deg)?;
        report.diag(&format!("fit_residual.deg{deg}"), fit.max_residual);
        let better = best.as_ref().map_or(true, |b| fit.max_residual < b.max_residual);
        let met = fit.max_residual <= target;
        if better {
            best = Some(fit);
        }
        if met {
            break;
        }
    }
    let fit = best.expect("fit ladder is nonempty");
    report.diag("fit_degree", fit.degree as f64);
    report.diag("fit_residual", fit.max_residual);
    report.check_le("fit residual <= eta_bar/4", "polynomial approximation of the distance", fit.max_residual, target);

    // raise k until fbar is large outside B_1 and close to d on B_1/2
    let pv = plane_eval(&fit.poly, &domain);
    let r: Vec<f64> = (0..domain.plane_count()).map(|p| domain.plane_radius(p)).collect();
    let mut chosen = None;
    for k in 1..=params.k_cap {
        let fb = |p: usize| pv[p] + (1.5 * r[p]).powi(2 * k as i32);
        let outside_ok = (0..pv.len()).all(|p| r[p] <= 1.0 || fb(p) >= 1.0);
        let inside_ok = (0..pv.len()).all(|p| r[p] > 0.5 || (fb(p) - dist[p]).abs() <= eta.value / 3.0);
        if outside_ok && inside_ok {
            chosen = Some(k);
            break;
        }
    }
    report.check_true("fbar positive outside B_1 and eta_bar/3-close to d on B_1/2", "penalised fit", chosen.is_some());
    let k = chosen.unwrap_or(params.k_cap);
    report.diag("k", k as f64);
    let radial = Polynomial::norm_squared(2).scale(2.25).pow(k);
    let f = &(&fit.poly + &radial) - &Polynomial::constant(2, 2.0 * eta.value / 3.0);

    let fv = plane_eval(&f, &domain);
    let eta_f = eta_bar(&unit, &fv, eps_s)?;
    // K must sit in {f <= -delta}, the part the ladder is guaranteed to cover
    let max_on_k = k_set.members().map(|p| fv[p]).fold(f64::NEG_INFINITY, f64::max);
    let delta = (0.5 * eta_f.value).min(-max_on_k).min(0.5);
    report.diag("eta_f", eta_f.value);
    report.diag("max_f_on_K", max_on_k);
    report.diag("delta", delta);
    if !(delta > 0.0) {
        return Err(PipelineError::Precondition(format!("derived delta {delta} is not positive")));
    }

    let inner = run_prop_subsets(&f, delta, &params.subsets)?;
    report.absorb("subsets", &inner.report);
    report.truncation_budget = inner.report.truncation_budget;

    let lambda = &inner.sets.contact;
    report.check_eq("K raster inside contact", "K contained in the contact set", k_set.missing_from(lambda) as f64, 0.0);
    let dh = hausdorff(lambda, &k_set).map(|v| v / scale).unwrap_or(f64::INFINITY);
    report.check_le("Hausdorff(contact, K)", "contact set approximates K", dh, 2.0 * eps);
    let gamma = lambda.raster_boundary();
    let dk = k_set.raster_boundary();
    let dg = hausdorff(&gamma, &dk).map(|v| v / scale).unwrap_or(f64::INFINITY);
    report.check_le("Hausdorff(free boundary, boundary of K)", "free boundary approximates the boundary of K", dg, 2.0 * eps);

    Ok(PipelineOutcome {
        report,
        spec: inner.spec,
        field: inner.field,
        sets: inner.sets,
        overlay: Some(f),
        aux: inner.aux,
    })
}
