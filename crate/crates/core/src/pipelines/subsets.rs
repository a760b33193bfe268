//! Contact sets squeezed between two sublevel sets of `f`:
//! `{f <= -delta} <= Lambda <= {f <= 0}`.

use crate::polyalg::{p2k_value, Polynomial};
use crate::setgeom::ThinSet;
use crate::vi_solver::{ObstacleProblemSpec, SolutionField};

use super::common::{plane_eval, ring_nodes, sets_of, solve_checks};
use super::{GridParams, PipelineError, PipelineOutcome, PipelineReport};

/// Slack for the ladder bounds: ten times the default solver tolerance.
const LADDER_SLACK: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetParams {
    pub grid: GridParams,
    /// Increasing exponents `k` of `p_{2k}`.
    pub ladder: Vec<u32>,
    /// Stop at the first rung whose contact set covers `{f <= -delta}`.
    pub stop_early: bool,
}

impl Default for SubsetParams {
    fn default() -> Self {
        SubsetParams { grid: GridParams::pinned(), ladder: vec![2, 4, 6, 8, 16, 32, 64], stop_early: true }
    }
}

/// Solve with obstacle `p_{2k}(f)` (evaluated pointwise) and zero boundary data
/// for `k` along the ladder, each rung warm-started from the previous one.
///
/// `f` is divided by `max(1, -min f)` so that `f >= -1` on the raster; the
/// internal `p_{2k}` uses `delta / 2`.
pub fn run_prop_subsets(f: &Polynomial, delta: f64, params: &SubsetParams) -> Result<PipelineOutcome, PipelineError> {
    if !(delta > 0.0 && delta <= 0.5) {
        return Err(PipelineError::Precondition(format!("delta must lie in (0, 1/2], got {delta}")));
    }
    if params.ladder.is_empty() || params.ladder.windows(2).any(|w| w[0] >= w[1]) || params.ladder[0] == 0 {
        return Err(PipelineError::Precondition("ladder must be a nonempty increasing list of positive k".into()));
    }
    let n = f.dim();
    let grid = &params.grid;
    let domain = grid.domain(n)?;
    let raw = plane_eval(f, &domain);
    if let Some(p) = (0..raw.len()).find(|&p| raw[p] <= 0.0 && domain.plane_radius(p) > 1.0 + 1e-12) {
        return Err(PipelineError::Precondition(format!(
            "{{f <= 0}} leaves the unit ball at {:?}",
            domain.plane_point(p)
        )));
    }
    let min_f = raw.iter().cloned().fold(f64::INFINITY, f64::min);
    let value_scale = (-min_f).max(1.0);
    let fv: Vec<f64> = raw.iter().map(|v| v / value_scale).collect();
    let d_int = 0.5 * delta;

    let mut report = PipelineReport::new("prop_subsets");
    report.input("f", f.to_string());
    report.input("delta", delta);
    report.input("ladder", params.ladder.iter().map(|&k| k as f64).collect::<Vec<f64>>());
    report.input("stop_early", params.stop_early);
    grid.echo(&mut report);
    report.truncation_budget = grid.budget();
    report.diag("value_scale", value_scale);
    report.diag("delta_internal", d_int);
    if value_scale > 1.0 {
        report.note(format!("f divided by {value_scale} so that f >= -1; delta refers to the scaled f"));
    }

    let inner = ThinSet { domain: domain.clone(), mask: fv.iter().map(|&v| v <= -delta).collect() };
    let upper = ThinSet { domain: domain.clone(), mask: fv.iter().map(|&v| v <= 0.0).collect() };
    let ring = ring_nodes(&domain);
    let nb = domain.boundary_nodes().len();

    let mut aux: Vec<(String, SolutionField)> = Vec::new();
    let mut last: Option<(u32, ObstacleProblemSpec, SolutionField, f64)> = None;
    let mut worst_drop = 0.0f64;
    let mut max_w = f64::NEG_INFINITY;
    let mut ring_max = 0.0f64;
    for &k in &params.ladder {
        let obstacle: Vec<f64> = fv.iter().map(|&t| p2k_value(t, d_int, k)).collect();
        let spec = grid.configure(ObstacleProblemSpec::new(domain.clone(), obstacle, vec![0.0; nb])?)?;
        let field = grid.solve(&spec, last.as_ref().map(|l| l.2.values.as_slice()));
        solve_checks(&mut report, &format!("k={k}: "), &spec, &field);
        if let Some((_, _, prev, _)) = &last {
            let drop = prev.values.iter().zip(&field.values).map(|(a, b)| a - b).fold(0.0, f64::max);
            worst_drop = worst_drop.max(drop);
        }
        max_w = max_w.max(field.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        ring_max = ring_max.max(ring.iter().map(|&i| field.values[i]).fold(0.0, f64::max));
        let tau = grid.tau(&spec);
        let contact = sets_of(&field, &spec, tau).contact;
        report.diag(&format!("k={k}: contact_nodes"), contact.count() as f64);
        if let Some((pk, _, prev, _)) = last.take() {
            aux.push((format!("w_k{pk}"), prev));
        }
        last = Some((k, spec, field, tau));
        if params.stop_early && inner.is_subset(&contact) {
            break;
        }
    }
    let (final_k, spec, field, tau) = last.expect("ladder is nonempty");
    report.diag("final_k", final_k as f64);
    report.diag("tau_c", tau);

    report.check_le("ladder nondecreasing", "solutions increase with k", worst_drop, LADDER_SLACK);
    report.check_le("max w <= 1", "obstacle bounded by 1", max_w, 1.0 + LADDER_SLACK);
    report.check_le("boundary ring w <= 2/L", "fundamental-solution bound |x|^(1-n)", ring_max, grid.budget() + LADDER_SLACK);

    let sets = sets_of(&field, &spec, tau);
    report.check_eq("contact inside {f <= 0}", "upper sublevel inclusion", sets.contact.missing_from(&upper) as f64, 0.0);
    let missing = inner.missing_from(&sets.contact);
    report.check_eq("contact contains {f <= -delta}", "lower sublevel inclusion for k large", missing as f64, 0.0);
    if missing > 0 {
        report.note(format!(
            "ladder exhausted at k = {final_k} with {missing} nodes of {{f <= -delta}} outside the contact set: inconclusive"
        ));
    }
    report.diag("contact_nodes", sets.contact.count() as f64);

    Ok(PipelineOutcome { report, spec, field, sets, overlay: Some(f.clone()), aux })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn small() -> SubsetParams {
        SubsetParams { grid: GridParams::pinned().with_grid(2.0, 0.125), ladder: vec![2, 4, 6], stop_early: false }
    }

    #[test]
    fn positive_f_never_touches() {
        let out = run_prop_subsets(&parse_poly("1", 2).unwrap(), 0.1, &small()).unwrap();
        assert!(out.sets.contact.is_empty());
        assert_eq!(out.aux.len(), 2);
    }

    #[test]
    fn disk_sandwich_and_monotone_ladder() {
        let out = run_prop_subsets(&parse_poly("x1^2+x2^2-0.5", 2).unwrap(), 0.1, &small()).unwrap();
        let r = &out.report;
        assert!(r.find("ladder nondecreasing").unwrap().pass);
        assert!(r.find("max w <= 1").unwrap().pass);
        assert!(r.find("contact inside {f <= 0}").unwrap().pass);
        for w in out.aux.windows(2) {
            assert!(w[0].1.values.iter().zip(&w[1].1.values).all(|(a, b)| *a <= b + 1e-7));
        }
    }

    #[test]
    fn rejects_zero_set_outside_unit_ball() {
        let err = run_prop_subsets(&parse_poly("x1^2+x2^2-4", 2).unwrap(), 0.1, &small()).unwrap_err();
        assert!(matches!(err, PipelineError::Precondition(_)));
    }
}
