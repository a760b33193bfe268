//! Compact contact sets: obstacle `-p`, zero boundary data.

use crate::polyalg::{harmonic_extension, laplacian_poly, negativity_bounded, Parity, Polynomial};
use crate::setgeom::star_shaped;
use crate::vi_solver::ObstacleProblemSpec;

use super::common::{homogeneous_minus_constant, CLASS_SAMPLES, plane_eval, ring_nodes, sets_of, solve_checks};
use super::{GridParams, PipelineError, PipelineOutcome, PipelineReport};

/// Solve the thin obstacle problem with obstacle `-p` on the plane and zero
/// boundary data; the global solution is `v + P` with `P` the even harmonic
/// extension of `p`.
pub fn run_compact_contact(p: &Polynomial, params: &GridParams) -> Result<PipelineOutcome, PipelineError> {
    let n = p.dim();
    let verdict = negativity_bounded(p, 1.0, CLASS_SAMPLES);
    if !verdict.is_bounded() {
        return Err(PipelineError::Precondition(format!("{{p < 0}} is not certified bounded ({:?})", verdict.status)));
    }
    let mut report = PipelineReport::new("compact_contact");
    report.input("poly", p.to_string());
    report.input("n", n as f64);
    params.echo(&mut report);
    report.truncation_budget = params.budget();
    if let Some(r) = verdict.radius {
        report.diag("class_radius", r);
    }

    let domain = params.domain(n)?;
    let pv = plane_eval(p, &domain);
    let obstacle: Vec<f64> = pv.iter().map(|v| -v).collect();
    let boundary = vec![0.0; domain.boundary_nodes().len()];
    let spec = params.configure(ObstacleProblemSpec::new(domain.clone(), obstacle, boundary)?)?;
    let field = params.solve(&spec, None);
    let tau = params.tau(&spec);
    report.diag("tau_c", tau);
    solve_checks(&mut report, "", &spec, &field);

    let min_v = field.values.iter().cloned().fold(f64::INFINITY, f64::min);
    report.check_ge("v nonnegative", "zero is a supersolution above the obstacle", min_v, -10.0 * spec.tol);

    let sets = sets_of(&field, &spec, tau);
    let band = tau + 10.0 * spec.tol;
    let outside = sets.contact.members().filter(|&q| pv[q] > band).count();
    report.check_eq("contact inside {p <= tau}", "contact forces p <= 0", outside as f64, 0.0);
    let has_negative = (0..domain.plane_count()).any(|q| !domain.plane_on_edge(q) && pv[q] < 0.0);
    report.check_true(
        "contact nonempty iff p takes negative values",
        "minimum principle for the harmonic part",
        sets.contact.is_empty() != has_negative,
    );

    let ring_max = ring_nodes(&domain).into_iter().map(|q| field.values[q]).fold(0.0, f64::max);
    report.check_le("far-field ring decay", "truncation of the global solution", ring_max, params.budget());

    let ext = harmonic_extension(p, Parity::Even);
    let lap = laplacian_poly(&ext);
    report.check_true(
        "even extension is harmonic",
        "obstacle correspondence",
        lap.is_zero_within(ext.max_abs_coef().max(1.0)),
    );

    if n == 2 && homogeneous_minus_constant(p) && !sets.contact.is_empty() {
        let star = star_shaped(&sets.contact, &[0.0, 0.0])?;
        report.check_true("contact star-shaped at origin", "homogeneous obstacles give star-shaped sets", star);
    }
    report.diag("contact_nodes", sets.contact.count() as f64);
    report.diag("positivity_nodes", sets.positivity.count() as f64);

    Ok(PipelineOutcome { report, spec, field, sets, overlay: Some(p.clone()), aux: Vec::new() })
}
