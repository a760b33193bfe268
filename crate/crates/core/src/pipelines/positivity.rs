//! Bounded positivity sets: obstacle 0, boundary data `-z q`.

use std::f64::consts::FRAC_PI_2;

use crate::polyalg::{harmonic_extension, negativity_bounded, Parity, Polynomial};
use crate::setgeom::star_shaped;
use crate::vi_solver::{discrete_laplacian, ObstacleProblemSpec};

use super::common::{homogeneous_minus_constant, node_eval, plane_eval, ring_nodes, sets_of, solve_checks, CLASS_SAMPLES};
use super::{GridParams, PipelineError, PipelineOutcome, PipelineReport};

/// `1` on `B_rho`, a `cos^2` taper on `rho < |x| < rho + 1`, `0` beyond.
pub(crate) fn bump(r: f64, rho: f64) -> f64 {
    if r <= rho {
        1.0
    } else if r < rho + 1.0 {
        (FRAC_PI_2 * (r - rho)).cos().powi(2)
    } else {
        0.0
    }
}

/// Truncated solution with zero obstacle and boundary data `-Q`, `Q` the odd
/// harmonic extension of `q`, together with the barrier sandwich
/// `-Q <= u <= -Q + kappa Phi`.
pub fn run_bounded_positivity(q: &Polynomial, params: &GridParams) -> Result<PipelineOutcome, PipelineError> {
    let n = q.dim();
    let verdict = negativity_bounded(q, 1.0, CLASS_SAMPLES);
    if !verdict.is_bounded() {
        return Err(PipelineError::Precondition(format!("{{q < 0}} is not certified bounded ({:?})", verdict.status)));
    }
    let mut report = PipelineReport::new("bounded_positivity");
    report.input("poly", q.to_string());
    report.input("n", n as f64);
    params.echo(&mut report);
    report.truncation_budget = params.budget();
    report.note("the PSOR limit stands in for the least supersolution; c_rho is a discrete one-sided difference");

    let domain = params.domain(n)?;
    let h = domain.spacing();
    let big_q = harmonic_extension(q, Parity::Odd);
    let qn = node_eval(&big_q, &domain);
    let nz = domain.dims()[2];
    let qbar = plane_eval(q, &domain);

    // radius of the bump: covers the certified region and every node where Q(., h) < 0
    let mut rho = verdict.radius.unwrap_or(0.0).max(1.0);
    for p in 0..domain.plane_count() {
        if qn[p * nz + 1] < 0.0 {
            rho = rho.max(domain.plane_radius(p));
        }
    }
    report.diag("rho", rho);
    if rho + 1.0 >= domain.half_width() {
        return Err(PipelineError::Precondition(format!(
            "bump radius {rho} + 1 does not fit in half-width {}",
            domain.half_width()
        )));
    }

    let bnodes = domain.boundary_nodes();
    let boundary: Vec<f64> = bnodes.iter().map(|&i| -qn[i]).collect();
    let spec = params.configure(ObstacleProblemSpec::new(domain.clone(), vec![0.0; domain.plane_count()], boundary)?)?;
    let initial: Vec<f64> = qn.iter().map(|v| -v).collect();
    let field = params.solve(&spec, Some(&initial));
    let tau = params.tau(&spec);
    report.diag("tau_c", tau);
    solve_checks(&mut report, "", &spec, &field);

    let phi_ob: Vec<f64> = (0..domain.plane_count()).map(|p| bump(domain.plane_radius(p), rho)).collect();
    let phi_spec =
        params.configure(ObstacleProblemSpec::new(domain.clone(), phi_ob, vec![0.0; bnodes.len()])?)?;
    let phi = params.solve(&phi_spec, None);
    solve_checks(&mut report, "barrier: ", &phi_spec, &phi);

    let mut c_rho = f64::INFINITY;
    let mut c_q = 0.0f64;
    for p in 0..domain.plane_count() {
        if domain.plane_on_edge(p) {
            continue;
        }
        if domain.plane_radius(p) <= rho {
            c_rho = c_rho.min((phi.values[p * nz] - phi.values[p * nz + 1]) / h);
        }
        c_q = c_q.max(-qn[p * nz + 1] / h);
    }
    if !(c_rho > 0.0) {
        return Err(PipelineError::Precondition(format!("barrier slope c_rho = {c_rho} is not positive")));
    }
    let kappa = c_q / c_rho;
    report.diag("c_rho", c_rho);
    report.diag("C_q", c_q);
    report.diag("kappa", kappa);

    // discretisation error of the extension: interior discrete Laplacian of Q
    let [nx, ny, _] = domain.dims();
    let mut e_max = 0.0f64;
    for i in 0..nx {
        for j in 0..ny {
            for k in 1..nz {
                if !domain.is_boundary(i, j, k) {
                    e_max = e_max.max(discrete_laplacian(&qn, &spec, i, j, k).abs());
                }
            }
        }
    }
    report.diag("extension_discrete_laplacian", e_max);
    let l = domain.half_width();
    let slack_lower = 10.0 * spec.tol + e_max * l * l / 8.0;
    let slack_upper = 10.0 * spec.tol * (1.0 + kappa) + e_max * l * l / 8.0;

    let lower = field.values.iter().zip(&qn).map(|(u, qv)| u + qv).fold(f64::INFINITY, f64::min);
    let upper = field
        .values
        .iter()
        .zip(&qn)
        .zip(&phi.values)
        .map(|((u, qv), ph)| u + qv - kappa * ph)
        .fold(f64::NEG_INFINITY, f64::max);
    report.check_ge("lower barrier u >= -|z|q", "sandwich between -|z|q and -|z|q + kappa Phi", lower, -slack_lower);
    report.check_le("upper barrier u <= -|z|q + kappa Phi", "sandwich between -|z|q and -|z|q + kappa Phi", upper, slack_upper);

    let sets = sets_of(&field, &spec, tau);
    let r0 = sets.positivity.members().map(|p| domain.plane_radius(p)).fold(0.0, f64::max);
    report.diag("positivity_radius", r0);
    report.check(
        "positivity set bounded",
        "positivity set is compact",
        format!("< {}", l / 2.0),
        r0,
        r0 < l / 2.0,
    );
    let missing = (0..domain.plane_count()).filter(|&p| qbar[p] < 0.0 && !sets.positivity.contains(p)).count();
    report.check_eq("positivity contains {q < 0}", "u > 0 where q < 0", missing as f64, 0.0);

    let ring = ring_nodes(&domain).into_iter().map(|i| (field.values[i] + qn[i]).abs()).fold(0.0, f64::max);
    report.check_le("far-field ring |u + |z|q|", "truncation of the global solution", ring, params.budget());

    if n == 2 && homogeneous_minus_constant(q) && !sets.positivity.is_empty() {
        let star = star_shaped(&sets.positivity, &[0.0, 0.0])?;
        report.check_true("positivity star-shaped at origin", "homogeneous data give star-shaped positivity sets", star);
    }
    report.diag("contact_nodes", sets.contact.count() as f64);
    report.diag("positivity_nodes", sets.positivity.count() as f64);

    Ok(PipelineOutcome {
        report,
        spec,
        field,
        sets,
        overlay: Some(q.clone()),
        aux: vec![("barrier".to_string(), phi)],
    })
}
