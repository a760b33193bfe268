//! The shipped examples with their pinned polynomials and grids.

use crate::polyalg::parse_poly;
use crate::setgeom::{
    connected_components, convexity_check, directed_hausdorff, encloses, set_separation, star_shaped, ThinSet,
};

use super::{
    rho_bar, run_bounded_positivity, run_compact_contact, run_prop_polysets, GridParams, KChoice, PipelineError,
    PipelineOutcome,
};

pub const NAMED_EXAMPLES: [&str; 6] = ["twoballs", "annulus", "starshaped", "globk2", "globk8", "cubicq"];

/// Pinned grid of an example.
pub fn default_grid(name: &str) -> GridParams {
    if name == "cubicq" {
        GridParams::positivity()
    } else {
        GridParams::pinned()
    }
}

/// Run a named example; `params` overrides the pinned grid.
pub fn run_named_example(name: &str, params: Option<&GridParams>) -> Result<PipelineOutcome, PipelineError> {
    let grid = params.cloned().unwrap_or_else(|| default_grid(name));
    let mut out = match name {
        "twoballs" => twoballs(&grid)?,
        "annulus" => annulus(&grid)?,
        "starshaped" => starshaped(&grid)?,
        "globk2" => global(&grid, 2)?,
        "globk8" => global(&grid, 8)?,
        "cubicq" => cubicq(&grid)?,
        other => return Err(PipelineError::UnknownExample(other.to_string())),
    };
    out.report.name = name.to_string();
    Ok(out)
}

fn twoballs(grid: &GridParams) -> Result<PipelineOutcome, PipelineError> {
    let p = parse_poly("8*x1^2+8*(x2^2-1)^2-1", 2)?;
    let mut out = run_compact_contact(&p, grid)?;
    let d = out.spec.domain.clone();
    let comps = connected_components(&out.sets.contact);
    let r = &mut out.report;
    r.check_eq("contact components", "two disjoint balls", comps.len() as f64, 2.0);
    let balls = [ThinSet::ball(&d, &[0.0, 1.0], 0.5), ThinSet::ball(&d, &[0.0, -1.0], 0.5)];
    let mut sides = Vec::new();
    for (c, comp) in comps.iter().enumerate() {
        let to_ball: Vec<f64> = balls.iter().map(|b| directed_hausdorff(comp, b)).collect::<Result<_, _>>()?;
        let (side, dist) = if to_ball[0] <= to_ball[1] { (0, to_ball[0]) } else { (1, to_ball[1]) };
        sides.push(side);
        r.check_le(&format!("component {c} within 0.1 of B_1/2(+-e2)"), "two disjoint balls", dist, 0.1);
    }
    r.check_true("components on opposite sides", "two disjoint balls", sides.len() == 2 && sides[0] != sides[1]);
    if comps.len() >= 2 {
        r.check_ge("component separation", "two disjoint balls", set_separation(&comps[0], &comps[1])?, 0.5);
    }
    let convex = convexity_check(&out.sets.contact)?;
    r.check_true("contact not convex", "compact and nonconvex contact set", !convex);
    Ok(out)
}

fn annulus(grid: &GridParams) -> Result<PipelineOutcome, PipelineError> {
    let p = parse_poly("4*(x1^2+x2^2-1)^2-1", 2)?;
    let mut out = run_compact_contact(&p, grid)?;
    let d = out.spec.domain.clone();
    let comps = connected_components(&out.sets.contact);
    let holed = comps.iter().any(|c| encloses(c, &[0.0, 0.0]));
    let r = &mut out.report;
    r.diag("components", comps.len() as f64);
    r.check_true("a component encloses the origin", "contact set with a hole", holed);
    let outside = out
        .sets
        .contact
        .members()
        .filter(|&q| {
            let r2 = d.plane_radius(q).powi(2);
            !(0.45..=1.55).contains(&r2)
        })
        .count();
    r.check_eq("contact inside 0.45 <= |x|^2 <= 1.55", "annulus 1/2 <= |x|^2 <= 3/2", outside as f64, 0.0);
    Ok(out)
}

fn starshaped(grid: &GridParams) -> Result<PipelineOutcome, PipelineError> {
    let f = parse_poly("x1^2*x2^2", 2)?;
    let mut out = run_prop_polysets(&f, 0.15, KChoice::Fixed(4), grid)?;
    let d = out.spec.domain.clone();
    let contact = &out.sets.contact;
    let star = star_shaped(contact, &[0.0, 0.0])?;
    let convex = convexity_check(contact)?;
    let cross = ThinSet::from_predicate(&d, |x| (x[0] == 0.0 || x[1] == 0.0) && x[0].hypot(x[1]) <= 1.0);
    let missing = cross.missing_from(contact);
    let r = &mut out.report;
    if r.find("contact star-shaped at origin").is_none() {
        r.check_true("contact star-shaped at origin", "compact, nonconvex and star-shaped", star);
    }
    r.check_true("contact not convex", "compact, nonconvex and star-shaped", !convex);
    r.check_eq("cross in unit ball inside contact", "zero set of x1^2 x2^2 inside the contact set", missing as f64, 0.0);
    Ok(out)
}

fn global(grid: &GridParams, k: u32) -> Result<PipelineOutcome, PipelineError> {
    let p = parse_poly(&format!("(x1^2+x2^2)^{}-1", k / 2), 2)?;
    let mut out = run_compact_contact(&p, grid)?;
    let d = out.spec.domain.clone();
    let rho = rho_bar(k, 2);
    let budget = 0.08;
    let inner = ThinSet::ball(&d, &[0.0, 0.0], rho - budget);
    let outer = ThinSet::ball(&d, &[0.0, 0.0], 1.0 + budget);
    let r = &mut out.report;
    r.diag("rho_bar", rho);
    r.check_eq(
        "B_(rho_bar - 0.08) inside contact",
        "contact contains the ball of radius rho_bar",
        inner.missing_from(&out.sets.contact) as f64,
        0.0,
    );
    r.check_eq(
        "contact inside B_1.08",
        "contact inside the unit ball",
        out.sets.contact.missing_from(&outer) as f64,
        0.0,
    );
    Ok(out)
}

fn cubicq(grid: &GridParams) -> Result<PipelineOutcome, PipelineError> {
    let q = parse_poly("x1^2+x2^2-1", 2)?;
    let mut out = run_bounded_positivity(&q, grid)?;
    let d = out.spec.domain.clone();
    let unit = ThinSet::ball(&d, &[0.0, 0.0], 1.0);
    let half = ThinSet::ball(&d, &[0.0, 0.0], d.half_width() / 2.0);
    let r = &mut out.report;
    r.check_eq("B_1 inside positivity set", "u > 0 where q < 0", unit.missing_from(&out.sets.positivity) as f64, 0.0);
    r.check_eq(
        "positivity set inside B_L/2",
        "positivity set is compact",
        out.sets.positivity.missing_from(&half) as f64,
        0.0,
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(run_named_example("nope", None), Err(PipelineError::UnknownExample(_))));
    }

    #[test]
    fn coarse_twoballs_has_two_components() {
        let grid = GridParams::pinned().with_grid(2.0, 0.125);
        let out = run_named_example("twoballs", Some(&grid)).unwrap();
        assert_eq!(connected_components(&out.sets.contact).len(), 2);
    }
}
