use thinfree_core::pipelines::{
    rho_bar, run_compact_contact, run_prop_polysets, run_prop_subsets, run_thm_approx, ApproxParams, KChoice, SubsetParams,
};
use thinfree_core::setgeom::connected_components;
use thinfree_core::{parse_poly, GridParams, ThinSet};

fn small() -> GridParams {
    GridParams::pinned().with_grid(2.0, 0.125)
}

/// Masks on the same raster that differ only within one node layer of either boundary.
fn agree_up_to_a_layer(a: &ThinSet, b: &ThinSet) -> bool {
    let edge = a.raster_boundary().union(&b.raster_boundary());
    let diff = a.difference(b).union(&b.difference(a));
    diff.is_subset(&edge)
}

#[test]
fn rescaling_the_box_rescales_the_contact_set() {
    let p = parse_poly("x1^2 + x2^2 - 0.25", 2).unwrap();
    let q = parse_poly("x1^2 + x2^2 - 0.0625", 2).unwrap();
    let a = run_compact_contact(&p, &small()).unwrap();
    let b = run_compact_contact(&q, &GridParams::pinned().with_grid(1.0, 0.0625)).unwrap();
    assert!(a.report.pass && b.report.pass);
    assert_eq!(a.sets.contact.mask.len(), b.sets.contact.mask.len());
    assert!(!a.sets.contact.is_empty());
    assert!(agree_up_to_a_layer(&a.sets.contact, &b.sets.contact));
}

#[test]
fn doubling_the_polynomial_keeps_the_contact_set() {
    let p = parse_poly("x1^2 + 2*x2^2 - 0.25", 2).unwrap();
    let a = run_compact_contact(&p, &small()).unwrap();
    let b = run_compact_contact(&p.scale(2.0), &small()).unwrap();
    assert!(a.report.pass && b.report.pass);
    assert!(agree_up_to_a_layer(&a.sets.contact, &b.sets.contact));
}

#[test]
fn polysets_for_a_point_zero_set() {
    let f = parse_poly("(x1^2 + x2^2)^2", 2).unwrap();
    let out = run_prop_polysets(&f, 0.2, KChoice::Large, &small()).unwrap();
    let c = &out.sets.contact;
    let d = &c.domain;
    let origin = (0..d.plane_count()).find(|&p| d.plane_radius(p) == 0.0).unwrap();
    assert!(c.contains(origin));
    let h = d.spacing();
    assert!(c.members().all(|p| d.plane_radius(p) <= 0.2 + h));
    assert!(out.report.pass, "{}", out.report.to_json());
}

#[test]
fn polysets_for_a_line_zero_set() {
    let f = parse_poly("x1^2", 2).unwrap();
    let out = run_prop_polysets(&f, 0.2, KChoice::Large, &small()).unwrap();
    let c = &out.sets.contact;
    let h = c.domain.spacing();
    assert!(c.points().iter().all(|x| x[0].abs() <= 0.2 + h));
    let line = ThinSet::from_predicate(&c.domain, |x| x[0] == 0.0 && x[1].abs() <= 0.5);
    assert!(line.is_subset(c));
}

#[test]
fn subsets_of_a_positive_function_are_empty() {
    let f = parse_poly("1", 2).unwrap();
    let params = SubsetParams { grid: small(), ladder: vec![2, 4], stop_early: false };
    let out = run_prop_subsets(&f, 0.1, &params).unwrap();
    assert!(out.sets.contact.is_empty());
}

fn approx_params() -> ApproxParams {
    let mut p = ApproxParams::default();
    p.subsets.grid = GridParams::pinned().with_grid(2.0, 0.0625);
    p
}

#[test]
fn approx_of_a_single_point() {
    let out = run_thm_approx(&[[0.0, 0.0]], 0.3, &approx_params()).unwrap();
    assert!(out.report.pass, "{}", out.report.to_json());
    assert_eq!(connected_components(&out.sets.contact).len(), 1);
}

#[test]
fn approx_separates_two_points() {
    let out = run_thm_approx(&[[-0.2, 0.0], [0.2, 0.0]], 0.15, &approx_params()).unwrap();
    assert!(out.report.pass, "{}", out.report.to_json());
    assert_eq!(connected_components(&out.sets.contact).len(), 2);
}

#[test]
fn rho_bar_increases_with_k() {
    for n in 2..=4 {
        let mut last = 0.0;
        for k in 1..=20 {
            let r = rho_bar(k, n);
            assert!(r > last && r < 1.0);
            last = r;
        }
    }
}
