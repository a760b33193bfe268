use proptest::prelude::*;
use thinfree_core::setgeom::{connected_components, directed_hausdorff, distance_to_set, hausdorff, ThinSet};
use thinfree_core::vi_solver::build_domain;
use thinfree_core::SolverDomain;

fn domain() -> SolverDomain {
    build_domain(2, 1.0, 0.125).unwrap()
}

fn nonempty_set() -> impl Strategy<Value = ThinSet> {
    prop::collection::vec(prop::bool::weighted(0.15), 17 * 17)
        .prop_filter("nonempty", |m| m.iter().any(|&b| b))
        .prop_map(|mask| ThinSet::new(domain(), mask).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hausdorff_is_a_metric(a in nonempty_set(), b in nonempty_set(), c in nonempty_set()) {
        let ab = hausdorff(&a, &b).unwrap();
        prop_assert_eq!(ab, hausdorff(&b, &a).unwrap());
        prop_assert_eq!(hausdorff(&a, &a).unwrap(), 0.0);
        prop_assert!(hausdorff(&a, &c).unwrap() <= ab + hausdorff(&b, &c).unwrap() + 1e-12);
    }

    #[test]
    fn subsets_have_zero_directed_distance(a in nonempty_set(), b in nonempty_set()) {
        let u = a.union(&b);
        prop_assert_eq!(directed_hausdorff(&a, &u).unwrap(), 0.0);
    }

    #[test]
    fn distance_transform_matches_brute_force(a in nonempty_set()) {
        let fast = distance_to_set(&a);
        let pts = a.points();
        for p in 0..a.domain.plane_count() {
            let x = a.domain.plane_point(p);
            let slow = pts.iter().map(|q| (x[0] - q[0]).hypot(x[1] - q[1])).fold(f64::INFINITY, f64::min);
            prop_assert!((fast[p] - slow).abs() < 1e-12);
        }
    }

    #[test]
    fn components_partition_the_set(a in nonempty_set()) {
        let comps = connected_components(&a);
        let total: usize = comps.iter().map(|c| c.count()).sum();
        prop_assert_eq!(total, a.count());
        let mut union = ThinSet::empty(&a.domain);
        for c in &comps {
            prop_assert!(c.intersection(&union).is_empty());
            union = union.union(c);
        }
        prop_assert_eq!(union, a);
    }
}
