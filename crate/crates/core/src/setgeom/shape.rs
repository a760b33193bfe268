//! Connectivity, star-shapedness and convexity of plane rasters.

use std::collections::VecDeque;

use super::thinset::point2;
use super::{GeomError, ThinSet};

/// 4-connected components, each as a set; ordered by smallest node index.
pub fn connected_components(set: &ThinSet) -> Vec<ThinSet> {
    let d = &set.domain;
    let mut label = vec![usize::MAX; set.mask.len()];
    let mut out = Vec::new();
    for start in 0..set.mask.len() {
        if !set.mask[start] || label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut comp = ThinSet::empty(d);
        let mut queue = VecDeque::from([start]);
        label[start] = id;
        while let Some(p) = queue.pop_front() {
            comp.mask[p] = true;
            for q in d.plane_neighbors(p) {
                if set.mask[q] && label[q] == usize::MAX {
                    label[q] = id;
                    queue.push_back(q);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Whether the complement component containing `point`'s nearest node is
/// enclosed by `set`, i.e. does not reach the edge of the plane.
pub fn encloses(set: &ThinSet, point: &[f64; 2]) -> bool {
    let d = &set.domain;
    let Some(p0) = nearest_node(set, point) else { return false };
    if set.mask[p0] {
        return false;
    }
    let mut seen = vec![false; set.mask.len()];
    let mut queue = VecDeque::from([p0]);
    seen[p0] = true;
    while let Some(p) = queue.pop_front() {
        if d.plane_on_edge(p) {
            return false;
        }
        for q in d.plane_neighbors(p) {
            if !set.mask[q] && !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    true
}

fn nearest_node(set: &ThinSet, point: &[f64; 2]) -> Option<usize> {
    let d = &set.domain;
    let [nx, ny, _] = d.dims();
    let h = d.spacing();
    let idx = |v: f64, n: usize| {
        let i = ((v + d.half_width()) / h).round();
        if i < 0.0 || i > (n - 1) as f64 {
            None
        } else {
            Some(i as usize)
        }
    };
    let i = idx(point[0], nx)?;
    let j = if d.n() == 2 { idx(point[1], ny)? } else { 0 };
    Some(d.plane_index(i, j))
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0) };
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}

/// Discrete star-shapedness about `center`.
///
/// For every member `q`, all nodes within `h/2` of the segment from `center`
/// to `q` must be members, except for at most one node per segment.
pub fn star_shaped(set: &ThinSet, center: &[f64; 2]) -> Result<bool, GeomError> {
    if set.is_empty() {
        return Err(GeomError::EmptySet("star-shaped test"));
    }
    let d = &set.domain;
    let [nx, ny, _] = d.dims();
    let h = d.spacing();
    let reach = 0.5 * h * (1.0 + 1e-9);
    let to_index = |v: f64, n: usize, up: bool| {
        let t = (v + d.half_width()) / h;
        let t = if up { t.ceil() } else { t.floor() };
        t.clamp(0.0, (n - 1) as f64) as usize
    };
    for q in set.members() {
        let b = point2(d, q);
        let (i0, i1) = (to_index(center[0].min(b[0]) - reach, nx, false), to_index(center[0].max(b[0]) + reach, nx, true));
        let (j0, j1) = if d.n() == 2 {
            (to_index(center[1].min(b[1]) - reach, ny, false), to_index(center[1].max(b[1]) + reach, ny, true))
        } else {
            (0, 0)
        };
        let mut misses = 0;
        for i in i0..=i1 {
            for j in j0..=j1 {
                let p = d.plane_index(i, j);
                if set.mask[p] {
                    continue;
                }
                if segment_distance(point2(d, p), *center, b) <= reach {
                    misses += 1;
                    if misses > 1 {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull (counter-clockwise, no collinear vertices) by monotone chain.
pub fn convex_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Signed distance to the hull boundary, positive inside.
fn hull_depth(hull: &[[f64; 2]], p: [f64; 2]) -> f64 {
    match hull.len() {
        0 => f64::NEG_INFINITY,
        1 => -(p[0] - hull[0][0]).hypot(p[1] - hull[0][1]),
        2 => -segment_distance(p, hull[0], hull[1]),
        n => {
            let mut depth = f64::INFINITY;
            for e in 0..n {
                let (a, b) = (hull[e], hull[(e + 1) % n]);
                let len = (b[0] - a[0]).hypot(b[1] - a[1]);
                depth = depth.min(cross(a, b, p) / len);
            }
            depth
        }
    }
}

/// Whether the set equals the raster of its convex hull up to one node layer.
///
/// A node inside the hull but outside the set is tolerated only when it lies
/// within `h` of the hull boundary and touches a member.
pub fn convexity_check(set: &ThinSet) -> Result<bool, GeomError> {
    if set.is_empty() {
        return Err(GeomError::EmptySet("convexity test"));
    }
    let d = &set.domain;
    let h = d.spacing();
    let hull = convex_hull(&set.points());
    let eps = 1e-9 * h;
    for p in 0..set.mask.len() {
        if set.mask[p] {
            continue;
        }
        let depth = hull_depth(&hull, point2(d, p));
        if depth < -eps {
            continue;
        }
        let touches = d.plane_neighbors(p).any(|q| set.mask[q]);
        if depth > h + eps || !touches {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vi_solver::build_domain;

    fn dom() -> crate::vi_solver::SolverDomain {
        build_domain(2, 2.0, 1.0 / 16.0).unwrap()
    }

    #[test]
    fn components_of_two_disks() {
        let d = dom();
        let s = ThinSet::ball(&d, &[0.0, 1.0], 0.4).union(&ThinSet::ball(&d, &[0.0, -1.0], 0.4));
        let comps = connected_components(&s);
        assert_eq!(comps.len(), 2);
        // ordered by smallest node index: the lower disk has smaller j at i = min
        assert!(comps[0].points().iter().all(|p| p[1] < 0.0));
        assert_eq!(comps.iter().map(|c| c.count()).sum::<usize>(), s.count());
    }

    #[test]
    fn convexity_examples() {
        let d = dom();
        let disk = ThinSet::ball(&d, &[0.0, 0.0], 1.0);
        assert!(convexity_check(&disk).unwrap());
        let two = ThinSet::ball(&d, &[0.0, 1.0], 0.4).union(&ThinSet::ball(&d, &[0.0, -1.0], 0.4));
        assert!(!convexity_check(&two).unwrap());
        let annulus = disk.difference(&ThinSet::ball(&d, &[0.0, 0.0], 0.5));
        assert!(!convexity_check(&annulus).unwrap());
        assert!(convexity_check(&ThinSet::ball(&d, &[0.25, 0.125], 0.0)).unwrap());
        assert!(convexity_check(&ThinSet::empty(&d)).is_err());
    }

    #[test]
    fn star_shape_examples() {
        let d = dom();
        let disk = ThinSet::ball(&d, &[0.0, 0.0], 1.0);
        assert!(star_shaped(&disk, &[0.0, 0.0]).unwrap());
        let cross = ThinSet::from_predicate(&d, |x| (x[0] == 0.0 || x[1] == 0.0) && x[0].hypot(x[1]) <= 1.0);
        assert!(star_shaped(&cross, &[0.0, 0.0]).unwrap());
        assert!(!star_shaped(&cross, &[0.5, 0.0]).unwrap());
        let annulus = disk.difference(&ThinSet::ball(&d, &[0.0, 0.0], 0.5));
        assert!(!star_shaped(&annulus, &[0.0, 0.0]).unwrap());
    }

    #[test]
    fn annulus_encloses_origin() {
        let d = dom();
        let annulus = ThinSet::ball(&d, &[0.0, 0.0], 1.0).difference(&ThinSet::ball(&d, &[0.0, 0.0], 0.5));
        assert!(encloses(&annulus, &[0.0, 0.0]));
        assert!(!encloses(&ThinSet::ball(&d, &[0.0, 0.0], 1.0), &[0.0, 0.0]));
        let arc = annulus.intersection(&ThinSet::from_predicate(&d, |x| x[1] > 0.1));
        assert!(!encloses(&arc, &[0.0, 0.0]));
    }
}
