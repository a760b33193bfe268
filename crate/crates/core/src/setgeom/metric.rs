//! Distances on the plane raster.

use crate::vi_solver::SolverDomain;

use super::thinset::point2;
use super::{GeomError, ThinSet};

const FAR: f64 = 1e30;

/// Squared distance transform along one line (Felzenszwalb-Huttenlocher).
fn edt_line(f: &[f64], out: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k = 0usize;
    v[0] = 0;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in 1..n {
        let mut s;
        loop {
            let p = v[k];
            s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
            if s <= z[k] && k > 0 {
                k -= 1;
            } else {
                break;
            }
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    k = 0;
    for (q, o) in out.iter_mut().enumerate() {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let dq = q as f64 - p as f64;
        *o = dq * dq + f[p];
    }
}

/// Exact Euclidean distance (physical units) from every plane node to the
/// nearest member of `set`; `+inf` everywhere when the set is empty.
pub fn distance_to_set(set: &ThinSet) -> Vec<f64> {
    let d = &set.domain;
    let [nx, ny, _] = d.dims();
    if set.is_empty() {
        return vec![f64::INFINITY; d.plane_count()];
    }
    let m = nx.max(ny);
    let mut v = vec![0usize; m];
    let mut z = vec![0.0; m + 1];
    let mut buf = vec![0.0; m];
    let mut out = vec![0.0; m];
    // along j (contiguous), then along i
    let mut g: Vec<f64> = set.mask.iter().map(|&b| if b { 0.0 } else { FAR }).collect();
    for i in 0..nx {
        buf[..ny].copy_from_slice(&g[i * ny..(i + 1) * ny]);
        edt_line(&buf[..ny], &mut out[..ny], &mut v, &mut z);
        g[i * ny..(i + 1) * ny].copy_from_slice(&out[..ny]);
    }
    for j in 0..ny {
        for i in 0..nx {
            buf[i] = g[i * ny + j];
        }
        edt_line(&buf[..nx], &mut out[..nx], &mut v, &mut z);
        for i in 0..nx {
            g[i * ny + j] = out[i];
        }
    }
    let h = d.spacing();
    g.into_iter().map(|s| if s >= FAR * 0.5 { f64::INFINITY } else { s.sqrt() * h }).collect()
}

/// `sup_{a in A} dist(a, B)` in physical units.
pub fn directed_hausdorff(a: &ThinSet, b: &ThinSet) -> Result<f64, GeomError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeomError::EmptySet("hausdorff operand"));
    }
    let db = distance_to_set(b);
    Ok(a.members().map(|p| db[p]).fold(0.0, f64::max))
}

pub fn hausdorff(a: &ThinSet, b: &ThinSet) -> Result<f64, GeomError> {
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

/// Hausdorff distance between finite point clouds.
pub fn hausdorff_points(a: &[[f64; 2]], b: &[[f64; 2]]) -> Result<f64, GeomError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeomError::EmptySet("hausdorff operand"));
    }
    let directed = |x: &[[f64; 2]], y: &[[f64; 2]]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p[0] - q[0]).hypot(p[1] - q[1])).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    Ok(directed(a, b).max(directed(b, a)))
}

/// Minimal separation between two sets.
pub fn set_separation(a: &ThinSet, b: &ThinSet) -> Result<f64, GeomError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeomError::EmptySet("separation operand"));
    }
    let db = distance_to_set(b);
    Ok(a.members().map(|p| db[p]).fold(f64::INFINITY, f64::min))
}

/// Distance from every plane node to the nearest point of `k`.
pub fn distance_grid(k: &[[f64; 2]], domain: &SolverDomain) -> Result<Vec<f64>, GeomError> {
    if k.is_empty() {
        return Err(GeomError::EmptySet("point set"));
    }
    Ok((0..domain.plane_count())
        .map(|p| {
            let x = point2(domain, p);
            k.iter().map(|q| (x[0] - q[0]).hypot(x[1] - q[1])).fold(f64::INFINITY, f64::min)
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EtaBar {
    pub value: f64,
    /// No node was farther than `eps` from `{g <= 0}`; `value` is then the minimum over the region.
    pub fallback: bool,
}

/// Smallest value of `g` over region nodes farther than `eps` from `{g <= 0}`.
///
/// `g` holds one value per plane node; only nodes of `region` are read.
/// Requires `g > 0` on the raster boundary of `region`.
pub fn eta_bar(region: &ThinSet, g: &[f64], eps: f64) -> Result<EtaBar, GeomError> {
    if region.is_empty() {
        return Err(GeomError::EmptySet("eta region"));
    }
    if g.len() != region.mask.len() {
        return Err(GeomError::LengthMismatch { expected: region.mask.len(), found: g.len() });
    }
    if region.raster_boundary().members().any(|p| g[p] <= 0.0) {
        return Err(GeomError::NonPositiveOnBoundary);
    }
    let sub = ThinSet { domain: region.domain.clone(), mask: (0..g.len()).map(|p| region.mask[p] && g[p] <= 0.0).collect() };
    let dist = distance_to_set(&sub);
    let qualifying = region.members().filter(|&p| dist[p] > eps).map(|p| g[p]).fold(f64::INFINITY, f64::min);
    if qualifying.is_finite() {
        Ok(EtaBar { value: qualifying, fallback: false })
    } else {
        let value = region.members().map(|p| g[p]).fold(f64::INFINITY, f64::min);
        Ok(EtaBar { value, fallback: true })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vi_solver::build_domain;

    fn brute(set: &ThinSet) -> Vec<f64> {
        let pts = set.points();
        (0..set.domain.plane_count())
            .map(|p| {
                let x = point2(&set.domain, p);
                pts.iter().map(|q| (x[0] - q[0]).hypot(x[1] - q[1])).fold(f64::INFINITY, f64::min)
            })
            .collect()
    }

    #[test]
    fn transform_matches_brute_force() {
        let d = build_domain(2, 1.0, 0.0625).unwrap();
        let s = ThinSet::from_predicate(&d, |x| (x[0] - 0.3).abs() + x[1].abs() < 0.2 || (x[0] + 0.5) * x[1] > 0.3);
        let fast = distance_to_set(&s);
        let slow = brute(&s);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn single_points_are_three_four_five() {
        let d = build_domain(2, 5.0, 1.0).unwrap();
        let a = ThinSet::ball(&d, &[0.0, 0.0], 0.0);
        let b = ThinSet::ball(&d, &[3.0, 4.0], 0.0);
        assert_eq!(hausdorff(&a, &b).unwrap(), 5.0);
    }

    #[test]
    fn nested_balls() {
        let d = build_domain(2, 3.0, 0.0625).unwrap();
        let b1 = ThinSet::ball(&d, &[0.0, 0.0], 1.0);
        let b2 = ThinSet::ball(&d, &[0.0, 0.0], 2.0);
        let dh = hausdorff(&b1, &b2).unwrap();
        assert!((dh - 1.0).abs() <= d.spacing());
    }

    #[test]
    fn empty_operand_is_an_error() {
        let d = build_domain(2, 1.0, 0.5).unwrap();
        assert!(hausdorff(&ThinSet::empty(&d), &ThinSet::full(&d)).is_err());
    }

    #[test]
    fn eta_bar_examples() {
        let d = build_domain(2, 2.0, 1.0 / 32.0).unwrap();
        let region = ThinSet::ball(&d, &[0.0, 0.0], 1.0);
        let g: Vec<f64> = (0..d.plane_count()).map(|p| d.plane_radius(p) - 0.5).collect();
        let e = eta_bar(&region, &g, 0.1).unwrap();
        assert!(!e.fallback);
        assert!((e.value - 0.1).abs() <= 2.0 * d.spacing());
        let one = vec![1.0; d.plane_count()];
        assert_eq!(eta_bar(&region, &one, 0.1).unwrap(), EtaBar { value: 1.0, fallback: false });
        let far = eta_bar(&region, &g, 10.0).unwrap();
        assert!(far.fallback);
        assert_eq!(far.value, -0.5);
        let bad: Vec<f64> = g.iter().map(|v| -v).collect();
        assert_eq!(eta_bar(&region, &bad, 0.1), Err(GeomError::NonPositiveOnBoundary));
    }

    #[test]
    fn distance_grid_vanishes_on_nodes() {
        let d = build_domain(2, 1.0, 0.25).unwrap();
        let k = [[0.0, 0.0], [0.5, -0.25]];
        let dist = distance_grid(&k, &d).unwrap();
        assert_eq!(dist[d.plane_index(4, 4)], 0.0);
        assert_eq!(dist[d.plane_index(6, 3)], 0.0);
        assert!(distance_grid(&[], &d).is_err());
    }
}
