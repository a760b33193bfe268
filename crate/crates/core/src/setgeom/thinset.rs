use crate::vi_solver::{ObstacleProblemSpec, SolutionField, SolverDomain};

use super::GeomError;

/// Boolean mask over the plane nodes of a domain.
#[derive(Clone, Debug, PartialEq)]
pub struct ThinSet {
    pub domain: SolverDomain,
    pub mask: Vec<bool>,
}

impl ThinSet {
    pub fn new(domain: SolverDomain, mask: Vec<bool>) -> Result<Self, GeomError> {
        if mask.len() != domain.plane_count() {
            return Err(GeomError::LengthMismatch { expected: domain.plane_count(), found: mask.len() });
        }
        Ok(ThinSet { domain, mask })
    }

    pub fn empty(domain: &SolverDomain) -> Self {
        ThinSet { domain: domain.clone(), mask: vec![false; domain.plane_count()] }
    }

    pub fn full(domain: &SolverDomain) -> Self {
        ThinSet { domain: domain.clone(), mask: vec![true; domain.plane_count()] }
    }

    /// Nodes whose thin coordinates satisfy `pred`.
    pub fn from_predicate(domain: &SolverDomain, pred: impl Fn(&[f64]) -> bool) -> Self {
        let mask = (0..domain.plane_count()).map(|p| pred(&domain.plane_point(p))).collect();
        ThinSet { domain: domain.clone(), mask }
    }

    /// Raster of the closed ball of radius `r` about `center`.
    pub fn ball(domain: &SolverDomain, center: &[f64], r: f64) -> Self {
        let slack = 1e-9 * domain.spacing();
        ThinSet::from_predicate(domain, |x| {
            x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt() <= r + slack
        })
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn contains(&self, p: usize) -> bool {
        self.mask[p]
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(p, _)| p)
    }

    /// Thin coordinates of the members, padded to two components.
    pub fn points(&self) -> Vec<[f64; 2]> {
        self.members().map(|p| point2(&self.domain, p)).collect()
    }

    fn zip_with(&self, other: &ThinSet, f: impl Fn(bool, bool) -> bool) -> ThinSet {
        assert_eq!(self.mask.len(), other.mask.len(), "sets live on different domains");
        ThinSet { domain: self.domain.clone(), mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| f(a, b)).collect() }
    }

    pub fn union(&self, other: &ThinSet) -> ThinSet {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &ThinSet) -> ThinSet {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &ThinSet) -> ThinSet {
        self.zip_with(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> ThinSet {
        ThinSet { domain: self.domain.clone(), mask: self.mask.iter().map(|b| !b).collect() }
    }

    /// Number of members of `self` missing from `other`; zero iff `self` is a subset.
    pub fn missing_from(&self, other: &ThinSet) -> usize {
        self.difference(other).count()
    }

    pub fn is_subset(&self, other: &ThinSet) -> bool {
        self.missing_from(other) == 0
    }

    /// Members with every in-domain lateral neighbour also a member.
    pub fn erosion(&self) -> ThinSet {
        let mask = (0..self.mask.len())
            .map(|p| self.mask[p] && self.domain.plane_neighbors(p).all(|q| self.mask[q]))
            .collect();
        ThinSet { domain: self.domain.clone(), mask }
    }

    /// Raster boundary: the set minus its erosion.
    pub fn raster_boundary(&self) -> ThinSet {
        self.difference(&self.erosion())
    }
}

pub(crate) fn point2(d: &SolverDomain, p: usize) -> [f64; 2] {
    let x = d.plane_point(p);
    [x[0], if x.len() > 1 { x[1] } else { 0.0 }]
}

/// Contact and positivity sets of a solved problem.
#[derive(Clone, Debug)]
pub struct ThinSets {
    pub contact: ThinSet,
    pub positivity: ThinSet,
    /// Plane nodes in neither set.
    pub unclassified: usize,
}

/// `contact = {u - phi <= tau_c}`, `positivity = {u > tau_c}` on the plane.
pub fn extract_thin_sets(field: &SolutionField, spec: &ObstacleProblemSpec, tau_c: f64) -> ThinSets {
    let u = field.plane_values();
    let contact: Vec<bool> = u.iter().zip(&spec.obstacle).map(|(v, o)| v - o <= tau_c).collect();
    let positivity: Vec<bool> = u.iter().map(|v| *v > tau_c).collect();
    let unclassified = contact.iter().zip(&positivity).filter(|(c, p)| !**c && !**p).count();
    ThinSets {
        contact: ThinSet { domain: field.domain.clone(), mask: contact },
        positivity: ThinSet { domain: field.domain.clone(), mask: positivity },
        unclassified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vi_solver::build_domain;

    #[test]
    fn ball_raster_counts() {
        let d = build_domain(2, 2.0, 0.5).unwrap();
        // lattice points of (1/2)Z^2 in the unit disk: 13
        assert_eq!(ThinSet::ball(&d, &[0.0, 0.0], 1.0).count(), 13);
    }

    #[test]
    fn boundary_of_square_block() {
        let d = build_domain(2, 2.0, 0.5).unwrap();
        let s = ThinSet::from_predicate(&d, |x| x[0].abs() <= 1.0 && x[1].abs() <= 1.0);
        assert_eq!(s.count(), 25);
        assert_eq!(s.erosion().count(), 9);
        assert_eq!(s.raster_boundary().count(), 16);
        // erosion ignores neighbours outside the domain
        assert_eq!(ThinSet::full(&d).erosion().count(), d.plane_count());
    }

    #[test]
    fn set_algebra() {
        let d = build_domain(1, 1.0, 0.25).unwrap();
        let a = ThinSet::from_predicate(&d, |x| x[0] <= 0.0);
        let b = ThinSet::from_predicate(&d, |x| x[0] >= 0.0);
        assert_eq!(a.intersection(&b).count(), 1);
        assert_eq!(a.union(&b).count(), 9);
        assert!(a.difference(&b).is_subset(&a));
        assert_eq!(a.complement().count(), 4);
    }
}
