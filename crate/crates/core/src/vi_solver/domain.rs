use serde::Serialize;

use super::SolverError;

/// Node cap for a single grid; the pinned desk-scale grids use about 1.1M.
pub const DEFAULT_NODE_BUDGET: usize = 20_000_000;

/// Half box `[-L,L]^n x [0,L]` with spacing `h`; the thin plane is `z = 0`.
///
/// Node `(i, j, k)` sits at `(-L + i h, -L + j h, k h)`. For `n = 1` the `j`
/// axis collapses to a single index. Values are stored with `k` fastest:
/// index `(i * ny + j) * nz + k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolverDomain {
    n: usize,
    half_width: f64,
    spacing: f64,
    cells: usize,
    nx: usize,
    ny: usize,
    nz: usize,
}

pub fn build_domain(n: usize, half_width: f64, spacing: f64) -> Result<SolverDomain, SolverError> {
    build_domain_with_budget(n, half_width, spacing, DEFAULT_NODE_BUDGET)
}

pub fn build_domain_with_budget(
    n: usize,
    half_width: f64,
    spacing: f64,
    budget: usize,
) -> Result<SolverDomain, SolverError> {
    if n != 1 && n != 2 {
        return Err(SolverError::InvalidDomain(format!("thin dimension must be 1 or 2, got {n}")));
    }
    if !(half_width > 0.0 && spacing > 0.0 && half_width.is_finite() && spacing.is_finite()) {
        return Err(SolverError::InvalidDomain("L and h must be positive".into()));
    }
    let ratio = half_width / spacing;
    let cells = ratio.round();
    if cells < 1.0 || (ratio - cells).abs() > 1e-9 * cells.max(1.0) {
        return Err(SolverError::InvalidDomain(format!("L/h = {ratio} is not an integer")));
    }
    let cells = cells as usize;
    let nx = 2 * cells + 1;
    let ny = if n == 2 { nx } else { 1 };
    let nz = cells + 1;
    let nodes = nx.checked_mul(ny).and_then(|v| v.checked_mul(nz)).unwrap_or(usize::MAX);
    if nodes > budget {
        return Err(SolverError::NodeBudgetExceeded { nodes, budget });
    }
    Ok(SolverDomain { n, half_width, spacing, cells, nx, ny, nz })
}

impl SolverDomain {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Number of cells along `z` (`L/h`).
    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.nx, self.ny, self.nz]
    }

    pub fn node_count(&self) -> usize {
        self.nx * self.ny * self.nz
    }

    pub fn plane_count(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.ny + j) * self.nz + k
    }

    #[inline]
    pub fn plane_index(&self, i: usize, j: usize) -> usize {
        i * self.ny + j
    }

    #[inline]
    pub fn plane_ij(&self, p: usize) -> (usize, usize) {
        (p / self.ny, p % self.ny)
    }

    /// Physical coordinate of lateral index `i` (exactly 0 at the centre).
    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - self.cells as f64) * self.spacing
    }

    #[inline]
    pub fn height(&self, k: usize) -> f64 {
        k as f64 * self.spacing
    }

    /// Thin-plane coordinates of plane node `p`, length `n`.
    pub fn plane_point(&self, p: usize) -> Vec<f64> {
        let (i, j) = self.plane_ij(p);
        if self.n == 2 {
            vec![self.coord(i), self.coord(j)]
        } else {
            vec![self.coord(i)]
        }
    }

    /// Full coordinates `(x', z)` of a node, length `n + 1`.
    pub fn node_point(&self, i: usize, j: usize, k: usize) -> Vec<f64> {
        if self.n == 2 {
            vec![self.coord(i), self.coord(j), self.height(k)]
        } else {
            vec![self.coord(i), self.height(k)]
        }
    }

    /// Euclidean norm of the thin coordinates of plane node `p`.
    pub fn plane_radius(&self, p: usize) -> f64 {
        let (i, j) = self.plane_ij(p);
        let x = self.coord(i);
        let y = if self.n == 2 { self.coord(j) } else { 0.0 };
        x.hypot(y)
    }

    pub fn is_boundary(&self, i: usize, j: usize, k: usize) -> bool {
        i == 0 || i == self.nx - 1 || k == self.nz - 1 || (self.n == 2 && (j == 0 || j == self.ny - 1))
    }

    /// Whether plane node `p` lies on the outer boundary.
    pub fn plane_on_edge(&self, p: usize) -> bool {
        let (i, j) = self.plane_ij(p);
        self.is_boundary(i, j, 0)
    }

    /// Outer-boundary node indices in lexicographic order.
    pub fn boundary_nodes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..self.nx {
            for j in 0..self.ny {
                for k in 0..self.nz {
                    if self.is_boundary(i, j, k) {
                        out.push(self.index(i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Lateral plane neighbours (4-connectivity in 2D, 2 in 1D).
    pub fn plane_neighbors(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        let (i, j) = self.plane_ij(p);
        let (i, j) = (i as isize, j as isize);
        let cand: [(isize, isize); 4] = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)];
        let count = if self.n == 2 { 4 } else { 2 };
        cand.into_iter().take(count).filter_map(move |(a, b)| {
            if a >= 0 && b >= 0 && (a as usize) < self.nx && (b as usize) < self.ny {
                Some(self.plane_index(a as usize, b as usize))
            } else {
                None
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_domain_dims() {
        assert_eq!(build_domain(2, 1.0, 0.5).unwrap().dims(), [5, 5, 3]);
    }

    #[test]
    fn pinned_domain_dims() {
        let d = build_domain(2, 4.0, 1.0 / 16.0).unwrap();
        assert_eq!(d.dims(), [129, 129, 65]);
        assert_eq!(d.coord(64), 0.0);
        assert_eq!(d.coord(0), -4.0);
    }

    #[test]
    fn rejects_non_integral_ratio() {
        assert!(matches!(build_domain(2, 1.0, 0.3), Err(SolverError::InvalidDomain(_))));
        assert!(build_domain(3, 1.0, 0.5).is_err());
    }

    #[test]
    fn rejects_over_budget() {
        assert!(matches!(
            build_domain_with_budget(2, 4.0, 1.0 / 16.0, 1000),
            Err(SolverError::NodeBudgetExceeded { .. })
        ));
    }

    #[test]
    fn one_dimensional_layout() {
        let d = build_domain(1, 1.0, 0.25).unwrap();
        assert_eq!(d.dims(), [9, 1, 5]);
        assert_eq!(d.plane_count(), 9);
        assert!(!d.is_boundary(4, 0, 0));
        assert!(d.is_boundary(0, 0, 0));
        assert_eq!(d.plane_neighbors(4).count(), 2);
    }
}
