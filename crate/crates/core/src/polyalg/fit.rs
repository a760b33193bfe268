use nalgebra::{DMatrix, DVector};

use super::{PolyError, Polynomial};

#[derive(Clone, Debug)]
pub struct FitResult {
    pub poly: Polynomial,
    /// Degree actually used; lower than requested when the design was rank deficient.
    pub degree: u32,
    pub max_residual: f64,
}

/// All exponents in `dim` variables with total degree at most `degree`, lexicographic.
pub fn monomial_basis(dim: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == dim {
            out.push(prefix.clone());
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            rec(dim, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, degree, &mut Vec::new(), &mut out);
    out
}

fn design(points: &[Vec<f64>], basis: &[Vec<u32>]) -> DMatrix<f64> {
    DMatrix::from_fn(points.len(), basis.len(), |r, c| {
        basis[c].iter().zip(&points[r]).map(|(&a, &x)| x.powi(a as i32)).product()
    })
}

/// Least-squares polynomial fit of `values` at `points`.
///
/// Columns are normalised and solved through an SVD. When the design is
/// numerically rank deficient the degree is lowered until it is not.
pub fn fit_distance_poly(points: &[Vec<f64>], values: &[f64], degree: u32) -> Result<FitResult, PolyError> {
    if points.is_empty() || points.len() != values.len() {
        return Err(PolyError::InvalidParameter("fit needs matching, nonempty points and values".into()));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(PolyError::DimensionMismatch { expected: dim, found: 0 });
    }
    let b = DVector::from_column_slice(values);
    let mut deg = degree;
    loop {
        let basis = monomial_basis(dim, deg);
        let mut a = design(points, &basis);
        let norms: Vec<f64> = (0..a.ncols()).map(|c| a.column(c).norm()).collect();
        for (c, &nrm) in norms.iter().enumerate() {
            if nrm > 0.0 {
                a.column_mut(c).scale_mut(1.0 / nrm);
            }
        }
        let svd = a.clone().svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        let full_rank = basis.len() <= points.len() && norms.iter().all(|&n| n > 0.0) && smin > 1e-13 * smax;
        if !full_rank && deg > 0 {
            deg -= 1;
            continue;
        }
        let coef = svd.solve(&b, 1e-13 * smax).map_err(|e| PolyError::InvalidParameter(e.to_string()))?;
        let poly = Polynomial::from_terms(
            dim,
            basis.iter().zip(coef.iter()).zip(&norms).filter(|(_, &n)| n > 0.0).map(|((e, &c), &n)| (e.clone(), c / n)),
        );
        let max_residual = points
            .iter()
            .zip(values)
            .map(|(x, v)| (poly.eval_unchecked(x) - v).abs())
            .fold(0.0, f64::max);
        return Ok(FitResult { poly, degree: deg, max_residual });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk_points(step: f64) -> Vec<Vec<f64>> {
        let m = (1.0 / step).round() as i32;
        let mut pts = Vec::new();
        for i in -m..=m {
            for j in -m..=m {
                let (x, y) = (i as f64 * step, j as f64 * step);
                if x * x + y * y <= 1.0 {
                    pts.push(vec![x, y]);
                }
            }
        }
        pts
    }

    #[test]
    fn reproduces_quadratic() {
        let pts = disk_points(0.1);
        let vals: Vec<f64> = pts.iter().map(|p| p[0] * p[0]).collect();
        let fit = fit_distance_poly(&pts, &vals, 2).unwrap();
        assert!(fit.max_residual < 1e-12);
        assert!((fit.poly.coefficient(&[2, 0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_data() {
        let pts = disk_points(0.1);
        let vals = vec![5.0; pts.len()];
        let fit = fit_distance_poly(&pts, &vals, 4).unwrap();
        assert!(fit.max_residual < 1e-10);
        assert!((fit.poly.eval(&[0.3, -0.2]).unwrap() - 5.0).abs() < 1e-10);
    }

    #[test]
    fn degree_zero_is_the_mean() {
        let pts = disk_points(0.1);
        let vals: Vec<f64> = pts.iter().map(|p| (p[0] * p[0] + p[1] * p[1]).sqrt()).collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let fit = fit_distance_poly(&pts, &vals, 0).unwrap();
        assert!((fit.poly.coefficient(&[0, 0]) - mean).abs() < 1e-12);
    }

    #[test]
    fn collinear_samples_lower_the_degree() {
        let pts: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64 / 20.0, 0.0]).collect();
        let vals: Vec<f64> = pts.iter().map(|p| p[0]).collect();
        let fit = fit_distance_poly(&pts, &vals, 3).unwrap();
        // every x2 column vanishes, so no positive degree has full rank
        assert_eq!(fit.degree, 0);
    }

    #[test]
    fn basis_size() {
        assert_eq!(monomial_basis(2, 4).len(), 15);
        assert_eq!(monomial_basis(3, 2).len(), 10);
    }
}
