//! Inner radius of the contact set for `|x'|^k - 1` obstacles.

/// Closed-form inner radius with `kappa = k/(n-1)`:
/// `kappa^(-1/((n-1)(kappa+1))) (kappa^(-kappa/(kappa+1)) + kappa^(1/(kappa+1)))^(-1/((n-1) kappa))`.
pub fn rho_bar(k: u32, n: u32) -> f64 {
    assert!(n >= 2 && k >= 1, "needs n >= 2 and k >= 1");
    let nm1 = (n - 1) as f64;
    let kap = k as f64 / nm1;
    let inner = kap.powf(-kap / (kap + 1.0)) + kap.powf(1.0 / (kap + 1.0));
    kap.powf(-1.0 / (nm1 * (kap + 1.0))) * inner.powf(-1.0 / (nm1 * kap))
}

/// Numerical counterpart: the largest touching radius of the barriers
/// `g(r) = A r^(1-n) + t - 1 + r^k` over `A > 0`, `t >= 0`.
///
/// For fixed `A` the minimiser of `A r^(1-n) + r^k` is found by bisection on
/// the derivative; an outer bisection finds the `A` whose minimum equals 1.
pub fn rho_bar_numeric(k: u32, n: u32) -> f64 {
    let nm1 = (n - 1) as f64;
    let kf = k as f64;
    let argmin = |a: f64| {
        // derivative -(n-1) A r^-n + k r^(k-1) is increasing in r
        let (mut lo, mut hi) = (1e-12f64, 1.0f64);
        while -(nm1) * a * hi.powf(-(n as f64)) + kf * hi.powf(kf - 1.0) < 0.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if -(nm1) * a * mid.powf(-(n as f64)) + kf * mid.powf(kf - 1.0) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let min_value = |a: f64| {
        let r = argmin(a);
        a * r.powf(1.0 - n as f64) + r.powf(kf)
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if min_value(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    argmin(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_in_the_plane() {
        assert!((rho_bar(2, 2) - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((rho_bar(8, 2) - 0.7599).abs() < 1e-4);
        assert!((rho_bar(4, 2) - 0.6687).abs() < 1e-4);
    }

    #[test]
    fn numeric_agrees() {
        for n in 2..=4 {
            for k in 2..=16 {
                assert!((rho_bar(k, n) - rho_bar_numeric(k, n)).abs() < 1e-10, "k={k} n={n}");
            }
        }
    }
}
