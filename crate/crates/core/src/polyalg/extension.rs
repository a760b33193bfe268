use super::{PolyError, Polynomial};

/// Parity of the extension in the appended variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

pub fn laplacian_poly(p: &Polynomial) -> Polynomial {
    laplacian_in(p, p.dim())
}

/// Laplacian in the first `vars` variables only.
pub fn laplacian_in(p: &Polynomial, vars: usize) -> Polynomial {
    let mut out = Polynomial::zero(p.dim());
    for i in 0..vars {
        out = out + p.derivative(i).derivative(i);
    }
    out
}

/// Harmonic extension of `p` to one more variable `z` (appended last).
///
/// Even: `sum_j (-1)^j z^{2j}/(2j)! L^j p`, odd: `sum_j (-1)^j z^{2j+1}/(2j+1)! L^j p`,
/// where `L` is the Laplacian in the original variables. The series is finite.
pub fn harmonic_extension(p: &Polynomial, parity: Parity) -> Polynomial {
    let n = p.dim();
    let mut out = Polynomial::zero(n + 1);
    let mut lap = p.clone();
    let mut j: u32 = 0;
    let offset = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    while !lap.is_zero() {
        let power = 2 * j + offset;
        let fact: f64 = (1..=power).map(|v| v as f64).product();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = lap.append_variables(1).shift(n, power).scale(sign / fact);
        out = out + term;
        lap = laplacian_poly(&lap);
        j += 1;
    }
    out
}

/// `p_{2k}(f) = 1 - ((f + 1)/(1 - delta))^{2k}`, expanded.
pub fn build_p2k(f: &Polynomial, delta: f64, k: u32) -> Result<Polynomial, PolyError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(PolyError::InvalidParameter(format!("delta must lie in (0,1), got {delta}")));
    }
    if k == 0 {
        return Err(PolyError::InvalidParameter("k must be positive".into()));
    }
    let base = (f + &Polynomial::constant(f.dim(), 1.0)).scale(1.0 / (1.0 - delta));
    Ok(Polynomial::constant(f.dim(), 1.0) - base.pow(2 * k))
}

/// The univariate map `t -> 1 - ((t + 1)/(1 - delta))^{2k}` used by [`build_p2k`].
///
/// Evaluating `f` first and then this map avoids expanding high powers.
/// Values below `-1e300` saturate there so downstream arithmetic stays finite.
pub fn p2k_value(t: f64, delta: f64, k: u32) -> f64 {
    let a = (t + 1.0) / (1.0 - delta);
    (1.0 - a.powi(2 * k as i32)).max(-1e300)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn even_extension_of_quadratic() {
        let e = harmonic_extension(&p("x1^2+x2^2-1", 2), Parity::Even);
        assert_eq!(e, p("x1^2+x2^2-2*x3^2-1", 3));
    }

    #[test]
    fn odd_extension_of_quadratic() {
        let e = harmonic_extension(&p("x1^2+x2^2-1", 2), Parity::Odd);
        let want = p("x3*(x1^2+x2^2-1)", 3) - p("x3^3", 3).scale(2.0 / 3.0);
        assert!((&e - &want).is_zero_within(1.0));
    }

    #[test]
    fn even_extension_of_quartic_product() {
        let e = harmonic_extension(&p("x1^2*x2^2", 2), Parity::Even);
        let want = p("x1^2*x2^2 - x3^2*(x1^2+x2^2)", 3) + p("x3^4", 3).scale(1.0 / 3.0);
        assert!((&e - &want).is_zero_within(1.0));
    }

    #[test]
    fn extension_of_constant_and_zero() {
        assert_eq!(harmonic_extension(&p("5", 2), Parity::Even), p("5", 3));
        assert_eq!(harmonic_extension(&p("1", 2), Parity::Odd), p("x3", 3));
        assert!(harmonic_extension(&Polynomial::zero(2), Parity::Even).is_zero());
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(laplacian_poly(&p("x1^2*x2^2", 2)), p("2*x1^2+2*x2^2", 2));
        assert!(laplacian_poly(&p("x1*x2 + 3*x1 - 2", 2)).is_zero());
    }

    #[test]
    fn p2k_examples() {
        let zero = Polynomial::zero(2);
        assert_eq!(build_p2k(&zero, 0.5, 1).unwrap(), p("-3", 2));
        assert_eq!(build_p2k(&p("-1", 2), 0.5, 3).unwrap(), p("1", 2));
        assert_eq!(build_p2k(&p("x1", 2), 0.5, 1).unwrap(), p("1 - 4*(x1+1)^2", 2));
        assert!(build_p2k(&zero, 1.0, 1).is_err());
        assert!(build_p2k(&zero, 0.0, 1).is_err());
    }

    #[test]
    fn composed_value_matches_expansion() {
        let f = p("x1^2 - x2 + 0.25", 2);
        let q = build_p2k(&f, 0.2, 3).unwrap();
        for x in [[0.1, 0.3], [-0.7, 0.2], [0.5, -0.5]] {
            let direct = p2k_value(f.eval(&x).unwrap(), 0.2, 3);
            assert!((q.eval(&x).unwrap() - direct).abs() < 1e-10);
        }
    }
}
