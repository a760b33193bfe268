use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::PolyError;

/// Exponent tuple, one entry per variable.
pub type Exponent = Vec<u32>;

/// Sparse multivariate polynomial with real coefficients.
///
/// Terms are kept in lexicographic exponent order and zero coefficients are
/// never stored, so two polynomials with the same terms compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Exponent, f64>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        let mut p = Polynomial::zero(dim);
        p.add_term(vec![0; dim], c);
        p
    }

    /// The coordinate function `x_{index+1}` (zero-based index).
    pub fn variable(dim: usize, index: usize) -> Self {
        assert!(index < dim, "variable index {index} out of range for dimension {dim}");
        let mut e = vec![0; dim];
        e[index] = 1;
        Polynomial::monomial(e, 1.0)
    }

    pub fn monomial(exponent: Exponent, coef: f64) -> Self {
        let mut p = Polynomial::zero(exponent.len());
        p.add_term(exponent, coef);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, f64)>>(dim: usize, terms: I) -> Self {
        let mut p = Polynomial::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim, "exponent length does not match dimension");
            p.add_term(e, c);
        }
        p
    }

    /// `|x|^2` in `dim` variables.
    pub fn norm_squared(dim: usize) -> Self {
        Polynomial::from_terms(
            dim,
            (0..dim).map(|i| {
                let mut e = vec![0; dim];
                e[i] = 2;
                (e, 1.0)
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, f64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> f64 {
        self.terms.get(exponent).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exponent: Exponent, coef: f64) {
        debug_assert_eq!(exponent.len(), self.dim);
        if coef == 0.0 {
            return;
        }
        match self.terms.entry(exponent) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if *o.get() == 0.0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coef);
            }
        }
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn max_abs_coef(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Symbolic zero test with tolerance `1e-9 * (1 + reference)`, where
    /// `reference` is the coefficient scale of the inputs that produced `self`.
    pub fn is_zero_within(&self, reference: f64) -> bool {
        let tol = 1e-9 * (1.0 + reference);
        self.terms.values().all(|c| c.abs() <= tol)
    }

    /// Drop coefficients with magnitude at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().filter(|(_, c)| c.abs() > tol).map(|(e, c)| (e.clone(), *c)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        if s == 0.0 {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).filter(|(_, c)| *c != 0.0).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::constant(self.dim, 1.0);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `x_i -> factors[i] * x_i`.
    pub fn scale_variables(&self, factors: &[f64]) -> Self {
        assert_eq!(factors.len(), self.dim);
        let mut out = Polynomial::zero(self.dim);
        for (e, c) in &self.terms {
            let s: f64 = e.iter().zip(factors).map(|(&a, &f)| f.powi(a as i32)).product();
            out.add_term(e.clone(), c * s);
        }
        out
    }

    /// Partial derivative with respect to the variable with zero-based `index`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Polynomial::zero(self.dim);
        for (e, c) in &self.terms {
            if e[index] > 0 {
                let mut e2 = e.clone();
                e2[index] -= 1;
                out.add_term(e2, c * e[index] as f64);
            }
        }
        out
    }

    /// Re-embed into `dim + extra` variables; the new variables come last.
    pub fn append_variables(&self, extra: usize) -> Self {
        Polynomial {
            dim: self.dim + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.extend(std::iter::repeat_n(0, extra));
                    (e2, *c)
                })
                .collect(),
        }
    }

    /// Multiply by `x_index^power`.
    pub fn shift(&self, index: usize, power: u32) -> Self {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[index] += power;
                    (e2, *c)
                })
                .collect(),
        }
    }

    /// Highest-degree homogeneous part.
    pub fn leading_form(&self) -> Self {
        let weights = vec![1; self.dim];
        self.weighted_leading_form(&weights).0
    }

    /// Part of maximal weighted degree `sum w_i a_i`, together with that degree.
    pub fn weighted_leading_form(&self, weights: &[u32]) -> (Self, u32) {
        let wdeg = |e: &Exponent| e.iter().zip(weights).map(|(a, w)| a * w).sum::<u32>();
        let top = self.terms.keys().map(wdeg).max().unwrap_or(0);
        let form = Polynomial {
            dim: self.dim,
            terms: self.terms.iter().filter(|(e, _)| wdeg(e) == top).map(|(e, c)| (e.clone(), *c)).collect(),
        };
        (form, top)
    }

    /// Evaluate at `x`; fails when `x.len()` differs from the dimension.
    pub fn eval(&self, x: &[f64]) -> Result<f64, PolyError> {
        if x.len() != self.dim {
            return Err(PolyError::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(self.eval_unchecked(x))
    }

    /// Evaluation without the dimension check; panics on short input.
    pub fn eval_unchecked(&self, x: &[f64]) -> f64 {
        if x.iter().all(|v| v.fract() == 0.0 && v.abs() < 1e6) && self.terms.values().all(|c| c.fract() == 0.0) {
            if let Some(v) = self.eval_integer(x) {
                return v;
            }
        }
        let maxdeg = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0) as usize;
        // powers[i][a] = x_i^a
        let powers: Vec<Vec<f64>> = x
            .iter()
            .map(|&v| {
                let mut p = Vec::with_capacity(maxdeg + 1);
                let mut acc = 1.0;
                for _ in 0..=maxdeg {
                    p.push(acc);
                    acc *= v;
                }
                p
            })
            .collect();
        let mut sum = 0.0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (i, &a) in e.iter().enumerate() {
                t *= powers[i][a as usize];
            }
            sum += t;
        }
        sum
    }

    fn eval_integer(&self, x: &[f64]) -> Option<f64> {
        let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        let mut sum: i128 = 0;
        for (e, c) in &self.terms {
            if c.abs() > 1e18 {
                return None;
            }
            let mut t = *c as i128;
            for (i, &a) in e.iter().enumerate() {
                t = t.checked_mul(xi[i].checked_pow(a)?)?;
            }
            sum = sum.checked_add(t)?;
        }
        Some(sum as f64)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let mut acc: BTreeMap<Exponent, f64> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert(0.0) += ca * cb;
            }
        }
        acc.retain(|_, c| *c != 0.0);
        Polynomial { dim: self.dim, terms: acc }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial { (&self).$m(&rhs) }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_coef(f: &mut fmt::Formatter<'_>, c: f64) -> fmt::Result {
    if c.fract() == 0.0 && c.abs() < 1e15 {
        write!(f, "{}", c as i64)
    } else {
        write!(f, "{}", c)
    }
}

/// Prints in the same grammar the parser accepts, terms in lexicographic order.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, &c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else if c < 0.0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
                .collect();
            if vars.is_empty() {
                write_coef(f, mag)?;
            } else {
                if mag != 1.0 {
                    write_coef(f, mag)?;
                    write!(f, "*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
