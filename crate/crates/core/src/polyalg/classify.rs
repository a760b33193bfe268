//! Certificates for boundedness of `{p < 0}`.

use serde::Serialize;

use super::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassStatus {
    /// `{p < 0}` lies inside the ball of the reported radius.
    Bounded,
    /// `p` tends to a negative value or to minus infinity along the witness ray.
    Unbounded,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassVerdict {
    pub status: ClassStatus,
    pub witness: Option<Vec<f64>>,
    pub radius: Option<f64>,
    /// Variable weights of the leading form that certified boundedness.
    pub weights: Option<Vec<u32>>,
}

impl ClassVerdict {
    fn bounded(radius: f64, weights: Vec<u32>) -> Self {
        ClassVerdict { status: ClassStatus::Bounded, witness: None, radius: Some(radius), weights: Some(weights) }
    }

    fn unbounded(witness: Vec<f64>) -> Self {
        ClassVerdict { status: ClassStatus::Unbounded, witness: Some(witness), radius: None, weights: None }
    }

    fn unknown() -> Self {
        ClassVerdict { status: ClassStatus::Unknown, witness: None, radius: None, weights: None }
    }

    pub fn is_bounded(&self) -> bool {
        self.status == ClassStatus::Bounded
    }
}

/// Points on the unit sphere plus a bound on how far any sphere point is
/// from the nearest sample (geodesic), or an exact flag.
struct SphereSamples {
    points: Vec<Vec<f64>>,
    gap: f64,
}

fn sphere_samples(dim: usize, budget: usize) -> Option<SphereSamples> {
    match dim {
        1 => Some(SphereSamples { points: vec![vec![1.0], vec![-1.0]], gap: 0.0 }),
        2 => {
            let n = budget.max(8);
            let points = (0..n)
                .map(|i| {
                    let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect();
            Some(SphereSamples { points, gap: std::f64::consts::PI / n as f64 })
        }
        3 => {
            // latitude/longitude grid, both spacings at most pi/m
            let m = ((budget as f64 / 2.0).sqrt().ceil() as usize).max(4);
            let d = std::f64::consts::PI / m as f64;
            let mut points = Vec::new();
            for a in 0..=m {
                let th = a as f64 * d;
                for b in 0..2 * m {
                    let ph = b as f64 * d;
                    points.push(vec![th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]);
                }
            }
            Some(SphereSamples { points, gap: d })
        }
        _ => None,
    }
}

/// Largest sample count used when refining a certificate.
const REFINE_CAP: usize = 1 << 20;

/// Lower bound for `min_{|xi|=1} h(xi)`, refining the samples while the
/// sampled minimum is positive but the bound is not.
fn certify(h: &Polynomial, dim: usize, budget: usize) -> f64 {
    let mut b = budget;
    loop {
        let s = match sphere_samples(dim, b) {
            Some(s) => s,
            None => return f64::NEG_INFINITY,
        };
        let (bound, smin) = certified_min(h, &s);
        if bound > 0.0 || smin <= 0.0 || s.gap == 0.0 || b >= REFINE_CAP {
            return bound;
        }
        b *= 4;
    }
}

/// Lower bound for `min_{|xi|=1} h(xi)` from samples, and the sampled minimum.
fn certified_min(h: &Polynomial, samples: &SphereSamples) -> (f64, f64) {
    let vals: Vec<f64> = samples.points.iter().map(|x| h.eval_unchecked(x)).collect();
    let smin = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    (bound_from(h, samples, &vals, smin), smin)
}

fn bound_from(h: &Polynomial, samples: &SphereSamples, vals: &[f64], smin: f64) -> f64 {
    if samples.gap == 0.0 {
        return smin;
    }
    let m = h.degree() as f64;
    if h.dim() == 2 {
        // h on the circle is a trigonometric polynomial of degree <= m, so
        // Bernstein gives |h'| <= m max|h|, and max|h| <= smax / (1 - m gap).
        let r = m * samples.gap;
        if r >= 1.0 {
            return f64::NEG_INFINITY;
        }
        let smax = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        smin - r * smax / (1.0 - r)
    } else {
        let lip: f64 = m * h.terms().map(|(_, c)| c.abs()).sum::<f64>();
        smin - lip * samples.gap
    }
}

fn candidate_weights(dim: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![1; dim]];
    if dim == 2 {
        for a in 1..=4u32 {
            for b in 1..=4u32 {
                if (a, b) != (1, 1) && gcd(a, b) == 1 {
                    out.push(vec![a, b]);
                }
            }
        }
    }
    out
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Coefficients of `t -> p(t * dir)` by degree.
fn ray_coefficients(p: &Polynomial, dir: &[f64]) -> Vec<f64> {
    let mut coefs = vec![0.0; p.degree() as usize + 1];
    for (e, c) in p.terms() {
        let d: u32 = e.iter().sum();
        let v: f64 = e.iter().zip(dir).map(|(&a, &x)| x.powi(a as i32)).product();
        coefs[d as usize] += c * v;
    }
    coefs
}

/// Decide whether `{p < 0}` is bounded.
///
/// `budget` is the number of sphere samples; `sample_radius` is the scale at
/// which a candidate unbounded direction is first checked numerically.
pub fn negativity_bounded(p: &Polynomial, sample_radius: f64, budget: usize) -> ClassVerdict {
    let dim = p.dim();
    if p.degree() == 0 {
        let c = p.coefficient(&vec![0; dim]);
        return if c >= 0.0 {
            ClassVerdict::bounded(0.0, vec![1; dim])
        } else {
            let mut e = vec![0.0; dim];
            if dim > 0 {
                e[0] = 1.0;
            }
            ClassVerdict::unbounded(e)
        };
    }
    let samples = sphere_samples(dim, budget);
    if samples.is_some() {
        for w in candidate_weights(dim) {
            let (h, _) = p.weighted_leading_form(&w);
            let mu = certify(&h, dim, budget.max(8));
            if mu > 0.0 {
                let rest: f64 = (p - &h).terms().map(|(_, c)| c.abs()).sum();
                let wmax = *w.iter().max().unwrap() as i32;
                let radius = if rest == 0.0 { 0.0 } else { (rest / mu).max(1.0).powi(wmax) };
                return ClassVerdict::bounded(radius, w);
            }
        }
    }
    // search for a ray along which p stays negative at infinity
    let lead = p.leading_form();
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for i in 0..dim {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; dim];
            e[i] = s;
            dirs.push(e);
        }
    }
    if let Some(s) = &samples {
        let mut scored: Vec<(f64, usize)> =
            s.points.iter().enumerate().map(|(i, x)| (lead.eval_unchecked(x), i)).filter(|(v, _)| *v <= 0.0).collect();
        scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        dirs.extend(scored.into_iter().take(64).map(|(_, i)| s.points[i].clone()));
    }
    let tol = 1e-9 * (1.0 + p.max_abs_coef());
    for dir in dirs {
        if lead.eval_unchecked(&dir) > 0.0 {
            continue;
        }
        let coefs = ray_coefficients(p, &dir);
        let top = coefs.iter().rposition(|c| c.abs() > tol);
        if let Some(d) = top {
            if coefs[d] < 0.0 {
                let mut r = sample_radius.max(1e-3);
                for _ in 0..80 {
                    let x: Vec<f64> = dir.iter().map(|v| v * r).collect();
                    if p.eval_unchecked(&x) < 0.0 {
                        return ClassVerdict::unbounded(dir);
                    }
                    r *= 2.0;
                }
            }
        }
    }
    ClassVerdict::unknown()
}
