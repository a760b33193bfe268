//! Contact sets approximating the zero set of a nonnegative polynomial:
//! obstacle `-(p_k(rho x) + beta f)`.

use crate::polyalg::Polynomial;
use crate::setgeom::{distance_to_set, ThinSet};

use super::common::plane_eval;
use super::{rho_bar, run_compact_contact, GridParams, PipelineError, PipelineOutcome};

const BETA_CAP_EXP: i32 = 20;
const LARGE_K_CAP: u32 = 64;

/// Degree of the radial part `|x|^k - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KChoice {
    /// Even `k >= 2`, typically the degree of `f`.
    Fixed(u32),
    /// Smallest even `k` with `1/rho_bar(n, k) <= 1 + eps`.
    Large,
}

fn choose_k(choice: KChoice, n: usize, eps: f64) -> Result<u32, PipelineError> {
    match choice {
        KChoice::Fixed(k) if k >= 2 && k % 2 == 0 => Ok(k),
        KChoice::Fixed(k) => Err(PipelineError::Precondition(format!("k must be even and >= 2, got {k}"))),
        KChoice::Large => (1..=LARGE_K_CAP / 2)
            .map(|m| 2 * m)
            .find(|&k| 1.0 / rho_bar(k, n as u32) <= 1.0 + eps)
            .ok_or_else(|| PipelineError::Precondition(format!("no even k <= {LARGE_K_CAP} reaches 1/rho_bar <= {}", 1.0 + eps))),
    }
}

/// `s = (rho_bar |x|)^k - 1 + beta f` with the smallest power-of-two `beta`
/// making `s > 0` outside the `eps`-neighbourhood of `{f = 0}` on the raster.
pub fn run_prop_polysets(
    f: &Polynomial,
    eps: f64,
    choice: KChoice,
    params: &GridParams,
) -> Result<PipelineOutcome, PipelineError> {
    let n = f.dim();
    if n < 2 {
        return Err(PipelineError::Precondition("needs at least two thin variables".into()));
    }
    if !(eps > 0.0) {
        return Err(PipelineError::Precondition(format!("eps must be positive, got {eps}")));
    }
    let k = choose_k(choice, n, eps)?;
    let rho = rho_bar(k, n as u32);
    let domain = params.domain(n)?;
    let fv = plane_eval(f, &domain);
    let fscale = fv.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if let Some(p) = (0..fv.len()).find(|&p| fv[p] < -1e-12 * fscale) {
        return Err(PipelineError::Precondition(format!(
            "f is negative at {:?} ({})",
            domain.plane_point(p),
            fv[p]
        )));
    }
    let zero = ThinSet { domain: domain.clone(), mask: fv.iter().map(|v| v.abs() <= 1e-12 * fscale).collect() };
    if zero.is_empty() {
        return Err(PipelineError::Precondition("zero set of f misses every raster node".into()));
    }
    let dist = distance_to_set(&zero);
    let near = ThinSet { mask: dist.iter().map(|&d| d <= eps).collect(), domain: domain.clone() };

    let radial = Polynomial::norm_squared(n).scale(rho * rho).pow(k / 2) - Polynomial::constant(n, 1.0);
    let rv = plane_eval(&radial, &domain);
    let mut beta = None;
    let mut blocking = 0;
    for e in 0..=BETA_CAP_EXP {
        let b = 2f64.powi(e);
        blocking = (0..fv.len()).filter(|&p| !near.contains(p) && rv[p] + b * fv[p] <= 0.0).count();
        if blocking == 0 {
            beta = Some(b);
            break;
        }
    }
    let beta = beta.ok_or_else(|| {
        PipelineError::Precondition(format!("beta cap 2^{BETA_CAP_EXP} reached with {blocking} blocking nodes"))
    })?;
    let s = &radial + &f.scale(beta);

    let mut out = run_compact_contact(&s, params)?;
    let report = &mut out.report;
    report.name = "prop_polysets".into();
    report.input("f", f.to_string());
    report.input("eps", eps);
    report.input("k", k as f64);
    report.diag("beta", beta);
    report.diag("rho_bar", rho);

    let h = domain.spacing();
    let contact = &out.sets.contact;
    let core = zero.intersection(&ThinSet::ball(&domain, &vec![0.0; n], 1.0));
    report.check_eq(
        "contact contains {f = 0} in the unit ball",
        "zero set of f inside the contact set",
        core.missing_from(contact) as f64,
        0.0,
    );
    report.check_eq(
        "contact within eps of {f = 0}",
        "contact set close to the zero set",
        contact.missing_from(&near) as f64,
        0.0,
    );
    let outer = ThinSet::ball(&domain, &vec![0.0; n], 1.0 / rho + h);
    report.check_eq("contact inside B_{1/rho_bar}", "radial obstacle bounds the contact set", contact.missing_from(&outer) as f64, 0.0);
    out.overlay = Some(f.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_k_meets_eps() {
        let k = choose_k(KChoice::Large, 2, 0.2).unwrap();
        assert!(1.0 / rho_bar(k, 2) <= 1.2);
        assert!(k == 2 || 1.0 / rho_bar(k - 2, 2) > 1.2);
        assert!(choose_k(KChoice::Fixed(3), 2, 0.2).is_err());
    }
}
