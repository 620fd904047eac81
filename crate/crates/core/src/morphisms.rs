//! Rational harmonic morphisms P/Q over an eigenfamily: construction,
//! and numerical verification of harmonicity (tau F = 0) and horizontal
//! conformality (kappa(F, F) = 0) on the open set where Q stays away
//! from zero.

use num::complex::Complex64 as C64;

use crate::calculus::{kappa, tau};
use crate::eigenfamilies::{poly_eigenvalues, EigenPolynomial, FamilySpec};
use crate::error::{Error, Result};
use crate::groups::sample_point;
use crate::report::{CheckRecord, VerificationReport};

/// Quotient P/Q of two homogeneous polynomials of the same degree over an
/// eigenfamily.
#[derive(Debug, Clone)]
pub struct RationalMorphism {
    numerator: EigenPolynomial,
    denominator: EigenPolynomial,
}

impl RationalMorphism {
    pub fn numerator(&self) -> &EigenPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &EigenPolynomial {
        &self.denominator
    }
}

/// Validate degrees and linear independence of the coefficient vectors.
pub fn make_morphism(
    fam: &FamilySpec,
    numerator: EigenPolynomial,
    denominator: EigenPolynomial,
) -> Result<RationalMorphism> {
    if numerator.degree() != denominator.degree() {
        return Err(Error::Degree(format!(
            "numerator degree {} != denominator degree {}",
            numerator.degree(),
            denominator.degree()
        )));
    }
    let nvars = fam.members().len();
    if numerator.nvars() != nvars || denominator.nvars() != nvars {
        return Err(Error::Dimension(format!(
            "polynomials over {} and {} variables, family has {} members",
            numerator.nvars(),
            denominator.nvars(),
            nvars
        )));
    }
    // rank test on the 2 x T aligned coefficient matrix: Cauchy-Schwarz is
    // an equality exactly when the coefficient vectors are proportional
    let (a, b) = numerator.aligned_coeffs(&denominator);
    let dot: C64 = a.iter().zip(&b).map(|(x, y)| x * y.conj()).sum();
    let na: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    if na == 0.0 || nb == 0.0 || dot.norm_sqr() >= (1.0 - 1e-12) * na * nb {
        return Err(Error::Dependence);
    }
    Ok(RationalMorphism {
        numerator,
        denominator,
    })
}

/// Jet verification of tau(P/Q) = 0 and kappa(P/Q, P/Q) = 0 at sampled
/// points; points with |Q| <= q_floor * (1 + |P|) are rejected, not failed.
pub fn verify_morphism(
    m: &RationalMorphism,
    fam: &FamilySpec,
    samples: u64,
    seed: u64,
    tol: f64,
    q_floor: f64,
    radius: f64,
) -> Result<VerificationReport> {
    if q_floor <= 0.0 {
        return Err(Error::Parameter("q_floor must be positive".into()));
    }
    let spec = fam.group();
    let p_field = m.numerator.as_field(fam.members())?;
    let q_field = m.denominator.as_field(fam.members())?;
    let f = p_field.div(q_field);

    let mut r_tau: f64 = 0.0;
    let mut r_kap: f64 = 0.0;
    let mut max_abs: f64 = 0.0;
    let mut accepted = 0u64;
    let mut rejected = 0u64;
    let mut index = 0u64;
    while accepted < samples {
        if index >= samples.saturating_mul(10) {
            return Err(Error::SamplingExhausted(format!(
                "{}: only {accepted} of {samples} samples cleared the q-floor",
                spec.label()
            )));
        }
        let pt = sample_point(spec, seed, index, radius)?;
        index += 1;
        let phis: Vec<C64> = fam.members().iter().map(|f| f.eval(&pt)).collect();
        let p_val = m.numerator.eval(&phis);
        let q_val = m.denominator.eval(&phis);
        if q_val.norm() <= q_floor * (1.0 + p_val.norm()) {
            rejected += 1;
            continue;
        }
        let f_val = p_val / q_val;
        let scale = 1.0 + f_val.norm();
        let t = tau(&f, spec, &pt)?;
        let k = kappa(&f, &f, spec, &pt)?;
        r_tau = r_tau.max(t.norm() / scale);
        r_kap = r_kap.max(k.norm() / scale);
        max_abs = max_abs.max(t.norm()).max(k.norm());
        accepted += 1;
    }

    let checks = vec![
        CheckRecord::new("tau_vanishes", max_abs, r_tau),
        CheckRecord::new("kappa_vanishes", max_abs, r_kap),
    ];
    Ok(VerificationReport::from_checks(
        spec,
        "harmonic_morphism",
        seed,
        samples,
        accepted,
        rejected,
        tol,
        checks,
    ))
}

/// Diagnostic: the analytic expansion
/// tau(P/Q) = tau(P)/Q - 2 kappa(P,Q)/Q^2 - P tau(Q)/Q^2 + 2 P kappa(Q,Q)/Q^3
/// evaluated term by term, with each tau/kappa computed by jets. Returns
/// the max scale-free deviation of the assembled expansion from zero and
/// the exact eigenvalue prediction (which is identically zero):
/// lambda_d - 2 d^2 mu - lambda_d + 2 d^2 mu.
pub fn quotient_expansion_residual(
    m: &RationalMorphism,
    fam: &FamilySpec,
    samples: u64,
    seed: u64,
    q_floor: f64,
    radius: f64,
) -> Result<(f64, crate::groups::Rat)> {
    let spec = fam.group();
    let p_field = m.numerator.as_field(fam.members())?;
    let q_field = m.denominator.as_field(fam.members())?;

    let mut worst: f64 = 0.0;
    let mut accepted = 0u64;
    let mut index = 0u64;
    while accepted < samples {
        if index >= samples.saturating_mul(10) {
            return Err(Error::SamplingExhausted(format!(
                "{}: expansion diagnostic starved by the q-floor",
                spec.label()
            )));
        }
        let pt = sample_point(spec, seed, index, radius)?;
        index += 1;
        let phis: Vec<C64> = fam.members().iter().map(|f| f.eval(&pt)).collect();
        let p_val = m.numerator.eval(&phis);
        let q_val = m.denominator.eval(&phis);
        if q_val.norm() <= q_floor * (1.0 + p_val.norm()) {
            continue;
        }
        let tau_p = tau(&p_field, spec, &pt)?;
        let tau_q = tau(&q_field, spec, &pt)?;
        let k_pq = kappa(&p_field, &q_field, spec, &pt)?;
        let k_qq = kappa(&q_field, &q_field, spec, &pt)?;
        let expansion = tau_p / q_val - 2.0 * k_pq / (q_val * q_val)
            - p_val * tau_q / (q_val * q_val)
            + 2.0 * p_val * k_qq / (q_val * q_val * q_val);
        worst = worst.max(expansion.norm() / (1.0 + (p_val / q_val).norm()));
        accepted += 1;
    }

    // lambda_d P/Q - 2 mu_d P/Q - lambda_d P/Q + 2 mu_d P/Q with mu_d = d^2 mu
    let d = m.numerator.degree();
    let (lam_d, mu_d) = poly_eigenvalues(spec.lam, spec.mu, d);
    let two = crate::groups::Rat::new(2, 1);
    let predicted = lam_d - two * mu_d - lam_d + two * mu_d;
    Ok((worst, predicted))
}
