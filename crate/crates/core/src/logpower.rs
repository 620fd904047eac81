//! Exact algebra on sums  sum c * phi^s * log(phi)^k  with rational-complex
//! coefficients and rational exponents.
//!
//! For an eigenfunction phi (tau(phi) = lambda phi, kappa(phi,phi) = mu phi^2)
//! the chain rule collapses to tau(f o phi) = lambda phi f'(phi) + mu phi^2 f''(phi),
//! which maps each log-power term to at most three others with exactly
//! computable coefficients. That closure is what certifies tau^p(Phi_p) = 0
//! structurally: the iterate is the empty sum, not a small number.

use num::bigint::BigInt;
use num::complex::Complex64 as C64;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::calculus::{tau, LinearForm, ScalarField};
use crate::error::{Error, Result};
use crate::groups::{sample_point, GroupSpec, Rat};
use crate::jets::branch_cut_distance;
use crate::report::{CheckRecord, VerificationReport};

/// Complex number with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalC {
    pub re: BigRational,
    pub im: BigRational,
}

impl RationalC {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        Self::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn zero() -> Self {
        Self::from_i64(0, 0)
    }

    pub fn one() -> Self {
        Self::from_i64(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().expect("rational re out of f64 range"),
            self.im.to_f64().expect("rational im out of f64 range"),
        )
    }

    /// Accepts "n", "n/d" or "re,im" with rational re and im.
    pub fn parse(text: &str) -> Result<Self> {
        let parse_rat = |s: &str| -> Result<BigRational> {
            let s = s.trim();
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s, "1"),
            };
            let n: BigInt = num
                .parse()
                .map_err(|_| Error::Usage(format!("bad rational '{s}'")))?;
            let d: BigInt = den
                .parse()
                .map_err(|_| Error::Usage(format!("bad rational '{s}'")))?;
            if d.is_zero() {
                return Err(Error::Usage(format!("zero denominator in '{s}'")));
            }
            Ok(BigRational::new(n, d))
        };
        match text.split_once(',') {
            Some((re, im)) => Ok(Self::new(parse_rat(re)?, parse_rat(im)?)),
            None => Ok(Self::new(parse_rat(text)?, BigRational::zero())),
        }
    }
}

fn rat_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// One term c * phi^s * log(phi)^k; stored terms always have c != 0.
#[derive(Debug, Clone, PartialEq)]
pub struct LogPowerTerm {
    pub c: RationalC,
    pub s: BigRational,
    pub k: u32,
}

/// Canonical sum of log-power terms: sorted by (s, k), merged, zero-pruned.
/// The empty sum is the zero function.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LogPowerSum {
    terms: Vec<LogPowerTerm>,
}

impl LogPowerSum {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<LogPowerTerm>) -> Self {
        let mut sum = Self { terms };
        sum.canonicalize();
        sum
    }

    pub fn term(c: RationalC, s: BigRational, k: u32) -> Self {
        Self::from_terms(vec![LogPowerTerm { c, s, k }])
    }

    pub fn terms(&self) -> &[LogPowerTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(terms)
    }

    pub fn scale(&self, c: &RationalC) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| LogPowerTerm {
                    c: t.c.mul(c),
                    s: t.s.clone(),
                    k: t.k,
                })
                .collect(),
        )
    }

    fn canonicalize(&mut self) {
        self.terms
            .sort_by(|a, b| a.s.cmp(&b.s).then(a.k.cmp(&b.k)));
        let mut merged: Vec<LogPowerTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.s == t.s && last.k == t.k => {
                    last.c = last.c.add(&t.c);
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.c.is_zero());
        self.terms = merged;
    }

    /// Largest log power present.
    pub fn max_k(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.k).max()
    }

    /// Numerical evaluation at a phi-value off the branch cut.
    pub fn eval_numeric(&self, phi: C64) -> Result<C64> {
        let needs_guard = self
            .terms
            .iter()
            .any(|t| t.k > 0 || !t.s.is_integer() || t.s.is_negative());
        if needs_guard && branch_cut_distance(phi) <= crate::jets::BRANCH_GUARD {
            return Err(Error::BranchCut { value: phi });
        }
        let log_phi = if self.terms.iter().any(|t| t.k > 0) {
            phi.ln()
        } else {
            C64::zero()
        };
        let mut acc = C64::zero();
        for t in &self.terms {
            let mut val = t.c.to_c64();
            if !t.s.is_zero() {
                val *= phi.powc(C64::new(t.s.to_f64().unwrap(), 0.0));
            }
            for _ in 0..t.k {
                val *= log_phi;
            }
            acc += val;
        }
        Ok(acc)
    }

    /// JSON in the documented schema:
    /// `[{"c": [re, im], "s": "num/den", "k": int}]` with exact fractions.
    pub fn to_json(&self) -> serde_json::Value {
        json!(self
            .terms
            .iter()
            .map(|t| {
                json!({
                    "c": [rat_str(&t.c.re), rat_str(&t.c.im)],
                    "s": rat_str(&t.s),
                    "k": t.k,
                })
            })
            .collect::<Vec<_>>())
    }
}

fn big(r: Rat) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// tau of a single term under an eigenfunction with eigenvalues (lambda, mu):
/// c phi^s L^k maps to
///   c (lambda s + mu s(s-1)) phi^s L^k
/// + c k (lambda + mu (2s-1)) phi^s L^(k-1)
/// + c mu k(k-1) phi^s L^(k-2),
///
/// with vanishing combinatorial factors never materialized.
pub fn tau_symbolic(t: &LogPowerTerm, lam: Rat, mu: Rat) -> LogPowerSum {
    let lam = big(lam);
    let mu = big(mu);
    let one = BigRational::one();
    let mut terms = Vec::new();

    let f_k = &lam * &t.s + &mu * &t.s * (&t.s - &one);
    terms.push(LogPowerTerm {
        c: t.c.scale(&f_k),
        s: t.s.clone(),
        k: t.k,
    });
    if t.k >= 1 {
        let kf = BigRational::from_integer(BigInt::from(t.k));
        let two = BigRational::from_integer(BigInt::from(2));
        let f_k1 = kf * (&lam + &mu * (&two * &t.s - &one));
        terms.push(LogPowerTerm {
            c: t.c.scale(&f_k1),
            s: t.s.clone(),
            k: t.k - 1,
        });
    }
    if t.k >= 2 {
        let kk = BigRational::from_integer(BigInt::from(t.k as u64 * (t.k as u64 - 1)));
        terms.push(LogPowerTerm {
            c: t.c.scale(&(&mu * kk)),
            s: t.s.clone(),
            k: t.k - 2,
        });
    }
    LogPowerSum::from_terms(terms)
}

/// Linear extension of [`tau_symbolic`] applied `times` times, exactly.
pub fn iterate_tau(f: &LogPowerSum, lam: Rat, mu: Rat, times: u32) -> LogPowerSum {
    let mut cur = f.clone();
    for _ in 0..times {
        let mut next = LogPowerSum::zero();
        for t in cur.terms() {
            next = next.add(&tau_symbolic(t, lam, mu));
        }
        cur = next;
    }
    cur
}

/// The three-case proper p-harmonic seed:
///   mu = 0, lambda != 0:      c1 L^(p-1)
///   mu != 0, lambda = mu:     c1 L^(2p-1) + c2 L^(2p-2)
///   mu != 0, lambda != mu:    c1 phi^(1 - lambda/mu) L^(p-1) + c2 L^(p-1)
pub fn build_phi_p(lam: Rat, mu: Rat, p: u32, c1: &RationalC, c2: &RationalC) -> Result<LogPowerSum> {
    if p == 0 {
        return Err(Error::Parameter("p must be positive".into()));
    }
    if lam.is_zero() && mu.is_zero() {
        return Err(Error::Parameter("(lambda, mu) must not be (0, 0)".into()));
    }
    if c1.is_zero() && c2.is_zero() {
        return Err(Error::Parameter("c1 and c2 must not both be zero".into()));
    }
    let zero_s = BigRational::zero();
    if mu.is_zero() {
        // only c1 enters; a zero c1 would build the zero function
        if c1.is_zero() {
            return Err(Error::Parameter(
                "mu = 0 case uses only c1, which must be non-zero".into(),
            ));
        }
        return Ok(LogPowerSum::term(c1.clone(), zero_s, p - 1));
    }
    if lam == mu {
        let a = LogPowerSum::term(c1.clone(), zero_s.clone(), 2 * p - 1);
        let b = LogPowerSum::term(c2.clone(), zero_s, 2 * p - 2);
        return Ok(a.add(&b));
    }
    let s0 = BigRational::one() - big(lam) / big(mu);
    let a = LogPowerSum::term(c1.clone(), s0, p - 1);
    let b = LogPowerSum::term(c2.clone(), zero_s, p - 1);
    Ok(a.add(&b))
}

/// Max number of resampling rounds when points fall in the branch-cut guard.
const RESAMPLE_ROUNDS: u64 = 10;

/// End-to-end check that Phi_p built over `member` on `spec` is proper
/// p-harmonic: structural vanishing of tau^p, non-vanishing of tau^(p-1),
/// plus two numeric jet cross-checks at sampled points.
pub fn verify_p_harmonic(
    member: &LinearForm,
    spec: &GroupSpec,
    p: u32,
    c1: &RationalC,
    c2: &RationalC,
    samples: u64,
    seed: u64,
    radius: f64,
) -> Result<VerificationReport> {
    let tol = 1e-7;
    let phi_p = build_phi_p(spec.lam, spec.mu, p, c1, c2)?;
    let tau_chain = tau_chain(&phi_p, spec.lam, spec.mu, p);
    let tau_p = &tau_chain[p as usize];
    let tau_pm1 = &tau_chain[p as usize - 1];

    let mut checks = vec![
        CheckRecord::structural("tau_p_vanishes_symbolically", tau_p.is_zero()),
        CheckRecord::structural("tau_pm1_nonzero_symbolically", !tau_pm1.is_zero()),
    ];

    let tau_1 = &tau_chain[1];
    let field = ScalarField::linear(member.clone());
    let phi_field = field.clone().compose_logpower(&phi_p);
    let taupm1_field = field.clone().compose_logpower(tau_pm1);

    let mut accepted = 0u64;
    let mut rejected = 0u64;
    let mut max_abs: f64 = 0.0;
    let mut r_match: f64 = 0.0;
    let mut r_zero: f64 = 0.0;
    let mut index = 0u64;
    while accepted < samples {
        if index >= samples * RESAMPLE_ROUNDS {
            return Err(Error::SamplingExhausted(format!(
                "{}: {} of {} samples accepted after {} draws (branch-cut guard)",
                spec.label(),
                accepted,
                samples,
                index
            )));
        }
        let pt = sample_point(spec, seed, index, radius)?;
        index += 1;
        let phi_val = member.eval(&pt);
        if branch_cut_distance(phi_val) <= crate::jets::BRANCH_GUARD {
            rejected += 1;
            continue;
        }
        // (b) jet tau of Phi_p o phi vs the symbolic tau(Phi_p) at phi(pt)
        let (jet_tau, sym_val) = match (
            tau(&phi_field, spec, &pt),
            tau_1.eval_numeric(phi_val),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            // a direction can still graze the cut even when phi(pt) clears it
            _ => {
                rejected += 1;
                continue;
            }
        };
        let resid = crate::rel_residual(jet_tau, sym_val);
        r_match = r_match.max(resid);
        max_abs = max_abs.max((jet_tau - sym_val).norm());
        // (c) jet tau of the symbolic tau^(p-1)(Phi_p) should vanish
        if !tau_pm1.is_zero() {
            match (tau(&taupm1_field, spec, &pt), taupm1_field.value(&pt)) {
                (Ok(t), Ok(scale)) => {
                    let rz = t.norm() / (1.0 + scale.norm());
                    r_zero = r_zero.max(rz);
                    max_abs = max_abs.max(t.norm());
                }
                _ => {
                    rejected += 1;
                    continue;
                }
            }
        }
        accepted += 1;
    }
    checks.push(CheckRecord::new("jet_tau_matches_symbolic", r_match, r_match));
    checks.push(CheckRecord::new("jet_tau_of_tau_pm1_vanishes", r_zero, r_zero));

    Ok(VerificationReport::from_checks(
        spec,
        &format!("p_harmonic_p{p}"),
        seed,
        samples,
        accepted,
        rejected,
        tol,
        checks,
    ))
}

/// The iterates [Phi_p, tau(Phi_p), ..., tau^p(Phi_p)].
pub fn tau_chain(phi_p: &LogPowerSum, lam: Rat, mu: Rat, p: u32) -> Vec<LogPowerSum> {
    let mut chain = vec![phi_p.clone()];
    for i in 0..p {
        let next = iterate_tau(&chain[i as usize], lam, mu, 1);
        chain.push(next);
    }
    chain
}
