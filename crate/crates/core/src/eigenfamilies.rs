//! Admissible eigenfamilies for every catalogued group, their numerical
//! verification against the (lambda, mu) tables, and the degree-d
//! homogeneous polynomial families they generate.
//!
//! All members are stored in the unified shape phi_C(g) = trace(C g^t):
//! rank-one C = v a^t for the single-block families, and
//! C = [[u a^t, v b^t], [0, 0]] for the families living on a doubled
//! ambient representation.

use num::complex::Complex64 as C64;
use num::Zero;

use crate::calculus::{
    first_jets_linear, kappa_linear, tau_linear, LinearForm, ScalarField,
};
use crate::error::{Error, Result};
use crate::groups::{sample_point, GroupFamily, GroupSpec, Rat};
use crate::jets::curve_jet;
use crate::report::{CheckRecord, VerificationReport};

const ISOTROPY_TOL: f64 = 1e-12;

/// Left-vector data of a family.
#[derive(Debug, Clone)]
pub enum FamilyShape {
    /// Members C = v a^t.
    RankOne { v: Vec<C64> },
    /// Members C = [[u a^t, v b^t], [0, 0]].
    Block { u: Vec<C64>, v: Vec<C64> },
}

/// A validated eigenfamily: group, shape, and a finite set of members.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    group: GroupSpec,
    shape: Option<FamilyShape>,
    members: Vec<LinearForm>,
    member_params: Vec<(Vec<C64>, Option<Vec<C64>>)>,
}

impl FamilySpec {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn shape(&self) -> Option<&FamilyShape> {
        self.shape.as_ref()
    }

    pub fn members(&self) -> &[LinearForm] {
        &self.members
    }

    pub fn member_params(&self) -> &[(Vec<C64>, Option<Vec<C64>>)] {
        &self.member_params
    }

    /// Bypasses all admissibility checks; for negative controls.
    pub fn unchecked(group: GroupSpec, members: Vec<LinearForm>) -> Self {
        Self {
            group,
            shape: None,
            member_params: vec![(Vec::new(), None); members.len()],
            members,
        }
    }
}

/// Complex-bilinear dot (x, y) = sum x_j y_j (not Hermitian).
pub fn bilinear_dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn is_zero_vec(v: &[C64]) -> bool {
    v.iter().all(|z| z.norm() == 0.0)
}

fn check_len(name: &str, v: &[C64], expect: usize) -> Result<()> {
    if v.len() != expect {
        return Err(Error::Dimension(format!(
            "{name} has length {}, expected {expect}",
            v.len()
        )));
    }
    Ok(())
}

/// Build and validate a family from its parameter vectors. For the block
/// families `u` defaults to `v`; Sp_n(R) accepts either the full rank-one
/// shape (vectors of ambient length 2n) or the block shape (length n).
pub fn make_family(
    group: &GroupSpec,
    v: &[C64],
    u: Option<&[C64]>,
    params: &[(Vec<C64>, Option<Vec<C64>>)],
) -> Result<FamilySpec> {
    if is_zero_vec(v) {
        return Err(Error::Parameter("v must be non-zero".into()));
    }
    let ambient = group.ambient;
    let block = match group.family {
        GroupFamily::SpR => match v.len() {
            l if l == ambient => false,
            l if l == ambient / 2 => true,
            l => {
                return Err(Error::Dimension(format!(
                    "sp_n(R) direction vector has length {l}, expected {} or {}",
                    ambient,
                    ambient / 2
                )))
            }
        },
        f => f.uses_block_family(),
    };

    if group.family.requires_isotropy() {
        let vv = bilinear_dot(v, v);
        if vv.norm() > ISOTROPY_TOL * (1.0 + v.iter().map(|z| z.norm_sqr()).sum::<f64>()) {
            return Err(Error::Isotropy { residual: vv.norm() });
        }
    }

    let mut members = Vec::with_capacity(params.len());
    let mut member_params = Vec::with_capacity(params.len());
    if block {
        let half = ambient / 2;
        check_len("v", v, half)?;
        let u = u.unwrap_or(v);
        check_len("u", u, half)?;
        if is_zero_vec(u) {
            return Err(Error::Parameter("u must be non-zero".into()));
        }
        for (a, b) in params {
            check_len("a", a, half)?;
            let b = b
                .as_ref()
                .ok_or_else(|| Error::Parameter("block family member needs (a, b)".into()))?;
            check_len("b", b, half)?;
            members.push(LinearForm::block(u, a, v, b));
            member_params.push((a.clone(), Some(b.clone())));
        }
    } else {
        if u.is_some() {
            return Err(Error::Parameter(format!(
                "{} takes a single direction vector v",
                group.family.name()
            )));
        }
        check_len("v", v, ambient)?;
        for (a, b) in params {
            if b.is_some() {
                return Err(Error::Parameter("rank-one family member takes only a".into()));
            }
            check_len("a", a, ambient)?;
            members.push(LinearForm::rank_one(v, a));
            member_params.push((a.clone(), None));
        }
    }

    Ok(FamilySpec {
        group: group.clone(),
        shape: Some(if block {
            FamilyShape::Block {
                u: u.map(|x| x.to_vec()).unwrap_or_else(|| v.to_vec()),
                v: v.to_vec(),
            }
        } else {
            FamilyShape::RankOne { v: v.to_vec() }
        }),
        members,
        member_params,
    })
}

fn unit_vec(len: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::zero(); len];
    v[k] = C64::new(1.0, 0.0);
    v
}

/// Deterministic generic direction vector without accidental symmetries.
pub fn generic_vector(len: usize) -> Vec<C64> {
    (0..len)
        .map(|j| C64::new(1.0 + 0.35 * j as f64, 0.15 + 0.1 * j as f64))
        .collect()
}

/// Isotropic direction (1, i, 0, ..., 0).
pub fn isotropic_vector(len: usize) -> Vec<C64> {
    let mut v = vec![C64::zero(); len];
    v[0] = C64::new(1.0, 0.0);
    v[1] = C64::new(0.0, 1.0);
    v
}

/// Canonical family exercised by the table reproduction runs: members
/// a = e_k (rank-one) or (a, b) in {(e_k, 0), (0, e_k)} (block, with
/// shared left vector u = v).
pub fn default_family(group: &GroupSpec) -> Result<FamilySpec> {
    let ambient = group.ambient;
    let block = group.family.uses_block_family();
    let vec_len = if block { ambient / 2 } else { ambient };
    let v = if group.family.requires_isotropy() {
        isotropic_vector(vec_len)
    } else {
        generic_vector(vec_len)
    };
    let params: Vec<(Vec<C64>, Option<Vec<C64>>)> = if block {
        let zero = vec![C64::zero(); vec_len];
        let mut ps = Vec::new();
        for k in 0..vec_len {
            ps.push((unit_vec(vec_len, k), Some(zero.clone())));
        }
        for k in 0..vec_len {
            ps.push((zero.clone(), Some(unit_vec(vec_len, k))));
        }
        ps
    } else {
        (0..vec_len).map(|k| (unit_vec(vec_len, k), None)).collect()
    };
    make_family(group, &v, None, &params)
}

/// Eigenfamily verification: at every sampled point and ordered member
/// pair, the residuals of tau(phi) - lambda phi and
/// kappa(phi, psi) - mu phi psi, through both the exact-linear and the
/// jet path, plus the mutual agreement of the two paths.
pub fn verify_eigen(
    fam: &FamilySpec,
    samples: u64,
    seed: u64,
    tol: f64,
    radius: f64,
) -> Result<VerificationReport> {
    let spec = &fam.group;
    let lam = rat_c64(spec.lam);
    let mu = rat_c64(spec.mu);
    let fields: Vec<ScalarField> = fam
        .members
        .iter()
        .map(|m| ScalarField::linear(m.clone()))
        .collect();
    let m = fam.members.len();
    if m == 0 {
        return Err(Error::Parameter("family has no members".into()));
    }

    let mut r_tau_lin = Acc::default();
    let mut r_tau_jet = Acc::default();
    let mut r_kap_lin = Acc::default();
    let mut r_kap_jet = Acc::default();
    let mut r_tau_agree = Acc::default();
    let mut r_kap_agree = Acc::default();

    for idx in 0..samples {
        let p = sample_point(spec, seed, idx, radius)?;
        let phis: Vec<C64> = fam.members.iter().map(|f| f.eval(&p)).collect();

        // exact-linear paths
        let taus_lin: Vec<C64> = fam
            .members
            .iter()
            .map(|f| tau_linear(f, spec, &p))
            .collect::<Result<_>>()?;
        let d1 = first_jets_linear(&fam.members, spec, &p)?;

        // jet path, one curve jet per basis vector shared by all members
        let mut taus_jet = vec![C64::zero(); m];
        let mut d1_jet = vec![vec![C64::zero(); spec.basis.len()]; m];
        for (k, bv) in spec.basis.iter().enumerate() {
            let jm = curve_jet(&p, &bv.z)?;
            let eps = C64::new(bv.eps as f64, 0.0);
            for i in 0..m {
                let jet = fields[i].eval(&jm).map_err(|e| Error::Evaluation {
                    index: k,
                    source: Box::new(e),
                })?;
                taus_jet[i] += eps * jet.f2;
                d1_jet[i][k] = jet.f1;
            }
        }

        for i in 0..m {
            let want = lam * phis[i];
            r_tau_lin.push(taus_lin[i], want);
            r_tau_jet.push(taus_jet[i], want);
            r_tau_agree.push(taus_lin[i], taus_jet[i]);
        }
        for i in 0..m {
            for j in 0..m {
                let want = mu * phis[i] * phis[j];
                let k_lin: C64 = spec
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(k, bv)| C64::new(bv.eps as f64, 0.0) * d1[i][k] * d1[j][k])
                    .sum();
                let k_jet: C64 = spec
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(k, bv)| C64::new(bv.eps as f64, 0.0) * d1_jet[i][k] * d1_jet[j][k])
                    .sum();
                r_kap_lin.push(k_lin, want);
                r_kap_jet.push(k_jet, want);
                r_kap_agree.push(k_lin, k_jet);
            }
        }
    }

    let checks = vec![
        r_tau_lin.record("tau_linear"),
        r_tau_jet.record("tau_jet"),
        r_kap_lin.record("kappa_linear"),
        r_kap_jet.record("kappa_jet"),
        r_tau_agree.record("tau_path_agreement"),
        r_kap_agree.record("kappa_path_agreement"),
    ];
    Ok(VerificationReport::from_checks(
        spec,
        "eigenfamily",
        seed,
        samples,
        samples,
        0,
        tol,
        checks,
    ))
}

/// Fraction of sampled points at which some member pair violates the
/// kappa relation by more than `floor` (scale-free); for negative controls.
pub fn kappa_failure_fraction(
    fam: &FamilySpec,
    samples: u64,
    seed: u64,
    radius: f64,
    floor: f64,
) -> Result<f64> {
    let spec = &fam.group;
    let mu = rat_c64(spec.mu);
    let mut failures = 0u64;
    for idx in 0..samples {
        let p = sample_point(spec, seed, idx, radius)?;
        let phis: Vec<C64> = fam.members.iter().map(|f| f.eval(&p)).collect();
        let mut worst: f64 = 0.0;
        for (i, fi) in fam.members.iter().enumerate() {
            for (j, fj) in fam.members.iter().enumerate() {
                let k = kappa_linear(fi, fj, spec, &p)?;
                worst = worst.max(crate::rel_residual(k, mu * phis[i] * phis[j]));
            }
        }
        if worst > floor {
            failures += 1;
        }
    }
    Ok(failures as f64 / samples as f64)
}

pub(crate) fn rat_c64(r: Rat) -> C64 {
    C64::new(*r.numer() as f64 / *r.denom() as f64, 0.0)
}

// ---------------------------------------------------------------------------
// polynomial families (degree-d construction)
// ---------------------------------------------------------------------------

/// Homogeneous polynomial over the family members: a sum of monomials
/// `coeff * prod_i phi_i^powers[i]` with every multi-index summing to the
/// declared degree.
#[derive(Debug, Clone)]
pub struct EigenPolynomial {
    degree: u32,
    terms: Vec<(Vec<u32>, C64)>,
}

impl EigenPolynomial {
    pub fn new(degree: u32, terms: Vec<(Vec<u32>, C64)>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Parameter("degree must be positive".into()));
        }
        for (powers, _) in &terms {
            let total: u32 = powers.iter().sum();
            if total != degree {
                return Err(Error::Homogeneity(format!(
                    "multi-index {powers:?} has total degree {total}, expected {degree}"
                )));
            }
        }
        Ok(Self { degree, terms })
    }

    pub fn monomial(nvars: usize, powers: &[(usize, u32)]) -> Result<Self> {
        let mut idx = vec![0u32; nvars];
        for &(i, k) in powers {
            idx[i] += k;
        }
        let degree = idx.iter().sum();
        Self::new(degree, vec![(idx, C64::new(1.0, 0.0))])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(Vec<u32>, C64)] {
        &self.terms
    }

    pub fn nvars(&self) -> usize {
        self.terms.first().map_or(0, |(p, _)| p.len())
    }

    pub fn eval(&self, phis: &[C64]) -> C64 {
        let mut acc = C64::zero();
        for (powers, coeff) in &self.terms {
            let mut term = *coeff;
            for (i, &k) in powers.iter().enumerate() {
                for _ in 0..k {
                    term *= phis[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Expand over the members as a jet-evaluable field.
    pub fn as_field(&self, members: &[LinearForm]) -> Result<ScalarField> {
        let mut acc: Option<ScalarField> = None;
        for (powers, coeff) in &self.terms {
            if powers.len() != members.len() {
                return Err(Error::Dimension(format!(
                    "multi-index over {} variables, family has {} members",
                    powers.len(),
                    members.len()
                )));
            }
            let mut term = ScalarField::constant(*coeff);
            for (i, &k) in powers.iter().enumerate() {
                if k > 0 {
                    term = term.mul(ScalarField::linear(members[i].clone()).powi(k as i64));
                }
            }
            acc = Some(match acc {
                None => term,
                Some(prev) => prev.add(term),
            });
        }
        acc.ok_or_else(|| Error::Parameter("polynomial has no terms".into()))
    }

    /// Coefficient vector aligned over the union of multi-indices of
    /// `self` and `other`, for linear-independence tests.
    pub fn aligned_coeffs(&self, other: &Self) -> (Vec<C64>, Vec<C64>) {
        let mut indices: Vec<Vec<u32>> = Vec::new();
        for (p, _) in self.terms.iter().chain(other.terms.iter()) {
            if !indices.contains(p) {
                indices.push(p.clone());
            }
        }
        let lookup = |poly: &Self, idx: &Vec<u32>| {
            poly.terms
                .iter()
                .filter(|(p, _)| p == idx)
                .map(|(_, c)| *c)
                .sum::<C64>()
        };
        let a = indices.iter().map(|i| lookup(self, i)).collect();
        let b = indices.iter().map(|i| lookup(other, i)).collect();
        (a, b)
    }
}

/// Transformed eigenvalues of the degree-d family:
/// lambda_d = d lambda + d(d-1) mu and mu_d = d^2 mu, exact.
pub fn poly_eigenvalues(lam: Rat, mu: Rat, d: u32) -> (Rat, Rat) {
    let d = d as i64;
    (
        Rat::from_integer(d) * lam + Rat::from_integer(d * (d - 1)) * mu,
        Rat::from_integer(d * d) * mu,
    )
}

/// Verify the degree-d polynomial family relations
/// tau(P) = lambda_d P and kappa(P, Q) = mu_d P Q at sampled points.
pub fn poly_family(
    fam: &FamilySpec,
    d: u32,
    polys: &[EigenPolynomial],
    samples: u64,
    seed: u64,
    tol: f64,
    radius: f64,
) -> Result<VerificationReport> {
    let spec = &fam.group;
    for p in polys {
        if p.degree() != d {
            return Err(Error::Homogeneity(format!(
                "polynomial of degree {} in a degree-{d} family",
                p.degree()
            )));
        }
    }
    let (lam_d, mu_d) = poly_eigenvalues(spec.lam, spec.mu, d);
    let (lam_d, mu_d) = (rat_c64(lam_d), rat_c64(mu_d));
    let fields: Vec<ScalarField> = polys
        .iter()
        .map(|p| p.as_field(&fam.members))
        .collect::<Result<_>>()?;
    let m = polys.len();

    let mut r_tau = Acc::default();
    let mut r_kap = Acc::default();
    for idx in 0..samples {
        let p = sample_point(spec, seed, idx, radius)?;
        let phis: Vec<C64> = fam.members.iter().map(|f| f.eval(&p)).collect();
        let values: Vec<C64> = polys.iter().map(|poly| poly.eval(&phis)).collect();

        let mut taus = vec![C64::zero(); m];
        let mut d1 = vec![vec![C64::zero(); spec.basis.len()]; m];
        for (k, bv) in spec.basis.iter().enumerate() {
            let jm = curve_jet(&p, &bv.z)?;
            let eps = C64::new(bv.eps as f64, 0.0);
            for i in 0..m {
                let jet = fields[i].eval(&jm)?;
                taus[i] += eps * jet.f2;
                d1[i][k] = jet.f1;
            }
        }
        for i in 0..m {
            r_tau.push(taus[i], lam_d * values[i]);
            for j in 0..m {
                let kap: C64 = spec
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(k, bv)| C64::new(bv.eps as f64, 0.0) * d1[i][k] * d1[j][k])
                    .sum();
                r_kap.push(kap, mu_d * values[i] * values[j]);
            }
        }
    }

    let checks = vec![
        r_tau.record("poly_tau"),
        r_kap.record("poly_kappa"),
    ];
    Ok(VerificationReport::from_checks(
        spec,
        &format!("poly_family_d{d}"),
        seed,
        samples,
        samples,
        0,
        tol,
        checks,
    ))
}

/// Max-residual accumulator.
#[derive(Default)]
struct Acc {
    max_abs: f64,
    max_rel: f64,
}

impl Acc {
    fn push(&mut self, got: C64, want: C64) {
        self.max_abs = self.max_abs.max((got - want).norm());
        self.max_rel = self.max_rel.max(crate::rel_residual(got, want));
    }

    fn record(&self, name: &str) -> CheckRecord {
        CheckRecord::new(name, self.max_abs, self.max_rel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix;
    use crate::groups::{make_group, GroupParams};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn soc_family_member_shape() {
        let spec = make_group(GroupFamily::SoC, GroupParams::N(2)).unwrap();
        let fam = make_family(
            &spec,
            &[c(1.0, 0.0), c(0.0, 1.0)],
            None,
            &[(vec![c(1.0, 0.0), c(0.0, 0.0)], None)],
        )
        .unwrap();
        let coeff = fam.members()[0].coeff();
        assert_eq!(coeff[(0, 0)], c(1.0, 0.0));
        assert_eq!(coeff[(1, 0)], c(0.0, 1.0));
        assert_eq!(coeff[(0, 1)], C64::zero());
    }

    #[test]
    fn soc_rejects_non_isotropic_v() {
        let spec = make_group(GroupFamily::SoC, GroupParams::N(2)).unwrap();
        let err = make_family(&spec, &[c(1.0, 0.0), c(1.0, 0.0)], None, &[]).unwrap_err();
        match err {
            Error::Isotropy { residual } => assert!((residual - 2.0).abs() < 1e-14),
            other => panic!("expected isotropy error, got {other:?}"),
        }
    }

    #[test]
    fn glh_block_member_shape() {
        let spec = make_group(GroupFamily::GlH, GroupParams::N(1)).unwrap();
        let fam = make_family(
            &spec,
            &[c(1.0, 0.0)],
            Some(&[c(1.0, 0.0)]),
            &[(vec![c(1.0, 0.0)], Some(vec![c(0.0, 1.0)]))],
        )
        .unwrap();
        let coeff = fam.members()[0].coeff();
        assert_eq!(coeff[(0, 0)], c(1.0, 0.0));
        assert_eq!(coeff[(0, 1)], c(0.0, 1.0));
        assert_eq!(coeff[(1, 0)], C64::zero());
        assert_eq!(coeff[(1, 1)], C64::zero());
    }

    #[test]
    fn zero_vectors_and_bad_lengths_are_rejected() {
        let spec = make_group(GroupFamily::GlC, GroupParams::N(2)).unwrap();
        assert!(make_family(&spec, &[C64::zero(), C64::zero()], None, &[]).is_err());
        assert!(make_family(&spec, &[c(1.0, 0.0)], None, &[]).is_err());
        let spec = make_group(GroupFamily::GlH, GroupParams::N(2)).unwrap();
        // missing b in a block family
        assert!(make_family(
            &spec,
            &generic_vector(2),
            None,
            &[(vec![c(1.0, 0.0), C64::zero()], None)]
        )
        .is_err());
    }

    #[test]
    fn default_families_pass_on_small_groups() {
        for (fam, params) in [
            (GroupFamily::GlC, GroupParams::N(2)),
            (GroupFamily::GlR, GroupParams::N(2)),
            (GroupFamily::GlH, GroupParams::N(1)),
            (GroupFamily::SoC, GroupParams::N(2)),
            (GroupFamily::U, GroupParams::N(2)),
        ] {
            let spec = make_group(fam, params).unwrap();
            let family = default_family(&spec).unwrap();
            let report = verify_eigen(&family, 10, 42, 1e-8, 0.5).unwrap();
            assert!(report.pass, "{}: max_rel {:.3e}", spec.label(), report.max_rel);
        }
    }

    #[test]
    fn rank_two_coefficient_on_slc_fails_kappa() {
        let spec = make_group(GroupFamily::SlC, GroupParams::N(3)).unwrap();
        let c_mat = cmatrix::e_rs(3, 0, 0).add(&cmatrix::e_rs(3, 1, 1)).unwrap();
        let fam = FamilySpec::unchecked(spec, vec![LinearForm::new(c_mat)]);
        let frac = kappa_failure_fraction(&fam, 20, 42, 0.5, 1e-3).unwrap();
        assert!(frac >= 0.9, "failure fraction {frac}");
        let report = verify_eigen(&fam, 20, 42, 1e-8, 0.5).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn non_isotropic_v_on_soc_fails_kappa_with_exact_offset() {
        let spec = make_group(GroupFamily::SoC, GroupParams::N(3)).unwrap();
        let v = vec![c(1.0, 0.0), c(1.0, 0.0), C64::zero()];
        let a = vec![c(1.0, 0.0), C64::zero(), C64::zero()];
        let b = vec![c(0.5, 0.0), c(0.3, 0.0), C64::zero()];
        let fam = FamilySpec::unchecked(
            spec.clone(),
            vec![LinearForm::rank_one(&v, &a), LinearForm::rank_one(&v, &b)],
        );
        let frac = kappa_failure_fraction(&fam, 20, 7, 0.5, 1e-3).unwrap();
        assert!(frac >= 0.9, "failure fraction {frac}");
        // offset identity kappa(phi_a, phi_b) + phi_a phi_b = (v,v)(a,b)
        let vv = bilinear_dot(&v, &v);
        let ab = bilinear_dot(&a, &b);
        for idx in 0..10 {
            let p = sample_point(&spec, 7, idx, 0.5).unwrap();
            let k = kappa_linear(&fam.members()[0], &fam.members()[1], &spec, &p).unwrap();
            let phi_a = fam.members()[0].eval(&p);
            let phi_b = fam.members()[1].eval(&p);
            assert!(
                crate::rel_residual(k + phi_a * phi_b, vv * ab) < 1e-8,
                "offset {} vs {}",
                k + phi_a * phi_b,
                vv * ab
            );
        }
    }

    #[test]
    fn homogeneity_is_enforced() {
        assert!(EigenPolynomial::new(
            2,
            vec![(vec![1, 1], c(1.0, 0.0)), (vec![1, 0], c(1.0, 0.0))]
        )
        .is_err());
        assert!(EigenPolynomial::new(2, vec![(vec![2, 0], c(1.0, 0.0))]).is_ok());
    }

    #[test]
    fn poly_eigenvalue_arithmetic() {
        // GLC n=2, d=2: lambda_2 = 2(-4) + 2(-2) = -12, mu_2 = 4(-2) = -8
        let (l2, m2) = poly_eigenvalues(Rat::new(-4, 1), Rat::new(-2, 1), 2);
        assert_eq!(l2, Rat::new(-12, 1));
        assert_eq!(m2, Rat::new(-8, 1));
        // d = 1 is the identity
        let (l1, m1) = poly_eigenvalues(Rat::new(-4, 1), Rat::new(-2, 1), 1);
        assert_eq!(l1, Rat::new(-4, 1));
        assert_eq!(m1, Rat::new(-2, 1));
        // SU(1,1), d=3: 3(-3/2) + 6(-1/2) = -15/2
        let (l3, _) = poly_eigenvalues(Rat::new(-3, 2), Rat::new(-1, 2), 3);
        assert_eq!(l3, Rat::new(-15, 2));
    }

    #[test]
    fn degree_two_monomials_verify_on_glc2() {
        let spec = make_group(GroupFamily::GlC, GroupParams::N(2)).unwrap();
        let fam = default_family(&spec).unwrap();
        let p = EigenPolynomial::monomial(2, &[(0, 1), (1, 1)]).unwrap(); // phi1 phi2
        let q = EigenPolynomial::monomial(2, &[(0, 2)]).unwrap(); // phi1^2
        let report = poly_family(&fam, 2, &[p, q], 10, 42, 1e-8, 0.5).unwrap();
        assert!(report.pass, "max_rel {:.3e}", report.max_rel);
    }

    #[test]
    fn poly_degree_mismatch_is_rejected() {
        let spec = make_group(GroupFamily::GlC, GroupParams::N(2)).unwrap();
        let fam = default_family(&spec).unwrap();
        let p = EigenPolynomial::monomial(2, &[(0, 1)]).unwrap(); // degree 1
        assert!(poly_family(&fam, 2, &[p], 5, 42, 1e-8, 0.5).is_err());
    }

    #[test]
    fn aligned_coefficients() {
        let p = EigenPolynomial::new(2, vec![(vec![2, 0], c(2.0, 0.0))]).unwrap();
        let q = EigenPolynomial::new(2, vec![(vec![1, 1], c(1.0, 0.0))]).unwrap();
        let (a, b) = p.aligned_coeffs(&q);
        assert_eq!(a, vec![c(2.0, 0.0), C64::zero()]);
        assert_eq!(b, vec![C64::zero(), c(1.0, 0.0)]);
    }

    #[test]
    fn spr_accepts_both_candidate_shapes_and_both_pass() {
        // the direction vector may live in C^(2n) (full rank-one members on
        // the ambient representation) or in C^n (top-block members with a
        // shared left vector); both are admissible and both verify
        let spec = make_group(GroupFamily::SpR, GroupParams::N(2)).unwrap();

        let rank_one = default_family(&spec).unwrap();
        assert!(matches!(rank_one.shape(), Some(FamilyShape::RankOne { .. })));
        assert!(verify_eigen(&rank_one, 15, 42, 1e-8, 0.5).unwrap().pass);

        let v = generic_vector(2);
        let zero = vec![C64::zero(); 2];
        let block = make_family(
            &spec,
            &v,
            None,
            &[
                (unit_vec(2, 0), Some(zero.clone())),
                (zero.clone(), Some(unit_vec(2, 1))),
            ],
        )
        .unwrap();
        assert!(matches!(block.shape(), Some(FamilyShape::Block { .. })));
        assert!(verify_eigen(&block, 15, 42, 1e-8, 0.5).unwrap().pass);

        // anything else is a dimension error
        assert!(make_family(&spec, &generic_vector(3), None, &[]).is_err());
    }

    #[test]
    fn left_vector_matters_for_block_families() {
        // shared left vector u = v passes; independent u and v does not
        // survive the cross pairs on GL_n(H) once n >= 2
        let spec = make_group(GroupFamily::GlH, GroupParams::N(2)).unwrap();
        let v = generic_vector(2);
        let zero = vec![C64::zero(); 2];
        let params: Vec<(Vec<C64>, Option<Vec<C64>>)> = vec![
            (unit_vec(2, 0), Some(zero.clone())),
            (zero.clone(), Some(unit_vec(2, 0))),
        ];
        let shared = make_family(&spec, &v, None, &params).unwrap();
        assert!(verify_eigen(&shared, 10, 42, 1e-8, 0.5).unwrap().pass);

        let mut u = v.clone();
        u[1] *= c(2.0, 0.5); // break proportionality
        let split = make_family(&spec, &v, Some(&u), &params).unwrap();
        let report = verify_eigen(&split, 10, 42, 1e-8, 0.5).unwrap();
        assert!(
            !report.pass,
            "independent left vectors unexpectedly passed: {:.3e}",
            report.max_rel
        );
    }
}
