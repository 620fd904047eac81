//! Tension field and conformality operator on a catalogued group.
//!
//! Both operators are signed basis sums over one-parameter subgroups:
//! tau(phi) = sum_Z eps_Z * Z^2(phi) and
//! kappa(phi, psi) = sum_Z eps_Z * Z(phi) * Z(psi).
//! Linear forms phi_C(g) = trace(C g^t) get an exact fast path through the
//! cached structure sum; arbitrary composites go through jets.

use num::complex::Complex64 as C64;
use num::Zero;

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::jets::{curve_jet, Jet2, JetMatrix};
use crate::logpower::LogPowerSum;

/// Coefficient matrix C of the linear form phi_C(g) = trace(C * g^t),
/// the universal shape of all catalog eigenfunctions.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm {
    c: ComplexMatrix,
}

impl LinearForm {
    pub fn new(c: ComplexMatrix) -> Self {
        Self { c }
    }

    /// Rank-one form C = v a^t.
    pub fn rank_one(v: &[C64], a: &[C64]) -> Self {
        let n = v.len();
        Self {
            c: ComplexMatrix::from_fn(n, n, |j, al| v[j] * a[al]),
        }
    }

    /// Block form C = [[u a^t, v b^t], [0, 0]] on a doubled ambient size.
    pub fn block(u: &[C64], a: &[C64], v: &[C64], b: &[C64]) -> Self {
        let n = u.len();
        Self {
            c: ComplexMatrix::from_fn(2 * n, 2 * n, |j, al| {
                if j >= n {
                    C64::zero()
                } else if al < n {
                    u[j] * a[al]
                } else {
                    v[j] * b[al - n]
                }
            }),
        }
    }

    pub fn coeff(&self) -> &ComplexMatrix {
        &self.c
    }

    pub fn ambient(&self) -> usize {
        self.c.rows()
    }

    /// phi_C(g) = trace(C g^t) = sum_{j,a} C_ja * g_ja.
    pub fn eval(&self, g: &ComplexMatrix) -> C64 {
        let mut acc = C64::zero();
        for j in 0..self.c.rows() {
            for a in 0..self.c.cols() {
                acc += self.c[(j, a)] * g[(j, a)];
            }
        }
        acc
    }

    /// Same contraction against a jet matrix.
    pub fn eval_jets(&self, g: &JetMatrix) -> Jet2 {
        let mut acc = Jet2::constant(C64::zero());
        for j in 0..self.c.rows() {
            for a in 0..self.c.cols() {
                acc = acc.add(g.entry(j, a).scale(self.c[(j, a)]));
            }
        }
        acc
    }

    /// Pullback along left translation: phi_C(q p) = phi_{q^t C}(p).
    pub fn left_translate(&self, q: &ComplexMatrix) -> Result<Self> {
        Ok(Self {
            c: q.transpose().matmul(&self.c)?,
        })
    }
}

/// Composable scalar field, evaluated on the order-2 jet of a group curve.
#[derive(Debug, Clone)]
pub enum ScalarField {
    /// Matrix entry selector g_ja.
    Entry(usize, usize),
    Const(C64),
    Linear(LinearForm),
    Add(Box<ScalarField>, Box<ScalarField>),
    Sub(Box<ScalarField>, Box<ScalarField>),
    Mul(Box<ScalarField>, Box<ScalarField>),
    Div(Box<ScalarField>, Box<ScalarField>),
    Neg(Box<ScalarField>),
    /// Integer power.
    PowI(Box<ScalarField>, i64),
    /// Principal-branch complex power.
    PowC(Box<ScalarField>, C64),
    /// Principal-branch logarithm.
    Log(Box<ScalarField>),
    Conj(Box<ScalarField>),
    Re(Box<ScalarField>),
    Im(Box<ScalarField>),
}

impl ScalarField {
    pub fn entry(j: usize, a: usize) -> Self {
        ScalarField::Entry(j, a)
    }

    pub fn constant(c: C64) -> Self {
        ScalarField::Const(c)
    }

    pub fn linear(form: LinearForm) -> Self {
        ScalarField::Linear(form)
    }

    pub fn add(self, rhs: Self) -> Self {
        ScalarField::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Self) -> Self {
        ScalarField::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Self) -> Self {
        ScalarField::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn div(self, rhs: Self) -> Self {
        ScalarField::Div(Box::new(self), Box::new(rhs))
    }

    pub fn scaled(self, c: C64) -> Self {
        ScalarField::Const(c).mul(self)
    }

    pub fn powi(self, k: i64) -> Self {
        ScalarField::PowI(Box::new(self), k)
    }

    pub fn powc(self, s: C64) -> Self {
        ScalarField::PowC(Box::new(self), s)
    }

    pub fn log(self) -> Self {
        ScalarField::Log(Box::new(self))
    }

    /// Compose a log-power sum with this field:
    /// sum c * f^s * log(f)^k with principal branches.
    pub fn compose_logpower(self, sum: &LogPowerSum) -> Self {
        let mut acc: Option<ScalarField> = None;
        for t in sum.terms() {
            let mut term = ScalarField::Const(t.c.to_c64());
            if !t.s.is_zero() {
                let sc = C64::new(rat_to_f64(&t.s), 0.0);
                term = term.mul(self.clone().powc(sc));
            }
            if t.k > 0 {
                term = term.mul(self.clone().log().powi(t.k as i64));
            }
            acc = Some(match acc {
                None => term,
                Some(prev) => prev.add(term),
            });
        }
        acc.unwrap_or(ScalarField::Const(C64::zero()))
    }

    pub fn eval(&self, g: &JetMatrix) -> Result<Jet2> {
        match self {
            ScalarField::Entry(j, a) => Ok(g.entry(*j, *a)),
            ScalarField::Const(c) => Ok(Jet2::constant(*c)),
            ScalarField::Linear(form) => Ok(form.eval_jets(g)),
            ScalarField::Add(a, b) => Ok(a.eval(g)?.add(b.eval(g)?)),
            ScalarField::Sub(a, b) => Ok(a.eval(g)?.sub(b.eval(g)?)),
            ScalarField::Mul(a, b) => Ok(a.eval(g)?.mul(b.eval(g)?)),
            ScalarField::Div(a, b) => a.eval(g)?.div(b.eval(g)?),
            ScalarField::Neg(a) => Ok(a.eval(g)?.neg()),
            ScalarField::PowI(a, k) => a.eval(g)?.powi(*k),
            ScalarField::PowC(a, s) => a.eval(g)?.powc(*s),
            ScalarField::Log(a) => a.eval(g)?.log(),
            ScalarField::Conj(a) => Ok(a.eval(g)?.conj()),
            ScalarField::Re(a) => Ok(a.eval(g)?.re()),
            ScalarField::Im(a) => Ok(a.eval(g)?.im()),
        }
    }

    /// Plain value at a point (constant curve through p).
    pub fn value(&self, p: &ComplexMatrix) -> Result<C64> {
        Ok(self.eval(&JetMatrix::constant(p))?.f0)
    }
}

pub(crate) fn rat_to_f64(r: &num::BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("rational out of f64 range")
}

/// tau(f)(p) by the jet path: sum over the signed basis of the second jet
/// component along p * exp(sZ). Errors name the offending basis vector.
pub fn tau(f: &ScalarField, spec: &GroupSpec, p: &ComplexMatrix) -> Result<C64> {
    let mut acc = C64::zero();
    for (idx, v) in spec.basis.iter().enumerate() {
        let jm = curve_jet(p, &v.z)?;
        let jet = f.eval(&jm).map_err(|e| Error::Evaluation {
            index: idx,
            source: Box::new(e),
        })?;
        acc += C64::new(v.eps as f64, 0.0) * jet.f2;
    }
    Ok(acc)
}

/// kappa(f, h)(p) by the jet path.
pub fn kappa(f: &ScalarField, h: &ScalarField, spec: &GroupSpec, p: &ComplexMatrix) -> Result<C64> {
    let mut acc = C64::zero();
    for (idx, v) in spec.basis.iter().enumerate() {
        let jm = curve_jet(p, &v.z)?;
        let wrap = |e: Error| Error::Evaluation {
            index: idx,
            source: Box::new(e),
        };
        let a = f.eval(&jm).map_err(wrap)?;
        let b = h.eval(&jm).map_err(wrap)?;
        acc += C64::new(v.eps as f64, 0.0) * a.f1 * b.f1;
    }
    Ok(acc)
}

/// Exact fast path: tau(phi_C)(p) = trace(C (p S)^t) with the cached
/// structure sum S = sum eps Z^2. No jets involved.
pub fn tau_linear(form: &LinearForm, spec: &GroupSpec, p: &ComplexMatrix) -> Result<C64> {
    let ps = p.matmul(spec.structure_sum())?;
    Ok(form.eval(&ps))
}

/// Exact fast path: kappa(phi_C, phi_D)(p) = sum eps tr(C (pZ)^t) tr(D (pZ)^t).
pub fn kappa_linear(
    c: &LinearForm,
    d: &LinearForm,
    spec: &GroupSpec,
    p: &ComplexMatrix,
) -> Result<C64> {
    let mut acc = C64::zero();
    for v in &spec.basis {
        let pz = p.matmul(&v.z)?;
        acc += C64::new(v.eps as f64, 0.0) * c.eval(&pz) * d.eval(&pz);
    }
    Ok(acc)
}

/// First derivatives of a set of linear forms at p along every basis
/// direction, for callers that sweep all member pairs: entry `[i][k]` is
/// Z_k(phi_i)(p).
pub fn first_jets_linear(
    forms: &[LinearForm],
    spec: &GroupSpec,
    p: &ComplexMatrix,
) -> Result<Vec<Vec<C64>>> {
    let mut out = vec![vec![C64::zero(); spec.basis.len()]; forms.len()];
    for (k, v) in spec.basis.iter().enumerate() {
        let pz = p.matmul(&v.z)?;
        for (i, f) in forms.iter().enumerate() {
            out[i][k] = f.eval(&pz);
        }
    }
    Ok(out)
}
