//! Catalog of the classical matrix groups with their signed orthonormal
//! Lie algebra bases, eigenvalue pairs, membership predicates and
//! deterministic point sampling.
//!
//! Thirteen non-compact semi-Riemannian families plus four compact
//! cross-check families. The metric on every algebra is
//! g(Z, W) = -Re trace(Z * W); a signed orthonormal basis carries
//! eps = g(Z, Z) = +/-1 per vector, +1 exactly on the maximal compact
//! subalgebra.

use num::complex::Complex64 as C64;
use num::rational::Ratio;
use num::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cmatrix::{self, ComplexMatrix};
use crate::error::{Error, Result};

pub type Rat = Ratio<i64>;

const ORTHO_TOL: f64 = 1e-12;

/// The seventeen catalogued families, in catalog (report) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupFamily {
    GlC,
    GlR,
    GlH,
    SlC,
    SlR,
    SlH,
    SoC,
    SpC,
    SpR,
    SoStar,
    SuPq,
    SoPq,
    SpPq,
    U,
    Su,
    So,
    Sp,
}

impl GroupFamily {
    pub const ALL: [GroupFamily; 17] = [
        GroupFamily::GlC,
        GroupFamily::GlR,
        GroupFamily::GlH,
        GroupFamily::SlC,
        GroupFamily::SlR,
        GroupFamily::SlH,
        GroupFamily::SoC,
        GroupFamily::SpC,
        GroupFamily::SpR,
        GroupFamily::SoStar,
        GroupFamily::SuPq,
        GroupFamily::SoPq,
        GroupFamily::SpPq,
        GroupFamily::U,
        GroupFamily::Su,
        GroupFamily::So,
        GroupFamily::Sp,
    ];

    /// Name accepted in the CLI and used in JSON reports.
    pub fn name(self) -> &'static str {
        match self {
            GroupFamily::GlC => "glc",
            GroupFamily::GlR => "glr",
            GroupFamily::GlH => "glh",
            GroupFamily::SlC => "slc",
            GroupFamily::SlR => "slr",
            GroupFamily::SlH => "slh",
            GroupFamily::SoC => "soc",
            GroupFamily::SpC => "spc",
            GroupFamily::SpR => "spr",
            GroupFamily::SoStar => "sostar",
            GroupFamily::SuPq => "su_pq",
            GroupFamily::SoPq => "so_pq",
            GroupFamily::SpPq => "sp_pq",
            GroupFamily::U => "u",
            GroupFamily::Su => "su",
            GroupFamily::So => "so",
            GroupFamily::Sp => "sp",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Human-readable symbol for listings.
    pub fn symbol(self) -> &'static str {
        match self {
            GroupFamily::GlC => "GL_n(C)",
            GroupFamily::GlR => "GL_n(R)",
            GroupFamily::GlH => "GL_n(H)",
            GroupFamily::SlC => "SL_n(C)",
            GroupFamily::SlR => "SL_n(R)",
            GroupFamily::SlH => "SL_n(H)",
            GroupFamily::SoC => "SO_n(C)",
            GroupFamily::SpC => "Sp_n(C)",
            GroupFamily::SpR => "Sp_n(R)",
            GroupFamily::SoStar => "SO*(2n)",
            GroupFamily::SuPq => "SU(p,q)",
            GroupFamily::SoPq => "SO(p,q)",
            GroupFamily::SpPq => "Sp(p,q)",
            GroupFamily::U => "U(n)",
            GroupFamily::Su => "SU(n)",
            GroupFamily::So => "SO(n)",
            GroupFamily::Sp => "Sp(n)",
        }
    }

    pub fn takes_pq(self) -> bool {
        matches!(
            self,
            GroupFamily::SuPq | GroupFamily::SoPq | GroupFamily::SpPq
        )
    }

    pub fn is_compact(self) -> bool {
        matches!(
            self,
            GroupFamily::U | GroupFamily::Su | GroupFamily::So | GroupFamily::Sp
        )
    }

    /// Families whose eigenfamily members are block forms
    /// trace(u^t a z^t + v^t b w^t) on a doubled ambient representation.
    pub fn uses_block_family(self) -> bool {
        matches!(
            self,
            GroupFamily::GlH
                | GroupFamily::SlH
                | GroupFamily::SpC
                | GroupFamily::SoStar
                | GroupFamily::SpPq
                | GroupFamily::Sp
        )
    }

    /// Families whose eigenfamily requires an isotropic direction vector.
    pub fn requires_isotropy(self) -> bool {
        matches!(self, GroupFamily::SoC | GroupFamily::SoPq | GroupFamily::So)
    }

    /// Eigenfunction shape as listed in the catalog tables.
    pub fn eigenfunction_shape(self) -> &'static str {
        match self {
            GroupFamily::GlH
            | GroupFamily::SlH
            | GroupFamily::SpC
            | GroupFamily::SoStar
            | GroupFamily::SpPq
            | GroupFamily::Sp => "trace(u^t a z^t + v^t b w^t)",
            GroupFamily::GlR | GroupFamily::SlR | GroupFamily::SoPq | GroupFamily::So | GroupFamily::SpR => {
                "trace(v^t a x^t)"
            }
            _ => "trace(v^t a z^t)",
        }
    }

    /// Parameter conditions column for the catalog tables.
    pub fn eigenfunction_conditions(self) -> &'static str {
        match self {
            GroupFamily::SoC | GroupFamily::So => "a in C^n, (v,v)=0",
            GroupFamily::SoPq => "a in C^(p+q), (v,v)=0",
            GroupFamily::SuPq => "a in C^(p+q)",
            GroupFamily::SpR => "a in C^(2n)",
            GroupFamily::SpPq => "a,b in C^(p+q)",
            GroupFamily::GlH
            | GroupFamily::SlH
            | GroupFamily::SpC
            | GroupFamily::SoStar
            | GroupFamily::Sp => "a,b in C^n",
            _ => "a in C^n",
        }
    }
}

impl std::fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Group size parameters: a single n, or a signature pair (p, q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupParams {
    N(usize),
    Pq(usize, usize),
}

impl std::fmt::Display for GroupParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupParams::N(n) => write!(f, "n={n}"),
            GroupParams::Pq(p, q) => write!(f, "p={p},q={q}"),
        }
    }
}

/// An ambient matrix Z with its metric sign eps = -Re trace(Z*Z).
#[derive(Debug, Clone)]
pub struct SignedBasisVector {
    pub z: ComplexMatrix,
    pub eps: i32,
}

pub type SignedBasis = Vec<SignedBasisVector>;

/// One catalogued group: parameters, eigenvalue pair, signed basis and
/// the cached structure sum S = sum eps * Z^2 (point-independent).
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub params: GroupParams,
    pub ambient: usize,
    pub lam: Rat,
    pub mu: Rat,
    pub basis: SignedBasis,
    structure_sum: ComplexMatrix,
}

impl GroupSpec {
    pub fn structure_sum(&self) -> &ComplexMatrix {
        &self.structure_sum
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.family.symbol(), self.params)
    }
}

/// Real algebra dimension per family.
pub fn algebra_dim(family: GroupFamily, params: GroupParams) -> usize {
    match (family, params) {
        (GroupFamily::GlC, GroupParams::N(n)) => 2 * n * n,
        (GroupFamily::GlR, GroupParams::N(n)) => n * n,
        (GroupFamily::GlH, GroupParams::N(n)) => 4 * n * n,
        (GroupFamily::SlC, GroupParams::N(n)) => 2 * (n * n - 1),
        (GroupFamily::SlR, GroupParams::N(n)) => n * n - 1,
        (GroupFamily::SlH, GroupParams::N(n)) => 4 * n * n - 1,
        (GroupFamily::SoC, GroupParams::N(n)) => n * (n - 1),
        (GroupFamily::SpC, GroupParams::N(n)) => 2 * n * (2 * n + 1),
        (GroupFamily::SpR, GroupParams::N(n)) => n * (2 * n + 1),
        (GroupFamily::SoStar, GroupParams::N(n)) => n * (2 * n - 1),
        (GroupFamily::SuPq, GroupParams::Pq(p, q)) => (p + q) * (p + q) - 1,
        (GroupFamily::SoPq, GroupParams::Pq(p, q)) => (p + q) * (p + q - 1) / 2,
        (GroupFamily::SpPq, GroupParams::Pq(p, q)) => (p + q) * (2 * (p + q) + 1),
        (GroupFamily::U, GroupParams::N(n)) => n * n,
        (GroupFamily::Su, GroupParams::N(n)) => n * n - 1,
        (GroupFamily::So, GroupParams::N(n)) => n * (n - 1) / 2,
        (GroupFamily::Sp, GroupParams::N(n)) => n * (2 * n + 1),
        _ => 0,
    }
}

/// Dimension of the maximal compact subalgebra (the eps = +1 count).
pub fn compact_dim(family: GroupFamily, params: GroupParams) -> usize {
    match (family, params) {
        (GroupFamily::GlC, GroupParams::N(n)) => n * n,
        (GroupFamily::GlR, GroupParams::N(n)) => n * (n - 1) / 2,
        (GroupFamily::GlH, GroupParams::N(n)) => n * (2 * n + 1),
        (GroupFamily::SlC, GroupParams::N(n)) => n * n - 1,
        (GroupFamily::SlR, GroupParams::N(n)) => n * (n - 1) / 2,
        (GroupFamily::SlH, GroupParams::N(n)) => n * (2 * n + 1),
        (GroupFamily::SoC, GroupParams::N(n)) => n * (n - 1) / 2,
        (GroupFamily::SpC, GroupParams::N(n)) => n * (2 * n + 1),
        (GroupFamily::SpR, GroupParams::N(n)) => n * n,
        (GroupFamily::SoStar, GroupParams::N(n)) => n * n,
        (GroupFamily::SuPq, GroupParams::Pq(p, q)) => p * p + q * q - 1,
        (GroupFamily::SoPq, GroupParams::Pq(p, q)) => (p * (p - 1) + q * (q - 1)) / 2,
        (GroupFamily::SpPq, GroupParams::Pq(p, q)) => p * (2 * p + 1) + q * (2 * q + 1),
        _ => algebra_dim(family, params),
    }
}

fn eigenvalues(family: GroupFamily, params: GroupParams) -> (Rat, Rat) {
    let r = |a: i64, b: i64| Rat::new(a, b);
    match (family, params) {
        (GroupFamily::GlC, GroupParams::N(n)) => (r(-2 * n as i64, 1), r(-2, 1)),
        (GroupFamily::GlR, GroupParams::N(n)) => (r(-(n as i64), 1), r(-1, 1)),
        (GroupFamily::GlH, GroupParams::N(n)) => (r(-2 * n as i64, 1), r(-1, 1)),
        (GroupFamily::SlC, GroupParams::N(n)) => {
            let n = n as i64;
            (r(-2 * (n * n - 1), n), r(-2 * (n - 1), n))
        }
        (GroupFamily::SlR, GroupParams::N(n)) => {
            let n = n as i64;
            (r(-(n * n - 1), n), r(-(n - 1), n))
        }
        (GroupFamily::SlH, GroupParams::N(n)) => {
            let n = n as i64;
            (r(-(4 * n * n - 1), 2 * n), r(-(2 * n - 1), 2 * n))
        }
        (GroupFamily::SoC, GroupParams::N(n)) => (r(-(n as i64 - 1), 1), r(-1, 1)),
        (GroupFamily::SpC, GroupParams::N(n)) => (r(-(2 * n as i64 + 1), 1), r(-1, 1)),
        (GroupFamily::SpR, GroupParams::N(n)) => (r(-(2 * n as i64 + 1), 2), r(-1, 2)),
        (GroupFamily::SoStar, GroupParams::N(n)) => (r(-(2 * n as i64 - 1), 2), r(-1, 2)),
        (GroupFamily::SuPq, GroupParams::Pq(p, q)) => {
            let m = (p + q) as i64;
            (r(-(m * m - 1), m), r(-(m - 1), m))
        }
        (GroupFamily::SoPq, GroupParams::Pq(p, q)) => {
            let m = (p + q) as i64;
            (r(-(m - 1), 2), r(-1, 2))
        }
        (GroupFamily::SpPq, GroupParams::Pq(p, q)) => {
            let m = (p + q) as i64;
            (r(-(2 * m + 1), 2), r(-1, 2))
        }
        (GroupFamily::U, GroupParams::N(n)) => (r(-(n as i64), 1), r(-1, 1)),
        (GroupFamily::Su, GroupParams::N(n)) => {
            let n = n as i64;
            (r(-(n * n - 1), n), r(-(n - 1), n))
        }
        (GroupFamily::So, GroupParams::N(n)) => (r(-(n as i64 - 1), 2), r(-1, 2)),
        (GroupFamily::Sp, GroupParams::N(n)) => (r(-(2 * n as i64 + 1), 2), r(-1, 2)),
        _ => unreachable!("parameter shape validated before eigenvalue lookup"),
    }
}

// ---------------------------------------------------------------------------
// basis construction
// ---------------------------------------------------------------------------

fn i_c() -> C64 {
    C64::new(0.0, 1.0)
}

fn times_i(m: &ComplexMatrix) -> ComplexMatrix {
    m.scale(i_c())
}

/// Assemble [[tl, tr], [bl, br]] from n x n blocks.
fn block2(
    tl: &ComplexMatrix,
    tr: &ComplexMatrix,
    bl: &ComplexMatrix,
    br: &ComplexMatrix,
) -> ComplexMatrix {
    let n = tl.rows();
    ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => tl[(i, j)],
        (true, false) => tr[(i, j - n)],
        (false, true) => bl[(i - n, j)],
        (false, false) => br[(i - n, j - n)],
    })
}

fn half_block2(
    tl: &ComplexMatrix,
    tr: &ComplexMatrix,
    bl: &ComplexMatrix,
    br: &ComplexMatrix,
) -> ComplexMatrix {
    block2(tl, tr, bl, br).scale(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))
}

/// Orthonormal basis of u(n): {Y_rs, i X_rs | r < s} and {i D_t}.
fn u_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::new();
    for r in 0..n {
        for s in (r + 1)..n {
            out.push(cmatrix::y_rs(n, r, s));
            out.push(times_i(&cmatrix::x_rs(n, r, s)));
        }
    }
    for t in 0..n {
        out.push(times_i(&cmatrix::d_t(n, t)));
    }
    out
}

/// Normalized traceless staircase diag(1,..,1,-k,0,..,0)/sqrt(k(k+1)),
/// with k ones; k = 1..n-1.
fn staircase(n: usize, k: usize) -> ComplexMatrix {
    let norm = 1.0 / ((k * (k + 1)) as f64).sqrt();
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i != j {
            C64::zero()
        } else if i < k {
            C64::new(norm, 0.0)
        } else if i == k {
            C64::new(-(k as f64) * norm, 0.0)
        } else {
            C64::zero()
        }
    })
}

/// Orthonormal basis of su(n): off-diagonal part of u(n) plus the n-1
/// traceless diagonal generators i * staircase.
fn su_basis(n: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::new();
    for r in 0..n {
        for s in (r + 1)..n {
            out.push(cmatrix::y_rs(n, r, s));
            out.push(times_i(&cmatrix::x_rs(n, r, s)));
        }
    }
    for k in 1..n {
        out.push(times_i(&staircase(n, k)));
    }
    out
}

/// Orthonormal basis of sp(n) inside gl_2n(C): the seven block shapes
/// over X_rs, Y_rs (r < s) and D_t.
fn sp_basis(n: usize) -> Vec<ComplexMatrix> {
    let zero = ComplexMatrix::zeros(n, n);
    let mut out = Vec::new();
    for r in 0..n {
        for s in (r + 1)..n {
            let x = cmatrix::x_rs(n, r, s);
            let y = cmatrix::y_rs(n, r, s);
            let ix = times_i(&x);
            out.push(half_block2(&zero, &ix, &ix, &zero));
            out.push(half_block2(&zero, &x, &x.neg(), &zero));
            out.push(half_block2(&ix, &zero, &zero, &ix.neg()));
            out.push(half_block2(&y, &zero, &zero, &y));
        }
    }
    for t in 0..n {
        let d = cmatrix::d_t(n, t);
        let id = times_i(&d);
        out.push(half_block2(&zero, &d, &d.neg(), &zero));
        out.push(half_block2(&id, &zero, &zero, &id.neg()));
        out.push(half_block2(&zero, &id, &id, &zero));
    }
    out
}

/// Off-diagonal (r < s) part of the negative basis of glh(n); the D_t
/// part is handled separately because slh(n) removes its trace direction.
fn glh_minus_offdiag(n: usize) -> Vec<ComplexMatrix> {
    let zero = ComplexMatrix::zeros(n, n);
    let mut out = Vec::new();
    for r in 0..n {
        for s in (r + 1)..n {
            let x = cmatrix::x_rs(n, r, s);
            let y = cmatrix::y_rs(n, r, s);
            let iy = times_i(&y);
            out.push(half_block2(&zero, &y, &y.neg(), &zero));
            out.push(half_block2(&zero, &iy, &iy, &zero));
            out.push(half_block2(&iy, &zero, &zero, &iy.neg()));
            out.push(half_block2(&x, &zero, &zero, &x));
        }
    }
    out
}

/// V_t = (1/sqrt 2) diag-block(D_t, D_t), the negative diagonal
/// directions of glh(n).
fn glh_minus_diag(n: usize) -> Vec<ComplexMatrix> {
    let zero = ComplexMatrix::zeros(n, n);
    (0..n)
        .map(|t| {
            let d = cmatrix::d_t(n, t);
            half_block2(&d, &zero, &zero, &d)
        })
        .collect()
}

fn push_all(basis: &mut SignedBasis, mats: Vec<ComplexMatrix>, eps: i32) {
    for z in mats {
        basis.push(SignedBasisVector { z, eps });
    }
}

fn pq_same_side(p: usize, r: usize, s: usize) -> bool {
    (r < p) == (s < p)
}

fn construct_basis(family: GroupFamily, params: GroupParams) -> SignedBasis {
    let mut basis = SignedBasis::new();
    match (family, params) {
        (GroupFamily::GlC, GroupParams::N(n)) => {
            let plus = u_basis(n);
            let minus: Vec<_> = plus.iter().map(times_i).collect();
            push_all(&mut basis, plus, 1);
            push_all(&mut basis, minus, -1);
        }
        (GroupFamily::GlR, GroupParams::N(n)) => {
            for r in 0..n {
                for s in (r + 1)..n {
                    basis.push(SignedBasisVector { z: cmatrix::y_rs(n, r, s), eps: 1 });
                }
            }
            for r in 0..n {
                for s in (r + 1)..n {
                    basis.push(SignedBasisVector { z: cmatrix::x_rs(n, r, s), eps: -1 });
                }
            }
            for t in 0..n {
                basis.push(SignedBasisVector { z: cmatrix::d_t(n, t), eps: -1 });
            }
        }
        (GroupFamily::GlH, GroupParams::N(n)) => {
            push_all(&mut basis, sp_basis(n), 1);
            push_all(&mut basis, glh_minus_offdiag(n), -1);
            push_all(&mut basis, glh_minus_diag(n), -1);
        }
        (GroupFamily::SlC, GroupParams::N(n)) => {
            let plus = su_basis(n);
            let minus: Vec<_> = plus.iter().map(times_i).collect();
            push_all(&mut basis, plus, 1);
            push_all(&mut basis, minus, -1);
        }
        (GroupFamily::SlR, GroupParams::N(n)) => {
            for r in 0..n {
                for s in (r + 1)..n {
                    basis.push(SignedBasisVector { z: cmatrix::y_rs(n, r, s), eps: 1 });
                }
            }
            for r in 0..n {
                for s in (r + 1)..n {
                    basis.push(SignedBasisVector { z: cmatrix::x_rs(n, r, s), eps: -1 });
                }
            }
            for k in 1..n {
                basis.push(SignedBasisVector { z: staircase(n, k), eps: -1 });
            }
        }
        (GroupFamily::SlH, GroupParams::N(n)) => {
            push_all(&mut basis, sp_basis(n), 1);
            push_all(&mut basis, glh_minus_offdiag(n), -1);
            // Remove the trace line spanned by E_2n = I_2n / sqrt(2n):
            // replace the n diagonal V_t directions by the n-1 orthonormal
            // staircase combinations orthogonal to it.
            let v = glh_minus_diag(n);
            for k in 1..n {
                let norm = 1.0 / ((k * (k + 1)) as f64).sqrt();
                let mut acc = ComplexMatrix::zeros(2 * n, 2 * n);
                for (t, vt) in v.iter().enumerate().take(k) {
                    let _ = t;
                    acc = acc.add(vt).unwrap();
                }
                acc = acc.add(&v[k].scale(C64::new(-(k as f64), 0.0))).unwrap();
                basis.push(SignedBasisVector {
                    z: acc.scale(C64::new(norm, 0.0)),
                    eps: -1,
                });
            }
        }
        (GroupFamily::SoC, GroupParams::N(n)) => {
            for r in 0..n {
                for s in (r + 1)..n {
                    basis.push(SignedBasisVector { z: cmatrix::y_rs(n, r, s), eps: 1 });
                }
            }
            for r in 0..n {
                for s in (r + 1)..n {
                    basis.push(SignedBasisVector { z: times_i(&cmatrix::y_rs(n, r, s)), eps: -1 });
                }
            }
        }
        (GroupFamily::SpC, GroupParams::N(n)) => {
            let plus = sp_basis(n);
            let minus: Vec<_> = plus.iter().map(times_i).collect();
            push_all(&mut basis, plus, 1);
            push_all(&mut basis, minus, -1);
        }
        (GroupFamily::SpR, GroupParams::N(n)) => {
            let zero = ComplexMatrix::zeros(n, n);
            // A-type: diag-block(A, -A^t) for A in {Y_rs, X_rs, D_t}
            for r in 0..n {
                for s in (r + 1)..n {
                    let y = cmatrix::y_rs(n, r, s);
                    basis.push(SignedBasisVector { z: half_block2(&y, &zero, &zero, &y), eps: 1 });
                }
            }
            for r in 0..n {
                for s in (r + 1)..n {
                    let x = cmatrix::x_rs(n, r, s);
                    basis.push(SignedBasisVector { z: half_block2(&x, &zero, &zero, &x.neg()), eps: -1 });
                }
            }
            for t in 0..n {
                let d = cmatrix::d_t(n, t);
                basis.push(SignedBasisVector { z: half_block2(&d, &zero, &zero, &d.neg()), eps: -1 });
            }
            // B/C-type: [[0, S], [-S, 0]] (eps +1) and [[0, S], [S, 0]] (eps -1)
            // over the symmetric basis S in {X_rs, D_t}.
            let mut sym = Vec::new();
            for r in 0..n {
                for s in (r + 1)..n {
                    sym.push(cmatrix::x_rs(n, r, s));
                }
            }
            for t in 0..n {
                sym.push(cmatrix::d_t(n, t));
            }
            for s in &sym {
                basis.push(SignedBasisVector { z: half_block2(&zero, s, &s.neg(), &zero), eps: 1 });
            }
            for s in &sym {
                basis.push(SignedBasisVector { z: half_block2(&zero, s, s, &zero), eps: -1 });
            }
        }
        (GroupFamily::SoStar, GroupParams::N(n)) => {
            let zero = ComplexMatrix::zeros(n, n);
            for r in 0..n {
                for s in (r + 1)..n {
                    let y = cmatrix::y_rs(n, r, s);
                    let ix = times_i(&cmatrix::x_rs(n, r, s));
                    basis.push(SignedBasisVector { z: half_block2(&y, &zero, &zero, &y), eps: 1 });
                    basis.push(SignedBasisVector { z: half_block2(&ix, &zero, &zero, &ix.neg()), eps: 1 });
                }
            }
            for t in 0..n {
                let id = times_i(&cmatrix::d_t(n, t));
                basis.push(SignedBasisVector { z: half_block2(&id, &zero, &zero, &id.neg()), eps: 1 });
            }
            for r in 0..n {
                for s in (r + 1)..n {
                    let y = cmatrix::y_rs(n, r, s);
                    let iy = times_i(&y);
                    basis.push(SignedBasisVector { z: half_block2(&zero, &y, &y.neg(), &zero), eps: -1 });
                    basis.push(SignedBasisVector { z: half_block2(&zero, &iy, &iy, &zero), eps: -1 });
                }
            }
        }
        (GroupFamily::SuPq, GroupParams::Pq(p, q)) => {
            let m = p + q;
            for r in 0..m {
                for s in (r + 1)..m {
                    let y = cmatrix::y_rs(m, r, s);
                    let ix = times_i(&cmatrix::x_rs(m, r, s));
                    if pq_same_side(p, r, s) {
                        basis.push(SignedBasisVector { z: y, eps: 1 });
                        basis.push(SignedBasisVector { z: ix, eps: 1 });
                    } else {
                        basis.push(SignedBasisVector { z: times_i(&y), eps: -1 });
                        basis.push(SignedBasisVector { z: cmatrix::x_rs(m, r, s), eps: -1 });
                    }
                }
            }
            for k in 1..m {
                basis.push(SignedBasisVector { z: times_i(&staircase(m, k)), eps: 1 });
            }
        }
        (GroupFamily::SoPq, GroupParams::Pq(p, q)) => {
            let m = p + q;
            for r in 0..m {
                for s in (r + 1)..m {
                    let y = cmatrix::y_rs(m, r, s);
                    if pq_same_side(p, r, s) {
                        basis.push(SignedBasisVector { z: y, eps: 1 });
                    } else {
                        basis.push(SignedBasisVector { z: times_i(&y), eps: -1 });
                    }
                }
            }
        }
        (GroupFamily::SpPq, GroupParams::Pq(p, q)) => {
            let m = p + q;
            let zero = ComplexMatrix::zeros(m, m);
            // compact part sp(p) + sp(q): the sp(m) block shapes restricted
            // to same-side index pairs
            for r in 0..m {
                for s in (r + 1)..m {
                    if !pq_same_side(p, r, s) {
                        continue;
                    }
                    let x = cmatrix::x_rs(m, r, s);
                    let y = cmatrix::y_rs(m, r, s);
                    let ix = times_i(&x);
                    basis.push(SignedBasisVector { z: half_block2(&zero, &ix, &ix, &zero), eps: 1 });
                    basis.push(SignedBasisVector { z: half_block2(&zero, &x, &x.neg(), &zero), eps: 1 });
                    basis.push(SignedBasisVector { z: half_block2(&ix, &zero, &zero, &ix.neg()), eps: 1 });
                    basis.push(SignedBasisVector { z: half_block2(&y, &zero, &zero, &y), eps: 1 });
                }
            }
            for t in 0..m {
                let d = cmatrix::d_t(m, t);
                let id = times_i(&d);
                basis.push(SignedBasisVector { z: half_block2(&zero, &d, &d.neg(), &zero), eps: 1 });
                basis.push(SignedBasisVector { z: half_block2(&id, &zero, &zero, &id.neg()), eps: 1 });
                basis.push(SignedBasisVector { z: half_block2(&zero, &id, &id, &zero), eps: 1 });
            }
            // non-compact part: Hermitian quaternionic matrices with cross
            // (p x q) support
            for r in 0..m {
                for s in (r + 1)..m {
                    if pq_same_side(p, r, s) {
                        continue;
                    }
                    let x = cmatrix::x_rs(m, r, s);
                    let y = cmatrix::y_rs(m, r, s);
                    let iy = times_i(&y);
                    basis.push(SignedBasisVector { z: half_block2(&x, &zero, &zero, &x), eps: -1 });
                    basis.push(SignedBasisVector { z: half_block2(&iy, &zero, &zero, &iy.neg()), eps: -1 });
                    basis.push(SignedBasisVector { z: half_block2(&zero, &y, &y.neg(), &zero), eps: -1 });
                    basis.push(SignedBasisVector { z: half_block2(&zero, &iy, &iy, &zero), eps: -1 });
                }
            }
        }
        (GroupFamily::U, GroupParams::N(n)) => {
            push_all(&mut basis, u_basis(n), 1);
        }
        (GroupFamily::Su, GroupParams::N(n)) => {
            push_all(&mut basis, su_basis(n), 1);
        }
        (GroupFamily::So, GroupParams::N(n)) => {
            for r in 0..n {
                for s in (r + 1)..n {
                    basis.push(SignedBasisVector { z: cmatrix::y_rs(n, r, s), eps: 1 });
                }
            }
        }
        (GroupFamily::Sp, GroupParams::N(n)) => {
            push_all(&mut basis, sp_basis(n), 1);
        }
        _ => unreachable!("parameter shape validated before basis construction"),
    }
    basis
}

fn validate_params(family: GroupFamily, params: GroupParams) -> Result<()> {
    match (family.takes_pq(), params) {
        (true, GroupParams::Pq(p, q)) => {
            if p < 1 || q < 1 {
                return Err(Error::Parameter(format!(
                    "{} requires p >= 1 and q >= 1",
                    family.name()
                )));
            }
        }
        (false, GroupParams::N(n)) => {
            let min = match family {
                GroupFamily::SlC
                | GroupFamily::SlR
                | GroupFamily::SoC
                | GroupFamily::Su
                | GroupFamily::So => 2,
                _ => 1,
            };
            if n < min {
                return Err(Error::Parameter(format!(
                    "{} requires n >= {min}",
                    family.name()
                )));
            }
        }
        _ => {
            return Err(Error::Parameter(format!(
                "{} takes {}",
                family.name(),
                if family.takes_pq() { "(p, q)" } else { "n" }
            )))
        }
    }
    Ok(())
}

fn ambient_size(family: GroupFamily, params: GroupParams) -> usize {
    match (family, params) {
        (
            GroupFamily::GlC
            | GroupFamily::GlR
            | GroupFamily::SlC
            | GroupFamily::SlR
            | GroupFamily::SoC
            | GroupFamily::U
            | GroupFamily::Su
            | GroupFamily::So,
            GroupParams::N(n),
        ) => n,
        (
            GroupFamily::GlH
            | GroupFamily::SlH
            | GroupFamily::SpC
            | GroupFamily::SpR
            | GroupFamily::SoStar
            | GroupFamily::Sp,
            GroupParams::N(n),
        ) => 2 * n,
        (GroupFamily::SuPq | GroupFamily::SoPq, GroupParams::Pq(p, q)) => p + q,
        (GroupFamily::SpPq, GroupParams::Pq(p, q)) => 2 * (p + q),
        _ => unreachable!(),
    }
}

/// Build a fully validated group spec. Fails fast if the constructed
/// basis is not signed-orthonormal or has the wrong cardinality.
pub fn make_group(family: GroupFamily, params: GroupParams) -> Result<GroupSpec> {
    validate_params(family, params)?;
    let ambient = ambient_size(family, params);
    let (lam, mu) = eigenvalues(family, params);
    let basis = construct_basis(family, params);

    let expect_dim = algebra_dim(family, params);
    if basis.len() != expect_dim {
        return Err(Error::Parameter(format!(
            "{}: basis cardinality {} != algebra dimension {}",
            family.name(),
            basis.len(),
            expect_dim
        )));
    }
    let plus_count = basis.iter().filter(|b| b.eps == 1).count();
    if plus_count != compact_dim(family, params) {
        return Err(Error::Parameter(format!(
            "{}: {} positive directions != compact dimension {}",
            family.name(),
            plus_count,
            compact_dim(family, params)
        )));
    }
    let gram = gram_residual(&basis);
    if gram > ORTHO_TOL {
        return Err(Error::Parameter(format!(
            "{}: basis not signed-orthonormal, Gram residual {gram:.3e}",
            family.name()
        )));
    }
    // the connection terms g(nabla_Z Z, W) = g([W,Z], Z) must vanish for
    // the tension field to reduce to the plain second-derivative sum
    let koszul = koszul_residual(&basis)?;
    if koszul > ORTHO_TOL {
        return Err(Error::Parameter(format!(
            "{}: connection terms do not vanish, residual {koszul:.3e}",
            family.name()
        )));
    }

    let mut structure_sum = ComplexMatrix::zeros(ambient, ambient);
    for v in &basis {
        let zz = v.z.matmul(&v.z)?;
        let signed = if v.eps == 1 { zz } else { zz.neg() };
        structure_sum = structure_sum.add(&signed)?;
    }

    Ok(GroupSpec {
        family,
        params,
        ambient,
        lam,
        mu,
        basis,
        structure_sum,
    })
}

/// Metric pairing g(Z, W) = -Re trace(Z * W).
pub fn metric(z: &ComplexMatrix, w: &ComplexMatrix) -> f64 {
    let n = z.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for k in 0..n {
            let prod = z[(i, k)] * w[(k, i)];
            acc += prod.re;
        }
    }
    -acc
}

/// Max deviation of the Gram matrix from diag(eps).
pub fn gram_residual(basis: &SignedBasis) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let g = metric(&a.z, &b.z);
            let expect = if i == j { a.eps as f64 } else { 0.0 };
            worst = worst.max((g - expect).abs());
        }
    }
    worst
}

/// Max `|g([W,Z], Z)|` over basis pairs; zero means the nabla_Z Z terms drop
/// out of the tension field.
pub fn koszul_residual(basis: &SignedBasis) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for z in basis {
        let zz = z.z.matmul(&z.z)?;
        for w in basis {
            // g([W,Z],Z) = -Re tr(WZZ - ZWZ)
            let a = metric(&w.z, &zz);
            let zw = z.z.matmul(&w.z)?;
            let b = metric(&zw, &z.z);
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

/// Max commutator reconstruction residual: the bracket of any two
/// basis vectors must lie back in the span of the basis.
pub fn closure_residual(basis: &SignedBasis) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for a in basis {
        for b in basis {
            let comm = a.z.matmul(&b.z)?.sub(&b.z.matmul(&a.z)?)?;
            let mut recon = ComplexMatrix::zeros(comm.rows(), comm.cols());
            for v in basis {
                let coeff = (v.eps as f64) * metric(&comm, &v.z);
                recon = recon.add(&v.z.scale(C64::new(coeff, 0.0)))?;
            }
            worst = worst.max(comm.sub(&recon)?.frob_norm());
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// membership
// ---------------------------------------------------------------------------

fn scaled(residual: f64, m: &ComplexMatrix) -> f64 {
    residual / (1.0 + m.frob_norm())
}

fn realness_residual(m: &ComplexMatrix) -> f64 {
    let imag = m
        .data()
        .iter()
        .map(|z| z.im * z.im)
        .sum::<f64>()
        .sqrt();
    scaled(imag, m)
}

/// || M2(1) + conj(M1(2)) || and || M2(2) - conj(M1(1)) ||: the
/// quaternionic block pattern [[z, w], [-conj w, conj z]].
fn quaternionic_residual(m: &ComplexMatrix) -> f64 {
    let n = m.rows() / 2;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += (m[(n + i, j)] + m[(i, n + j)].conj()).norm_sqr();
            acc += (m[(n + i, n + j)] - m[(i, j)].conj()).norm_sqr();
        }
    }
    scaled(acc.sqrt(), m)
}

fn form_residual(m: &ComplexMatrix, form: &ComplexMatrix, sesquilinear: bool) -> f64 {
    let right = if sesquilinear {
        m.conj_transpose()
    } else {
        m.transpose()
    };
    let lhs = m.matmul(form).unwrap().matmul(&right).unwrap();
    scaled(lhs.sub(form).unwrap().frob_norm(), m)
}

fn unit_det_residual(m: &ComplexMatrix) -> f64 {
    match m.det() {
        Ok(d) => (d - C64::new(1.0, 0.0)).norm(),
        Err(_) => 1.0,
    }
}

fn invertibility_residual(m: &ComplexMatrix) -> f64 {
    match m.det() {
        Ok(d) if d.norm() > 1e-12 => 0.0,
        _ => 1.0,
    }
}

/// Check all defining relations of the family; returns (inside, residual)
/// where residual is the max over the individual relation residuals.
/// Matrix relations are Frobenius norms scaled by 1/(1 + ||M||); the
/// determinant conditions are reported raw.
pub fn contains(spec: &GroupSpec, m: &ComplexMatrix, tol: f64) -> Result<(bool, f64)> {
    if m.rows() != spec.ambient || m.cols() != spec.ambient {
        return Err(Error::Dimension(format!(
            "expected {0}x{0} for {1}",
            spec.ambient,
            spec.family.name()
        )));
    }
    let id = ComplexMatrix::identity(spec.ambient);
    let mut residuals: Vec<f64> = Vec::new();
    match (spec.family, spec.params) {
        (GroupFamily::GlC, _) => residuals.push(invertibility_residual(m)),
        (GroupFamily::GlR, _) => {
            residuals.push(realness_residual(m));
            residuals.push(invertibility_residual(m));
        }
        (GroupFamily::GlH, _) => {
            residuals.push(quaternionic_residual(m));
            residuals.push(invertibility_residual(m));
        }
        (GroupFamily::SlC, _) => residuals.push(unit_det_residual(m)),
        (GroupFamily::SlR, _) => {
            residuals.push(realness_residual(m));
            residuals.push(unit_det_residual(m));
        }
        (GroupFamily::SlH, _) => {
            residuals.push(quaternionic_residual(m));
            residuals.push(unit_det_residual(m));
        }
        (GroupFamily::SoC, _) => {
            residuals.push(form_residual(m, &id, false));
            residuals.push(unit_det_residual(m));
        }
        (GroupFamily::SpC, GroupParams::N(n)) => {
            residuals.push(form_residual(m, &cmatrix::j_n(n), false));
            residuals.push(unit_det_residual(m));
        }
        (GroupFamily::SpR, GroupParams::N(n)) => {
            residuals.push(realness_residual(m));
            residuals.push(form_residual(m, &cmatrix::j_n(n), false));
        }
        (GroupFamily::SoStar, GroupParams::N(n)) => {
            let inn = cmatrix::i_pq(n, n);
            let innj = inn.matmul(&cmatrix::j_n(n))?;
            residuals.push(form_residual(m, &inn, true));
            residuals.push(form_residual(m, &innj, false));
            residuals.push(unit_det_residual(m));
        }
        (GroupFamily::SuPq, GroupParams::Pq(p, q)) => {
            residuals.push(form_residual(m, &cmatrix::i_pq(p, q), true));
            residuals.push(unit_det_residual(m));
        }
        (GroupFamily::SoPq, GroupParams::Pq(p, q)) => {
            // realization inside SO_n(C) with the real structure carried by
            // I_pq; equivalently z z^t = I and z I_pq z* = I_pq
            residuals.push(form_residual(m, &id, false));
            residuals.push(form_residual(m, &cmatrix::i_pq(p, q), true));
            residuals.push(unit_det_residual(m));
        }
        (GroupFamily::SpPq, GroupParams::Pq(p, q)) => {
            let ipq = cmatrix::i_pq(p, q);
            let k = block2(&ipq, &ComplexMatrix::zeros(p + q, p + q), &ComplexMatrix::zeros(p + q, p + q), &ipq);
            residuals.push(quaternionic_residual(m));
            residuals.push(form_residual(m, &k, true));
            residuals.push(unit_det_residual(m));
        }
        (GroupFamily::U, _) => residuals.push(form_residual(m, &id, true)),
        (GroupFamily::Su, _) => {
            residuals.push(form_residual(m, &id, true));
            residuals.push(unit_det_residual(m));
        }
        (GroupFamily::So, _) => {
            residuals.push(realness_residual(m));
            residuals.push(form_residual(m, &id, false));
            residuals.push(unit_det_residual(m));
        }
        (GroupFamily::Sp, GroupParams::N(n)) => {
            residuals.push(form_residual(m, &cmatrix::j_n(n), false));
            residuals.push(form_residual(m, &id, true));
        }
        _ => unreachable!(),
    }
    let worst = residuals.into_iter().fold(0.0, f64::max);
    Ok((worst <= tol, worst))
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Deterministic group point: p = exp(X1) * exp(X2) with X1, X2 random
/// algebra elements whose basis coefficients are uniform in
/// [-radius, radius], derived from (seed, index) only.
pub fn sample_point(spec: &GroupSpec, seed: u64, index: u64, radius: f64) -> Result<ComplexMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(index)));
    let factor = |rng: &mut ChaCha8Rng| -> Result<ComplexMatrix> {
        let mut x = ComplexMatrix::zeros(spec.ambient, spec.ambient);
        for v in &spec.basis {
            let c = if radius > 0.0 {
                rng.gen_range(-radius..radius)
            } else {
                0.0
            };
            x = x.add(&v.z.scale(C64::new(c, 0.0)))?;
        }
        x.expm()
    };
    let a = factor(&mut rng)?;
    let b = factor(&mut rng)?;
    a.matmul(&b)
}

// ---------------------------------------------------------------------------
// desk parameters
// ---------------------------------------------------------------------------

/// Default parameter sets exercised by the full table verification run.
pub fn desk_params(family: GroupFamily) -> Vec<GroupParams> {
    use GroupFamily::*;
    use GroupParams::*;
    match family {
        GlC | GlR | SlC | SlR => vec![N(2), N(3)],
        GlH | SlH | SpC | SpR => vec![N(1), N(2)],
        SoStar => vec![N(2), N(3)],
        SoC => vec![N(2), N(3), N(4)],
        SuPq | SoPq | SpPq => vec![Pq(1, 1), Pq(1, 2), Pq(2, 1), Pq(2, 2)],
        U | Su | So | Sp => vec![N(2), N(3)],
    }
}

/// Smallest desk parameter per family.
pub fn smallest_desk(family: GroupFamily) -> GroupParams {
    desk_params(family)[0]
}
