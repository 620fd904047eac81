//! Second-order jets in one real curve parameter.
//!
//! A [`Jet2`] carries (value, first derivative, second derivative) of a
//! complex quantity along s |-> p * exp(sZ); propagating them through
//! composite expressions is what evaluates Z(phi) and Z^2(phi) without
//! any finite differencing. The curve parameter is always real, so
//! complex conjugation acts componentwise.

use num::complex::Complex64 as C64;
use num::Zero;

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Relative half-width of the guard band around the branch cut (-inf, 0].
pub const BRANCH_GUARD: f64 = 1e-6;

/// Truncated Taylor data (f(0), f'(0), f''(0)) of a complex function of a
/// real parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub f0: C64,
    pub f1: C64,
    pub f2: C64,
}

impl Jet2 {
    pub fn new(f0: C64, f1: C64, f2: C64) -> Self {
        Self { f0, f1, f2 }
    }

    /// Constant jet: f1 = f2 = 0 exactly.
    pub fn constant(c: C64) -> Self {
        Self::new(c, C64::zero(), C64::zero())
    }

    pub fn add(self, b: Self) -> Self {
        Self::new(self.f0 + b.f0, self.f1 + b.f1, self.f2 + b.f2)
    }

    pub fn sub(self, b: Self) -> Self {
        Self::new(self.f0 - b.f0, self.f1 - b.f1, self.f2 - b.f2)
    }

    pub fn neg(self) -> Self {
        Self::new(-self.f0, -self.f1, -self.f2)
    }

    pub fn scale(self, c: C64) -> Self {
        Self::new(c * self.f0, c * self.f1, c * self.f2)
    }

    /// Leibniz rule: (fg)'' = f''g + 2f'g' + fg''.
    pub fn mul(self, b: Self) -> Self {
        Self::new(
            self.f0 * b.f0,
            self.f1 * b.f0 + self.f0 * b.f1,
            self.f2 * b.f0 + 2.0 * self.f1 * b.f1 + self.f0 * b.f2,
        )
    }

    pub fn div(self, b: Self) -> Result<Self> {
        if b.f0.norm() == 0.0 {
            return Err(Error::SingularPoint);
        }
        // r = a/b solved from a = r b: r' = (a' - r b')/b, r'' = (a'' - 2r'b' - rb'')/b.
        let r0 = self.f0 / b.f0;
        let r1 = (self.f1 - r0 * b.f1) / b.f0;
        let r2 = (self.f2 - 2.0 * r1 * b.f1 - r0 * b.f2) / b.f0;
        Ok(Self::new(r0, r1, r2))
    }

    pub fn conj(self) -> Self {
        Self::new(self.f0.conj(), self.f1.conj(), self.f2.conj())
    }

    pub fn re(self) -> Self {
        Self::new(
            C64::new(self.f0.re, 0.0),
            C64::new(self.f1.re, 0.0),
            C64::new(self.f2.re, 0.0),
        )
    }

    pub fn im(self) -> Self {
        Self::new(
            C64::new(self.f0.im, 0.0),
            C64::new(self.f1.im, 0.0),
            C64::new(self.f2.im, 0.0),
        )
    }

    /// Integer power by the chain rule; negative exponents need f0 != 0.
    pub fn powi(self, k: i64) -> Result<Self> {
        match k {
            0 => Ok(Self::constant(C64::new(1.0, 0.0))),
            1 => Ok(self),
            _ => {
                if k < 0 && self.f0.norm() == 0.0 {
                    return Err(Error::SingularPoint);
                }
                let c = C64::new(k as f64, 0.0);
                let pk1 = self.f0.powi(k as i32 - 1);
                let pk2 = if k == 2 {
                    C64::new(1.0, 0.0)
                } else {
                    self.f0.powi(k as i32 - 2)
                };
                Ok(Self::new(
                    self.f0.powi(k as i32),
                    c * pk1 * self.f1,
                    c * (c - 1.0) * pk2 * self.f1 * self.f1 + c * pk1 * self.f2,
                ))
            }
        }
    }

    /// Principal-branch complex power; rejects the guard band of (-inf, 0].
    pub fn powc(self, s: C64) -> Result<Self> {
        guard_branch(self.f0)?;
        let w0 = self.f0.powc(s);
        let w1 = s * self.f0.powc(s - 1.0) * self.f1;
        let w2 = s * (s - 1.0) * self.f0.powc(s - 2.0) * self.f1 * self.f1
            + s * self.f0.powc(s - 1.0) * self.f2;
        Ok(Self::new(w0, w1, w2))
    }

    /// Principal-branch logarithm; rejects the guard band of (-inf, 0].
    pub fn log(self) -> Result<Self> {
        guard_branch(self.f0)?;
        let l1 = self.f1 / self.f0;
        let l2 = (self.f2 * self.f0 - self.f1 * self.f1) / (self.f0 * self.f0);
        Ok(Self::new(self.f0.ln(), l1, l2))
    }
}

impl std::ops::Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2::add(self, rhs)
    }
}

impl std::ops::Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2::sub(self, rhs)
    }
}

impl std::ops::Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        Jet2::mul(self, rhs)
    }
}

/// Distance from w to the ray (-inf, 0], relative to 1 + |w|.
pub fn branch_cut_distance(w: C64) -> f64 {
    let d = if w.re <= 0.0 { w.im.abs() } else { w.norm() };
    d / (1.0 + w.norm())
}

/// Reject values inside the guard band around the branch cut.
pub fn guard_branch(w: C64) -> Result<()> {
    if branch_cut_distance(w) <= BRANCH_GUARD {
        Err(Error::BranchCut { value: w })
    } else {
        Ok(())
    }
}

/// Matrix of jets: the order-2 expansion of a matrix curve.
#[derive(Debug, Clone)]
pub struct JetMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Jet2>,
}

impl JetMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Jet2 {
        self.entries[i * self.cols + j]
    }

    /// Constant curve through p.
    pub fn constant(p: &ComplexMatrix) -> Self {
        Self {
            rows: p.rows(),
            cols: p.cols(),
            entries: p.data().iter().map(|&z| Jet2::constant(z)).collect(),
        }
    }
}

/// Order-2 jet of the curve s |-> p * exp(sZ): entrywise
/// (p, p*Z, p*Z^2), exact because exp(sZ) = I + sZ + s^2 Z^2/2 + O(s^3).
pub fn curve_jet(p: &ComplexMatrix, z: &ComplexMatrix) -> Result<JetMatrix> {
    if !p.is_square() || !z.is_square() || p.rows() != z.rows() {
        return Err(Error::Dimension(format!(
            "curve_jet needs square matrices of equal size, got {}x{} and {}x{}",
            p.rows(),
            p.cols(),
            z.rows(),
            z.cols()
        )));
    }
    let pz = p.matmul(z)?;
    let pzz = pz.matmul(z)?;
    let n = p.rows();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(Jet2::new(p[(i, j)], pz[(i, j)], pzz[(i, j)]));
        }
    }
    Ok(JetMatrix {
        rows: n,
        cols: n,
        entries,
    })
}
