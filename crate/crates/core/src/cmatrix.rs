//! Dense complex matrix arithmetic.
//!
//! Everything in the catalog lives in ambient dimension <= 16, so all
//! matrices are small owned dense values; no views, no sparsity.

use num::complex::Complex64;
use num::Zero;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "entries length {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parameter("non-finite matrix entry".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real matrix from f64 rows, mostly for tests and form matrices.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            data.iter().map(|&x| C64::new(x, 0.0)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| c * z).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(C64::new(-1.0, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        debug_assert!(self.is_square());
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Determinant via LU with partial pivoting. No condition estimation;
    /// the membership checks downstream tolerate ~1e-9 slack.
    pub fn det(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut lu = self.data.clone();
        let mut det = C64::new(1.0, 0.0);
        for col in 0..n {
            let mut pivot = col;
            let mut best = lu[col * n + col].norm();
            for r in (col + 1)..n {
                let mag = lu[r * n + col].norm();
                if mag > best {
                    best = mag;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return Ok(C64::zero());
            }
            if pivot != col {
                for j in 0..n {
                    lu.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = lu[col * n + col];
            det *= p;
            for r in (col + 1)..n {
                let factor = lu[r * n + col] / p;
                lu[r * n + col] = factor;
                for j in (col + 1)..n {
                    let sub = factor * lu[col * n + j];
                    lu[r * n + j] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// Matrix exponential by scaling-and-squaring with a degree-12 truncated
    /// Taylor kernel; the input is scaled until its Frobenius norm is <= 0.5.
    pub fn expm(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("expm of non-square matrix".into()));
        }
        let norm = self.frob_norm();
        let mut squarings = 0u32;
        let mut scale = 1.0;
        while norm * scale > 0.5 {
            scale *= 0.5;
            squarings += 1;
        }
        let scaled = self.scale(C64::new(scale, 0.0));
        // Horner evaluation of sum_{k=0}^{12} A^k / k!
        let n = self.rows;
        let mut acc = Self::identity(n);
        for k in (1..=12u32).rev() {
            acc = scaled.matmul(&acc)?.scale(C64::new(1.0 / k as f64, 0.0));
            for i in 0..n {
                acc[(i, i)] += C64::new(1.0, 0.0);
            }
        }
        for _ in 0..squarings {
            acc = acc.matmul(&acc)?;
        }
        Ok(acc)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

// Standard generator matrices used throughout the group catalog.

/// E_rs: single 1 at row r, column s (zero-based indices).
pub fn e_rs(n: usize, r: usize, s: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    m[(r, s)] = C64::new(1.0, 0.0);
    m
}

/// X_rs = (E_rs + E_sr) / sqrt(2), symmetric.
pub fn x_rs(n: usize, r: usize, s: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    let v = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    m[(r, s)] = v;
    m[(s, r)] = v;
    m
}

/// Y_rs = (E_rs - E_sr) / sqrt(2), skew-symmetric.
pub fn y_rs(n: usize, r: usize, s: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    let v = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    m[(r, s)] = v;
    m[(s, r)] = -v;
    m
}

/// D_t = E_tt.
pub fn d_t(n: usize, t: usize) -> ComplexMatrix {
    e_rs(n, t, t)
}

/// J_n = [[0, I_n], [-I_n, 0]], size 2n x 2n.
pub fn j_n(n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(i, n + i)] = C64::new(1.0, 0.0);
        m[(n + i, i)] = C64::new(-1.0, 0.0);
    }
    m
}

/// I_pq = diag(-I_p, I_q), size (p+q) x (p+q).
pub fn i_pq(p: usize, q: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(p + q, p + q);
    for i in 0..p {
        m[(i, i)] = C64::new(-1.0, 0.0);
    }
    for i in p..(p + q) {
        m[(i, i)] = C64::new(1.0, 0.0);
    }
    m
}
