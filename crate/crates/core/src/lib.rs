//! Eigenfamilies, proper p-harmonic functions and harmonic morphisms on
//! the classical matrix Lie groups with their natural (semi-Riemannian)
//! metrics.
//!
//! The crate has two evaluation engines that check each other:
//! a numerical one (second-order jets along one-parameter subgroups,
//! summed over a signed orthonormal algebra basis) and an exact symbolic
//! one (log-power sums with rational-complex coefficients, closed under
//! the tension field).
//!
//! ```
//! use lgh_core::eigenfamilies::{default_family, verify_eigen};
//! use lgh_core::groups::{make_group, GroupFamily, GroupParams};
//!
//! let spec = make_group(GroupFamily::SuPq, GroupParams::Pq(1, 1))?;
//! let family = default_family(&spec)?;
//! let report = verify_eigen(&family, 10, 42, 1e-8, 0.5)?;
//! assert!(report.pass);
//! # Ok::<(), lgh_core::Error>(())
//! ```

pub mod calculus;
pub mod cmatrix;
pub mod eigenfamilies;
pub mod error;
pub mod groups;
pub mod jets;
pub mod logpower;
pub mod morphisms;
pub mod report;

pub use cmatrix::{ComplexMatrix, C64};
pub use error::{Error, Result};

/// Scale-free residual |lhs - rhs| / (1 + |lhs| + |rhs|).
pub fn rel_residual(lhs: C64, rhs: C64) -> f64 {
    (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm())
}
