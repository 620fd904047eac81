//! Closed-form matrix-element relations for tau and kappa on every
//! catalogued family, checked at sampled points.
//!
//! tau is covered in one shot per group: the cached structure sum must be
//! exactly lambda * I, which is equivalent to tau(g_ja) = lambda * g_ja
//! for every matrix element. kappa is checked entrywise against the
//! closed forms, including the invariant-form corrections where the
//! ambient representation carries one.

use num::complex::Complex64 as C64;
use num::Zero;

use lgh_core::calculus::{first_jets_linear, LinearForm};
use lgh_core::cmatrix::{self, ComplexMatrix};
use lgh_core::groups::{desk_params, make_group, sample_point, GroupFamily, GroupParams};
use lgh_core::rel_residual;

const SEED: u64 = 42;
const TOL: f64 = 1e-8;

fn delta(a: usize, b: usize) -> C64 {
    if a == b {
        C64::new(1.0, 0.0)
    } else {
        C64::zero()
    }
}

/// Expected kappa(g_ja, g_kb) for the family, or None when the closed
/// form is only stated on a sub-block of indices.
fn expected_kappa(
    family: GroupFamily,
    ambient: usize,
    p: &ComplexMatrix,
    j: usize,
    a: usize,
    k: usize,
    b: usize,
) -> Option<C64> {
    let m = ambient;
    let half = m / 2;
    let prod = -p[(j, b)] * p[(k, a)];
    let exchange = |scale: f64| {
        Some(C64::new(scale, 0.0) * (prod + p[(j, a)] * p[(k, b)] / C64::new(m as f64, 0.0)))
    };
    match family {
        // kappa(z_ja, z_kb) = -2 z_ka z_jb
        GroupFamily::GlC => Some(2.0 * prod),
        // kappa(x_ja, x_kb) = -x_ka x_jb
        GroupFamily::GlR | GroupFamily::U => Some(prod),
        // block families: -g_jb g_ka on the top rows where z and w live
        GroupFamily::GlH => Some(prod),
        GroupFamily::SlC => exchange(2.0),
        GroupFamily::SlR | GroupFamily::Su => exchange(1.0),
        GroupFamily::SlH => exchange(1.0),
        // -(z_jb z_ka - delta_jk delta_ab)
        GroupFamily::SoC => Some(prod + delta(j, k) * delta(a, b)),
        GroupFamily::So | GroupFamily::SoPq => Some(0.5 * (prod + delta(j, k) * delta(a, b))),
        // symplectic: the invariant-form term J_ba (p J p^t)_jk = J_ba J_jk
        // vanishes on the top rows, where the block relations are stated
        GroupFamily::SpC => {
            if j < half && k < half {
                Some(prod)
            } else {
                None
            }
        }
        GroupFamily::Sp | GroupFamily::SpPq => {
            if j < half && k < half {
                Some(0.5 * prod)
            } else {
                None
            }
        }
        // full form with the J correction, valid at every index
        GroupFamily::SpR => {
            let jn = cmatrix::j_n(half);
            Some(0.5 * (prod - jn[(b, a)] * jn[(j, k)]))
        }
        GroupFamily::SoStar => {
            if j < half && k < half {
                Some(0.5 * prod)
            } else {
                None
            }
        }
        GroupFamily::SuPq => {
            Some(prod + p[(j, a)] * p[(k, b)] / C64::new(m as f64, 0.0))
        }
    }
}

#[test]
fn structure_sum_is_lambda_times_identity_for_all_groups() {
    for family in GroupFamily::ALL {
        for params in desk_params(family) {
            let spec = make_group(family, params).unwrap();
            let lam = *spec.lam.numer() as f64 / *spec.lam.denom() as f64;
            let dev = spec
                .structure_sum()
                .sub(&ComplexMatrix::identity(spec.ambient).scale(C64::new(lam, 0.0)))
                .unwrap()
                .max_abs();
            assert!(dev <= 1e-12, "{}: |S - lambda I| = {dev:.3e}", spec.label());
        }
    }
}

#[test]
fn kappa_element_relations_hold_at_sampled_points() {
    for family in GroupFamily::ALL {
        // smallest two desk parameter sets keep the index sweep affordable
        for params in desk_params(family).into_iter().take(2) {
            let spec = make_group(family, params).unwrap();
            let n = spec.ambient;
            let forms: Vec<LinearForm> = (0..n * n)
                .map(|e| LinearForm::new(cmatrix::e_rs(n, e / n, e % n)))
                .collect();
            let mut worst: f64 = 0.0;
            for idx in 0..25u64 {
                let p = sample_point(&spec, SEED, idx, 0.5).unwrap();
                // one pass of first derivatives feeds every kappa pair
                let d1 = first_jets_linear(&forms, &spec, &p).unwrap();
                let eps: Vec<f64> = spec.basis.iter().map(|v| v.eps as f64).collect();
                for j in 0..n {
                    for a in 0..n {
                        for k in 0..n {
                            for b in 0..n {
                                let Some(want) = expected_kappa(family, n, &p, j, a, k, b) else {
                                    continue;
                                };
                                let got: C64 = eps
                                    .iter()
                                    .enumerate()
                                    .map(|(t, &e)| e * d1[j * n + a][t] * d1[k * n + b][t])
                                    .sum();
                                worst = worst.max(rel_residual(got, want));
                            }
                        }
                    }
                }
            }
            assert!(
                worst <= TOL,
                "{}: kappa element relation residual {worst:.3e}",
                spec.label()
            );
        }
    }
}

#[test]
fn glh_n1_basis_vectors_match_the_block_lists() {
    // positive part {(0,i;i,0), (0,1;-1,0), (i,0;0,-i)}/sqrt(2),
    // negative part {(1,0;0,1)}/sqrt(2)
    let spec = make_group(GroupFamily::GlH, GroupParams::N(1)).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let expect_plus = [
        [C64::zero(), C64::new(0.0, s), C64::new(0.0, s), C64::zero()],
        [C64::zero(), C64::new(s, 0.0), C64::new(-s, 0.0), C64::zero()],
        [C64::new(0.0, s), C64::zero(), C64::zero(), C64::new(0.0, -s)],
    ];
    for want in expect_plus {
        let found = spec.basis.iter().any(|v| {
            v.eps == 1
                && (0..4).all(|i| (v.z[(i / 2, i % 2)] - want[i]).norm() < 1e-15)
        });
        assert!(found, "missing positive basis vector {want:?}");
    }
    let minus: Vec<_> = spec.basis.iter().filter(|v| v.eps == -1).collect();
    assert_eq!(minus.len(), 1);
    assert!((minus[0].z[(0, 0)] - C64::new(s, 0.0)).norm() < 1e-15);
    assert!((minus[0].z[(1, 1)] - C64::new(s, 0.0)).norm() < 1e-15);
    assert!(minus[0].z[(0, 1)].norm() < 1e-15 && minus[0].z[(1, 0)].norm() < 1e-15);
}

#[test]
fn types_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<lgh_core::groups::GroupSpec>();
    check::<lgh_core::eigenfamilies::FamilySpec>();
    check::<lgh_core::logpower::LogPowerSum>();
    check::<lgh_core::calculus::ScalarField>();
    check::<lgh_core::report::VerificationReport>();
}
