//! Independent oracles shared by the integration tests. Nothing here calls
//! the derivative routines of the crate; they are rebuilt from plain matrix
//! products and finite differences.
#![allow(dead_code)]

use etskin::liealg::{rho, tau, vex3};
use etskin::{DhConvention, DhTable, Ets64, JointKind, Mat4, Twist64};

fn mat(rows: [[f64; 4]; 4]) -> Mat4<f64> {
    Mat4(rows)
}

/// Standard DH link: Rz(θ) Tz(d) Tx(a) Rx(α), written out.
pub fn dh_standard(theta: f64, d: f64, a: f64, alpha: f64) -> Mat4<f64> {
    let (st, ct) = theta.sin_cos();
    let (sa, ca) = alpha.sin_cos();
    mat([
        [ct, -st * ca, st * sa, a * ct],
        [st, ct * ca, -ct * sa, a * st],
        [0.0, sa, ca, d],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// Modified DH link: Rx(α) Tx(a) Rz(θ) Tz(d), written out.
pub fn dh_modified(theta: f64, d: f64, a: f64, alpha: f64) -> Mat4<f64> {
    let (st, ct) = theta.sin_cos();
    let (sa, ca) = alpha.sin_cos();
    mat([
        [ct, -st, 0.0, a],
        [st * ca, ct * ca, -sa, -sa * d],
        [st * sa, ct * sa, ca, ca * d],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// Product of the link matrices of a DH table at `q`.
pub fn dh_product(table: &DhTable<f64>, q: &[f64]) -> Mat4<f64> {
    assert_eq!(table.links.len(), q.len());
    table.links.iter().zip(q).fold(Mat4::identity(), |acc, (l, &qi)| {
        let (theta, d) = match l.kind {
            JointKind::Revolute => (qi + l.offset, l.d),
            JointKind::Prismatic => (l.theta, qi + l.offset),
        };
        let link = match table.convention {
            DhConvention::Standard => dh_standard(theta, d, l.a, l.alpha),
            DhConvention::Modified => dh_modified(theta, d, l.a, l.alpha),
        };
        acc * link
    })
}

fn along(q: &[f64], qd: &[f64], qdd: &[f64], t: f64) -> Vec<f64> {
    q.iter()
        .zip(qd)
        .zip(qdd)
        .map(|((a, b), c)| a + t * b + 0.5 * t * t * c)
        .collect()
}

fn pose(ets: &Ets64, q: &[f64]) -> Mat4<f64> {
    *ets.fkine(q).unwrap().matrix()
}

/// Twist at t = 0 along q(t) = q + t q̇, by central differences:
/// `v = ṫ`, `ω = vex(Ṙ Rᵀ)`.
pub fn velocity_by_differences(ets: &Ets64, q: &[f64], qd: &[f64], h: f64) -> Twist64 {
    let zero = vec![0.0; q.len()];
    let (tp, tm, t0) = (
        pose(ets, &along(q, qd, &zero, h)),
        pose(ets, &along(q, qd, &zero, -h)),
        pose(ets, q),
    );
    let d = (tp - tm).scale(0.5 / h);
    let w = vex3(&(rho(&d) * rho(&t0).transpose()).skew_part()).unwrap();
    Twist64::new(tau(&d), w)
}

/// Acceleration twist at t = 0 along q(t) = q + t q̇ + ½t² q̈ by second
/// differences: `a = ẗ`, `α = vex(R̈ Rᵀ + Ṙ Ṙᵀ)`; the symmetric term only
/// cancels the symmetric part of R̈ Rᵀ, so the skew part of R̈ Rᵀ suffices.
pub fn accel_by_differences(ets: &Ets64, q: &[f64], qd: &[f64], qdd: &[f64], h: f64) -> Twist64 {
    let (tp, tm, t0) = (
        pose(ets, &along(q, qd, qdd, h)),
        pose(ets, &along(q, qd, qdd, -h)),
        pose(ets, q),
    );
    let dd = (tp - t0.scale(2.0) + tm).scale(1.0 / (h * h));
    let alpha = vex3(&(rho(&dd) * rho(&t0).transpose()).skew_part()).unwrap();
    Twist64::new(tau(&dd), alpha)
}
