//! Damped-least-squares IK and resolved-rate stepping.

use etskin::{jacobian_fast, liealg::vex3, Ets64, Jacobian64, Mat3, Mat4, Twist64, Vec3};
use nalgebra::{DMatrix, DVector};

use crate::CliError;

/// Singular values below this stop resolved-rate control.
pub const SINGULAR_THRESHOLD: f64 = 1e-8;

fn to_dmatrix(j: &Jacobian64) -> DMatrix<f64> {
    DMatrix::from_row_slice(6, j.ncols(), j.as_slice())
}

/// Rotation error as an angle-axis vector θ·k with R_err = exp([θk]).
///
/// Away from θ = π this is `vex(skew(R_err))` rescaled by θ / sin θ; near π
/// the axis is read from the diagonal.
pub fn rotation_error(r_err: &Mat3<f64>) -> Vec3<f64> {
    let v = vex3(&r_err.skew_part()).expect("the skew part is skew");
    let s = v.norm();
    let c = ((r_err[(0, 0)] + r_err[(1, 1)] + r_err[(2, 2)] - 1.0) / 2.0).clamp(-1.0, 1.0);
    let theta = s.atan2(c);
    if s > 1e-10 {
        return v.scale(theta / s);
    }
    if c > 0.0 {
        return v;
    }
    // θ ≈ π: R + I = 2kkᵀ
    let k = (0..3)
        .max_by(|&a, &b| r_err[(a, a)].total_cmp(&r_err[(b, b)]))
        .unwrap();
    let kk = ((r_err[(k, k)] + 1.0) / 2.0).max(0.0).sqrt();
    let mut axis = [0.0; 3];
    for (i, slot) in axis.iter_mut().enumerate() {
        *slot = if i == k {
            kk
        } else {
            (r_err[(i, k)] + r_err[(k, i)]) / (4.0 * kk)
        };
    }
    Vec3::from_array(axis).scale(std::f64::consts::PI)
}

/// Pose error `(t* − t; θk)` with `R* Rᵀ = exp([θk])`, world frame.
pub fn pose_error(target: &Mat4<f64>, current: &Mat4<f64>) -> Twist64 {
    let (rt, r) = (etskin::liealg::rho(target), etskin::liealg::rho(current));
    let dt = etskin::liealg::tau(target) - etskin::liealg::tau(current);
    Twist64::new(dt, rotation_error(&(rt * r.transpose())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IkResult {
    pub q: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

/// Iterates `q ← q + (JᵀJ + λI)⁻¹ Jᵀ e` until `‖e‖ ≤ tol`. Returns the best
/// configuration seen when `max_iters` is exhausted.
pub fn ik(
    ets: &Ets64,
    target: &Mat4<f64>,
    q0: &[f64],
    tol: f64,
    max_iters: usize,
    damping: f64,
) -> Result<IkResult, CliError> {
    let n = ets.n();
    let mut q = q0.to_vec();
    let mut best = IkResult {
        q: q.clone(),
        iterations: 0,
        residual: f64::INFINITY,
        converged: false,
    };
    for it in 0..=max_iters {
        let e = pose_error(target, ets.fkine(&q)?.matrix());
        let residual = e.norm();
        if residual < best.residual {
            best = IkResult {
                q: q.clone(),
                iterations: it,
                residual,
                converged: residual <= tol,
            };
        }
        if residual <= tol || it == max_iters || !residual.is_finite() {
            break;
        }
        let j = to_dmatrix(&jacobian_fast(ets, &q)?);
        let jt = j.transpose();
        let lhs = &jt * &j + DMatrix::identity(n, n) * damping;
        let rhs = &jt * DVector::from_row_slice(&e.to_array());
        let dq = lhs.lu().solve(&rhs).ok_or_else(|| {
            CliError::Usage("damped normal equations are singular; increase --damping".into())
        })?;
        for (qi, d) in q.iter_mut().zip(dq.iter()) {
            *qi += d;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RrmcStep {
    pub step: usize,
    pub q: Vec<f64>,
    pub qd: Vec<f64>,
    pub sigma_min: f64,
    /// End-effector twist realized over the step, from consecutive poses.
    pub twist: Twist64,
}

/// Damped pseudo-inverse `V diag(σ / (σ² + λ²)) Uᵀ` and the smallest
/// singular value of `a`.
fn damped_pinv(a: DMatrix<f64>, damping: f64) -> (DMatrix<f64>, f64) {
    let svd = a.svd(true, true);
    let sigma_min = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    let u = svd.u.expect("requested");
    let vt = svd.v_t.expect("requested");
    let inv = svd.singular_values.map(|s| s / (s * s + damping * damping));
    (
        vt.transpose() * DMatrix::from_diagonal(&inv) * u.transpose(),
        sigma_min,
    )
}

/// Resolved-rate control: each step sets `q̇ = J⁺ ν` on the rows selected by
/// `mask` and advances `q ← q + q̇ dt`.
///
/// Stops with [`CliError::Singular`] when the smallest singular value of the
/// masked Jacobian drops below [`SINGULAR_THRESHOLD`].
pub fn rrmc(
    ets: &Ets64,
    q0: &[f64],
    twist: &Twist64,
    mask: &[bool; 6],
    dt: f64,
    steps: usize,
    damping: f64,
) -> Result<Vec<RrmcStep>, CliError> {
    let rows: Vec<usize> = (0..6).filter(|&r| mask[r]).collect();
    let nu = twist.to_array();
    let nu_m = DVector::from_iterator(rows.len(), rows.iter().map(|&r| nu[r]));
    let mut q = q0.to_vec();
    let mut pose = *ets.fkine(&q)?.matrix();
    let mut out = Vec::with_capacity(steps);
    for step in 0..steps {
        let j = jacobian_fast(ets, &q)?;
        let jm = DMatrix::from_fn(rows.len(), ets.n(), |r, c| j.get(rows[r], c));
        let (pinv, sigma_min) = damped_pinv(jm, damping);
        if sigma_min < SINGULAR_THRESHOLD {
            return Err(CliError::Singular { step, sigma_min });
        }
        let qd: Vec<f64> = (pinv * &nu_m).iter().copied().collect();
        for (qi, v) in q.iter_mut().zip(&qd) {
            *qi += v * dt;
        }
        let next = *ets.fkine(&q)?.matrix();
        let realized = realized_twist(&pose, &next, dt);
        pose = next;
        out.push(RrmcStep {
            step,
            q: q.clone(),
            qd,
            sigma_min,
            twist: realized,
        });
    }
    Ok(out)
}

/// Average twist carrying `from` to `to` over `dt`: translation difference
/// and `vex` of the skew part of the relative rotation, both divided by dt.
pub fn realized_twist(from: &Mat4<f64>, to: &Mat4<f64>, dt: f64) -> Twist64 {
    use etskin::liealg::{rho, tau};
    let dr = rho(to) * rho(from).transpose();
    let w = vex3(&dr.skew_part()).expect("the skew part is skew");
    Twist64::new(tau(to) - tau(from), w).scale(1.0 / dt)
}
