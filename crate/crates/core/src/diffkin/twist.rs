use super::{hessian_from_jacobian, jacobian_fast, nmode3};
use crate::error::{check_len, Result};
use crate::ets::Ets;
use crate::liealg::Twist6;
use crate::scalar::Real;

/// End-effector spatial velocity `(v; ω) = J(q) q̇`.
pub fn velocity_twist<T: Real>(ets: &Ets<T>, q: &[T], qd: &[T]) -> Result<Twist6<T>> {
    check_len(ets.n(), qd.len())?;
    jacobian_fast(ets, q)?.mul_vec(qd)
}

/// End-effector spatial acceleration `(a; α) = (H ×₃ q̇) q̇ + J q̈`.
pub fn accel_twist<T: Real>(ets: &Ets<T>, q: &[T], qd: &[T], qdd: &[T]) -> Result<Twist6<T>> {
    check_len(ets.n(), qd.len())?;
    check_len(ets.n(), qdd.len())?;
    let jac = jacobian_fast(ets, q)?;
    let hess = hessian_from_jacobian(ets, &jac)?;
    let quad = nmode3(&hess, qd)?.mul_vec(qd)?;
    Ok(quad + jac.mul_vec(qdd)?)
}
