use super::{jacobian_fast, Hessian, Jacobian};
use crate::error::{Error, Result};
use crate::ets::Ets;
use crate::liealg::{rho, tau, vex3, Twist6};
use crate::scalar::Real;

fn check_step<T: Real>(h: T) -> Result<()> {
    if h > T::zero() && h.is_finite() {
        Ok(())
    } else {
        Err(Error::Range(format!(
            "finite-difference step must be positive, got {h}"
        )))
    }
}

/// Evaluates `f` at `q ± h e_j` and returns both results.
fn bracket<T: Real, R>(q: &[T], j: usize, h: T, mut f: impl FnMut(&[T]) -> Result<R>) -> Result<(R, R)> {
    let mut x = q.to_vec();
    x[j] = q[j] + h;
    let plus = f(&x)?;
    x[j] = q[j] - h;
    let minus = f(&x)?;
    Ok((plus, minus))
}

/// Jacobian by central differences of forward kinematics.
///
/// The angular part is `vex(Ṙ Rᵀ)`. The difference quotient leaves a
/// symmetric residue of order h² plus roundoff, so only the skew part is
/// passed to `vex`.
pub fn jacobian_fd<T: Real>(ets: &Ets<T>, q: &[T], h: T) -> Result<Jacobian<T>> {
    ets.check_q(q)?;
    check_step(h)?;
    let rt = ets.fkine(q)?.rotation().transpose();
    let inv2h = T::one() / (T::two() * h);
    let mut jac = Jacobian::zeros(ets.n());
    for j in 0..ets.n() {
        let (tp, tm) = bracket(q, j, h, |x| ets.fkine(x))?;
        let d = (*tp.matrix() - *tm.matrix()).scale(inv2h);
        let w = vex3(&(rho(&d) * rt).skew_part())?;
        jac.set_column(j, &Twist6::new(tau(&d), w));
    }
    Ok(jac)
}

/// Hessian by central differences of the fast Jacobian:
/// `H[·, i, j] ≈ (J(q + h e_j) − J(q − h e_j))[·, i] / 2h`.
pub fn hessian_fd<T: Real>(ets: &Ets<T>, q: &[T], h: T) -> Result<Hessian<T>> {
    ets.check_q(q)?;
    check_step(h)?;
    let n = ets.n();
    let inv2h = T::one() / (T::two() * h);
    let mut hess = Hessian::zeros(n);
    for j in 0..n {
        let (jp, jm) = bracket(q, j, h, |x| jacobian_fast(ets, x))?;
        for r in 0..6 {
            for i in 0..n {
                hess.set(r, i, j, (jp.get(r, i) - jm.get(r, i)) * inv2h);
            }
        }
    }
    Ok(hess)
}
