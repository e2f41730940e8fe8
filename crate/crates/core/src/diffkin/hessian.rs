use super::jacobian::Scans;
use super::{jacobian_fast, Hessian, Jacobian};
use crate::error::{check_len, Result};
use crate::ets::{Ets, JointSlot};
use crate::liealg::{generator, rho, tau, vex3, Mat3, Mat4, Twist6};
use crate::scalar::Real;

/// ∂²T/∂q_k∂q_j.
///
/// When the joints sit at different positions the two single derivatives are
/// inserted at their own transforms; when `j == k` the squared generator is
/// used, which vanishes for prismatic joints.
pub fn second_partial_pose<T: Real>(ets: &Ets<T>, q: &[T], j: usize, k: usize) -> Result<Mat4<T>> {
    ets.check_q(q)?;
    let sj = *ets.joint(j)?;
    let sk = *ets.joint(k)?;
    let m = ets.len();
    if j == k {
        let g = generator(sj.axis, sj.flipped);
        let before = ets.link_pose(q, 0, sj.position)?;
        let after = ets.link_pose(q, sj.position + 1, m)?;
        let e = ets.transforms()[sj.position].matrix(q);
        return Ok(*before.matrix() * g * g * e * *after.matrix());
    }
    let (first, second) = if sk.position < sj.position {
        (sk, sj)
    } else {
        (sj, sk)
    };
    let before = ets.link_pose(q, 0, first.position)?;
    let between = ets.link_pose(q, first.position + 1, second.position)?;
    let after = ets.link_pose(q, second.position + 1, m)?;
    Ok(*before.matrix()
        * Scans::joint_derivative(ets, q, &first)
        * *between.matrix()
        * Scans::joint_derivative(ets, q, &second)
        * *after.matrix())
}

/// Hessian from second partials of the full product:
/// `H_a_ij = τ(∂²T/∂q_j∂q_i)`, `H_α_ij = vex(H_R_ij Rᵀ + J_R_i J_R_jᵀ)`.
pub fn hessian_naive<T: Real>(ets: &Ets<T>, q: &[T]) -> Result<Hessian<T>> {
    ets.check_q(q)?;
    let n = ets.n();
    let scans = Scans::new(ets, q);
    let rt = rho(scans.end()).transpose();
    let joints = ets.joints();
    let jr: Vec<Mat3<T>> = joints.iter().map(|s| rho(&scans.partial(ets, q, s))).collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| joints[j].position);

    let mut hess = Hessian::zeros(n);
    let mut store = |i: usize, j: usize, d2: &Mat4<T>| -> Result<()> {
        let hr = rho(d2) * rt;
        let a = tau(d2);
        let w_ij = vex3(&(hr + jr[i] * jr[j].transpose()))?;
        hess.set_entry(i, j, &Twist6::new(a, w_ij));
        if i != j {
            let w_ji = vex3(&(hr + jr[j] * jr[i].transpose()))?;
            hess.set_entry(j, i, &Twist6::new(a, w_ji));
        }
        Ok(())
    };

    for (ia, &ja) in order.iter().enumerate() {
        let slot_a: &JointSlot = &joints[ja];
        let pa = slot_a.position;
        let da = Scans::joint_derivative(ets, q, slot_a);
        let g = generator(slot_a.axis, slot_a.flipped);
        store(ja, ja, &(scans.prefix[pa] * g * da * scans.suffix[pa + 1]))?;

        // running = prefix · dE_a · E_{a+1} · … up to the next joint
        let mut running = scans.prefix[pa] * da;
        let mut pos = pa + 1;
        for &jb in &order[ia + 1..] {
            let slot_b = &joints[jb];
            for et in &ets.transforms()[pos..slot_b.position] {
                running = running * et.matrix(q);
            }
            let db = Scans::joint_derivative(ets, q, slot_b);
            store(ja, jb, &(running * db * scans.suffix[slot_b.position + 1]))?;
            running = running * ets.transforms()[slot_b.position].matrix(q);
            pos = slot_b.position + 1;
        }
    }
    Ok(hess)
}

/// Hessian from the fast Jacobian.
pub fn hessian_fast<T: Real>(ets: &Ets<T>, q: &[T]) -> Result<Hessian<T>> {
    let jac = jacobian_fast(ets, q)?;
    hessian_from_jacobian(ets, &jac)
}

/// Hessian built only from Jacobian columns.
///
/// With joints compared by their position in the sequence:
/// * `H_α_ij = J_ω_j × J_ω_i` when joint j precedes joint i, zero otherwise
///   (a joint's own velocity and that of later joints do not rotate its axis);
/// * `H_a_ij = H_a_ji = J_ω_a × J_v_b` where a is the earlier of i, j and b the
///   later (a = b on the diagonal).
pub fn hessian_from_jacobian<T: Real>(ets: &Ets<T>, jac: &Jacobian<T>) -> Result<Hessian<T>> {
    let n = ets.n();
    check_len(n, jac.ncols())?;
    let joints = ets.joints();
    let cols: Vec<Twist6<T>> = (0..n).map(|j| jac.column(j)).collect();
    let mut hess = Hessian::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let (pi, pj) = (joints[i].position, joints[j].position);
            let alpha = if pj < pi {
                cols[j].w.cross(&cols[i].w)
            } else {
                Default::default()
            };
            if pi <= pj {
                // (i, j) is ordered: fill both translational entries at once
                let a = cols[i].w.cross(&cols[j].v);
                for r in 0..3 {
                    hess.set(r, i, j, a[r]);
                    hess.set(r, j, i, a[r]);
                }
            }
            for r in 0..3 {
                hess.set(r + 3, i, j, alpha[r]);
            }
        }
    }
    Ok(hess)
}
