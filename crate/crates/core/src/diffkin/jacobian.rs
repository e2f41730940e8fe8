use super::Jacobian;
use crate::error::Result;
use crate::ets::{Ets, JointSlot};
use crate::liealg::{generator, rho, tau, vex3, Axis, Mat3, Mat4, Twist6, Vec3};
use crate::scalar::Real;

/// ∂T/∂q_j: a 4×4 matrix with an exactly zero bottom row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PosePartial<T>(pub(crate) Mat4<T>);

impl<T: Real> PosePartial<T> {
    pub fn matrix(&self) -> &Mat4<T> {
        &self.0
    }

    /// Rotational block J_R.
    pub fn rotation_block(&self) -> Mat3<T> {
        rho(&self.0)
    }

    /// Translational block J_t.
    pub fn translation_block(&self) -> Vec3<T> {
        tau(&self.0)
    }
}

/// Prefix/suffix scans shared by the naive routines.
pub(crate) struct Scans<T> {
    pub prefix: Vec<Mat4<T>>,
    pub suffix: Vec<Mat4<T>>,
}

impl<T: Real> Scans<T> {
    pub fn new(ets: &Ets<T>, q: &[T]) -> Self {
        Scans {
            prefix: ets.prefix_products(q),
            suffix: ets.suffix_products(q),
        }
    }

    pub fn end(&self) -> &Mat4<T> {
        self.prefix.last().expect("prefix scan is never empty")
    }

    /// `[ŝ_m] · E_m(q)` for the transform carrying `slot`.
    pub fn joint_derivative(ets: &Ets<T>, q: &[T], slot: &JointSlot) -> Mat4<T> {
        let et = &ets.transforms()[slot.position];
        generator(slot.axis, slot.flipped) * et.matrix(q)
    }

    /// Chain-rule product `prefix · dE_m/dq_j · suffix`.
    pub fn partial(&self, ets: &Ets<T>, q: &[T], slot: &JointSlot) -> Mat4<T> {
        let m = slot.position;
        self.prefix[m] * Self::joint_derivative(ets, q, slot) * self.suffix[m + 1]
    }
}

/// ∂T/∂q_j by the chain rule over the full transform product.
pub fn partial_pose<T: Real>(ets: &Ets<T>, q: &[T], j: usize) -> Result<PosePartial<T>> {
    ets.check_q(q)?;
    let slot = *ets.joint(j)?;
    let m = slot.position;
    let before = ets.link_pose(q, 0, m)?;
    let after = ets.link_pose(q, m + 1, ets.len())?;
    let d = Scans::joint_derivative(ets, q, &slot);
    Ok(PosePartial(*before.matrix() * d * *after.matrix()))
}

/// Jacobian from the partial derivatives of the full product:
/// `J_v_j = τ(∂T/∂q_j)`, `J_ω_j = vex(ρ(∂T/∂q_j) ρ(T)ᵀ)`.
pub fn jacobian_naive<T: Real>(ets: &Ets<T>, q: &[T]) -> Result<Jacobian<T>> {
    ets.check_q(q)?;
    let scans = Scans::new(ets, q);
    let rt = rho(scans.end()).transpose();
    let mut jac = Jacobian::zeros(ets.n());
    for (j, slot) in ets.joints().iter().enumerate() {
        let d = scans.partial(ets, q, slot);
        let w = vex3(&(rho(&d) * rt))?;
        jac.set_column(j, &Twist6::new(tau(&d), w));
    }
    Ok(jac)
}

/// Jacobian from closed forms in the joint frame ⁰ξ_j = (n̂ ô â | p) and the
/// joint-to-end translation (x_e, y_e, z_e) = τ(ʲξ_e).
///
/// | joint | J_ω  | J_v                 |
/// |-------|------|---------------------|
/// | rx    | n̂    | â y_e − ô z_e       |
/// | ry    | ô    | n̂ z_e − â x_e       |
/// | rz    | â    | ô x_e − n̂ y_e       |
/// | tx    | 0    | n̂                   |
/// | ty    | 0    | ô                   |
/// | tz    | 0    | â                   |
///
/// Flipped joints negate the column.
pub fn jacobian_fast<T: Real>(ets: &Ets<T>, q: &[T]) -> Result<Jacobian<T>> {
    ets.check_q(q)?;
    let prefix = ets.prefix_products(q);
    let suffix = ets.suffix_products(q);
    let mut jac = Jacobian::zeros(ets.n());
    for (j, slot) in ets.joints().iter().enumerate() {
        let frame = rho(&prefix[slot.position + 1]);
        let (n, o, a) = (frame.col(0), frame.col(1), frame.col(2));
        let e = tau(&suffix[slot.position + 1]);
        let col = match slot.axis {
            Axis::Rx => Twist6::new(a * e.y - o * e.z, n),
            Axis::Ry => Twist6::new(n * e.z - a * e.x, o),
            Axis::Rz => Twist6::new(o * e.x - n * e.y, a),
            Axis::Tx => Twist6::new(n, Vec3::zeros()),
            Axis::Ty => Twist6::new(o, Vec3::zeros()),
            Axis::Tz => Twist6::new(a, Vec3::zeros()),
        };
        let col = if slot.flipped { col.scale(-T::one()) } else { col };
        jac.set_column(j, &col);
    }
    Ok(jac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::ets::parse_ets;

    fn ets(s: &str) -> Ets<f64> {
        parse_ets(s).unwrap()
    }

    fn central_partial(e: &Ets<f64>, q: &[f64], j: usize, h: f64) -> Mat4<f64> {
        let mut qp = q.to_vec();
        let mut qm = q.to_vec();
        qp[j] += h;
        qm[j] -= h;
        (*e.fkine(&qp).unwrap().matrix() - *e.fkine(&qm).unwrap().matrix()).scale(0.5 / h)
    }

    #[test]
    fn single_revolute_partial_is_generator() {
        let p = partial_pose(&ets("rz(q0)"), &[0.0], 0).unwrap();
        assert_eq!(*p.matrix(), generator(Axis::Rz, false));
    }

    #[test]
    fn single_prismatic_partial_is_constant_generator() {
        for q in [-1.5, 0.0, 2.0] {
            let p = partial_pose(&ets("tz(q0)"), &[q], 0).unwrap();
            assert_eq!(*p.matrix(), generator(Axis::Tz, false));
        }
    }

    #[test]
    fn partial_pose_range_error() {
        assert!(matches!(
            partial_pose(&ets("rz(q0)"), &[0.0], 1),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn partial_pose_matches_central_difference() {
        let e = ets(
            "tz(0.333) rz(q0) ry(q1) tz(0.316) rz(q2) tx(0.0825) ry(-q3) tx(-0.0825) \
                     tz(0.384) rz(q4) ry(-q5) tx(0.088) rx(3.141592653589793) tz(0.107) rz(q6)",
        );
        let q = [0.1, -0.4, 0.7, -1.9, 0.3, 1.4, -0.8];
        for j in 0..7 {
            let an = partial_pose(&e, &q, j).unwrap();
            let fd = central_partial(&e, &q, j, 1e-6);
            assert!(an.matrix().approx_eq(&fd, 1e-8), "joint {j}");
            assert_eq!(an.matrix().0[3], [0.0; 4]);
        }
    }

    #[test]
    fn axis_aligned_columns() {
        let j = jacobian_naive(&ets("rz(q0)"), &[0.0]).unwrap();
        assert_eq!(j.column(0).to_array(), [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let j = jacobian_naive(&ets("tz(q0)"), &[0.0]).unwrap();
        assert_eq!(j.column(0).to_array(), [0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn planar_2r_at_zero() {
        let e = ets("rz(q0) tx(1) rz(q1) tx(1)");
        // z × (2,0,0) and z × (1,0,0): both joints at the base plane
        let expect = [
            [0.0, 0.0],
            [2.0, 1.0],
            [0.0, 0.0],
            [0.0, 0.0],
            [0.0, 0.0],
            [1.0, 1.0],
        ];
        for jac in [
            jacobian_naive(&e, &[0.0, 0.0]).unwrap(),
            jacobian_fast(&e, &[0.0, 0.0]).unwrap(),
        ] {
            for (r, row) in expect.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    assert!((jac.get(r, c) - v).abs() <= 1e-12, "({r},{c})");
                }
            }
        }
    }

    #[test]
    fn fast_matches_naive_single_revolute() {
        let e = ets("rz(q0)");
        let a = jacobian_fast(&e, &[0.7]).unwrap();
        let b = jacobian_naive(&e, &[0.7]).unwrap();
        assert!(a.max_abs_diff(&b) <= 1e-12);
    }

    #[test]
    fn fast_matches_naive_every_axis_and_flip() {
        for ax in Axis::ALL {
            for flip in ["", "-"] {
                let text = format!("tx(0.3) ry(0.2) {}({flip}q0) tz(0.5) rx(-0.4) ty(0.25)", ax.tag());
                let e = ets(&text);
                for q in [-2.0, 0.35, 1.7] {
                    let a = jacobian_fast(&e, &[q]).unwrap();
                    let b = jacobian_naive(&e, &[q]).unwrap();
                    assert!(a.max_abs_diff(&b) <= 1e-12, "{text} q={q}");
                }
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let e = ets("rz(q0) rz(q1)");
        assert!(jacobian_fast(&e, &[0.0]).is_err());
        assert!(jacobian_naive(&e, &[0.0, 0.0, 0.0]).is_err());
    }
}
