//! Elementary transform sequences: data model, forward kinematics and
//! link-to-link poses.

mod dh;
mod parse;

pub use dh::{dh_to_ets, DhConvention, DhLink, DhTable, JointKind};
pub use parse::{format_ets, parse_ets};

use std::fmt;

use crate::error::{check_len, Error, Result};
use crate::liealg::{elem_matrix, rho, tau, Axis, Mat3, Mat4, Vec3};
use crate::scalar::Real;

/// Parameter of an elementary transform: a fixed value or a joint variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EtParam<T> {
    Constant(T),
    /// Joint `index`; when `flipped` the transform is driven by `-q[index]`.
    Joint {
        index: usize,
        flipped: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementaryTransform<T> {
    pub axis: Axis,
    pub param: EtParam<T>,
}

impl<T: Real> ElementaryTransform<T> {
    pub fn constant(axis: Axis, value: T) -> Self {
        ElementaryTransform {
            axis,
            param: EtParam::Constant(value),
        }
    }

    pub fn joint(axis: Axis, index: usize, flipped: bool) -> Self {
        ElementaryTransform {
            axis,
            param: EtParam::Joint { index, flipped },
        }
    }

    pub fn is_joint(&self) -> bool {
        matches!(self.param, EtParam::Joint { .. })
    }

    /// Value of η for this transform given joint coordinates `q`.
    #[inline]
    pub fn eta(&self, q: &[T]) -> T {
        match self.param {
            EtParam::Constant(c) => c,
            EtParam::Joint { index, flipped } => {
                if flipped {
                    -q[index]
                } else {
                    q[index]
                }
            }
        }
    }

    #[inline]
    pub fn matrix(&self, q: &[T]) -> Mat4<T> {
        elem_matrix(self.axis, self.eta(q))
    }
}

/// Joint metadata resolved from a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JointSlot {
    /// Position m_j of the transform carrying this joint.
    pub position: usize,
    pub axis: Axis,
    pub flipped: bool,
}

impl JointSlot {
    pub fn is_revolute(&self) -> bool {
        self.axis.is_rotation()
    }
}

/// An ordered product of elementary transforms together with the map from
/// joint index to sequence position.
///
/// Immutable once built; every joint index `0..n` appears exactly once.
#[derive(Debug, Clone, PartialEq)]
pub struct Ets<T> {
    transforms: Vec<ElementaryTransform<T>>,
    joints: Vec<JointSlot>,
}

impl<T: Real> Ets<T> {
    /// Builds a sequence, checking joint indices are unique and contiguous
    /// from zero and constants are finite.
    pub fn new(transforms: Vec<ElementaryTransform<T>>) -> Result<Self> {
        let mut slots: Vec<Option<JointSlot>> = Vec::new();
        for (pos, et) in transforms.iter().enumerate() {
            match et.param {
                EtParam::Constant(c) => {
                    if !c.is_finite() {
                        return Err(Error::InvalidEts(format!(
                            "non-finite constant at position {pos}"
                        )));
                    }
                }
                EtParam::Joint { index, flipped } => {
                    if slots.len() <= index {
                        slots.resize(index + 1, None);
                    }
                    if slots[index].is_some() {
                        return Err(Error::InvalidEts(format!("duplicate joint index q{index}")));
                    }
                    slots[index] = Some(JointSlot {
                        position: pos,
                        axis: et.axis,
                        flipped,
                    });
                }
            }
        }
        let joints = slots
            .into_iter()
            .enumerate()
            .map(|(j, s)| {
                s.ok_or_else(|| Error::InvalidEts(format!("joint indices are not contiguous: q{j} missing")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ets { transforms, joints })
    }

    pub fn empty() -> Self {
        Ets {
            transforms: Vec::new(),
            joints: Vec::new(),
        }
    }

    /// Number of joints n.
    #[inline]
    pub fn n(&self) -> usize {
        self.joints.len()
    }

    /// Number of elementary transforms M.
    #[inline]
    pub fn len(&self) -> usize {
        self.transforms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.transforms.is_empty()
    }

    pub fn transforms(&self) -> &[ElementaryTransform<T>] {
        &self.transforms
    }

    pub fn joints(&self) -> &[JointSlot] {
        &self.joints
    }

    pub fn joint(&self, j: usize) -> Result<&JointSlot> {
        self.joints
            .get(j)
            .ok_or_else(|| Error::Range(format!("joint index {j} out of range for n = {}", self.n())))
    }

    /// Sequence position m_j of joint `j`.
    pub fn joint_position(&self, j: usize) -> Result<usize> {
        self.joint(j).map(|s| s.position)
    }

    pub fn check_q(&self, q: &[T]) -> Result<()> {
        check_len(self.n(), q.len())
    }

    /// Forward kinematics: left-to-right product of every elementary transform.
    pub fn fkine(&self, q: &[T]) -> Result<Pose<T>> {
        self.check_q(q)?;
        Ok(Pose(self.product(q, 0, self.len())))
    }

    /// Pose spanning sequence positions `[a, b)`. `a == b` is the identity.
    pub fn link_pose(&self, q: &[T], a: usize, b: usize) -> Result<Pose<T>> {
        self.check_q(q)?;
        if a > b || b > self.len() {
            return Err(Error::Range(format!(
                "link range [{a}, {b}) invalid for a sequence of length {}",
                self.len()
            )));
        }
        Ok(Pose(self.product(q, a, b)))
    }

    /// Pose of the frame just after joint `j`'s transform, ⁰ξ_j.
    pub fn joint_frame(&self, q: &[T], j: usize) -> Result<Pose<T>> {
        let m = self.joint_position(j)?;
        self.link_pose(q, 0, m + 1)
    }

    pub(crate) fn product(&self, q: &[T], a: usize, b: usize) -> Mat4<T> {
        self.transforms[a..b]
            .iter()
            .fold(Mat4::identity(), |acc, et| acc * et.matrix(q))
    }

    /// Prefix products: entry k is the product of positions `[0, k)`, k = 0..=M.
    pub(crate) fn prefix_products(&self, q: &[T]) -> Vec<Mat4<T>> {
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(Mat4::identity());
        for et in &self.transforms {
            let next = *out.last().unwrap() * et.matrix(q);
            out.push(next);
        }
        out
    }

    /// Suffix products: entry k is the product of positions `[k, M)`, k = 0..=M.
    pub(crate) fn suffix_products(&self, q: &[T]) -> Vec<Mat4<T>> {
        let m = self.len();
        let mut out = vec![Mat4::identity(); m + 1];
        for k in (0..m).rev() {
            out[k] = self.transforms[k].matrix(q) * out[k + 1];
        }
        out
    }

    /// Merges adjacent constant transforms sharing an axis. Not applied
    /// implicitly anywhere; the derivative routines work per transform.
    pub fn fold_constants(&self) -> Self {
        let mut out: Vec<ElementaryTransform<T>> = Vec::with_capacity(self.len());
        for et in &self.transforms {
            if let (Some(last), EtParam::Constant(c)) = (out.last_mut(), et.param) {
                if let EtParam::Constant(prev) = last.param {
                    if last.axis == et.axis {
                        last.param = EtParam::Constant(prev + c);
                        continue;
                    }
                }
            }
            out.push(*et);
        }
        out.retain(|et| et.param != EtParam::Constant(T::zero()));
        Ets::new(out).expect("folding preserves joint structure")
    }

    /// Converts every constant to another scalar type.
    pub fn cast<U: Real>(&self) -> Ets<U> {
        let transforms = self
            .transforms
            .iter()
            .map(|et| ElementaryTransform {
                axis: et.axis,
                param: match et.param {
                    EtParam::Constant(c) => EtParam::Constant(U::from_f64_lossy(c.to_f64_lossy())),
                    EtParam::Joint { index, flipped } => EtParam::Joint { index, flipped },
                },
            })
            .collect();
        Ets {
            transforms,
            joints: self.joints.clone(),
        }
    }
}

impl<T: Real> fmt::Display for Ets<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_ets(self))
    }
}

impl<T: Real> std::str::FromStr for Ets<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ets(s)
    }
}

/// Homogeneous transform produced by forward kinematics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose<T>(Mat4<T>);

impl<T: Real> Pose<T> {
    pub fn identity() -> Self {
        Pose(Mat4::identity())
    }

    /// Wraps a matrix, checking the SE(3) invariants to `tol`.
    pub fn try_from_matrix(m: Mat4<T>, tol: T) -> Result<Self> {
        let p = Pose(m);
        let bottom_ok = m.0[3] == [T::zero(), T::zero(), T::zero(), T::one()];
        if !bottom_ok
            || !m.is_finite()
            || p.orthonormality_residual() > tol
            || (p.det() - T::one()).abs() > tol
        {
            return Err(Error::Schema("matrix is not a rigid-body transform".into()));
        }
        Ok(p)
    }

    #[inline]
    pub fn matrix(&self) -> &Mat4<T> {
        &self.0
    }

    pub fn rotation(&self) -> Mat3<T> {
        rho(&self.0)
    }

    pub fn translation(&self) -> Vec3<T> {
        tau(&self.0)
    }

    /// First rotation column (n̂).
    pub fn n(&self) -> Vec3<T> {
        self.rotation().col(0)
    }

    /// Second rotation column (ô).
    pub fn o(&self) -> Vec3<T> {
        self.rotation().col(1)
    }

    /// Third rotation column (â).
    pub fn a(&self) -> Vec3<T> {
        self.rotation().col(2)
    }

    /// `‖RᵀR − I‖∞`.
    pub fn orthonormality_residual(&self) -> T {
        let r = self.rotation();
        (r.transpose() * r - Mat3::identity()).max_abs()
    }

    pub fn det(&self) -> T {
        self.rotation().det()
    }

    pub fn has_exact_bottom_row(&self) -> bool {
        self.0 .0[3] == [T::zero(), T::zero(), T::zero(), T::one()]
    }

    pub fn inverse(&self) -> Self {
        let rt = self.rotation().transpose();
        let t = -(rt * self.translation());
        Pose(Mat4::from_parts(&rt, &t))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Pose(self.0 * other.0)
    }
}

impl<T: Real> std::ops::Mul for Pose<T> {
    type Output = Pose<T>;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn planar() -> Ets<f64> {
        parse_ets("rz(q0) tx(1) rz(q1) tx(1)").unwrap()
    }

    #[test]
    fn planar_zero_configuration() {
        let t = planar().fkine(&[0.0, 0.0]).unwrap();
        assert_eq!(t.translation(), Vec3::new(2.0, 0.0, 0.0));
        assert_eq!(t.rotation(), Mat3::identity());
    }

    #[test]
    fn planar_quarter_turn() {
        let t = planar().fkine(&[FRAC_PI_2, 0.0]).unwrap();
        assert!(t.translation().approx_eq(&Vec3::new(0.0, 2.0, 0.0), 1e-15));
        assert!(t.matrix().approx_eq(
            &(elem_matrix(Axis::Rz, FRAC_PI_2) * elem_matrix(Axis::Tx, 2.0)),
            1e-15
        ));
    }

    #[test]
    fn empty_sequence_is_identity() {
        let e = Ets::<f64>::empty();
        assert_eq!(e.fkine(&[]).unwrap(), Pose::identity());
        assert_eq!(e.n(), 0);
    }

    #[test]
    fn fkine_dimension_mismatch() {
        assert_eq!(
            planar().fkine(&[0.0]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn link_pose_ranges() {
        let e = planar();
        let q = [0.3, -0.7];
        assert_eq!(e.link_pose(&q, 3, 3).unwrap(), Pose::identity());
        assert_eq!(e.link_pose(&q, 0, e.len()).unwrap(), e.fkine(&q).unwrap());
        for k in 0..=e.len() {
            let a = e.link_pose(&q, 0, k).unwrap();
            let b = e.link_pose(&q, k, e.len()).unwrap();
            assert!((a * b).matrix().approx_eq(e.fkine(&q).unwrap().matrix(), 1e-15));
        }
        assert!(matches!(e.link_pose(&q, 2, 1), Err(Error::Range(_))));
        assert!(matches!(e.link_pose(&q, 0, 5), Err(Error::Range(_))));
    }

    #[test]
    fn constructor_rejects_bad_joint_sets() {
        let dup = vec![
            ElementaryTransform::joint(Axis::Rz, 0, false),
            ElementaryTransform::joint(Axis::Rx, 0, false),
        ];
        assert!(matches!(Ets::<f64>::new(dup), Err(Error::InvalidEts(_))));
        let gap = vec![ElementaryTransform::<f64>::joint(Axis::Rz, 1, false)];
        assert!(matches!(Ets::new(gap), Err(Error::InvalidEts(_))));
        let nan = vec![ElementaryTransform::constant(Axis::Tx, f64::NAN)];
        assert!(matches!(Ets::new(nan), Err(Error::InvalidEts(_))));
    }

    #[test]
    fn joints_may_be_written_out_of_sequence_order() {
        let e: Ets<f64> = parse_ets("rz(q1) tx(1) rz(q0)").unwrap();
        assert_eq!(e.joint_position(0).unwrap(), 2);
        assert_eq!(e.joint_position(1).unwrap(), 0);
    }

    #[test]
    fn flipped_joint_is_negated_variable() {
        let flipped: Ets<f64> = parse_ets("tz(0.2) rz(-q0) tx(1) ry(q1)").unwrap();
        let plain: Ets<f64> = parse_ets("tz(0.2) rz(q0) tx(1) ry(q1)").unwrap();
        let x = 0.81;
        assert_eq!(
            flipped.fkine(&[x, 0.2]).unwrap(),
            plain.fkine(&[-x, 0.2]).unwrap()
        );
    }

    #[test]
    fn all_constant_sequence_ignores_q() {
        let e: Ets<f64> = parse_ets("tz(0.3) rx(1.2) ty(-0.5)").unwrap();
        assert_eq!(e.n(), 0);
        assert!(e.fkine(&[]).is_ok());
        assert!(e.fkine(&[0.0]).is_err());
    }

    #[test]
    fn fold_merges_same_axis_constants() {
        let e: Ets<f64> = parse_ets("tz(0.25) tz(0.5) rz(q0) rx(0.1) rx(-0.1) tx(1)").unwrap();
        let f = e.fold_constants();
        assert_eq!(format_ets(&f), "tz(0.75) rz(q0) tx(1)");
        let q = [0.4];
        assert!(f
            .fkine(&q)
            .unwrap()
            .matrix()
            .approx_eq(e.fkine(&q).unwrap().matrix(), 1e-15));
    }

    #[test]
    fn pose_inverse_and_validation() {
        let t = planar().fkine(&[0.4, 1.1]).unwrap();
        assert!((t * t.inverse()).matrix().approx_eq(&Mat4::identity(), 1e-15));
        assert!(Pose::try_from_matrix(*t.matrix(), 1e-12).is_ok());
        assert!(Pose::try_from_matrix(Mat4::<f64>::zeros(), 1e-12).is_err());
    }

    #[test]
    fn cast_to_f32() {
        let e32: Ets<f32> = planar().cast();
        let t = e32.fkine(&[0.0, 0.0]).unwrap();
        assert_eq!(t.translation(), Vec3::new(2.0f32, 0.0, 0.0));
    }
}
