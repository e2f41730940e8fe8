//! Serial-manipulator kinematics over Elementary Transform Sequences.
//!
//! A robot is an ordered product of pure rotations and translations about
//! the coordinate axes, some of which are driven by joint variables. From
//! that sequence this crate computes forward kinematics, the 6×n world-frame
//! Jacobian and the 6×n×n world-frame Hessian, each through a naive product
//! route and a closed-form fast route, with finite differences as an oracle.
//!
//! ```
//! use etskin::{parse_ets, jacobian_fast};
//!
//! let ets: etskin::Ets64 = parse_ets("rz(q0) tx(1) rz(q1) tx(1)").unwrap();
//! let t = ets.fkine(&[0.0, 0.0]).unwrap();
//! assert_eq!(t.translation().to_array(), [2.0, 0.0, 0.0]);
//! let j = jacobian_fast(&ets, &[0.0, 0.0]).unwrap();
//! assert_eq!(j.get(1, 0), 2.0);
//! ```
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `*64` and `*32`
//! aliases below name the concrete instantiations.

pub mod check;
pub mod diffkin;
pub mod error;
pub mod ets;
pub mod liealg;
pub mod robots;
pub mod sample;
mod scalar;

pub use diffkin::{
    accel_twist, hessian_fast, hessian_fd, hessian_from_jacobian, hessian_naive, jacobian_fast, jacobian_fd,
    jacobian_naive, nmode3, partial_pose, second_partial_pose, velocity_twist, Hessian, Jacobian, Mat6xN,
    Method, PosePartial,
};
pub use error::{Error, Result};
pub use ets::{
    dh_to_ets, format_ets, parse_ets, DhConvention, DhLink, DhTable, ElementaryTransform, EtParam, Ets,
    JointKind, JointSlot, Pose,
};
pub use liealg::{Axis, Mat3, Mat4, Twist6, Vec3};
pub use robots::{bundled_models, load_model, RobotModel};
pub use scalar::Real;

pub type Ets64 = Ets<f64>;
pub type Ets32 = Ets<f32>;
pub type Pose64 = Pose<f64>;
pub type Pose32 = Pose<f32>;
pub type Jacobian64 = Jacobian<f64>;
pub type Jacobian32 = Jacobian<f32>;
pub type Hessian64 = Hessian<f64>;
pub type Hessian32 = Hessian<f32>;
pub type Twist64 = Twist6<f64>;
pub type Twist32 = Twist6<f32>;
