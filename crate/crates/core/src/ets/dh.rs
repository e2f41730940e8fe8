//! Denavit-Hartenberg table to ETS conversion.

use super::{ElementaryTransform, Ets};
use crate::error::{Error, Result};
use crate::liealg::Axis;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DhConvention {
    Standard,
    Modified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JointKind {
    Revolute,
    Prismatic,
}

/// One DH link. The slot selected by `kind` (θ for revolute, d for
/// prismatic) is the joint variable: its stored value is ignored and the
/// variable is `q + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhLink<T> {
    pub theta: T,
    pub d: T,
    pub a: T,
    pub alpha: T,
    pub kind: JointKind,
    pub offset: T,
}

impl<T: Real> DhLink<T> {
    pub fn revolute(d: T, a: T, alpha: T) -> Self {
        DhLink {
            theta: T::zero(),
            d,
            a,
            alpha,
            kind: JointKind::Revolute,
            offset: T::zero(),
        }
    }

    pub fn prismatic(theta: T, a: T, alpha: T) -> Self {
        DhLink {
            theta,
            d: T::zero(),
            a,
            alpha,
            kind: JointKind::Prismatic,
            offset: T::zero(),
        }
    }

    pub fn with_offset(mut self, offset: T) -> Self {
        self.offset = offset;
        self
    }

    fn is_finite(&self) -> bool {
        [self.theta, self.d, self.a, self.alpha, self.offset]
            .iter()
            .all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DhTable<T> {
    pub convention: DhConvention,
    pub links: Vec<DhLink<T>>,
}

impl<T: Real> DhTable<T> {
    pub fn new(convention: DhConvention, links: Vec<DhLink<T>>) -> Result<Self> {
        let table = DhTable { convention, links };
        table.validate()?;
        Ok(table)
    }

    pub fn validate(&self) -> Result<()> {
        if self.links.is_empty() {
            return Err(Error::Schema("DH table needs at least one link".into()));
        }
        if let Some(i) = self.links.iter().position(|l| !l.is_finite()) {
            return Err(Error::Schema(format!("DH link {i} has a non-finite entry")));
        }
        Ok(())
    }
}

/// Expands a DH table into an ETS, one joint per link in table order.
///
/// Standard links become `rz(θ) tz(d) tx(a) rx(α)`, modified links
/// `rx(α) tx(a) rz(θ) tz(d)`. A joint variable with a nonzero offset is
/// written as the constant offset followed by the joint term on the same
/// axis. Zero constants are dropped.
pub fn dh_to_ets<T: Real>(dh: &DhTable<T>) -> Result<Ets<T>> {
    dh.validate()?;
    let mut out = Vec::with_capacity(dh.links.len() * 4);
    let push_const = |out: &mut Vec<ElementaryTransform<T>>, axis, v: T| {
        if v != T::zero() {
            out.push(ElementaryTransform::constant(axis, v));
        }
    };

    for (j, link) in dh.links.iter().enumerate() {
        let theta = |out: &mut Vec<ElementaryTransform<T>>| match link.kind {
            JointKind::Revolute => {
                push_const(out, Axis::Rz, link.offset);
                out.push(ElementaryTransform::joint(Axis::Rz, j, false));
            }
            JointKind::Prismatic => push_const(out, Axis::Rz, link.theta),
        };
        let d = |out: &mut Vec<ElementaryTransform<T>>| match link.kind {
            JointKind::Prismatic => {
                push_const(out, Axis::Tz, link.offset);
                out.push(ElementaryTransform::joint(Axis::Tz, j, false));
            }
            JointKind::Revolute => push_const(out, Axis::Tz, link.d),
        };
        match dh.convention {
            DhConvention::Standard => {
                theta(&mut out);
                d(&mut out);
                push_const(&mut out, Axis::Tx, link.a);
                push_const(&mut out, Axis::Rx, link.alpha);
            }
            DhConvention::Modified => {
                push_const(&mut out, Axis::Rx, link.alpha);
                push_const(&mut out, Axis::Tx, link.a);
                theta(&mut out);
                d(&mut out);
            }
        }
    }
    Ets::new(out)
}
