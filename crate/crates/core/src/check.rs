//! Seeded oracle comparisons over random joint configurations.
//!
//! For each trial the fast Jacobian and Hessian are compared against the
//! naive and finite-difference routes, and the forward-kinematics pose is
//! checked for SE(3) membership. Each comparison keeps its worst residual.

use serde::Serialize;

use crate::diffkin::{
    hessian_fd, hessian_from_jacobian, hessian_naive, jacobian_fast, jacobian_fd, jacobian_naive, Jacobian,
    FD_STEP_FIRST, FD_STEP_SECOND,
};
use crate::error::{Error, Result};
use crate::ets::Ets;
use crate::sample::{random_q, rng};

/// A fast-path Jacobian implementation under test.
pub type JacobianFn = fn(&Ets<f64>, &[f64]) -> Result<Jacobian<f64>>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub jacobian_naive: f64,
    pub jacobian_fd: f64,
    pub hessian_naive: f64,
    pub hessian_fd: f64,
    pub se3: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            jacobian_naive: 1e-10,
            jacobian_fd: 1e-6,
            hessian_naive: 1e-10,
            hessian_fd: 1e-5,
            se3: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub name: &'static str,
    pub max: f64,
    pub tol: f64,
}

impl Residual {
    pub fn passed(&self) -> bool {
        self.max <= self.tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub trials: usize,
    pub seed: u64,
    pub residuals: Vec<Residual>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(Residual::passed)
    }

    pub fn first_failure(&self) -> Option<&Residual> {
        self.residuals.iter().find(|r| !r.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.name == name)
    }
}

/// Oracle runner. The fast Jacobian is injectable so the runner itself can
/// be tested against a broken implementation.
#[derive(Debug, Clone, Copy)]
pub struct Checker {
    pub tol: Tolerances,
    pub fast_jacobian: JacobianFn,
}

impl Default for Checker {
    fn default() -> Self {
        Checker {
            tol: Tolerances::default(),
            fast_jacobian: jacobian_fast::<f64>,
        }
    }
}

impl Checker {
    pub fn with_fast_jacobian(fast_jacobian: JacobianFn) -> Self {
        Checker {
            fast_jacobian,
            ..Default::default()
        }
    }

    /// Runs `trials` configurations drawn uniformly from `[-π, π]ⁿ`.
    pub fn run(&self, ets: &Ets<f64>, trials: usize, seed: u64) -> Result<CheckReport> {
        if trials == 0 {
            return Err(Error::Range("trials must be at least 1".into()));
        }
        let mut r = rng(seed);
        let mut w = Worst::default();
        for _ in 0..trials {
            let q = random_q(&mut r, ets.n());
            self.trial(ets, &q, &mut w)?;
        }
        let t = &self.tol;
        Ok(CheckReport {
            trials,
            seed,
            residuals: vec![
                Residual {
                    name: "jacobian_fast_vs_naive",
                    max: w.j_naive,
                    tol: t.jacobian_naive,
                },
                Residual {
                    name: "jacobian_fast_vs_fd",
                    max: w.j_fd,
                    tol: t.jacobian_fd,
                },
                Residual {
                    name: "hessian_fast_vs_naive",
                    max: w.h_naive,
                    tol: t.hessian_naive,
                },
                Residual {
                    name: "hessian_fast_vs_fd",
                    max: w.h_fd,
                    tol: t.hessian_fd,
                },
                Residual {
                    name: "hessian_fast_symmetry",
                    max: w.sym_fast,
                    tol: 0.0,
                },
                Residual {
                    name: "hessian_naive_symmetry",
                    max: w.sym_naive,
                    tol: t.hessian_naive,
                },
                Residual {
                    name: "se3_orthonormality",
                    max: w.ortho,
                    tol: t.se3,
                },
                Residual {
                    name: "se3_determinant",
                    max: w.det,
                    tol: t.se3,
                },
                Residual {
                    name: "se3_bottom_row",
                    max: w.bottom,
                    tol: 0.0,
                },
            ],
        })
    }

    fn trial(&self, ets: &Ets<f64>, q: &[f64], w: &mut Worst) -> Result<()> {
        let jf = (self.fast_jacobian)(ets, q)?;
        let jn = jacobian_naive(ets, q)?;
        let jd = jacobian_fd(ets, q, FD_STEP_FIRST)?;
        let hf = hessian_from_jacobian(ets, &jf)?;
        let hn = hessian_naive(ets, q)?;
        let hd = hessian_fd(ets, q, FD_STEP_SECOND)?;
        let pose = ets.fkine(q)?;
        let bottom = pose.matrix().0[3];

        w.j_naive = w.j_naive.max(jf.max_abs_diff(&jn));
        w.j_fd = w.j_fd.max(jf.max_abs_diff(&jd));
        w.h_naive = w.h_naive.max(hf.max_abs_diff(&hn));
        w.h_fd = w.h_fd.max(hf.max_abs_diff(&hd));
        w.sym_fast = w.sym_fast.max(hf.translational_asymmetry());
        w.sym_naive = w.sym_naive.max(hn.translational_asymmetry());
        w.ortho = w.ortho.max(pose.orthonormality_residual());
        w.det = w.det.max((pose.det() - 1.0).abs());
        let dev = bottom
            .iter()
            .zip([0.0, 0.0, 0.0, 1.0])
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
        w.bottom = w.bottom.max(dev);
        Ok(())
    }
}

#[derive(Default)]
struct Worst {
    j_naive: f64,
    j_fd: f64,
    h_naive: f64,
    h_fd: f64,
    sym_fast: f64,
    sym_naive: f64,
    ortho: f64,
    det: f64,
    bottom: f64,
}

/// Runs the default checker.
pub fn check(ets: &Ets<f64>, trials: usize, seed: u64) -> Result<CheckReport> {
    Checker::default().run(ets, trials, seed)
}

/// A deliberately wrong fast Jacobian: the genuine one with a constant
/// bias on the first linear entry. Used as a negative control.
pub fn corrupted_jacobian(ets: &Ets<f64>, q: &[f64]) -> Result<Jacobian<f64>> {
    let mut j = jacobian_fast(ets, q)?;
    if j.ncols() > 0 {
        j.set(0, 0, j.get(0, 0) + 1e-3);
    }
    Ok(j)
}
