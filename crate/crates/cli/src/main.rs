//! `etskin` command-line front end. Every command prints one JSON document
//! on stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or input error,
//! 3 IK did not converge, 4 singular Jacobian during resolved-rate control.

mod control;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use etskin::check::{corrupted_jacobian, Checker};
use etskin::diffkin::{self, Method, FD_STEP_FIRST, FD_STEP_SECOND};
use etskin::robots::{bundled_documents, bundled_model, load_model, load_model_file, RobotModel};
use etskin::{format_ets, Ets64, Mat4, Twist64};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] etskin::Error),
    #[error("check failed: {name} residual {max:e} exceeds tolerance {tol:e}")]
    CheckFailed { name: &'static str, max: f64, tol: f64 },
    #[error("no convergence after {iterations} iterations; best residual {residual:e}")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("singular Jacobian at step {step}: smallest singular value {sigma_min:e}")]
    Singular { step: usize, sigma_min: f64 },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::CheckFailed { .. } => 1,
            CliError::NoConvergence { .. } => 3,
            CliError::Singular { .. } => 4,
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "etskin",
    version,
    about = "Kinematics of elementary transform sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// End-effector pose, or the pose of transforms A..B with --link A:B.
    Fkine {
        #[command(flatten)]
        eval: Eval,
        /// Half-open range of sequence positions.
        #[arg(long, value_name = "A:B")]
        link: Option<String>,
    },
    /// World-frame manipulator Jacobian (6×n, row-major).
    Jacobian {
        #[command(flatten)]
        eval: Eval,
        #[command(flatten)]
        method: MethodArgs,
    },
    /// World-frame manipulator Hessian (6×n×n, layout r,i,j).
    Hessian {
        #[command(flatten)]
        eval: Eval,
        #[command(flatten)]
        method: MethodArgs,
    },
    /// Compare fast, naive and finite-difference derivatives at random q.
    Check {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Replace the fast Jacobian with a biased one (negative control).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Damped-least-squares inverse kinematics.
    Ik {
        #[command(flatten)]
        model: ModelArg,
        /// Target pose, 16 numbers row-major.
        #[arg(long, value_name = "CSV16")]
        target: String,
        /// Initial configuration.
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 100)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-6)]
        damping: f64,
    },
    /// Resolved-rate motion control with a damped pseudo-inverse.
    Rrmc {
        #[command(flatten)]
        model: ModelArg,
        /// Initial configuration.
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        q: String,
        /// Desired twist (vx,vy,vz,wx,wy,wz).
        #[arg(long, value_name = "CSV6", allow_hyphen_values = true)]
        twist: String,
        #[arg(long)]
        dt: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1e-6)]
        damping: f64,
        /// Twist components to control, six 0/1 flags (default all).
        #[arg(long, value_name = "CSV6")]
        mask: Option<String>,
    },
    /// Convert a DH-form model document to ETS text.
    Dh2ets {
        #[command(flatten)]
        model: ModelArg,
        /// Merge adjacent constants on the same axis.
        #[arg(long)]
        fold: bool,
    },
    /// Bundled model documents.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
}

#[derive(Subcommand)]
enum ModelsAction {
    /// Write every bundled model document to DIR.
    Export {
        #[arg(long, value_name = "DIR")]
        dir: PathBuf,
    },
}

#[derive(Args)]
struct ModelArg {
    /// Model document path, or the name of a bundled model.
    #[arg(long, value_name = "PATH")]
    model: String,
}

#[derive(Args)]
struct Eval {
    #[command(flatten)]
    model: ModelArg,
    /// Joint coordinates in radians (or meters for prismatic joints).
    #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
    q: String,
    /// Merge adjacent constants on the same axis before evaluating.
    #[arg(long)]
    fold: bool,
}

#[derive(Args)]
struct MethodArgs {
    #[arg(long, default_value = "fast", value_name = "fast|naive|fd")]
    method: String,
    /// Finite-difference step (fd only).
    #[arg(long)]
    h: Option<f64>,
}

fn parse_csv(text: &str, what: &str) -> CliResult<Vec<f64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("{what}: `{s}` is not a finite number")))
        })
        .collect()
}

fn parse_fixed<const N: usize>(text: &str, what: &str) -> CliResult<[f64; N]> {
    let v = parse_csv(text, what)?;
    v.try_into()
        .map_err(|v: Vec<f64>| CliError::Usage(format!("{what}: expected {N} numbers, got {}", v.len())))
}

fn resolve_model(arg: &ModelArg) -> CliResult<RobotModel> {
    let path = Path::new(&arg.model);
    if !path.exists() {
        if let Some(m) = bundled_model(&arg.model) {
            return Ok(m);
        }
    }
    Ok(load_model_file(path)?)
}

fn eval_ets(eval: &Eval) -> CliResult<(RobotModel, Ets64, Vec<f64>)> {
    let model = resolve_model(&eval.model)?;
    let ets = if eval.fold {
        model.ets.fold_constants()
    } else {
        model.ets.clone()
    };
    let q = parse_csv(&eval.q, "--q")?;
    ets.check_q(&q)?;
    Ok((model, ets, q))
}

fn parse_method(m: &MethodArgs, default_h: f64) -> CliResult<(Method, f64)> {
    let method: Method = m.method.parse()?;
    let h = m.h.unwrap_or(default_h);
    if !(h > 0.0 && h.is_finite()) {
        return Err(CliError::Usage(format!("--h must be positive, got {h}")));
    }
    Ok((method, h))
}

fn parse_link(text: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("--link: expected A:B, got `{text}`"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Fkine { eval, link } => {
            let (_, ets, q) = eval_ets(&eval)?;
            let pose = match link {
                Some(l) => {
                    let (a, b) = parse_link(&l)?;
                    ets.link_pose(&q, a, b)?
                }
                None => ets.fkine(&q)?,
            };
            output::emit(&json!({ "T": pose.matrix().to_row_major() }));
        }
        Command::Jacobian { eval, method } => {
            let (_, ets, q) = eval_ets(&eval)?;
            let (method, h) = parse_method(&method, FD_STEP_FIRST)?;
            let j = diffkin::jacobian(&ets, &q, method, h)?;
            output::emit(&json!({
                "J": j.as_slice(),
                "shape": [6, j.ncols()],
                "method": method.to_string(),
            }));
        }
        Command::Hessian { eval, method } => {
            let (_, ets, q) = eval_ets(&eval)?;
            let (method, h) = parse_method(&method, FD_STEP_SECOND)?;
            let hess = diffkin::hessian(&ets, &q, method, h)?;
            output::emit(&json!({
                "H": hess.as_slice(),
                "shape": [6, hess.n(), hess.n()],
                "layout": "r,i,j",
                "method": method.to_string(),
            }));
        }
        Command::Check {
            model,
            trials,
            seed,
            inject_fault,
        } => {
            if trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let model = resolve_model(&model)?;
            let checker = if inject_fault {
                Checker::with_fast_jacobian(corrupted_jacobian)
            } else {
                Checker::default()
            };
            let report = checker.run(&model.ets, trials, seed)?;
            let residuals: Vec<_> = report
                .residuals
                .iter()
                .map(|r| json!({ "name": r.name, "max": r.max, "tol": r.tol, "passed": r.passed() }))
                .collect();
            output::emit(&json!({
                "model": model.name,
                "trials": trials,
                "seed": seed,
                "passed": report.passed(),
                "residuals": residuals,
            }));
            if let Some(r) = report.first_failure() {
                return Err(CliError::CheckFailed {
                    name: r.name,
                    max: r.max,
                    tol: r.tol,
                });
            }
        }
        Command::Ik {
            model,
            target,
            q,
            tol,
            max_iters,
            damping,
        } => {
            let model = resolve_model(&model)?;
            let target = Mat4::from_row_major(&parse_fixed::<16>(&target, "--target")?);
            etskin::Pose::try_from_matrix(target, 1e-9)?;
            let q0 = parse_csv(&q, "--q")?;
            model.ets.check_q(&q0)?;
            if !(tol > 0.0 && damping >= 0.0) {
                return Err(CliError::Usage(
                    "--tol must be positive and --damping non-negative".into(),
                ));
            }
            let r = control::ik(&model.ets, &target, &q0, tol, max_iters, damping)?;
            output::emit(&json!({
                "q": r.q,
                "iterations": r.iterations,
                "residual": r.residual,
                "converged": r.converged,
            }));
            if !r.converged {
                return Err(CliError::NoConvergence {
                    iterations: max_iters,
                    residual: r.residual,
                });
            }
        }
        Command::Rrmc {
            model,
            q,
            twist,
            dt,
            steps,
            damping,
            mask,
        } => {
            let model = resolve_model(&model)?;
            let q0 = parse_csv(&q, "--q")?;
            model.ets.check_q(&q0)?;
            let nu = Twist64::from_array(parse_fixed::<6>(&twist, "--twist")?);
            if !(dt > 0.0 && dt.is_finite()) || steps == 0 {
                return Err(CliError::Usage(
                    "--dt must be positive and --steps at least 1".into(),
                ));
            }
            let mask = match mask {
                Some(m) => parse_fixed::<6>(&m, "--mask")?.map(|v| v != 0.0),
                None => [true; 6],
            };
            if !mask.contains(&true) {
                return Err(CliError::Usage("--mask selects no twist components".into()));
            }
            let traj = control::rrmc(&model.ets, &q0, &nu, &mask, dt, steps, damping)?;
            let steps: Vec<_> = traj
                .iter()
                .map(|s| {
                    json!({
                        "step": s.step,
                        "q": s.q,
                        "qd": s.qd,
                        "sigma_min": s.sigma_min,
                        "twist": s.twist.to_array(),
                    })
                })
                .collect();
            output::emit(&json!({ "steps": steps }));
        }
        Command::Dh2ets { model, fold } => {
            let m = resolve_model(&model)?;
            let ets = if fold { m.ets.fold_constants() } else { m.ets };
            output::emit(&json!({ "name": m.name, "ets": format_ets(&ets) }));
        }
        Command::Models {
            action: ModelsAction::Export { dir },
        } => {
            std::fs::create_dir_all(&dir)
                .map_err(|e| etskin::Error::Io(format!("{}: {e}", dir.display())))?;
            let mut written = Vec::new();
            for (name, text) in bundled_documents() {
                // validate before writing so a broken bundle never reaches disk
                load_model(text)?;
                let path = dir.join(format!("{name}.json"));
                std::fs::write(&path, text)
                    .map_err(|e| etskin::Error::Io(format!("{}: {e}", path.display())))?;
                written.push(path.display().to_string());
            }
            output::emit(&json!({ "exported": written }));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("etskin: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
