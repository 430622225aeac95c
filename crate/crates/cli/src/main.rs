//! `tetra`: JSON front end for tetrablock-core.
//!
//! Exit codes: 0 success, 2 negative verdict (output is still valid JSON),
//! 1 input error (an error object is written to standard error).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use tetrablock_core::autgroup::{act_left, act_right, diamond, flip, normalize_triangular, DiscAut};
use tetrablock_core::interpolate::{
    schwarz_feasible, solve_schwarz_with, solve_with_sigma, verify_interpolant, SolveOptions, EXTREMAL_REL_TOL,
};
use tetrablock_core::linalg::op_norm;
use tetrablock_core::metrics::{dist_from_origin, dist_triangular_pair, origin_quotient};
use tetrablock_core::musyn::{mu_audit, mu_diag, mu_scaling_oracle, synth_two_point, SynthesisInstance};
use tetrablock_core::tetrablock::{
    grid_oracle_margin, in_distinguished_boundary, membership, peak_function, GridSpec,
};
use tetrablock_core::{CMat2, CPoint3, Complex64 as C, Interpolant, DEFAULT_TOL};

const VERIFY_TOL: f64 = 1e-9;
const MU_TOL: f64 = 1e-13;
const BOUNDARY_TOL: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(name = "tetra", version, about = "Tetrablock geometry and two-point mu-synthesis")]
struct Cli {
    /// Overrides the primary tolerance of the chosen command.
    #[arg(long, global = true, env = "TETRA_TOL")]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Membership of a point in E or its closure.
    Member {
        #[arg(long)]
        point: String,
        #[arg(long)]
        closed: bool,
        /// Also run the brute-force grid oracle with this many angular steps.
        #[arg(long)]
        oracle_grid: Option<usize>,
    },
    /// Invariant distance from the origin, or between a triangular point and another point.
    Dist {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: Option<String>,
    },
    /// Solve phi(0) = 0, phi(lambda0) = x and verify the result.
    Interp {
        #[arg(long, allow_hyphen_values = true)]
        lambda0: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        sigma: Option<f64>,
        /// Free parameter of the scalar reduction in the extremal case.
        #[arg(long, allow_hyphen_values = true)]
        scalar_param: Option<String>,
        /// Solve the perturbed strict problem instead of the extremal reduction.
        #[arg(long)]
        epsilon_fallback: Option<f64>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Structured singular value for the diagonal structure.
    Mu {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Also report the diagonal-scaling oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Two-point synthesis F(0) = A1, F(lambda0) = A2.
    Synth {
        #[arg(long, allow_hyphen_values = true)]
        lambda0: String,
        #[arg(long, allow_hyphen_values = true)]
        a1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a2: String,
        /// Upper corner of A1; alternative to --a1.
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Distinguished-boundary test and peak-function probes.
    Boundary {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Automorphism operations.
    Auto {
        #[arg(long, value_enum)]
        op: AutoOp,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Re-verify a stored interpolant.
    Verify {
        #[arg(long)]
        interpolant: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Sampling {
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum AutoOp {
    Diamond,
    Left,
    Right,
    Flip,
    Normalize,
}

#[derive(Serialize)]
struct Provenance {
    tool_version: &'static str,
    seed: Option<u64>,
    tolerances: Tolerances,
}

#[derive(Serialize)]
struct Tolerances {
    primary: f64,
    extremal_relative: f64,
}

struct Reply {
    result: Value,
    seed: Option<u64>,
    tol: f64,
    negative: bool,
}

fn parse<T: DeserializeOwned>(what: &str, s: &str) -> anyhow::Result<T> {
    serde_json::from_str(s).with_context(|| format!("cannot parse --{what} {s:?}"))
}

fn to_value<T: Serialize>(v: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn sample_lambdas(n: usize) -> Vec<C> {
    // a fixed spiral: deterministic and independent of the seed
    (0..n).map(|k| C::from_polar(0.999 * (k as f64 + 0.5) / n as f64, 2.399963 * k as f64)).collect()
}

fn run(cli: Cli) -> anyhow::Result<Reply> {
    match cli.command {
        Command::Member { point, closed, oracle_grid } => {
            let tol = cli.tol.unwrap_or(DEFAULT_TOL);
            let x: CPoint3 = parse("point", &point)?;
            let rep = membership(&x, closed, tol);
            let mut result = json!({ "report": to_value(&rep)? });
            if let Some(n) = oracle_grid {
                if n < 2 {
                    bail!("--oracle-grid must be at least 2");
                }
                let grid = GridSpec { angular: n, radial: (n / 4).max(2) };
                let m = grid_oracle_margin(&x, closed, grid);
                let verdict = if closed { m >= -tol } else { m > 0.0 };
                result["oracle"] = json!({ "angular": grid.angular, "radial": grid.radial, "margin": m, "in_set": verdict });
            }
            Ok(Reply { result, seed: None, tol, negative: !rep.in_set })
        }
        Command::Dist { from, to } => {
            let tol = cli.tol.unwrap_or(DEFAULT_TOL);
            let x: CPoint3 = parse("from", &from)?;
            let result = match to {
                None => {
                    let d = dist_from_origin(&x)?;
                    json!({ "kind": "origin", "from": x, "distance": d, "pseudohyperbolic": origin_quotient(&x)? })
                }
                Some(to) => {
                    let y: CPoint3 = parse("to", &to)?;
                    let d = dist_triangular_pair(&x, &y)?;
                    json!({ "kind": "triangular_pair", "from": x, "to": y, "distance": d, "pseudohyperbolic": d.tanh() })
                }
            };
            Ok(Reply { result, seed: None, tol, negative: false })
        }
        Command::Interp { lambda0, point, sigma, scalar_param, epsilon_fallback, sampling } => {
            let tol = cli.tol.unwrap_or(VERIFY_TOL);
            let l0: C = parse("lambda0", &lambda0)?;
            let x: CPoint3 = parse("point", &point)?;
            let feas = schwarz_feasible(l0, &x)?;
            if !feas.feasible {
                let result = json!({ "feasible": false, "margin": feas.margin });
                return Ok(Reply { result, seed: Some(sampling.seed), tol, negative: true });
            }
            let phi = match sigma {
                Some(s) => solve_with_sigma(l0, &x, s)?,
                None => {
                    let mut opts = SolveOptions { epsilon_fallback, ..SolveOptions::default() };
                    if let Some(t) = scalar_param {
                        opts.scalar_param = parse("scalar-param", &t)?;
                    }
                    solve_schwarz_with(l0, &x, opts)?
                }
            };
            let report = verify_interpolant(&phi, sampling.samples, sampling.seed, tol);
            let negative = !report.passed;
            let result = json!({
                "feasible": true,
                "margin": feas.margin,
                "interpolant": to_value(&phi)?,
                "verification": to_value(&report)?,
            });
            Ok(Reply { result, seed: Some(sampling.seed), tol, negative })
        }
        Command::Mu { matrix, oracle } => {
            let tol = cli.tol.unwrap_or(MU_TOL);
            let a: CMat2 = parse("matrix", &matrix)?;
            if !a.is_finite() {
                bail!("matrix has non-finite entries");
            }
            let mut result = json!({ "mu": mu_diag(&a, tol), "op_norm": op_norm(&a) });
            if oracle {
                result["scaling_oracle"] = json!(mu_scaling_oracle(&a, tol.max(1e-12)));
            }
            Ok(Reply { result, seed: None, tol, negative: false })
        }
        Command::Synth { lambda0, a1, a2, zeta, sampling } => {
            let tol = cli.tol.unwrap_or(VERIFY_TOL);
            let l0: C = parse("lambda0", &lambda0)?;
            let a2: CMat2 = parse("a2", &a2)?;
            let a1 = match (a1, zeta) {
                (Some(a1), None) => parse::<CMat2>("a1", &a1)?,
                (None, Some(z)) => {
                    let z: C = parse("zeta", &z)?;
                    CMat2::new(C::new(0.0, 0.0), z, C::new(0.0, 0.0), C::new(0.0, 0.0))
                }
                (None, None) => CMat2::zero(),
                (Some(_), Some(_)) => bail!("give either --a1 or --zeta, not both"),
            };
            let inst = SynthesisInstance::new(l0, a1, a2)?;
            let res = synth_two_point(&inst)?;
            let mut result = json!({ "instance": to_value(&inst)?, "synthesis": to_value(&res)? });
            let mut negative = !res.feasible;
            if let Some(lift) = &res.lift {
                let worst = mu_audit(lift, &sample_lambdas(sampling.samples), MU_TOL)?;
                let ends = lift.eval(C::new(0.0, 0.0))?.dist(&a1).max(lift.eval(l0)?.dist(&a2));
                let ok = worst <= 1.0 + tol && ends <= tol;
                negative |= !ok;
                result["audit"] = json!({ "samples": sampling.samples, "max_mu": worst, "endpoint_residual": ends, "passed": ok });
            }
            Ok(Reply { result, seed: Some(sampling.seed), tol, negative })
        }
        Command::Boundary { point } => {
            let tol = cli.tol.unwrap_or(BOUNDARY_TOL);
            let x: CPoint3 = parse("point", &point)?;
            let inside = in_distinguished_boundary(&x, tol);
            let mut result = json!({ "point": x, "in_boundary": inside });
            if inside {
                let g = peak_function(&x)?;
                let probes = [x, CPoint3::zero(), x.dilate(0.5), x.dilate(0.9), x.swap()];
                let mut values = Vec::new();
                for p in probes {
                    let v = g.eval(&p)?;
                    values.push(json!({ "point": p, "value": v, "modulus": v.norm() }));
                }
                result["peak"] = to_value(&g)?;
                result["probes"] = Value::Array(values);
            }
            Ok(Reply { result, seed: None, tol, negative: !inside })
        }
        Command::Auto { op, x, y, omega, alpha } => {
            let tol = cli.tol.unwrap_or(DEFAULT_TOL);
            let point = |name: &str, v: &Option<String>| -> anyhow::Result<CPoint3> {
                parse(name, v.as_deref().ok_or_else(|| anyhow!("--{name} is required for this operation"))?)
            };
            let aut = || -> anyhow::Result<DiscAut> {
                let o: C = parse("omega", omega.as_deref().ok_or_else(|| anyhow!("--omega is required"))?)?;
                let a: C = parse("alpha", alpha.as_deref().ok_or_else(|| anyhow!("--alpha is required"))?)?;
                Ok(DiscAut::new(o, a)?)
            };
            let result = match op {
                AutoOp::Diamond => json!({ "image": diamond(&point("x", &x)?, &point("y", &y)?)? }),
                AutoOp::Left => json!({ "image": act_left(&aut()?, &point("x", &x)?)? }),
                AutoOp::Right => json!({ "image": act_right(&point("x", &x)?, &aut()?)? }),
                AutoOp::Flip => json!({ "image": flip(&point("x", &x)?) }),
                AutoOp::Normalize => {
                    let p = point("x", &x)?;
                    let (u, c) = normalize_triangular(&p)?;
                    let image = act_right(&act_left(&u, &p)?, &c)?;
                    json!({ "image": image, "upsilon": u, "chi": c })
                }
            };
            Ok(Reply { result, seed: None, tol, negative: false })
        }
        Command::Verify { interpolant, sampling } => {
            let tol = cli.tol.unwrap_or(VERIFY_TOL);
            let text = std::fs::read_to_string(&interpolant)
                .with_context(|| format!("cannot read {}", interpolant.display()))?;
            let doc: Value = serde_json::from_str(&text).context("interpolant file is not JSON")?;
            let body = doc
                .pointer("/result/interpolant")
                .or_else(|| doc.get("interpolant"))
                .unwrap_or(&doc)
                .clone();
            let phi: Interpolant = serde_json::from_value(body).context("not an interpolant document")?;
            let report = verify_interpolant(&phi, sampling.samples, sampling.seed, tol);
            let negative = !report.passed;
            Ok(Reply { result: json!({ "verification": to_value(&report)? }), seed: Some(sampling.seed), tol, negative })
        }
    }
}

fn fail(kind: &str, message: String) -> ExitCode {
    let err = json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{err}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("usage", e.to_string()),
    };
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t >= 0.0) {
            return fail("usage", format!("tolerance {t} must be finite and non-negative"));
        }
    }
    match run(cli) {
        Ok(reply) => {
            let out = json!({
                "provenance": Provenance {
                    tool_version: env!("CARGO_PKG_VERSION"),
                    seed: reply.seed,
                    tolerances: Tolerances { primary: reply.tol, extremal_relative: EXTREMAL_REL_TOL },
                },
                "result": reply.result,
            });
            let text = serde_json::to_string_pretty(&out).expect("JSON values serialise");
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if reply.negative {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => fail("input", format!("{e:#}")),
    }
}
