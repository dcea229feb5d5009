//! Command dispatch behind the `wittkit` binary. Every command prints one
//! JSON report; the exit code is 0 on success, 1 when a verification fails
//! and 2 when the input is malformed.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::automorphism::{
    aut_apply, aut_compose, aut_invert, aut_verify, rigidity_check, AutElement,
};
use crate::cohomology::{
    coboundary_fit, cocycle_condition_check, ladder_check, normalize_cocycle, Cocycle,
};
use crate::derivation::{decompose_derivation, leibniz_check};
use crate::dsl::parse;
use crate::error::{Error, Result};
use crate::ground::Gamma;
use crate::json;
use crate::lie::{jacobi_sweep, BracketRule, Element};
use crate::structure::{ad_probe, ideal_generated};
use crate::window::Window;

pub const SCHEMA: &str = "wittkit.report/1";

#[derive(Parser, Debug)]
#[command(
    name = "wittkit",
    version,
    about = "Exact computations in the Lie algebra W(Γ)"
)]
struct Cli {
    /// Γ configuration (JSON).
    #[arg(long, env = "WITTKIT_GAMMA", global = true, value_name = "FILE")]
    gamma: Option<PathBuf>,
    /// Print the report on one line.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression such as "[L(1,2), L(3,1)]".
    Eval {
        expr: String,
        #[arg(long, default_value = "wgamma")]
        rule: BracketRule,
    },
    /// Jacobi residuals on every basis triple of a window.
    Jacobi {
        #[arg(long, num_args = 2, value_names = ["A", "I"], default_values_t = [3u32, 3])]
        window: Vec<u32>,
        #[arg(long, default_value = "wgamma")]
        rule: BracketRule,
    },
    /// Classify the ideal generated by an element.
    Ideal {
        #[arg(long)]
        gen: String,
        #[arg(long, num_args = 2, value_names = ["A", "I"], default_values_t = [3u32, 3])]
        window: Vec<u32>,
    },
    /// Ranks of span{y, ad_x y, …, ad_x^K y}.
    Adprobe {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(long, default_value = "wgamma")]
        rule: BracketRule,
    },
    /// Check or decompose a derivation given as JSON.
    Derive {
        action: DeriveAction,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["A", "I"], default_values_t = [2u32, 2])]
        window: Vec<u32>,
        /// Truncation order; defaults to the level bound plus 4.
        #[arg(long)]
        order: Option<u32>,
    },
    /// Apply, compose, verify or invert automorphisms given as JSON.
    Aut {
        action: AutAction,
        #[arg(long)]
        input: PathBuf,
        /// Element to apply the automorphism to.
        #[arg(long)]
        x: Option<String>,
        #[arg(long, num_args = 2, value_names = ["A", "I"], default_values_t = [3u32, 3])]
        window: Vec<u32>,
    },
    /// Check, normalize or fit a 2-cocycle given as JSON.
    Cocycle {
        action: CocycleAction,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["A", "I"], default_values_t = [3u32, 2])]
        window: Vec<u32>,
        /// Fail unless `fit` finds this outcome.
        #[arg(long)]
        expect: Option<Expectation>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DeriveAction {
    Check,
    Decompose,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AutAction {
    Apply,
    Compose,
    Verify,
    Invert,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CocycleAction {
    Check,
    Normalize,
    Fit,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Expectation {
    Feasible,
    Infeasible,
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let start = Instant::now();
    let gamma = match &cli.gamma {
        Some(path) => Gamma::load(path),
        None => Err(Error::InvalidGamma(
            "no Γ configuration: pass --gamma FILE or set WITTKIT_GAMMA".into(),
        )),
    };
    let (fingerprint, outcome) = match gamma {
        Ok(g) => (Some(g.fingerprint()), dispatch(&g, &cli.command)),
        Err(e) => (None, Err(e)),
    };
    let (status, code, result, error) = match outcome {
        Ok((v, true)) => ("ok", 0, v, Value::Null),
        Ok((v, false)) => ("verification_failed", 1, v, Value::Null),
        Err(e) if e.is_verification_failure() => {
            ("verification_failed", 1, Value::Null, error_json(&e))
        }
        Err(e) => ("input_error", 2, Value::Null, error_json(&e)),
    };
    let report = json!({
        "schema": SCHEMA,
        "command": echo,
        "gamma_fingerprint": fingerprint,
        "status": status,
        "result": result,
        "error": error,
        "timing_ms": start.elapsed().as_millis() as u64,
    });
    let stdout = if cli.compact {
        serde_json::to_string(&report)
    } else {
        serde_json::to_string_pretty(&report)
    }
    .expect("report serialises");
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({"kind": e.kind(), "message": e.to_string()});
    if let Error::Syntax { line, column, .. } = e {
        v["line"] = json!(line);
        v["column"] = json!(column);
    }
    v
}

fn window(w: &[u32]) -> Result<Window> {
    Window::new(w[0], w[1])
}

fn read_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    json::parse_text(&text)
}

fn element(gamma: &Gamma, src: &str, rule: BracketRule) -> Result<Element> {
    crate::dsl::eval(gamma, &parse(gamma, src)?, rule)
}

fn element_json(gamma: &Gamma, x: &Element) -> Value {
    json!({"text": x.format(gamma), "terms": json::element_to_json(gamma, x)})
}

/// Runs one command; the flag says whether every check passed.
fn dispatch(gamma: &Gamma, command: &Command) -> Result<(Value, bool)> {
    match command {
        Command::Eval { expr, rule } => {
            let x = element(gamma, expr, *rule)?;
            Ok((
                json!({"rule": rule.to_string(), "element": element_json(gamma, &x)}),
                true,
            ))
        }
        Command::Jacobi { window: w, rule } => {
            let w = window(w)?;
            let s = jacobi_sweep(gamma, w, *rule)?;
            let ok = s.is_zero();
            Ok((
                json!({"rule": rule.to_string(), "window": [w.degree_bound, w.level_bound], "residual": json::residual_to_json(&s)}),
                ok,
            ))
        }
        Command::Ideal { gen, window: w } => {
            let x = element(gamma, gen, BracketRule::WGamma)?;
            let r = ideal_generated(gamma, &x, window(w)?)?;
            let ok = r.replay(gamma)? && r.window_check.as_ref().is_some_and(|c| c.passed());
            Ok((json::ideal_report_to_json(gamma, &r), ok))
        }
        Command::Adprobe { x, y, steps, rule } => {
            let p = ad_probe(
                gamma,
                &element(gamma, x, *rule)?,
                &element(gamma, y, *rule)?,
                *steps,
                *rule,
            )?;
            let ok = p.prediction_holds() != Some(false);
            Ok((json::adprobe_to_json(gamma, &p), ok))
        }
        Command::Derive {
            action,
            input,
            window: w,
            order,
        } => {
            let spec = json::derivation_from_json(gamma, &read_json(input)?)?;
            let w = window(w)?;
            match action {
                DeriveAction::Check => {
                    let s = leibniz_check(gamma, &spec, w)?;
                    let ok = s.is_zero();
                    Ok((json!({"leibniz": json::residual_to_json(&s)}), ok))
                }
                DeriveAction::Decompose => {
                    let r =
                        decompose_derivation(gamma, &spec, w, order.unwrap_or(w.level_bound + 4))?;
                    let ok = r.residual.is_zero();
                    Ok((json::decomposition_to_json(gamma, &r), ok))
                }
            }
        }
        Command::Aut {
            action,
            input,
            x,
            window: w,
        } => {
            let v = read_json(input)?;
            match action {
                AutAction::Apply => {
                    let a = json::aut_from_json(gamma, &v)?;
                    let src = x
                        .as_deref()
                        .ok_or_else(|| Error::Json("aut apply needs --x EXPR".into()))?;
                    let img = aut_apply(&a, &element(gamma, src, BracketRule::WGamma)?)?;
                    Ok((json!({"image": element_json(gamma, &img)}), true))
                }
                AutAction::Compose => {
                    let list = v
                        .as_array()
                        .ok_or_else(|| Error::Json("aut compose expects a JSON array".into()))?;
                    let mut acc = AutElement::identity(gamma);
                    for item in list {
                        acc = aut_compose(gamma, &acc, &json::aut_from_json(gamma, item)?);
                    }
                    Ok((json!({"composite": json::aut_to_json(gamma, &acc)}), true))
                }
                AutAction::Verify => {
                    let a = json::aut_from_json(gamma, &v)?;
                    let w = window(w)?;
                    let s = aut_verify(gamma, &a, w)?;
                    let rigid = rigidity_check(gamma, &a, w)?;
                    let ok = s.is_zero() && rigid;
                    Ok((
                        json!({"homomorphism": json::residual_to_json(&s), "rigidity": rigid}),
                        ok,
                    ))
                }
                AutAction::Invert => {
                    let a = json::aut_from_json(gamma, &v)?;
                    let inv = aut_invert(gamma, &a);
                    let ok = aut_compose(gamma, &a, &inv).is_identity();
                    Ok((
                        json!({"inverse": json::aut_to_json(gamma, &inv), "round_trip": ok}),
                        ok,
                    ))
                }
            }
        }
        Command::Cocycle {
            action,
            input,
            window: w,
            expect,
        } => {
            let psi = json::cocycle_from_json(gamma, &read_json(input)?)?;
            let w = window(w)?;
            match action {
                CocycleAction::Check => {
                    let s = cocycle_condition_check(gamma, &psi, w)?;
                    let ok = s.is_zero();
                    Ok((json!({"cyclic": json::residual_to_json(&s)}), ok))
                }
                CocycleAction::Normalize => normalize_report(gamma, &psi, w),
                CocycleAction::Fit => {
                    let r = coboundary_fit(gamma, &psi, w)?;
                    let ok = match expect {
                        Some(Expectation::Feasible) => r.feasible,
                        Some(Expectation::Infeasible) => !r.feasible,
                        None => true,
                    };
                    Ok((json::fit_to_json(gamma, &r), ok))
                }
            }
        }
    }
}

fn normalize_report(gamma: &Gamma, psi: &Cocycle, w: Window) -> Result<(Value, bool)> {
    let r = normalize_cocycle(gamma, psi, w)?;
    let ladder = ladder_check(gamma, &r.normalized(psi), w, 2 * w.level_bound)?;
    let ok = r.success() && ladder.is_zero();
    let mut v = json::normalization_to_json(gamma, &r);
    v["ladder"] = json::residual_to_json(&ladder);
    Ok((v, ok))
}
