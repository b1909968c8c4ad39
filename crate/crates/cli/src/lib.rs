//! Command-line front end for the `coexist` library.
//!
//! Exit codes: `0` coexistence certified (a condition holds, the oracle
//! found a witness, or an exact qubit criterion says so), `1` invalid input,
//! `2` the pair is judged incompatible, `3` unresolved.

mod effect_file;
mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use coexist::conditions::{check_jor_multi, full_report, PairReport, DEFAULT_TOL};
use coexist::exemplars::{
    busch_criterion, lambda_jor, lambda_jor_exact, lambda_max, liu_criterion, mub_pair, norm3, ExactCriterion,
    MubParams, QubitEffect,
};
use coexist::survey::{emit_csv, run_survey, summary, CsvError, SurveyConfig};
use coexist::{decide_pair, Condition, Effect, OracleKind, OracleParams};
use serde_json::{json, Value};

pub use effect_file::{EffectEntry, EffectFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed effect file {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("effect \"{name}\": {reason}")]
    InvalidEffect { name: String, reason: String },
    #[error("duplicate effect name \"{0}\"")]
    DuplicateName(String),
    #[error("no effect named \"{0}\"")]
    UnknownName(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] coexist::Error),
    #[error(transparent)]
    Survey(#[from] CsvError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Coexistent = 0,
    Invalid = 1,
    Incompatible = 2,
    Unresolved = 3,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Parser)]
#[command(name = "coexist", version, about = "Check sufficient conditions for coexistence of quantum effects")]
pub struct Cli {
    /// Relative PSD tolerance shared by all conditions.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 5000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-7)]
    pub feas_tol: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub infeas_tol: f64,
    #[arg(long, default_value_t = 3)]
    pub restarts: usize,
}

impl OracleArgs {
    fn params(&self) -> OracleParams {
        OracleParams {
            max_iters: self.max_iters,
            feas_tol: self.feas_tol,
            infeas_tol: self.infeas_tol,
            restarts: self.restarts,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report all five conditions for two effects from a file.
    Check {
        file: PathBuf,
        first: String,
        second: String,
        /// Also run the feasibility oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Qubit effects ½(αI + v·σ) given by Bloch vectors.
    Qubit {
        #[arg(long = "e", value_parser = parse_bloch, allow_hyphen_values = true)]
        e: [f64; 3],
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long = "f", value_parser = parse_bloch, allow_hyphen_values = true)]
        f: [f64; 3],
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long)]
        oracle: bool,
        /// Write the two effects to an effect file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Noisy mutually unbiased basis projections.
    Mub {
        #[arg(long)]
        dim: usize,
        #[arg(long, required_unless_present = "scan", conflicts_with = "scan")]
        lambda: Option<f64>,
        /// Number of evenly spaced λ values in [0, 1].
        #[arg(long)]
        scan: Option<usize>,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Jordan condition for several effects from a file.
    Multi {
        file: PathBuf,
        #[arg(required = true)]
        names: Vec<String>,
    },
    /// Condition coverage on random effect pairs, written as CSV.
    Survey {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// Run only the feasibility oracle on two effects from a file.
    Oracle {
        file: PathBuf,
        first: String,
        second: String,
        #[command(flatten)]
        params: OracleArgs,
    },
}

fn parse_bloch(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got \"{s}\""));
    }
    let mut v = [0.0f64; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| format!("\"{part}\" is not a number"))?;
        if !slot.is_finite() {
            return Err(format!("\"{part}\" is not finite"));
        }
    }
    Ok(v)
}

/// What a command printed and how the process should exit.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub exit: Exit,
}

fn pair_exit(report: &PairReport) -> Exit {
    if report.any_holds() {
        return Exit::Coexistent;
    }
    match report.oracle.as_ref().map(|o| o.kind) {
        Some(OracleKind::Feasible) => Exit::Coexistent,
        Some(OracleKind::LikelyInfeasible) => Exit::Incompatible,
        _ => Exit::Unresolved,
    }
}

fn oracle_exit(kind: OracleKind) -> Exit {
    match kind {
        OracleKind::Feasible => Exit::Coexistent,
        OracleKind::LikelyInfeasible => Exit::Incompatible,
        OracleKind::Undetermined => Exit::Unresolved,
    }
}

fn finish(json: bool, doc: Value, text: String, exit: Exit) -> Outcome {
    let output = if json {
        let mut doc = doc;
        doc["exit_code"] = json!(exit.code());
        serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
    } else {
        text
    };
    Outcome { output, exit }
}

/// Renders an error as the single document of a failed invocation.
pub fn render_error(err: &CliError, json: bool) -> String {
    if json {
        serde_json::to_string_pretty(&json!({"error": err.to_string(), "exit_code": Exit::Invalid.code()})).unwrap()
            + "\n"
    } else {
        format!("error: {err}\n")
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let params = OracleParams::default();
    match &cli.command {
        Command::Check {
            file,
            first,
            second,
            oracle,
        } => {
            let data = EffectFile::read(file)?;
            let (e, f) = (data.effect(first)?, data.effect(second)?);
            let report = full_report(&e, &f, cli.tol, oracle.then_some(&params))?;
            let exit = pair_exit(&report);
            let doc = json!({
                "command": "check",
                "effects": [first, second],
                "report": report::pair_json(&report, &params),
            });
            let text = format!("{first} vs {second} (dim {})\n{}", e.dim(), report::pair_text(&report));
            Ok(finish(cli.json, doc, text, exit))
        }
        Command::Qubit {
            e,
            alpha,
            f,
            beta,
            oracle,
            save,
        } => qubit(cli, (*e, *alpha), (*f, *beta), *oracle, save.as_ref()),
        Command::Mub {
            dim,
            lambda,
            scan,
            oracle,
            save,
        } => match (lambda, scan) {
            (Some(lambda), _) => mub_single(cli, *dim, *lambda, *oracle, save.as_ref()),
            (None, Some(steps)) => mub_scan(cli, *dim, *steps),
            (None, None) => Err(CliError::Usage("give --lambda or --scan".into())),
        },
        Command::Multi { file, names } => multi(cli, file, names),
        Command::Survey {
            dim,
            samples,
            seed,
            out,
            oracle,
        } => {
            let config = SurveyConfig {
                dim: *dim,
                pairs: *samples,
                seed: *seed,
                tol: cli.tol,
                oracle: oracle.then_some(params),
            };
            let (rows, stats) = run_survey(&config)?;
            emit_csv(&rows, &stats, &config, out)?;
            let counts: serde_json::Map<String, Value> = Condition::ALL
                .iter()
                .zip(stats.counts)
                .map(|(c, n)| (c.name().to_owned(), json!(n)))
                .collect();
            let doc = json!({
                "command": "survey",
                "out": out.display().to_string(),
                "dim": dim,
                "seed": seed,
                "pairs": stats.pairs,
                "counts": counts,
                "conjecture_violations": stats.conjecture_violations,
                "lattice_violations": stats.lattice_violations,
                "oracle_runs": stats.oracle_runs,
            });
            let text = format!("{}wrote {}\n", summary(&stats), out.display());
            Ok(finish(cli.json, doc, text, Exit::Coexistent))
        }
        Command::Oracle {
            file,
            first,
            second,
            params,
        } => {
            let params = params.params();
            let data = EffectFile::read(file)?;
            let (e, f) = (data.effect(first)?, data.effect(second)?);
            let outcome = decide_pair(&e, &f, &params)?;
            let exit = oracle_exit(outcome.kind);
            let doc = json!({
                "command": "oracle",
                "effects": [first, second],
                "oracle": report::oracle_json(&outcome, &params),
            });
            let mut text = String::new();
            report::oracle_text(&mut text, &outcome);
            Ok(finish(cli.json, doc, text, exit))
        }
    }
}

fn exact_json(name: &str, c: &ExactCriterion) -> Value {
    json!({"criterion": name, "coexistent": c.coexistent, "margin": c.margin})
}

fn qubit(
    cli: &Cli,
    (ev, alpha): ([f64; 3], f64),
    (fv, beta): ([f64; 3], f64),
    oracle: bool,
    save: Option<&PathBuf>,
) -> Result<Outcome, CliError> {
    let effect = |name: &str, alpha: f64, v: [f64; 3]| -> Result<Effect, CliError> {
        QubitEffect::new(alpha, v)
            .and_then(|q| q.to_effect())
            .map_err(|err| CliError::InvalidEffect {
                name: name.to_owned(),
                reason: err.to_string(),
            })
    };
    let (e, f) = (effect("E", alpha, ev)?, effect("F", beta, fv)?);
    if let Some(path) = save {
        EffectFile::new(&[("E", &e), ("F", &f)]).write(path)?;
    }
    let params = OracleParams::default();
    let report = full_report(&e, &f, cli.tol, oracle.then_some(&params))?;

    let orthogonal = (ev[0] * fv[0] + ev[1] * fv[1] + ev[2] * fv[2]).abs() <= 1e-12;
    let exact = if alpha == 1.0 && beta == 1.0 {
        Some(("unbiased", busch_criterion(ev, fv)?))
    } else if orthogonal && alpha == 1.0 {
        Some(("orthogonal_biased", liu_criterion(norm3(ev), norm3(fv), beta)?))
    } else if orthogonal && beta == 1.0 {
        Some(("orthogonal_biased", liu_criterion(norm3(fv), norm3(ev), alpha)?))
    } else {
        None
    };
    let exit = match &exact {
        Some((_, c)) if c.coexistent => Exit::Coexistent,
        Some(_) => Exit::Incompatible,
        None => pair_exit(&report),
    };
    let doc = json!({
        "command": "qubit",
        "e": ev, "alpha": alpha, "f": fv, "beta": beta,
        "exact": exact.as_ref().map(|(n, c)| exact_json(n, c)),
        "report": report::pair_json(&report, &params),
    });
    let mut text = report::pair_text(&report);
    if let Some((name, c)) = &exact {
        let _ = writeln!(text, "exact ({name}): coexistent = {}, margin {:.6e}", c.coexistent, c.margin);
    }
    Ok(finish(cli.json, doc, text, exit))
}

fn thresholds_json(dim: usize) -> Value {
    json!({
        "lambda_jor": lambda_jor(dim),
        "lambda_jor_exact": lambda_jor_exact(dim),
        "lambda_max": lambda_max(dim),
    })
}

fn thresholds_text(dim: usize) -> String {
    format!(
        "λ_JOR({dim}) = {:.9} (closed form), {:.9} (exact E∘F boundary); λ_MAX({dim}) = {:.9}\n",
        lambda_jor(dim),
        lambda_jor_exact(dim),
        lambda_max(dim)
    )
}

fn mub_single(cli: &Cli, dim: usize, lambda: f64, oracle: bool, save: Option<&PathBuf>) -> Result<Outcome, CliError> {
    let (e, f) = mub_pair(&MubParams::new(dim, lambda)?)?;
    if let Some(path) = save {
        EffectFile::new(&[("E", &e), ("F", &f)]).write(path)?;
    }
    let params = OracleParams::default();
    let report = full_report(&e, &f, cli.tol, oracle.then_some(&params))?;
    let exit = pair_exit(&report);
    let doc = json!({
        "command": "mub",
        "dim": dim,
        "lambda": lambda,
        "thresholds": thresholds_json(dim),
        "report": report::pair_json(&report, &params),
    });
    let text = format!("d = {dim}, λ = {lambda}\n{}{}", thresholds_text(dim), report::pair_text(&report));
    Ok(finish(cli.json, doc, text, exit))
}

fn mub_scan(cli: &Cli, dim: usize, steps: usize) -> Result<Outcome, CliError> {
    if steps < 2 {
        return Err(CliError::Usage("--scan needs at least 2 steps".into()));
    }
    let mut rows = Vec::with_capacity(steps);
    let mut table = String::from("lambda       COMMU COMP  INF   JOR   GINF\n");
    let mut flip: Option<(f64, f64)> = None;
    let mut previous: Option<(f64, bool)> = None;
    for k in 0..steps {
        let lambda = k as f64 / (steps - 1) as f64;
        let (e, f) = mub_pair(&MubParams::new(dim, lambda)?)?;
        let report = full_report(&e, &f, cli.tol, None)?;
        let holds: Vec<bool> = Condition::ALL.iter().map(|c| report.holds(*c)).collect();
        let jor = report.holds(Condition::Jor);
        if let Some((before, true)) = previous {
            if !jor && flip.is_none() {
                flip = Some((before, lambda));
            }
        }
        previous = Some((lambda, jor));
        let _ = write!(table, "{lambda:<12.6}");
        for h in &holds {
            let _ = write!(table, " {:<5}", if *h { "HOLDS" } else { "-" });
        }
        table.push('\n');
        rows.push(json!({"lambda": lambda, "holds": holds}));
    }
    let mut text = thresholds_text(dim);
    text.push_str(&table);
    match flip {
        Some((a, b)) => {
            let _ = writeln!(text, "JOR flips between λ = {a:.6} and λ = {b:.6}");
        }
        None => text.push_str("JOR does not flip on this grid\n"),
    }
    let doc = json!({
        "command": "mub",
        "dim": dim,
        "thresholds": thresholds_json(dim),
        "columns": Condition::ALL.iter().map(|c| c.name()).collect::<Vec<_>>(),
        "rows": rows,
        "jor_flip": flip.map(|(a, b)| [a, b]),
    });
    Ok(finish(cli.json, doc, text, Exit::Coexistent))
}

fn multi(cli: &Cli, file: &Path, names: &[String]) -> Result<Outcome, CliError> {
    let data = EffectFile::read(file)?;
    let effects = names.iter().map(|n| data.effect(n)).collect::<Result<Vec<_>, _>>()?;
    let verdict = check_jor_multi(&effects, cli.tol)?;
    let worst = verdict
        .witnesses
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("at least one pattern");
    let exit = if verdict.holds() { Exit::Coexistent } else { Exit::Unresolved };
    let doc = json!({
        "command": "multi",
        "effects": names,
        "status": verdict.status.to_string(),
        "worst_pattern": worst.label,
        "min_eigenvalue": worst.value,
        "patterns": verdict.witnesses.iter().map(|w| json!({"label": w.label, "value": w.value})).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "JOR for {} effects: {} (worst {} with min eigenvalue {:.6e})\n",
        names.len(),
        verdict.status,
        worst.label,
        worst.value
    );
    for w in &verdict.witnesses {
        let _ = writeln!(text, "      {:<10} {:.6e}", w.label, w.value);
    }
    Ok(finish(cli.json, doc, text, exit))
}
