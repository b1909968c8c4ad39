//! Random-effect surveys: how often each sufficient condition certifies
//! coexistence, with the oracle as reference.
//!
//! Effects are drawn as `E = u·H/λ_max(H)` with `H = BB*`, `B` a complex
//! Ginibre matrix and `u` uniform on `(0, 1]`. Pair `i` draws from its own
//! ChaCha stream `(seed, i)`, so results do not depend on scheduling.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::conditions::{full_report, Condition, DEFAULT_TOL};
use crate::effects::Effect;
use crate::error::Result;
use crate::hermitian::{Complex64, GeneralMatrix};
use crate::oracle::{OracleKind, OracleParams};

/// Draws a random effect whose largest eigenvalue is uniform on `(0, 1]`.
pub fn sample_effect<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Effect {
    assert!(dim >= 2, "survey dimension must be at least 2");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let entries: Vec<Complex64> = (0..dim * dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        })
        .collect();
    let u = 1.0 - rng.random::<f64>();
    let b = GeneralMatrix::new(dim, entries).expect("finite gaussian draws");
    let h = (&b * &b.adjoint()).hermitian_part();
    let top = h.max_eigenvalue();
    Effect::new(h.scale(u / top)).expect("rescaled Gram matrix is an effect")
}

/// The RNG stream for pair `index` of a survey seeded with `seed`.
pub fn pair_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws pair `index` of the survey `(dim, seed)`.
pub fn sample_pair(dim: usize, seed: u64, index: u64) -> (Effect, Effect) {
    let mut rng = pair_rng(seed, index);
    let e = sample_effect(dim, &mut rng);
    let f = sample_effect(dim, &mut rng);
    (e, f)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurveyRow {
    pub pair_id: usize,
    pub dim: usize,
    /// In the order of [`Condition::ALL`].
    pub holds: [bool; 5],
    pub oracle: Option<OracleKind>,
    /// Each verdict's margin, in the order of [`Condition::ALL`].
    pub margins: [f64; 5],
}

impl SurveyRow {
    pub fn holds(&self, condition: Condition) -> bool {
        self.holds[condition_index(condition)]
    }
}

fn condition_index(condition: Condition) -> usize {
    Condition::ALL.iter().position(|c| *c == condition).expect("known condition")
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SurveyStats {
    pub pairs: usize,
    /// Pairs on which each condition holds, in the order of [`Condition::ALL`].
    pub counts: [usize; 5],
    /// Pairs with INF holding but GINF failing.
    pub conjecture_violations: Vec<usize>,
    /// Rows violating an implication between conditions.
    pub lattice_violations: Vec<usize>,
    /// `confusion[c][h][k]`: condition `c` holds (`h = 1`) or fails (`h = 0`)
    /// while the oracle returned kind `k` (feasible, likely infeasible, undetermined).
    pub confusion: [[[usize; 3]; 2]; 5],
    pub oracle_runs: usize,
}

impl SurveyStats {
    pub fn fraction(&self, condition: Condition) -> f64 {
        if self.pairs == 0 {
            0.0
        } else {
            self.counts[condition_index(condition)] as f64 / self.pairs as f64
        }
    }

    fn from_rows(rows: &[SurveyRow]) -> Self {
        let mut stats = SurveyStats {
            pairs: rows.len(),
            ..Default::default()
        };
        for row in rows {
            for (k, &h) in row.holds.iter().enumerate() {
                stats.counts[k] += usize::from(h);
            }
            if row.holds(Condition::Inf) && !row.holds(Condition::Ginf) {
                stats.conjecture_violations.push(row.pair_id);
            }
            let lattice_ok = crate::conditions::IMPLICATIONS
                .iter()
                .all(|&(p, c)| !row.holds(p) || row.holds(c));
            if !lattice_ok {
                stats.lattice_violations.push(row.pair_id);
            }
            if let Some(kind) = row.oracle {
                stats.oracle_runs += 1;
                let k = oracle_index(kind);
                for (c, &h) in row.holds.iter().enumerate() {
                    stats.confusion[c][usize::from(h)][k] += 1;
                }
            }
        }
        stats
    }
}

fn oracle_index(kind: OracleKind) -> usize {
    match kind {
        OracleKind::Feasible => 0,
        OracleKind::LikelyInfeasible => 1,
        OracleKind::Undetermined => 2,
    }
}

fn oracle_label(kind: Option<OracleKind>) -> &'static str {
    match kind {
        None => "none",
        Some(OracleKind::Feasible) => "feasible",
        Some(OracleKind::LikelyInfeasible) => "likely_infeasible",
        Some(OracleKind::Undetermined) => "undetermined",
    }
}

/// Settings shared by every pair in a survey.
#[derive(Clone, Debug, PartialEq)]
pub struct SurveyConfig {
    pub dim: usize,
    pub pairs: usize,
    pub seed: u64,
    pub tol: f64,
    pub oracle: Option<OracleParams>,
}

impl SurveyConfig {
    pub fn new(dim: usize, pairs: usize, seed: u64, run_oracle: bool) -> Self {
        Self {
            dim,
            pairs,
            seed,
            tol: DEFAULT_TOL,
            oracle: run_oracle.then(OracleParams::default),
        }
    }
}

fn survey_row(config: &SurveyConfig, index: usize) -> Result<SurveyRow> {
    let (e, f) = sample_pair(config.dim, config.seed, index as u64);
    let report = full_report(&e, &f, config.tol, config.oracle.as_ref())?;
    let mut holds = [false; 5];
    let mut margins = [0.0; 5];
    for (k, c) in Condition::ALL.iter().enumerate() {
        holds[k] = report.holds(*c);
        margins[k] = report.verdict(*c).margin;
    }
    Ok(SurveyRow {
        pair_id: index,
        dim: config.dim,
        holds,
        oracle: report.oracle.map(|o| o.kind),
        margins,
    })
}

/// Runs the survey, processing pairs in parallel. Rows are ordered by pair id.
pub fn run_survey(config: &SurveyConfig) -> Result<(Vec<SurveyRow>, SurveyStats)> {
    if config.dim < 2 || config.pairs == 0 {
        return Err(crate::error::Error::ParameterRange(
            "survey needs dim ≥ 2 and at least one pair".into(),
        ));
    }
    if let Some(params) = &config.oracle {
        params.validate()?;
    }
    let rows = (0..config.pairs)
        .into_par_iter()
        .map(|i| survey_row(config, i))
        .collect::<Result<Vec<_>>>()?;
    let stats = SurveyStats::from_rows(&rows);
    Ok((rows, stats))
}

pub const CSV_HEADER: &str =
    "pair_id,dim,commu,comp,inf,jor,ginf,oracle,commu_norm,comp_margin,inf_margin,jor_margin,ginf_margin";

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders rows, then `#`-prefixed metadata and statistics.
pub fn render_csv(rows: &[SurveyRow], stats: &SurveyStats, config: &SurveyConfig) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let _ = write!(out, "{},{}", row.pair_id, row.dim);
        for h in row.holds {
            let _ = write!(out, ",{h}");
        }
        let _ = write!(out, ",{}", oracle_label(row.oracle));
        for m in row.margins {
            let _ = write!(out, ",{}", num(m));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "# version {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# seed {}", config.seed);
    let _ = writeln!(out, "# dim {}", config.dim);
    let _ = writeln!(out, "# pairs {}", stats.pairs);
    let _ = writeln!(out, "# tol {}", num(config.tol));
    match &config.oracle {
        Some(p) => {
            let _ = writeln!(
                out,
                "# oracle max_iters={} feas_tol={} infeas_tol={} restarts={}",
                p.max_iters,
                num(p.feas_tol),
                num(p.infeas_tol),
                p.restarts
            );
        }
        None => out.push_str("# oracle off\n"),
    }
    for (k, c) in Condition::ALL.iter().enumerate() {
        let _ = writeln!(
            out,
            "# count {} {} fraction {}",
            c.name(),
            stats.counts[k],
            num(stats.fraction(*c))
        );
    }
    let _ = writeln!(
        out,
        "# conjecture_violations {}{}",
        stats.conjecture_violations.len(),
        id_list(&stats.conjecture_violations)
    );
    let _ = writeln!(
        out,
        "# lattice_violations {}{}",
        stats.lattice_violations.len(),
        id_list(&stats.lattice_violations)
    );
    if stats.oracle_runs > 0 {
        for (k, c) in Condition::ALL.iter().enumerate() {
            for (h, label) in [(1, "holds"), (0, "fails")] {
                let [feasible, infeasible, undetermined] = stats.confusion[k][h];
                let _ = writeln!(
                    out,
                    "# confusion {} {label} feasible={feasible} likely_infeasible={infeasible} undetermined={undetermined}",
                    c.name()
                );
            }
        }
    }
    out
}

fn id_list(ids: &[usize]) -> String {
    if ids.is_empty() {
        String::new()
    } else {
        let list: Vec<String> = ids.iter().map(usize::to_string).collect();
        format!(" ids={}", list.join(";"))
    }
}

/// I/O failure while writing a survey, carrying the path.
#[derive(Debug, thiserror::Error)]
#[error("cannot write {path}: {source}")]
pub struct CsvError {
    pub path: PathBuf,
    #[source]
    pub source: io::Error,
}

pub fn emit_csv(
    rows: &[SurveyRow],
    stats: &SurveyStats,
    config: &SurveyConfig,
    path: &Path,
) -> std::result::Result<(), CsvError> {
    fs::write(path, render_csv(rows, stats, config)).map_err(|source| CsvError {
        path: path.to_path_buf(),
        source,
    })
}

/// Human-readable summary of the statistics.
pub fn summary(stats: &SurveyStats) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pairs: {}", stats.pairs);
    for (k, c) in Condition::ALL.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:<5} holds on {:>6} pairs ({:.4})",
            c.name(),
            stats.counts[k],
            stats.fraction(*c)
        );
    }
    let _ = writeln!(out, "INF without GINF: {}", stats.conjecture_violations.len());
    let _ = writeln!(out, "implication violations: {}", stats.lattice_violations.len());
    if stats.oracle_runs > 0 {
        let [feasible, infeasible, undetermined] = (0..2).fold([0; 3], |mut acc, h| {
            for (slot, n) in acc.iter_mut().zip(stats.confusion[0][h]) {
                *slot += n;
            }
            acc
        });
        let _ = writeln!(
            out,
            "oracle: {feasible} feasible, {infeasible} likely infeasible, {undetermined} undetermined"
        );
    }
    out
}
