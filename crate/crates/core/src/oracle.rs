//! Ground-truth pair coexistence by convex feasibility.
//!
//! Looks for `G` in the intersection of `{G ≥ 0}`, `{G ≤ E}`, `{G ≤ F}` and
//! `{G ≥ E + F − I}` with Dykstra's alternating projections. Alternating
//! projections cannot prove emptiness, so the verdict is ternary.

use crate::effects::Effect;
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleParams {
    /// Dykstra cycles (one cycle projects onto all four sets).
    pub max_iters: usize,
    pub feas_tol: f64,
    pub infeas_tol: f64,
    /// Number of starting points tried, at most three.
    pub restarts: usize,
}

impl Default for OracleParams {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            feas_tol: 1e-7,
            infeas_tol: 1e-4,
            restarts: 3,
        }
    }
}

impl OracleParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.feas_tol > 0.0 && self.feas_tol < self.infeas_tol) {
            return Err(Error::ParameterRange(format!(
                "need 0 < feas_tol < infeas_tol, got {} and {}",
                self.feas_tol, self.infeas_tol
            )));
        }
        if self.max_iters == 0 || !(1..=3).contains(&self.restarts) {
            return Err(Error::ParameterRange(
                "max_iters must be positive and restarts in 1..=3".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Feasible,
    LikelyInfeasible,
    Undetermined,
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Feasible => "FEASIBLE",
            OracleKind::LikelyInfeasible => "LIKELY_INFEASIBLE",
            OracleKind::Undetermined => "UNDETERMINED",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub kind: OracleKind,
    /// The feasible point, present only for [`OracleKind::Feasible`].
    pub witness: Option<HermitianMatrix>,
    /// Best final constraint violation across restarts.
    pub residual: f64,
    /// Cycles used by the reported restart.
    pub iterations: usize,
    /// Index of the reported restart.
    pub restart: usize,
    /// Cycles (after the first) where the violation rose, in the reported restart.
    pub residual_increases: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeSide {
    /// `Y ≥ bound`
    Lower,
    /// `Y ≤ bound`
    Upper,
}

fn psd_part(x: &HermitianMatrix) -> HermitianMatrix {
    x.apply_spectral(|v| v.max(0.0))
}

/// Frobenius-nearest `Y` with `Y ≥ bound` (`Lower`) or `Y ≤ bound` (`Upper`).
pub fn project_shifted_cone(x: &HermitianMatrix, bound: &HermitianMatrix, side: ConeSide) -> Result<HermitianMatrix> {
    match side {
        ConeSide::Lower => Ok(bound + &psd_part(&x.try_sub(bound)?)),
        ConeSide::Upper => Ok(bound - &psd_part(&bound.try_sub(x)?)),
    }
}

/// Largest violation among the four coexistence constraints, floored at zero.
pub fn violation(e: &Effect, f: &Effect, g: &HermitianMatrix) -> Result<f64> {
    let sets = ConstraintSets::new(e, f)?;
    if g.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            left: e.dim(),
            right: g.dim(),
        });
    }
    Ok(sets.violation(g))
}

struct ConstraintSets {
    bounds: [(HermitianMatrix, ConeSide); 4],
}

impl ConstraintSets {
    fn new(e: &Effect, f: &Effect) -> Result<Self> {
        if e.dim() != f.dim() {
            return Err(Error::DimensionMismatch {
                left: e.dim(),
                right: f.dim(),
            });
        }
        let dim = e.dim();
        let lower = &(e.matrix() + f.matrix()) - &HermitianMatrix::identity(dim);
        Ok(Self {
            bounds: [
                (HermitianMatrix::zeros(dim), ConeSide::Lower),
                (e.matrix().clone(), ConeSide::Upper),
                (f.matrix().clone(), ConeSide::Upper),
                (lower, ConeSide::Lower),
            ],
        })
    }

    fn violation(&self, g: &HermitianMatrix) -> f64 {
        self.bounds
            .iter()
            .map(|(bound, side)| {
                let slack = match side {
                    ConeSide::Lower => g - bound,
                    ConeSide::Upper => bound - g,
                };
                (-slack.min_eigenvalue()).max(0.0)
            })
            .fold(0.0, f64::max)
    }

    fn project(&self, k: usize, x: &HermitianMatrix) -> HermitianMatrix {
        let (bound, side) = &self.bounds[k];
        project_shifted_cone(x, bound, *side).expect("dimensions checked on construction")
    }
}

struct Run {
    point: HermitianMatrix,
    residual: f64,
    iterations: usize,
    increases: usize,
}

fn dykstra(sets: &ConstraintSets, start: HermitianMatrix, params: &OracleParams) -> Run {
    let dim = start.dim();
    let mut x = start;
    let mut increments: Vec<HermitianMatrix> = (0..4).map(|_| HermitianMatrix::zeros(dim)).collect();
    let mut residual = sets.violation(&x);
    let mut increases = 0;
    let mut iterations = 0;
    if residual <= params.feas_tol {
        return Run {
            point: x,
            residual,
            iterations,
            increases,
        };
    }
    for cycle in 1..=params.max_iters {
        for (k, p) in increments.iter_mut().enumerate() {
            let shifted = &x + p;
            let y = sets.project(k, &shifted);
            *p = &shifted - &y;
            x = y;
        }
        iterations = cycle;
        let next = sets.violation(&x);
        if cycle > 1 && next > residual * (1.0 + 1e-9) + 1e-15 {
            increases += 1;
        }
        residual = next;
        if residual <= params.feas_tol {
            break;
        }
    }
    Run {
        point: x,
        residual,
        iterations,
        increases,
    }
}

/// Candidate starting points: `0`, the PSD part of `E ⊓ F`, and the PSD
/// part of `(E + F − I)/2`.
fn starting_points(e: &Effect, f: &Effect) -> Result<Vec<HermitianMatrix>> {
    let dim = e.dim();
    let meet = e.generalized_infimum(f)?;
    let mid = (&(e.matrix() + f.matrix()) - &HermitianMatrix::identity(dim)).scale(0.5);
    Ok(vec![HermitianMatrix::zeros(dim), psd_part(&meet), psd_part(&mid)])
}

/// Decides whether `E` and `F` are coexistent by searching for `G`.
///
/// The reported run is the restart with the smallest final violation, ties
/// going to the lower restart index.
pub fn decide_pair(e: &Effect, f: &Effect, params: &OracleParams) -> Result<OracleOutcome> {
    params.validate()?;
    let sets = ConstraintSets::new(e, f)?;
    let starts = starting_points(e, f)?;
    let mut best: Option<(usize, Run)> = None;
    for (index, start) in starts.into_iter().take(params.restarts).enumerate() {
        let run = dykstra(&sets, start, params);
        let better = match &best {
            None => true,
            Some((_, b)) => run.residual < b.residual,
        };
        if better {
            best = Some((index, run));
        }
    }
    let (restart, run) = best.expect("at least one restart");
    let kind = if run.residual <= params.feas_tol {
        OracleKind::Feasible
    } else if run.residual >= params.infeas_tol {
        OracleKind::LikelyInfeasible
    } else {
        OracleKind::Undetermined
    };
    Ok(OracleOutcome {
        kind,
        witness: (kind == OracleKind::Feasible).then_some(run.point),
        residual: run.residual,
        iterations: run.iterations,
        restart,
        residual_increases: run.increases,
    })
}
