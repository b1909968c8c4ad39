//! Sufficient conditions for the coexistence of two (or more) effects,
//! together with the witnesses that certify them.
//!
//! Each checker returns a [`ConditionVerdict`]. When the condition holds the
//! verdict carries a [`CoexWitness`]: either four effects `G11 + G12 = E`,
//! `G11 + G21 = F`, `ΣG = I`, or a single effect `G` with `G ≤ E`, `G ≤ F`,
//! `G + I ≥ E + F`.

use std::fmt;

use crate::effects::{infimum, Effect};
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::oracle::{decide_pair, OracleOutcome, OracleParams};

/// Default relative PSD slack shared by every condition in a report.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Largest family accepted by [`jordan_general`]; `8! = 40320` orderings.
pub const MAX_JORDAN_EFFECTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Commu,
    Comp,
    Inf,
    Jor,
    Ginf,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::Commu,
        Condition::Comp,
        Condition::Inf,
        Condition::Jor,
        Condition::Ginf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Commu => "COMMU",
            Condition::Comp => "COMP",
            Condition::Inf => "INF",
            Condition::Jor => "JOR",
            Condition::Ginf => "GINF",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
        })
    }
}

/// Which complemented pair a disjunct was evaluated on.
///
/// Coexistence of `(E, F)` is equivalent to coexistence of each of these
/// pairs; [`Branch::lift`] transports a single-`G` witness back to `(E, F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `(E, F)`
    Direct,
    /// `(E, F^⊥)`
    ComplementSecond,
    /// `(E^⊥, F)`
    ComplementFirst,
    /// `(E^⊥, F^⊥)`
    ComplementBoth,
}

impl Branch {
    pub const ALL: [Branch; 4] = [
        Branch::Direct,
        Branch::ComplementSecond,
        Branch::ComplementFirst,
        Branch::ComplementBoth,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Branch::Direct => "(E, F)",
            Branch::ComplementSecond => "(E, F⊥)",
            Branch::ComplementFirst => "(E⊥, F)",
            Branch::ComplementBoth => "(E⊥, F⊥)",
        }
    }

    pub fn pair(self, e: &Effect, f: &Effect) -> (Effect, Effect) {
        match self {
            Branch::Direct => (e.clone(), f.clone()),
            Branch::ComplementSecond => (e.clone(), f.complement()),
            Branch::ComplementFirst => (e.complement(), f.clone()),
            Branch::ComplementBoth => (e.complement(), f.complement()),
        }
    }

    /// Maps a witness `G'` for the branch pair to a witness `G` for `(E, F)`.
    pub fn lift(self, e: &Effect, f: &Effect, g: &HermitianMatrix) -> HermitianMatrix {
        match self {
            Branch::Direct => g.clone(),
            Branch::ComplementSecond => e.matrix() - g,
            Branch::ComplementFirst => f.matrix() - g,
            Branch::ComplementBoth => {
                let id = HermitianMatrix::identity(e.dim());
                &(&(e.matrix() + f.matrix()) - &id) + g
            }
        }
    }
}

/// Certificate of coexistence for a pair.
#[derive(Clone, Debug, PartialEq)]
pub enum CoexWitness {
    FourTerm {
        g11: HermitianMatrix,
        g12: HermitianMatrix,
        g21: HermitianMatrix,
        g22: HermitianMatrix,
    },
    SingleG {
        g: HermitianMatrix,
    },
}

/// One inequality or norm that a checker evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub label: String,
    pub value: f64,
}

impl Witness {
    fn new(label: impl Into<String>, value: f64) -> Self {
        Self {
            label: label.into(),
            value,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConditionVerdict {
    pub condition: Condition,
    pub status: Status,
    /// Minimum eigenvalues (or norms, for COMMU) of every tested inequality.
    pub witnesses: Vec<Witness>,
    /// The disjunct that succeeded, for COMP, INF and GINF.
    pub branch: Option<Branch>,
    /// Signed summary: best achieved minimum eigenvalue, or the commutator
    /// norm for COMMU. `-inf` when no branch could be evaluated.
    pub margin: f64,
    pub certificate: Option<CoexWitness>,
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

fn status(holds: bool) -> Status {
    if holds {
        Status::Holds
    } else {
        Status::Fails
    }
}

fn ensure_pair(e: &Effect, f: &Effect) -> Result<()> {
    if e.dim() == f.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: e.dim(),
            right: f.dim(),
        })
    }
}

fn four_term_from(e: &Effect, f: &Effect, term: impl Fn(&Effect, &Effect) -> HermitianMatrix) -> CoexWitness {
    let (ec, fc) = (e.complement(), f.complement());
    CoexWitness::FourTerm {
        g11: term(e, f),
        g12: term(e, &fc),
        g21: term(&ec, f),
        g22: term(&ec, &fc),
    }
}

fn product_term(a: &Effect, b: &Effect) -> HermitianMatrix {
    (a.matrix() * b.matrix()).hermitian_part()
}

/// Commutativity: `‖EF − FE‖_F ≤ tol`.
pub fn check_commu(e: &Effect, f: &Effect, tol: f64) -> Result<ConditionVerdict> {
    ensure_pair(e, f)?;
    let norm = e.matrix().commutator_norm(f.matrix())?;
    let holds = norm <= tol;
    Ok(ConditionVerdict {
        condition: Condition::Commu,
        status: status(holds),
        witnesses: vec![Witness::new("‖EF−FE‖", norm)],
        branch: None,
        margin: norm,
        certificate: holds.then(|| four_term_from(e, f, product_term)),
    })
}

/// Comparability: `E ≤ F`, `F ≤ E`, `E ≤ F^⊥` or `F^⊥ ≤ E`.
pub fn check_comp(e: &Effect, f: &Effect, tol: f64) -> Result<ConditionVerdict> {
    ensure_pair(e, f)?;
    let fc = f.complement();
    // (label, smaller, larger, branch, G' on the branch pair)
    let candidates = [
        ("E ≤ F", e, f, Branch::Direct),
        ("F ≤ E", f, e, Branch::Direct),
        ("E ≤ F⊥", e, &fc, Branch::ComplementSecond),
        ("F⊥ ≤ E", &fc, e, Branch::ComplementSecond),
    ];
    let mut witnesses = Vec::with_capacity(4);
    let mut found = None;
    let mut margin = f64::NEG_INFINITY;
    for (label, small, large, branch) in candidates {
        let check = (large.matrix() - small.matrix()).is_psd(tol);
        witnesses.push(Witness::new(label, check.min_eigenvalue));
        margin = margin.max(check.min_eigenvalue);
        if check.holds && found.is_none() {
            found = Some((branch, small.matrix().clone()));
        }
    }
    Ok(ConditionVerdict {
        condition: Condition::Comp,
        status: status(found.is_some()),
        witnesses,
        branch: found.as_ref().map(|(b, _)| *b),
        margin,
        certificate: found.map(|(branch, g)| CoexWitness::SingleG {
            g: branch.lift(e, f, &g),
        }),
    })
}

/// Jordan positivity: all four of `E∘F`, `E^⊥∘F`, `E∘F^⊥`, `E^⊥∘F^⊥` are PSD.
pub fn check_jor(e: &Effect, f: &Effect, tol: f64) -> Result<ConditionVerdict> {
    ensure_pair(e, f)?;
    let (ec, fc) = (e.complement(), f.complement());
    let terms = [
        ("E∘F", e, f),
        ("E⊥∘F", &ec, f),
        ("E∘F⊥", e, &fc),
        ("E⊥∘F⊥", &ec, &fc),
    ];
    let mut witnesses = Vec::with_capacity(4);
    let mut holds = true;
    let mut margin = f64::INFINITY;
    for (label, a, b) in terms {
        let check = a.jordan_product(b)?.is_psd(tol);
        holds &= check.holds;
        margin = margin.min(check.min_eigenvalue);
        witnesses.push(Witness::new(label, check.min_eigenvalue));
    }
    Ok(ConditionVerdict {
        condition: Condition::Jor,
        status: status(holds),
        witnesses,
        branch: None,
        margin,
        certificate: holds.then(|| four_term_from(e, f, product_term)),
    })
}

/// Generalized infimum:
/// `(E⊓F ≥ 0 and E^⊥⊓F^⊥ ≥ 0)` or `(E^⊥⊓F ≥ 0 and E⊓F^⊥ ≥ 0)`.
pub fn check_ginf(e: &Effect, f: &Effect, tol: f64) -> Result<ConditionVerdict> {
    ensure_pair(e, f)?;
    let (ec, fc) = (e.complement(), f.complement());
    let meet = e.generalized_infimum(f)?;
    let meet_cc = ec.generalized_infimum(&fc)?;
    let meet_cf = ec.generalized_infimum(f)?;
    let meet_fc = e.generalized_infimum(&fc)?;

    let checks = [
        ("E⊓F", meet.is_psd(tol)),
        ("E⊥⊓F⊥", meet_cc.is_psd(tol)),
        ("E⊥⊓F", meet_cf.is_psd(tol)),
        ("E⊓F⊥", meet_fc.is_psd(tol)),
    ];
    let first = checks[0].1.holds && checks[1].1.holds;
    let second = checks[2].1.holds && checks[3].1.holds;
    let margin = f64::max(
        checks[0].1.min_eigenvalue.min(checks[1].1.min_eigenvalue),
        checks[2].1.min_eigenvalue.min(checks[3].1.min_eigenvalue),
    );
    let (branch, certificate) = if first {
        (Some(Branch::Direct), Some(CoexWitness::SingleG { g: meet }))
    } else if second {
        let g = Branch::ComplementFirst.lift(e, f, &meet_cf);
        (Some(Branch::ComplementFirst), Some(CoexWitness::SingleG { g }))
    } else {
        (None, None)
    };
    Ok(ConditionVerdict {
        condition: Condition::Ginf,
        status: status(first || second),
        witnesses: checks
            .iter()
            .map(|(label, c)| Witness::new(*label, c.min_eigenvalue))
            .collect(),
        branch,
        margin,
        certificate,
    })
}

/// Per-branch diagnostics of the infimum condition.
#[derive(Clone, Debug)]
pub struct InfBranchReport {
    pub branch: Branch,
    pub infimum_exists: bool,
    /// Minimum eigenvalue of `A ∧ B − (A + B − I)`; `None` when the infimum is absent.
    pub inequality_min: Option<f64>,
}

/// Infimum condition: on some complemented pair `(A, B)` the infimum
/// exists and `A ∧ B ≥ A + B − I`.
pub fn check_inf(e: &Effect, f: &Effect, tol: f64) -> Result<ConditionVerdict> {
    Ok(check_inf_detailed(e, f, tol)?.0)
}

/// [`check_inf`] plus the per-branch reasons.
pub fn check_inf_detailed(
    e: &Effect,
    f: &Effect,
    tol: f64,
) -> Result<(ConditionVerdict, Vec<InfBranchReport>)> {
    ensure_pair(e, f)?;
    let id = HermitianMatrix::identity(e.dim());
    let mut reports = Vec::with_capacity(4);
    let mut witnesses = Vec::new();
    let mut found: Option<(Branch, HermitianMatrix)> = None;
    let mut margin = f64::NEG_INFINITY;
    for branch in Branch::ALL {
        let (a, b) = branch.pair(e, f);
        let inf = infimum(&a, &b, tol)?;
        let mut inequality_min = None;
        if let Some(value) = &inf.value {
            let lower = &(a.matrix() + b.matrix()) - &id;
            let check = (value.matrix() - &lower).is_psd(tol);
            inequality_min = Some(check.min_eigenvalue);
            margin = margin.max(check.min_eigenvalue);
            witnesses.push(Witness::new(
                format!("{} ∧ ≥ sum − I", branch.label()),
                check.min_eigenvalue,
            ));
            if check.holds && found.is_none() {
                found = Some((branch, value.matrix().clone()));
            }
        } else {
            witnesses.push(Witness::new(format!("{} ∧ absent", branch.label()), f64::NAN));
        }
        reports.push(InfBranchReport {
            branch,
            infimum_exists: inf.exists(),
            inequality_min,
        });
    }
    let verdict = ConditionVerdict {
        condition: Condition::Inf,
        status: status(found.is_some()),
        witnesses,
        branch: found.as_ref().map(|(b, _)| *b),
        margin,
        certificate: found.map(|(branch, g)| CoexWitness::SingleG {
            g: branch.lift(e, f, &g),
        }),
    };
    Ok((verdict, reports))
}

fn ensure_family(effects: &[Effect]) -> Result<usize> {
    let n = effects.len();
    if n == 0 {
        return Err(Error::ParameterRange("at least one effect is required".into()));
    }
    if n > MAX_JORDAN_EFFECTS {
        return Err(Error::CombinatorialLimit {
            count: n,
            limit: MAX_JORDAN_EFFECTS,
        });
    }
    let dim = effects[0].dim();
    for e in effects {
        if e.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: e.dim(),
            });
        }
    }
    Ok(n)
}

/// `G_{i1…in} = (1/n!) Σ_σ Π_k E_{σ(k)}^{(i_σ(k))}` with `E^{(1)} = E`,
/// `E^{(2)} = E^⊥`. `pattern` holds values in `{1, 2}`.
pub fn jordan_general(effects: &[Effect], pattern: &[u8]) -> Result<HermitianMatrix> {
    let n = ensure_family(effects)?;
    if pattern.len() != n || pattern.iter().any(|&i| i != 1 && i != 2) {
        return Err(Error::ParameterRange(format!(
            "pattern must hold {n} entries from {{1, 2}}"
        )));
    }
    let factors: Vec<HermitianMatrix> = effects
        .iter()
        .zip(pattern)
        .map(|(e, &i)| {
            if i == 1 {
                e.matrix().clone()
            } else {
                e.complement().matrix().clone()
            }
        })
        .collect();
    Ok(symmetrized_product(&factors))
}

/// Average of the products over all `n!` orderings, built depth-first so
/// each prefix product is shared by the orderings that extend it.
fn symmetrized_product(factors: &[HermitianMatrix]) -> HermitianMatrix {
    let n = factors.len();
    let dim = factors[0].dim();
    let factors: Vec<_> = factors.iter().map(HermitianMatrix::to_general).collect();
    let mut total = vec![crate::hermitian::Complex64::new(0.0, 0.0); dim * dim];
    let mut used = vec![false; n];

    fn walk(
        prefix: &crate::hermitian::GeneralMatrix,
        depth: usize,
        factors: &[crate::hermitian::GeneralMatrix],
        used: &mut [bool],
        total: &mut [crate::hermitian::Complex64],
    ) {
        if depth == factors.len() {
            for (t, x) in total.iter_mut().zip(prefix.entries()) {
                *t += x;
            }
            return;
        }
        for k in 0..factors.len() {
            if used[k] {
                continue;
            }
            used[k] = true;
            let next = prefix * &factors[k];
            walk(&next, depth + 1, factors, used, total);
            used[k] = false;
        }
    }

    let identity = crate::hermitian::GeneralMatrix::identity(dim);
    walk(&identity, 0, &factors, &mut used, &mut total);
    let count: f64 = (1..=n).map(|k| k as f64).product();
    let sum = crate::hermitian::GeneralMatrix::new(dim, total).expect("finite products");
    sum.hermitian_part().scale(1.0 / count)
}

/// All `2^n` index patterns in lexicographic order, `(1,…,1)` first.
pub fn patterns(n: usize) -> Vec<Vec<u8>> {
    (0..1usize << n)
        .map(|bits| (0..n).map(|k| if bits >> (n - 1 - k) & 1 == 0 { 1 } else { 2 }).collect())
        .collect()
}

pub fn pattern_label(pattern: &[u8]) -> String {
    let digits: String = pattern.iter().map(|d| char::from(b'0' + d)).collect();
    format!("G_{digits}")
}

/// Jordan condition for `n` effects: every `G_{i1…in}` is PSD.
/// Witnesses list each pattern's minimum eigenvalue; `margin` is the worst.
pub fn check_jor_multi(effects: &[Effect], tol: f64) -> Result<ConditionVerdict> {
    let n = ensure_family(effects)?;
    let mut witnesses = Vec::with_capacity(1 << n);
    let mut holds = true;
    let mut margin = f64::INFINITY;
    for pattern in patterns(n) {
        let check = jordan_general(effects, &pattern)?.is_psd(tol);
        holds &= check.holds;
        margin = margin.min(check.min_eigenvalue);
        witnesses.push(Witness::new(pattern_label(&pattern), check.min_eigenvalue));
    }
    Ok(ConditionVerdict {
        condition: Condition::Jor,
        status: status(holds),
        witnesses,
        branch: None,
        margin,
        certificate: None,
    })
}

/// Outcome of [`verify_witness`]; empty `violations` means valid.
#[derive(Clone, Debug, Default)]
pub struct WitnessCheck {
    pub violations: Vec<Witness>,
}

impl WitnessCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-checks a coexistence certificate against `E` and `F`.
pub fn verify_witness(e: &Effect, f: &Effect, witness: &CoexWitness, tol: f64) -> WitnessCheck {
    let mut check = WitnessCheck::default();
    if e.dim() != f.dim() {
        check.violations.push(Witness::new("dimension mismatch", f64::NAN));
        return check;
    }
    let dim = e.dim();
    let id = HermitianMatrix::identity(dim);
    let mut psd = |label: &str, m: &HermitianMatrix| {
        if m.dim() != dim {
            check.violations.push(Witness::new(format!("{label}: dimension"), f64::NAN));
            return;
        }
        let c = m.is_psd(tol);
        if !c.holds {
            check.violations.push(Witness::new(label, c.min_eigenvalue));
        }
    };
    match witness {
        CoexWitness::SingleG { g } => {
            psd("G ≥ 0", g);
            if g.dim() == dim {
                psd("G ≤ E", &(e.matrix() - g));
                psd("G ≤ F", &(f.matrix() - g));
                psd("G + I ≥ E + F", &(&(g + &id) - &(e.matrix() + f.matrix())));
            }
        }
        CoexWitness::FourTerm { g11, g12, g21, g22 } => {
            psd("G11 ≥ 0", g11);
            psd("G12 ≥ 0", g12);
            psd("G21 ≥ 0", g21);
            psd("G22 ≥ 0", g22);
            if [g11, g12, g21, g22].iter().all(|g| g.dim() == dim) {
                let sums = [
                    ("G11 + G12 = E", g11 + g12, e.matrix().clone()),
                    ("G11 + G21 = F", g11 + g21, f.matrix().clone()),
                    ("ΣG = I", &(g11 + g12) + &(g21 + g22), id.clone()),
                ];
                for (label, lhs, rhs) in sums {
                    let residual = (&lhs - &rhs).frobenius_norm();
                    if residual > tol * rhs.tolerance_scale() {
                        check.violations.push(Witness::new(label, residual));
                    }
                }
            }
        }
    }
    check
}

/// An implication between conditions and whether it held for a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Implication {
    pub premise: Condition,
    pub conclusion: Condition,
    pub consistent: bool,
}

/// The implications every pair must satisfy.
pub const IMPLICATIONS: [(Condition, Condition); 4] = [
    (Condition::Commu, Condition::Jor),
    (Condition::Jor, Condition::Ginf),
    (Condition::Comp, Condition::Ginf),
    (Condition::Comp, Condition::Inf),
];

#[derive(Clone, Debug)]
pub struct PairReport {
    /// Indexed in the order of [`Condition::ALL`].
    pub verdicts: Vec<ConditionVerdict>,
    pub inf_branches: Vec<InfBranchReport>,
    pub implications: Vec<Implication>,
    pub oracle: Option<OracleOutcome>,
    pub tol: f64,
}

impl PairReport {
    pub fn verdict(&self, condition: Condition) -> &ConditionVerdict {
        &self.verdicts[Condition::ALL
            .iter()
            .position(|c| *c == condition)
            .expect("all conditions present")]
    }

    pub fn holds(&self, condition: Condition) -> bool {
        self.verdict(condition).holds()
    }

    pub fn any_holds(&self) -> bool {
        self.verdicts.iter().any(ConditionVerdict::holds)
    }

    pub fn consistent(&self) -> bool {
        self.implications.iter().all(|i| i.consistent)
    }
}

/// Evaluates all five conditions, the implication lattice, and optionally the oracle.
pub fn full_report(e: &Effect, f: &Effect, tol: f64, oracle: Option<&OracleParams>) -> Result<PairReport> {
    ensure_pair(e, f)?;
    let (inf, inf_branches) = check_inf_detailed(e, f, tol)?;
    let verdicts = vec![
        check_commu(e, f, tol)?,
        check_comp(e, f, tol)?,
        inf,
        check_jor(e, f, tol)?,
        check_ginf(e, f, tol)?,
    ];
    let oracle = match oracle {
        Some(params) => Some(decide_pair(e, f, params)?),
        None => None,
    };
    let mut report = PairReport {
        verdicts,
        inf_branches,
        implications: Vec::new(),
        oracle,
        tol,
    };
    report.implications = IMPLICATIONS
        .iter()
        .map(|&(premise, conclusion)| Implication {
            premise,
            conclusion,
            consistent: !report.holds(premise) || report.holds(conclusion),
        })
        .collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eff(diag: &[f64]) -> Effect {
        Effect::new(HermitianMatrix::from_diagonal(diag)).unwrap()
    }

    #[test]
    fn branch_lift_matches_complement_equivalence() {
        let e = eff(&[0.2, 0.7]);
        let f = eff(&[0.4, 0.5]);
        // G' = 0 on (E, F⊥) lifts to G = E.
        let zero = HermitianMatrix::zeros(2);
        assert_eq!(&Branch::ComplementSecond.lift(&e, &f, &zero), e.matrix());
        assert_eq!(&Branch::ComplementFirst.lift(&e, &f, &zero), f.matrix());
        let both = Branch::ComplementBoth.lift(&e, &f, &zero);
        assert!(both.distance(&HermitianMatrix::from_diagonal(&[-0.4, 0.2])).unwrap() < 1e-15);
    }

    #[test]
    fn comparable_pair_with_identity() {
        let e = eff(&[0.2, 0.7]);
        let v = check_comp(&e, &Effect::identity(2), DEFAULT_TOL).unwrap();
        assert!(v.holds());
        assert_eq!(v.branch, Some(Branch::Direct));
        let w = v.certificate.unwrap();
        assert!(verify_witness(&e, &Effect::identity(2), &w, 1e-12).is_valid());
    }

    #[test]
    fn patterns_enumerate_lexicographically() {
        assert_eq!(patterns(2), vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(pattern_label(&[1, 2, 2]), "G_122");
    }

    #[test]
    fn jordan_general_limits() {
        let e = eff(&[0.2, 0.7]);
        let many = vec![e.clone(); 9];
        assert_eq!(
            jordan_general(&many, &[1; 9]),
            Err(Error::CombinatorialLimit { count: 9, limit: 8 })
        );
        assert!(jordan_general(std::slice::from_ref(&e), &[3]).is_err());
        assert!(jordan_general(&[], &[]).is_err());
        assert_eq!(&jordan_general(std::slice::from_ref(&e), &[1]).unwrap(), e.matrix());
    }

    #[test]
    fn verify_rejects_non_dominated_single_g() {
        let e = eff(&[0.9, 0.1]);
        let f = eff(&[0.1, 0.9]);
        let w = CoexWitness::SingleG { g: e.matrix().clone() };
        let check = verify_witness(&e, &f, &w, 1e-9);
        assert!(!check.is_valid());
        assert!(check.violations.iter().any(|v| v.label == "G ≤ F"));
    }
}
