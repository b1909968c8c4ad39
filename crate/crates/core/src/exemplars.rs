//! Concrete effect families: qubit effects in Bloch form, the noisy
//! mutually-unbiased pair, noisy and mixed commuting pairs, rank-one pairs,
//! and the exact qubit coexistence criteria used to calibrate the checks.

use crate::effects::Effect;
use crate::error::{Error, Result};
use crate::hermitian::{Complex64, HermitianMatrix};

const BLOCH_SLACK: f64 = 1e-12;
const UNIT_SLACK: f64 = 1e-9;

/// Pauli matrices `(σx, σy, σz)`.
pub fn pauli() -> [HermitianMatrix; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        HermitianMatrix::new(2, vec![z, one, one, z]).expect("finite"),
        HermitianMatrix::new(2, vec![z, -i, i, z]).expect("finite"),
        HermitianMatrix::new(2, vec![one, z, z, -one]).expect("finite"),
    ]
}

pub fn norm3(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// `½(αI + v·σ)`; an effect iff `0 ≤ α ≤ 2` and `‖v‖ ≤ min(α, 2 − α)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitEffect {
    pub alpha: f64,
    pub bloch: [f64; 3],
}

impl QubitEffect {
    pub fn new(alpha: f64, bloch: [f64; 3]) -> Result<Self> {
        let norm = norm3(bloch);
        let finite = alpha.is_finite() && bloch.iter().all(|x| x.is_finite());
        if !finite || !(0.0..=2.0).contains(&alpha) || norm > alpha.min(2.0 - alpha) + BLOCH_SLACK {
            return Err(Error::InvalidBloch { alpha, norm });
        }
        Ok(Self { alpha, bloch })
    }

    pub fn unbiased(bloch: [f64; 3]) -> Result<Self> {
        Self::new(1.0, bloch)
    }

    pub fn matrix(&self) -> HermitianMatrix {
        let [sx, sy, sz] = pauli();
        let v = self.bloch;
        let sum = &(&(&HermitianMatrix::identity(2).scale(self.alpha) + &sx.scale(v[0])) + &sy.scale(v[1]))
            + &sz.scale(v[2]);
        sum.scale(0.5)
    }

    pub fn to_effect(&self) -> Result<Effect> {
        Effect::new(self.matrix())
    }
}

/// Builds the qubit effect `½(αI + v·σ)`.
pub fn qubit_effect(alpha: f64, bloch: [f64; 3]) -> Result<Effect> {
    QubitEffect::new(alpha, bloch)?.to_effect()
}

/// Exact decision with its signed margin (non-negative iff coexistent).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactCriterion {
    pub coexistent: bool,
    pub margin: f64,
}

impl ExactCriterion {
    fn from_margin(margin: f64) -> Self {
        Self {
            coexistent: margin >= 0.0,
            margin,
        }
    }
}

/// Unbiased qubit pair `½(I + e·σ)`, `½(I + f·σ)`: coexistent iff
/// `‖e + f‖ + ‖e − f‖ ≤ 2`. Margin `2 − ‖e + f‖ − ‖e − f‖`.
pub fn busch_criterion(e: [f64; 3], f: [f64; 3]) -> Result<ExactCriterion> {
    for v in [e, f] {
        let norm = norm3(v);
        if norm.is_nan() || norm > 1.0 + BLOCH_SLACK {
            return Err(Error::InvalidBloch { alpha: 1.0, norm });
        }
    }
    Ok(ExactCriterion::from_margin(2.0 - norm3(add3(e, f)) - norm3(sub3(e, f))))
}

/// `E = ½(I + e·σ)`, `F = ½(βI + f·σ)` with `e ⊥ f`: coexistent iff
/// `2‖e‖ ≤ √(β² − ‖f‖²) + √((2 − β)² − ‖f‖²)`.
pub fn liu_criterion(e_norm: f64, f_norm: f64, beta: f64) -> Result<ExactCriterion> {
    let in_range = (0.0..=1.0 + BLOCH_SLACK).contains(&e_norm)
        && (0.0..=1.0 + BLOCH_SLACK).contains(&f_norm)
        && beta >= f_norm - BLOCH_SLACK
        && beta <= 2.0 - f_norm + BLOCH_SLACK;
    if !in_range {
        return Err(Error::ParameterRange(format!(
            "need ‖e‖, ‖f‖ ≤ 1 and ‖f‖ ≤ β ≤ 2 − ‖f‖; got ‖e‖ = {e_norm}, ‖f‖ = {f_norm}, β = {beta}"
        )));
    }
    let f2 = f_norm * f_norm;
    let rhs = (beta * beta - f2).max(0.0).sqrt() + ((2.0 - beta).powi(2) - f2).max(0.0).sqrt();
    Ok(ExactCriterion::from_margin(rhs - 2.0 * e_norm))
}

/// The orthogonal family with `e` along x and `f` along y.
pub fn liu_pair(e_norm: f64, f_norm: f64, beta: f64) -> Result<(Effect, Effect)> {
    Ok((
        qubit_effect(1.0, [e_norm, 0.0, 0.0])?,
        qubit_effect(beta, [0.0, f_norm, 0.0])?,
    ))
}

/// Dimension and noise weight of the unbiased-basis pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MubParams {
    pub dim: usize,
    pub lambda: f64,
}

impl MubParams {
    pub fn new(dim: usize, lambda: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::ParameterRange(format!("dimension must be at least 2, got {dim}")));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::ParameterRange(format!("lambda must lie in [0, 1], got {lambda}")));
        }
        Ok(Self { dim, lambda })
    }
}

/// `E = λ|φ0⟩⟨φ0| + (1 − λ)I/d`, `F = λ|ψ0⟩⟨ψ0| + (1 − λ)I/d`, with `φ0`
/// the first basis vector and `ψ0` the uniform superposition.
pub fn mub_pair(params: &MubParams) -> Result<(Effect, Effect)> {
    let MubParams { dim, lambda } = *params;
    let d = dim as f64;
    let mut phi = vec![Complex64::new(0.0, 0.0); dim];
    phi[0] = Complex64::new(1.0, 0.0);
    let psi = vec![Complex64::new(1.0 / d.sqrt(), 0.0); dim];
    let noise = HermitianMatrix::identity(dim).scale((1.0 - lambda) / d);
    let e = &HermitianMatrix::outer(&phi).scale(lambda) + &noise;
    let f = &HermitianMatrix::outer(&psi).scale(lambda) + &noise;
    Ok((Effect::new(e)?, Effect::new(f)?))
}

/// `½ + (√d − 1)/(2(d − 1))`, the largest λ for which the MUB pair is known coexistent.
pub fn lambda_max(dim: usize) -> f64 {
    let d = dim as f64;
    0.5 + (d.sqrt() - 1.0) / (2.0 * (d - 1.0))
}

/// The closed form `(2(1 + √2)d − 4)/(d² + 4d − 4)` quoted for the Jordan
/// threshold. It equals the true `E∘F ≥ 0` boundary only at `d = 2`; see
/// [`lambda_jor_exact`].
pub fn lambda_jor(dim: usize) -> f64 {
    let d = dim as f64;
    (2.0 * (1.0 + std::f64::consts::SQRT_2) * d - 4.0) / (d * d + 4.0 * d - 4.0)
}

/// Largest λ with `E∘F ≥ 0` for the MUB pair.
///
/// On `span{φ0, ψ0}` (overlap `c = 1/√d`) the smallest eigenvalue of `E∘F`
/// is `(1 − c)(b − a) + n` with `a = λ²c/2`, `b = λ(1 − λ)/d`,
/// `n = (1 − λ)²/d²`; its root in `[0, 1]` simplifies to
/// `(√d + √(d − 1) + 1) / ((√(d − 1) + 1)(√d + 1))`.
pub fn lambda_jor_exact(dim: usize) -> f64 {
    let d = dim as f64;
    let (s, t) = (d.sqrt(), (d - 1.0).sqrt());
    (s + t + 1.0) / ((t + 1.0) * (s + 1.0))
}

fn check_unit_interval(name: &str, x: f64, lo_open: bool, hi: f64) -> Result<()> {
    let ok = if lo_open { x > 0.0 && x <= hi } else { x >= 0.0 && x <= hi };
    if ok {
        Ok(())
    } else {
        Err(Error::ParameterRange(format!("{name} = {x} out of range")))
    }
}

/// `(tE + (1 − t)I, tF + (1 − t)I)` for `0 < t ≤ ½`; always comparable via `F^⊥ ≤ E`.
pub fn noisy_pair(e: &Effect, f: &Effect, t: f64) -> Result<(Effect, Effect)> {
    check_unit_interval("t", t, true, 0.5)?;
    let id = HermitianMatrix::identity(e.dim());
    let shift = id.scale(1.0 - t);
    Ok((
        Effect::new(&e.matrix().scale(t) + &shift)?,
        Effect::new(&f.matrix().scale(t) + &shift)?,
    ))
}

/// `(sE + (1 − s)E^⊥, tE + (1 − t)E^⊥)`; commuting, comparable only if
/// `s = t` or `s = 1 − t` when `E` is neither below nor above `½I`.
pub fn mixed_commuting_pair(e: &Effect, s: f64, t: f64) -> Result<(Effect, Effect)> {
    for (name, x) in [("s", s), ("t", t)] {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::ParameterRange(format!("{name} = {x} must lie in (0, 1)")));
        }
    }
    let half = HermitianMatrix::identity(e.dim()).scale(0.5);
    let below = (&half - e.matrix()).is_psd(crate::conditions::DEFAULT_TOL).holds;
    let above = (e.matrix() - &half).is_psd(crate::conditions::DEFAULT_TOL).holds;
    if below || above {
        return Err(Error::ParameterRange(
            "E must be incomparable with ½I".into(),
        ));
    }
    let ec = e.complement();
    let mix = |w: f64| Effect::new(&e.matrix().scale(w) + &ec.matrix().scale(1.0 - w));
    Ok((mix(s)?, mix(t)?))
}

fn unit(v: &[Complex64]) -> Result<()> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > UNIT_SLACK {
        return Err(Error::NotUnitVector { norm });
    }
    Ok(())
}

/// `(a|ψ⟩⟨ψ|, b|φ⟩⟨φ|)` for unit `ψ, φ` and weights in `(0, 1]`.
pub fn rank_one_pair(psi: &[Complex64], phi: &[Complex64], a: f64, b: f64) -> Result<(Effect, Effect)> {
    if psi.len() != phi.len() {
        return Err(Error::DimensionMismatch {
            left: psi.len(),
            right: phi.len(),
        });
    }
    unit(psi)?;
    unit(phi)?;
    check_unit_interval("a", a, true, 1.0)?;
    check_unit_interval("b", b, true, 1.0)?;
    Ok((
        Effect::new(HermitianMatrix::outer(psi).scale(a))?,
        Effect::new(HermitianMatrix::outer(phi).scale(b))?,
    ))
}
