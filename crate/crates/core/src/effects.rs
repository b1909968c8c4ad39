//! Effect algebra: validation, complement, order, Jordan product,
//! generalized infimum and the finite-dimensional infimum recipe.

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;

/// Spectrum slack allowed when validating an effect.
pub const EFFECT_TOLERANCE: f64 = 1e-9;
/// Default relative rank cut-off for range projectors and pseudo-inverses.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;
/// Half-width of the window around eigenvalue 2 of `P + Q` used for range intersections.
pub const INTERSECTION_WINDOW: f64 = 1e-7;
/// Idempotence slack accepted for projections.
pub const PROJECTION_TOLERANCE: f64 = 1e-9;

fn same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// A Hermitian operator `0 ≤ E ≤ I`.
///
/// The complement `I − E` is computed once at construction and swapped by
/// [`Effect::complement`], so complementing twice returns the original
/// matrix bit-for-bit.
#[derive(Clone, Debug, PartialEq)]
pub struct Effect {
    matrix: HermitianMatrix,
    complement: HermitianMatrix,
}

impl Effect {
    /// Validates the spectrum against `[−ε, 1 + ε]` with ε = [`EFFECT_TOLERANCE`].
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        let values = matrix.eigenvalues();
        let lo = values[0];
        let hi = values[values.len() - 1];
        if lo < -EFFECT_TOLERANCE {
            return Err(Error::SpectrumOutOfRange { eigenvalue: lo });
        }
        if hi > 1.0 + EFFECT_TOLERANCE {
            return Err(Error::SpectrumOutOfRange { eigenvalue: hi });
        }
        let complement = &HermitianMatrix::identity(matrix.dim()) - &matrix;
        Ok(Self { matrix, complement })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: HermitianMatrix::identity(dim),
            complement: HermitianMatrix::zeros(dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::identity(dim).complement()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `E^⊥ = I − E`.
    pub fn complement(&self) -> Effect {
        Self {
            matrix: self.complement.clone(),
            complement: self.matrix.clone(),
        }
    }

    /// `E ≤ F` in the operator order: `F − E` is PSD at relative tolerance `tol`.
    pub fn leq(&self, other: &Effect, tol: f64) -> Result<bool> {
        same_dim(self.dim(), other.dim())?;
        Ok((&other.matrix - &self.matrix).is_psd(tol).holds)
    }

    /// Jordan product `½(EF + FE)`. Hermitian, but not necessarily positive.
    pub fn jordan_product(&self, other: &Effect) -> Result<HermitianMatrix> {
        self.matrix.symmetric_product(&other.matrix)
    }

    /// Generalized infimum `E ⊓ F = ½(E + F − |E − F|)`.
    pub fn generalized_infimum(&self, other: &Effect) -> Result<HermitianMatrix> {
        same_dim(self.dim(), other.dim())?;
        let sum = &self.matrix + &other.matrix;
        let modulus = (&self.matrix - &other.matrix).abs();
        Ok((&sum - &modulus).scale(0.5))
    }

    /// Projection onto the span of eigenvectors with eigenvalue above `rank_tol`.
    /// In finite dimension `ran √E = ran E`, so this is the range projection of both.
    pub fn range_projector(&self, rank_tol: f64) -> Projection {
        Projection(self.matrix.eigh().projector_where(|x| x > rank_tol))
    }

    /// The effect infimum `E ∧ P`, realized as the shorted operator of `E` to `ran P`.
    ///
    /// In the block basis `[ran P; ran P^⊥]`, `E = [[A, B], [B*, C]]` maps to
    /// `[[A − B C⁺ B*, 0], [0, 0]]`.
    pub fn infimum_with_projection(&self, projection: &Projection) -> Result<Effect> {
        self.shorted_to(projection, DEFAULT_RANK_TOL)
    }

    pub fn shorted_to(&self, projection: &Projection, rank_tol: f64) -> Result<Effect> {
        same_dim(self.dim(), projection.dim())?;
        let p = projection.matrix();
        let p_perp = &HermitianMatrix::identity(self.dim()) - p;
        let e = self.matrix.to_general();

        let compress = |x: &HermitianMatrix, y: &HermitianMatrix| -> HermitianMatrix {
            (&(&x.to_general() * &e) * &y.to_general()).hermitian_part()
        };
        let inner = compress(&p_perp, &p_perp).pseudo_inverse(rank_tol);
        // E21 = P^⊥ E P, so E12 E22⁺ E21 = P E P^⊥ · (P^⊥ E P^⊥)⁺ · P^⊥ E P.
        let e21 = &(&p_perp.to_general() * &e) * &p.to_general();
        let correction = (&(&e21.adjoint() * &inner.to_general()) * &e21).hermitian_part();
        let e11 = compress(p, p);
        let shorted = &e11 - &correction;
        // Re-compress so that P · result · P = result up to rounding in P.
        let pg = p.to_general();
        let result = (&(&pg * &shorted.to_general()) * &pg).hermitian_part();
        Effect::new(result)
    }
}

/// Orthogonal projection, idempotent within [`PROJECTION_TOLERANCE`].
#[derive(Clone, Debug, PartialEq)]
pub struct Projection(HermitianMatrix);

impl Projection {
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        let square = (&matrix * &matrix).hermitian_part();
        let residual = square.distance(&matrix)?;
        if residual > PROJECTION_TOLERANCE * matrix.tolerance_scale() {
            return Err(Error::NotProjection { residual });
        }
        Ok(Self(matrix))
    }

    pub fn identity(dim: usize) -> Self {
        Self(HermitianMatrix::identity(dim))
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn rank(&self) -> usize {
        self.0.trace().round() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// A projection is an effect.
    pub fn to_effect(&self) -> Effect {
        Effect::new(self.0.clone()).expect("projections have spectrum in {0, 1}")
    }

    /// Projection onto `ran P ∩ ran Q`: the eigenvalue-2 eigenspace of `P + Q`.
    pub fn intersection(&self, other: &Projection) -> Result<Projection> {
        same_dim(self.dim(), other.dim())?;
        let sum = &self.0 + &other.0;
        Ok(Projection(sum.spectral_projector(
            2.0 - INTERSECTION_WINDOW,
            2.0 + INTERSECTION_WINDOW,
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfimumKind {
    Exists,
    NotExists,
}

/// Result of the finite-dimensional infimum recipe.
#[derive(Clone, Debug)]
pub struct InfimumResult {
    pub kind: InfimumKind,
    /// `E ∧ F`, present iff `kind == Exists`.
    pub value: Option<Effect>,
    /// `P_{E,F}`, projection onto `ran √E ∩ ran √F`.
    pub meet_projection: Projection,
    /// `E ∧ P_{E,F}`.
    pub first_part: Effect,
    /// `F ∧ P_{E,F}`.
    pub second_part: Effect,
    pub first_below_second: bool,
    pub second_below_first: bool,
}

impl InfimumResult {
    pub fn exists(&self) -> bool {
        self.kind == InfimumKind::Exists
    }
}

/// Infimum of two effects in the effect order, if it exists.
///
/// With `P = P_{E,F}`, the infimum exists iff `E ∧ P` and `F ∧ P` are
/// comparable, and is then the smaller of the two.
pub fn infimum(e: &Effect, f: &Effect, tol: f64) -> Result<InfimumResult> {
    same_dim(e.dim(), f.dim())?;
    let meet = e
        .range_projector(DEFAULT_RANK_TOL)
        .intersection(&f.range_projector(DEFAULT_RANK_TOL))?;
    let first_part = e.infimum_with_projection(&meet)?;
    let second_part = f.infimum_with_projection(&meet)?;
    let first_below_second = first_part.leq(&second_part, tol)?;
    let second_below_first = second_part.leq(&first_part, tol)?;
    let value = if first_below_second {
        Some(first_part.clone())
    } else if second_below_first {
        Some(second_part.clone())
    } else {
        None
    };
    Ok(InfimumResult {
        kind: if value.is_some() {
            InfimumKind::Exists
        } else {
            InfimumKind::NotExists
        },
        value,
        meet_projection: meet,
        first_part,
        second_part,
        first_below_second,
        second_below_first,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn eff(diag: &[f64]) -> Effect {
        Effect::new(HermitianMatrix::from_diagonal(diag)).unwrap()
    }

    fn plus() -> Vec<Complex64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        vec![c(h), c(h)]
    }

    #[test]
    fn validation() {
        assert!(Effect::new(HermitianMatrix::identity(3).scale(0.5)).is_ok());
        assert_eq!(
            Effect::new(HermitianMatrix::from_diagonal(&[1.5, 0.0])),
            Err(Error::SpectrumOutOfRange { eigenvalue: 1.5 })
        );
        assert!(matches!(
            Effect::new(HermitianMatrix::from_diagonal(&[0.5, -0.1])),
            Err(Error::SpectrumOutOfRange { .. })
        ));
        // Boundary: ½(I + σx) has eigenvalues 0 and 1.
        let m = HermitianMatrix::from_real_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert!(Effect::new(m).is_ok());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Effect::identity(2).complement(), Effect::zero(2));
        let half = eff(&[0.5, 0.5]);
        assert_eq!(half.complement().matrix(), half.matrix());
        let e = eff(&[0.1, 0.7]);
        assert_eq!(e.complement().complement(), e);
    }

    #[test]
    fn order_examples() {
        let e = eff(&[0.3, 0.9]);
        assert!(e.leq(&Effect::identity(2), 1e-9).unwrap());
        let half = eff(&[0.5, 0.5]);
        let ket0 = eff(&[1.0, 0.0]);
        assert!(!half.leq(&ket0, 1e-9).unwrap());
        assert!(!ket0.leq(&half, 1e-9).unwrap());
        assert!(half.leq(&eff(&[0.5, 0.5, 0.5]), 1e-9).is_err());
    }

    #[test]
    fn jordan_of_commuting_diagonals() {
        let e = eff(&[0.2, 0.6]);
        let f = eff(&[0.5, 0.25]);
        assert_eq!(
            e.jordan_product(&f).unwrap(),
            HermitianMatrix::from_diagonal(&[0.1, 0.15])
        );
    }

    #[test]
    fn generalized_infimum_of_ordered_pair() {
        let e = eff(&[0.2, 0.3]);
        let f = eff(&[0.4, 0.9]);
        assert!(e.generalized_infimum(&f).unwrap().distance(e.matrix()).unwrap() < 1e-15);
        assert!(e.generalized_infimum(&e).unwrap().distance(e.matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn range_projectors() {
        let e = eff(&[0.5, 0.0]);
        assert_eq!(e.range_projector(1e-9).matrix(), &HermitianMatrix::from_diagonal(&[1.0, 0.0]));
        let inv = eff(&[0.2, 0.9]);
        assert_eq!(inv.range_projector(1e-9), Projection::identity(2));
        let psi = plus();
        let rank_one = Effect::new(HermitianMatrix::outer(&psi).scale(0.3)).unwrap();
        let expected = HermitianMatrix::outer(&psi);
        assert!(rank_one.range_projector(1e-9).matrix().distance(&expected).unwrap() < 1e-14);
    }

    #[test]
    fn intersections() {
        let p = Projection::new(HermitianMatrix::from_diagonal(&[1.0, 0.0])).unwrap();
        assert_eq!(p.intersection(&p).unwrap(), p);
        let q = Projection::new(HermitianMatrix::outer(&plus())).unwrap();
        assert!(p.intersection(&q).unwrap().is_zero());
        assert!(matches!(
            Projection::new(HermitianMatrix::from_diagonal(&[0.5, 0.0])),
            Err(Error::NotProjection { .. })
        ));
    }

    #[test]
    fn shorted_operator_examples() {
        let e = eff(&[0.3, 0.8, 0.5]);
        assert_eq!(&e.infimum_with_projection(&Projection::identity(3)).unwrap(), &e);
        // Commuting case: P E P.
        let p = Projection::new(HermitianMatrix::from_diagonal(&[1.0, 0.0, 1.0])).unwrap();
        let short = e.infimum_with_projection(&p).unwrap();
        assert!(short.matrix().distance(&HermitianMatrix::from_diagonal(&[0.3, 0.0, 0.5])).unwrap() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let e = eff(&[0.3, 0.8]);
        let f = eff(&[0.3, 0.8, 0.1]);
        assert!(e.jordan_product(&f).is_err());
        assert!(e.generalized_infimum(&f).is_err());
        assert!(infimum(&e, &f, 1e-9).is_err());
    }
}
