//! Dense complex matrices and Hermitian spectral computation.
//!
//! Every tolerance in this crate is relative to `max(1, ‖A‖_F)` of the
//! operator being tested; [`HermitianMatrix::tolerance_scale`] returns that
//! factor.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Off-diagonal Frobenius mass, relative to ‖A‖_F, at which Jacobi stops.
pub const JACOBI_TOLERANCE: f64 = 1e-13;
/// Sweep cap for the cyclic Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 64;

fn check_entries(dim: usize, entries: &[Complex64]) -> Result<()> {
    if dim == 0 || entries.len() != dim * dim {
        return Err(Error::Shape {
            dim,
            expected: dim * dim,
            actual: entries.len(),
        });
    }
    if let Some(k) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite {
            row: k / dim,
            col: k % dim,
        });
    }
    Ok(())
}

fn frobenius(entries: &[Complex64]) -> f64 {
    entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn ensure_same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// Square complex matrix with row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl GeneralMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_entries(dim, &entries)?;
        Ok(Self { dim, data: entries })
    }

    pub(crate) fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &GeneralMatrix) -> Result<GeneralMatrix> {
        ensure_same_dim(self.dim, other.dim)?;
        Ok(product(self.dim, &self.data, &other.data))
    }

    /// `(M + M*)/2`.
    pub fn hermitian_part(&self) -> HermitianMatrix {
        HermitianMatrix::symmetrized(self.dim, &self.data)
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius(&self.data)
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }
}

fn product(dim: usize, a: &[Complex64], b: &[Complex64]) -> GeneralMatrix {
    let mut data = vec![ZERO; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == ZERO {
                continue;
            }
            let row = &b[k * dim..(k + 1) * dim];
            let out = &mut data[i * dim..(i + 1) * dim];
            for (o, &bkj) in out.iter_mut().zip(row) {
                *o += aik * bkj;
            }
        }
    }
    GeneralMatrix { dim, data }
}

impl Mul for &GeneralMatrix {
    type Output = GeneralMatrix;

    /// Panics on dimension mismatch; use [`GeneralMatrix::matmul`] for a checked product.
    fn mul(self, rhs: &GeneralMatrix) -> GeneralMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        product(self.dim, &self.data, &rhs.data)
    }
}

impl From<&HermitianMatrix> for GeneralMatrix {
    fn from(h: &HermitianMatrix) -> Self {
        GeneralMatrix {
            dim: h.dim,
            data: h.data.clone(),
        }
    }
}

/// Dense Hermitian operator on `C^d`.
///
/// Construction averages the input with its conjugate transpose, so
/// `a[i][j] == conj(a[j][i])` holds bit-for-bit and the diagonal is real.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HermitianMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl HermitianMatrix {
    /// Builds a Hermitian matrix from row-major entries, symmetrizing exactly.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_entries(dim, &entries)?;
        Ok(Self::symmetrized(dim, &entries))
    }

    /// Real symmetric input given as rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Shape {
                    dim,
                    expected: dim * dim,
                    actual: rows.iter().map(Vec::len).sum(),
                });
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(dim, entries)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut data = vec![ZERO; dim * dim];
        for (i, &x) in diag.iter().enumerate() {
            data[i * dim + i] = Complex64::new(x, 0.0);
        }
        Self { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![1.0; dim])
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    /// `|ψ⟩⟨ψ|` (not normalized).
    pub fn outer(psi: &[Complex64]) -> Self {
        let dim = psi.len();
        let m = GeneralMatrix::from_fn(dim, |i, j| psi[i] * psi[j].conj());
        m.hermitian_part()
    }

    fn symmetrized(dim: usize, entries: &[Complex64]) -> Self {
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(entries[i * dim + i].re, 0.0);
            for j in (i + 1)..dim {
                let upper = (entries[i * dim + j] + entries[j * dim + i].conj()) * 0.5;
                data[i * dim + j] = upper;
                data[j * dim + i] = upper.conj();
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn to_general(&self) -> GeneralMatrix {
        GeneralMatrix::from(self)
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius(&self.data)
    }

    /// `max(1, ‖A‖_F)`, the factor every relative tolerance is multiplied by.
    pub fn tolerance_scale(&self) -> f64 {
        self.frobenius_norm().max(1.0)
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i].re).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Checked sum.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        ensure_same_dim(self.dim, other.dim)?;
        Ok(self + other)
    }

    /// Checked difference.
    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        ensure_same_dim(self.dim, other.dim)?;
        Ok(self - other)
    }

    /// Frobenius distance ‖A − B‖_F.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.frobenius_norm())
    }

    /// ‖AB − BA‖_F.
    pub fn commutator_norm(&self, other: &Self) -> Result<f64> {
        ensure_same_dim(self.dim, other.dim)?;
        let ab = self * other;
        let ba = other * self;
        Ok(ab
            .data
            .iter()
            .zip(&ba.data)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Full eigendecomposition by cyclic complex Jacobi.
    pub fn eigh(&self) -> EigenDecomposition {
        let (values, vectors) = jacobi(self, true);
        let mut vectors = vectors.expect("vectors requested");
        let order = ascending_order(&values);
        let dim = self.dim;
        let sorted: Vec<f64> = order.iter().map(|&k| values[k]).collect();
        let mut v = vec![ZERO; dim * dim];
        for (new_col, &old_col) in order.iter().enumerate() {
            for i in 0..dim {
                v[i * dim + new_col] = vectors[i * dim + old_col];
            }
        }
        fix_phases(dim, &mut v);
        vectors = v;
        EigenDecomposition {
            values: sorted,
            vectors: GeneralMatrix { dim, data: vectors },
        }
    }

    /// Eigenvalues in ascending order, without accumulating eigenvectors.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (mut values, _) = jacobi(self, false);
        values.sort_by(f64::total_cmp);
        values
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues().last().expect("dim > 0")
    }

    /// Positive semidefiniteness at relative tolerance `tol`.
    pub fn is_psd(&self, tol: f64) -> PsdCheck {
        let min = self.min_eigenvalue();
        PsdCheck {
            holds: min >= -tol * self.tolerance_scale(),
            min_eigenvalue: min,
        }
    }

    /// `V f(Λ) V*`.
    pub fn apply_spectral(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        self.eigh().map_values(f)
    }

    /// Operator modulus `|A|`.
    pub fn abs(&self) -> HermitianMatrix {
        self.apply_spectral(f64::abs)
    }

    /// Moore–Penrose pseudo-inverse; eigenvalues with `|λ| ≤ rank_tol·max|λ|` are dropped.
    pub fn pseudo_inverse(&self, rank_tol: f64) -> HermitianMatrix {
        let eig = self.eigh();
        let largest = eig.values.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let cutoff = rank_tol * largest;
        eig.map_values(|x| if x.abs() <= cutoff || x == 0.0 { 0.0 } else { 1.0 / x })
    }

    /// Projection onto the eigenspaces with eigenvalue in `[lo, hi]`.
    /// An inverted window yields the zero projection.
    pub fn spectral_projector(&self, lo: f64, hi: f64) -> HermitianMatrix {
        self.eigh()
            .projector_where(|x| x >= lo && x <= hi)
    }

    /// Hermitian part of `self · other`.
    pub fn symmetric_product(&self, other: &Self) -> Result<HermitianMatrix> {
        ensure_same_dim(self.dim, other.dim)?;
        Ok((self * other).hermitian_part())
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        HermitianMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        HermitianMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn neg(self) -> HermitianMatrix {
        self.scale(-1.0)
    }
}

impl Mul for &HermitianMatrix {
    type Output = GeneralMatrix;

    fn mul(self, rhs: &HermitianMatrix) -> GeneralMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        product(self.dim, &self.data, &rhs.data)
    }
}

/// Outcome of a positive-semidefiniteness test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsdCheck {
    pub holds: bool,
    /// The smallest eigenvalue, which serves as the witness.
    pub min_eigenvalue: f64,
}

/// Eigenvalues ascending and unitary eigenvector matrix (columns).
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: GeneralMatrix,
}

impl EigenDecomposition {
    /// `V diag(f(λ)) V*`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let weights: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        self.weighted_sum(&weights)
    }

    /// Sum of eigenprojections whose eigenvalue satisfies `keep`.
    pub fn projector_where(&self, keep: impl Fn(f64) -> bool) -> HermitianMatrix {
        let weights: Vec<f64> = self
            .values
            .iter()
            .map(|&x| if keep(x) { 1.0 } else { 0.0 })
            .collect();
        self.weighted_sum(&weights)
    }

    fn weighted_sum(&self, weights: &[f64]) -> HermitianMatrix {
        let dim = self.vectors.dim;
        let v = &self.vectors.data;
        let mut data = vec![ZERO; dim * dim];
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for i in 0..dim {
                let vik = v[i * dim + k] * w;
                for j in 0..dim {
                    data[i * dim + j] += vik * v[j * dim + k].conj();
                }
            }
        }
        HermitianMatrix::symmetrized(dim, &data)
    }

    /// `V Λ V*`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        self.map_values(|x| x)
    }
}

fn ascending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    order
}

/// Rotates each column so its largest-modulus component is real positive.
fn fix_phases(dim: usize, v: &mut [Complex64]) {
    for j in 0..dim {
        let mut best = 0;
        let mut best_mod = -1.0;
        for i in 0..dim {
            let m = v[i * dim + j].norm_sqr();
            if m > best_mod {
                best_mod = m;
                best = i;
            }
        }
        let pivot = v[best * dim + j];
        let r = pivot.norm();
        if r == 0.0 {
            continue;
        }
        let phase = pivot.conj() / r;
        for i in 0..dim {
            v[i * dim + j] *= phase;
        }
        v[best * dim + j] = Complex64::new(v[best * dim + j].re, 0.0);
    }
}

fn off_diagonal_mass(dim: usize, a: &[Complex64]) -> f64 {
    let mut s = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                s += a[i * dim + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi with complex rotations. Returns unsorted eigenvalues and,
/// if requested, the row-major eigenvector matrix.
fn jacobi(h: &HermitianMatrix, want_vectors: bool) -> (Vec<f64>, Option<Vec<Complex64>>) {
    let dim = h.dim;
    let mut a = h.data.clone();
    let mut v = want_vectors.then(|| GeneralMatrix::identity(dim).data);
    let target = JACOBI_TOLERANCE * h.frobenius_norm();

    let mut converged = false;
    for sweep in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_mass(dim, &a) <= target {
            converged = true;
            break;
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                let apq = a[p * dim + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[p * dim + p].re;
                let aqq = a[q * dim + q].re;
                // Negligible element relative to both diagonals: drop it.
                let g = 100.0 * r;
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * dim + q] = ZERO;
                    a[q * dim + p] = ZERO;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta < 0.0 { -1.0 } else { 1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) · [[c, s], [-s, c]], phase = apq / |apq|.
                let phase_conj = apq.conj() / r;
                let j_pp = Complex64::new(c, 0.0);
                let j_pq = Complex64::new(s, 0.0);
                let j_qp = phase_conj * (-s);
                let j_qq = phase_conj * c;

                // A <- A J
                for k in 0..dim {
                    let x = a[k * dim + p];
                    let y = a[k * dim + q];
                    a[k * dim + p] = x * j_pp + y * j_qp;
                    a[k * dim + q] = x * j_pq + y * j_qq;
                }
                // A <- J* A
                for k in 0..dim {
                    let x = a[p * dim + k];
                    let y = a[q * dim + k];
                    a[p * dim + k] = j_pp.conj() * x + j_qp.conj() * y;
                    a[q * dim + k] = j_pq.conj() * x + j_qq.conj() * y;
                }
                a[p * dim + q] = ZERO;
                a[q * dim + p] = ZERO;
                a[p * dim + p].im = 0.0;
                a[q * dim + q].im = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..dim {
                        let x = v[k * dim + p];
                        let y = v[k * dim + q];
                        v[k * dim + p] = x * j_pp + y * j_qp;
                        v[k * dim + q] = x * j_pq + y * j_qq;
                    }
                }
            }
        }
    }
    if !converged {
        let off = off_diagonal_mass(dim, &a);
        assert!(
            off <= target.max(1e-10 * h.frobenius_norm()),
            "internal defect: Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps (off-diagonal mass {off:e})"
        );
    }
    let values = (0..dim).map(|i| a[i * dim + i].re).collect();
    (values, v)
}
