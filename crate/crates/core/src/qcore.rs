//! Small dense complex linear algebra with quantum-state semantics.
//!
//! Basis ordering is fixed throughout the crate: index 0 is the ground
//! state `|b⟩`, index 1 the excited state `|a⟩`. Everything here is
//! dimensionless.

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const GROUND: usize = 0;
pub const EXCITED: usize = 1;

/// Hermiticity slack accepted on construction of a density matrix.
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-9;
pub const PURITY_TOL: f64 = 1e-9;
pub const NORM_TOL: f64 = 1e-12;
/// Slack on observables passed to [`expectation`].
pub const OBSERVABLE_TOL: f64 = 1e-10;
/// Largest imaginary residue silently discarded from an expectation value.
pub const IMAG_RESIDUE_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    /// Builds a `dim × dim` matrix from row-major entries.
    pub fn from_row_major(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dim", "must be at least 1"));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self(DMatrix::from_row_slice(dim, dim, entries)))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    /// Wraps an existing square matrix.
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(Error::param("matrix", "must be square and non-empty"));
        }
        Ok(Self(m))
    }

    pub fn from_matrix2(m: &Matrix2<Complex64>) -> Self {
        Self(DMatrix::from_iterator(2, 2, m.iter().copied()))
    }

    pub fn to_matrix2(&self) -> Result<Matrix2<Complex64>> {
        self.expect_dim(2)?;
        Ok(Matrix2::from_iterator(self.0.iter().copied()))
    }

    pub fn outer(v: &DVector<Complex64>) -> Self {
        Self(v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    /// Row-major copy of the entries.
    pub fn entries(&self) -> Vec<Complex64> {
        self.0.transpose().iter().copied().collect()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.expect_dim(other.dim())?;
        Ok(Self(&self.0 * &other.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.expect_dim(other.dim())?;
        Ok(Self(&self.0 + &other.0))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(&self.0 * s)
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖M − M†‖_max`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    fn expect_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

/// Eigen-decomposition of a Hermitian matrix: ascending real eigenvalues and
/// the unitary whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = self.vectors.as_dmatrix();
        let lambda = DMatrix::from_diagonal(&DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        ComplexMatrix(v * lambda * v.adjoint())
    }
}

pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let dev = h.hermitian_deviation();
    if dev > OBSERVABLE_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let eig = h.0.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..h.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(h.dim(), h.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermitianEigen {
        values,
        vectors: ComplexMatrix(vectors),
    })
}

/// Smallest eigenvalue of a Hermitian matrix. Closed form for 2×2.
pub fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    if h.dim() == 2 {
        let a = h.get(0, 0).re;
        let d = h.get(1, 1).re;
        let b = h.get(0, 1);
        let half_tr = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        return Ok(half_tr - disc);
    }
    Ok(hermitian_eigen(h)?.values[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    SigmaPlus,
    SigmaMinus,
    SigmaX,
    ProjectorExcited,
    Identity,
}

/// Standard operators in the `(|b⟩, |a⟩)` ordering; `σ₊ = |a⟩⟨b|`.
pub fn make_operator(kind: OperatorKind, dim: usize) -> Result<ComplexMatrix> {
    if kind == OperatorKind::Identity {
        if dim == 0 {
            return Err(Error::param("dim", "must be at least 1"));
        }
        return Ok(ComplexMatrix::identity(dim));
    }
    if dim != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: dim,
        });
    }
    Ok(ComplexMatrix::from_matrix2(&operator2(kind)))
}

pub(crate) fn operator2(kind: OperatorKind) -> Matrix2<Complex64> {
    match kind {
        OperatorKind::SigmaPlus => Matrix2::new(ZERO, ZERO, ONE, ZERO),
        OperatorKind::SigmaMinus => Matrix2::new(ZERO, ONE, ZERO, ZERO),
        OperatorKind::SigmaX => Matrix2::new(ZERO, ONE, ONE, ZERO),
        OperatorKind::ProjectorExcited => Matrix2::new(ZERO, ZERO, ZERO, ONE),
        OperatorKind::Identity => Matrix2::identity(),
    }
}

/// Tolerances a density matrix is held to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantTolerance {
    pub hermitian: f64,
    pub trace: f64,
    pub positivity: f64,
    pub purity: f64,
}

impl InvariantTolerance {
    /// Bounds for freshly constructed states.
    pub const STRICT: Self = Self {
        hermitian: HERMITIAN_TOL,
        trace: TRACE_TOL,
        positivity: POSITIVITY_TOL,
        purity: PURITY_TOL,
    };

    /// Bounds along integrated trajectories.
    pub const TRAJECTORY: Self = Self {
        hermitian: 1e-9,
        trace: 1e-9,
        positivity: 1e-8,
        purity: 1e-8,
    };
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, InvariantTolerance::STRICT)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tol: InvariantTolerance) -> Result<Self> {
        let rho = Self(matrix);
        rho.check(tol)?;
        Ok(rho)
    }

    pub fn from_pure(state: &PureState) -> Self {
        Self(ComplexMatrix::outer(&state.amplitudes))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)))
    }

    /// `|b⟩⟨b|`.
    pub fn ground() -> Self {
        Self::from_pure(&PureState::ground())
    }

    /// `|a⟩⟨a|`.
    pub fn excited() -> Self {
        Self::from_pure(&PureState::excited())
    }

    /// Convex combination `w·ρ₁ + (1 − w)·ρ₂`.
    pub fn mix(w: f64, first: &Self, second: &Self) -> Result<Self> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::param("weight", "must lie in [0, 1]"));
        }
        let m = first
            .0
            .scale(Complex64::new(w, 0.0))
            .add(&second.0.scale(Complex64::new(1.0 - w, 0.0)))?;
        Self::new(m)
    }

    pub(crate) fn from_matrix2_unchecked(m: &Matrix2<Complex64>) -> Self {
        Self(ComplexMatrix::from_matrix2(m))
    }

    /// Verifies Hermiticity, trace, positivity and purity bounds.
    pub fn check(&self, tol: InvariantTolerance) -> Result<()> {
        let m = &self.0;
        let dev = m.hermitian_deviation();
        if dev > tol.hermitian {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let lambda_min = min_eigenvalue(m)?;
        if lambda_min < -tol.positivity {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {lambda_min:e}"
            )));
        }
        let purity = self.purity();
        let lower = 1.0 / m.dim() as f64 - tol.purity;
        if purity < lower || purity > 1.0 + tol.purity {
            return Err(Error::InvalidState(format!("purity {purity} out of range")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0.get(row, col)
    }

    pub fn to_matrix2(&self) -> Result<Matrix2<Complex64>> {
        self.0.to_matrix2()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ
        self.0.as_dmatrix().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Excited-state population `ρ_aa` of an atomic state.
    pub fn excited_population(&self) -> f64 {
        self.0.get(EXCITED, EXCITED).re
    }

    pub fn ground_population(&self) -> f64 {
        self.0.get(GROUND, GROUND).re
    }
}

/// Basis a state vector is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    /// `(|b⟩, |a⟩)`.
    Atomic,
    /// Atom ⊗ Fock(0..=n_max), atom index major.
    AtomFock { n_max: usize },
}

impl BasisLabel {
    pub fn dim(self) -> usize {
        match self {
            BasisLabel::Atomic => 2,
            BasisLabel::AtomFock { n_max } => 2 * (n_max + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
    basis: BasisLabel,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>, basis: BasisLabel) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: amplitudes.len(),
            });
        }
        let state = Self {
            amplitudes: DVector::from_vec(amplitudes),
            basis,
        };
        let norm2 = state.norm_sqr();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm2} differs from 1")));
        }
        Ok(state)
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>, basis: BasisLabel) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Self::new(
            amplitudes.into_iter().map(|z| z / norm).collect(),
            basis,
        )
    }

    pub fn ground() -> Self {
        Self::atomic(ONE, ZERO)
    }

    pub fn excited() -> Self {
        Self::atomic(ZERO, ONE)
    }

    /// `(|a⟩ + |b⟩)/√2`.
    pub fn plus() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::atomic(h, h)
    }

    fn atomic(b: Complex64, a: Complex64) -> Self {
        Self {
            amplitudes: DVector::from_vec(vec![b, a]),
            basis: BasisLabel::Atomic,
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn basis(&self) -> BasisLabel {
        self.basis
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// `Tr(ρ·obs)` for a Hermitian observable.
pub fn expectation(rho: &DensityMatrix, obs: &ComplexMatrix) -> Result<f64> {
    if obs.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: obs.dim(),
        });
    }
    let dev = obs.hermitian_deviation();
    if dev > OBSERVABLE_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let value = rho.matrix().matmul(obs)?.trace();
    if value.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::InvalidState(format!(
            "expectation has imaginary residue {:e}",
            value.im
        )));
    }
    Ok(value.re)
}

/// `⟨ψ|ρ|ψ⟩`, clamped to `[0, 1]`.
pub fn fidelity_pure(rho: &DensityMatrix, target: &PureState) -> Result<f64> {
    if target.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: target.dim(),
        });
    }
    let psi = target.amplitudes();
    let value = (psi.adjoint() * rho.matrix().as_dmatrix() * psi)[(0, 0)];
    if value.im.abs() > IMAG_RESIDUE_TOL
        || value.re < -IMAG_RESIDUE_TOL
        || value.re > 1.0 + IMAG_RESIDUE_TOL
    {
        return Err(Error::InvalidState(format!("fidelity {value} out of range")));
    }
    Ok(value.re.clamp(0.0, 1.0))
}
