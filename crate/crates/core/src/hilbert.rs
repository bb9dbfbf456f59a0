//! Finite-dimensional complex Hilbert spaces: states, density matrices,
//! orthonormal bases and Hermitian observables.
//!
//! Everything is dense and immutable once constructed. Constructors check
//! the type invariants against [`Tolerances`]; the `*_with` variants take an
//! explicit policy.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

pub const MAX_DIM: usize = 4096;

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::UnsupportedDimension(dim));
    }
    Ok(())
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Largest entrywise deviation of `m` from its conjugate transpose.
pub fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest entry modulus.
pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 0).ok_or(Error::Eigendecomposition)?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn standard_normal_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

// ---------------------------------------------------------------------------
// StateVector
// ---------------------------------------------------------------------------

/// A normalized pure state |ψ⟩.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateVectorFile", into = "StateVectorFile")]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct StateVectorFile {
    dim: usize,
    amplitudes: Vec<Complex64>,
}

impl TryFrom<StateVectorFile> for StateVector {
    type Error = Error;

    fn try_from(file: StateVectorFile) -> Result<Self> {
        same_dim(file.dim, file.amplitudes.len())?;
        StateVector::from_normalized(file.amplitudes, &Tolerances::DEFAULT)
    }
}

impl From<StateVector> for StateVectorFile {
    fn from(s: StateVector) -> Self {
        StateVectorFile {
            dim: s.dim(),
            amplitudes: s.amplitudes.iter().copied().collect(),
        }
    }
}

impl StateVector {
    /// Normalizes `amplitudes` to unit Euclidean norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::new_with(amplitudes, &Tolerances::DEFAULT)
    }

    pub fn new_with(amplitudes: Vec<Complex64>, tol: &Tolerances) -> Result<Self> {
        check_dim(amplitudes.len())?;
        if amplitudes.iter().all(|z| z.norm() < tol.zero_vector) {
            return Err(Error::ZeroVector(tol.zero_vector));
        }
        let v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        Ok(StateVector {
            amplitudes: v.unscale(norm),
        })
    }

    /// Accepts amplitudes that are already normalized, without rescaling.
    pub fn from_normalized(amplitudes: Vec<Complex64>, tol: &Tolerances) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > tol.norm {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(StateVector {
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    /// Computational basis vector |index⟩.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index + 1,
            });
        }
        let mut v = DVector::zeros(dim);
        v[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amplitudes: v })
    }

    /// Haar-random pure state.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        check_dim(dim)?;
        loop {
            let amps: Vec<Complex64> = (0..dim).map(|_| standard_normal_complex(rng)).collect();
            if let Ok(s) = StateVector::new(amps) {
                return Ok(s);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, k: usize) -> Complex64 {
        self.amplitudes[k]
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &StateVector) -> Result<Complex64> {
        same_dim(self.dim(), other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// ⟨self|m|other⟩.
    pub fn sandwich(&self, m: &DMatrix<Complex64>, other: &StateVector) -> Result<Complex64> {
        same_dim(self.dim(), m.nrows())?;
        same_dim(self.dim(), other.dim())?;
        Ok(self.amplitudes.dotc(&(m * &other.amplitudes)))
    }
}

/// Normalizes a nonzero amplitude vector.
pub fn make_state(amplitudes: Vec<Complex64>) -> Result<StateVector> {
    StateVector::new(amplitudes)
}

/// ⟨x|y⟩ = Σ conj(x_k)·y_k.
pub fn overlap(x: &StateVector, y: &StateVector) -> Result<Complex64> {
    x.overlap(y)
}

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

/// A Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensityMatrixFile", into = "DensityMatrixFile")]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct DensityMatrixFile {
    pub(crate) dim: usize,
    pub(crate) entries: Vec<Vec<Complex64>>,
}

impl DensityMatrixFile {
    pub(crate) fn into_matrix(self) -> Result<DMatrix<Complex64>> {
        check_dim(self.dim)?;
        same_dim(self.dim, self.entries.len())?;
        for row in &self.entries {
            same_dim(self.dim, row.len())?;
        }
        Ok(DMatrix::from_fn(self.dim, self.dim, |i, j| self.entries[i][j]))
    }

    pub(crate) fn from_matrix(m: &DMatrix<Complex64>) -> Self {
        DensityMatrixFile {
            dim: m.nrows(),
            entries: m.row_iter().map(|r| r.iter().copied().collect()).collect(),
        }
    }
}

impl TryFrom<DensityMatrixFile> for DensityMatrix {
    type Error = Error;

    fn try_from(file: DensityMatrixFile) -> Result<Self> {
        DensityMatrix::new(file.into_matrix()?)
    }
}

impl From<DensityMatrix> for DensityMatrixFile {
    fn from(rho: DensityMatrix) -> Self {
        DensityMatrixFile::from_matrix(&rho.entries)
    }
}

impl DensityMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        Self::new_with(entries, &Tolerances::DEFAULT)
    }

    pub fn new_with(entries: DMatrix<Complex64>, tol: &Tolerances) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                found: entries.ncols(),
            });
        }
        check_dim(entries.nrows())?;
        let herm = hermitian_deviation(&entries);
        if herm > tol.hermitian {
            return Err(Error::NotHermitian(herm));
        }
        let trace = entries.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > tol.norm {
            return Err(Error::InvalidTrace(trace.re));
        }
        let min = hermitian_eigenvalues(&entries)?[0];
        if min < -tol.psd {
            return Err(Error::NotPositive(min));
        }
        Ok(DensityMatrix { entries })
    }

    /// I/dim.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(DensityMatrix {
            entries: DMatrix::identity(dim, dim).unscale(dim as f64),
        })
    }

    /// |s⟩⟨s|.
    pub fn pure(s: &StateVector) -> Self {
        let a = s.amplitudes();
        DensityMatrix {
            entries: a * a.adjoint(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.entries)
    }

    /// ⟨x|ρ|y⟩.
    pub fn element(&self, x: &StateVector, y: &StateVector) -> Result<Complex64> {
        x.sandwich(&self.entries, y)
    }

    /// Born probability ⟨x|ρ|x⟩.
    pub fn probability(&self, x: &StateVector) -> Result<f64> {
        Ok(self.element(x, x)?.re)
    }

    pub fn frobenius_distance(&self, other: &DensityMatrix) -> Result<f64> {
        same_dim(self.dim(), other.dim())?;
        Ok((&self.entries - &other.entries).norm())
    }
}

/// |s⟩⟨s| for a normalized state.
pub fn pure_density(s: &StateVector) -> DensityMatrix {
    DensityMatrix::pure(s)
}

/// A seeded random mixture of `rank` Haar-random pure states with
/// Dirichlet(1, …, 1) weights.
pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    check_dim(dim)?;
    if rank == 0 || rank > dim {
        return Err(Error::InvalidRank { rank, dim });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<f64> = (0..rank).map(|_| Exp1.sample(&mut rng)).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);

    let mut entries = DMatrix::zeros(dim, dim);
    for w in weights {
        let psi = StateVector::random(dim, &mut rng)?;
        let a = psi.amplitudes();
        entries += (a * a.adjoint()).scale(w);
    }
    // Restore exact Hermitian symmetry lost to rounding.
    let entries = (&entries + entries.adjoint()).unscale(2.0);
    DensityMatrix::new(entries)
}

// ---------------------------------------------------------------------------
// OrthonormalBasis
// ---------------------------------------------------------------------------

/// An ordered orthonormal basis with a human-readable label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BasisFile", into = "BasisFile")]
pub struct OrthonormalBasis {
    label: String,
    vectors: Vec<StateVector>,
}

#[derive(Serialize, Deserialize)]
struct BasisFile {
    label: String,
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl TryFrom<BasisFile> for OrthonormalBasis {
    type Error = Error;

    fn try_from(file: BasisFile) -> Result<Self> {
        same_dim(file.dim, file.vectors.len())?;
        let tol = Tolerances::DEFAULT;
        let vectors = file
            .vectors
            .into_iter()
            .map(|v| {
                same_dim(file.dim, v.len())?;
                StateVector::from_normalized(v, &tol)
            })
            .collect::<Result<Vec<_>>>()?;
        OrthonormalBasis::new(file.label, vectors)
    }
}

impl From<OrthonormalBasis> for BasisFile {
    fn from(b: OrthonormalBasis) -> Self {
        BasisFile {
            dim: b.dim(),
            vectors: b
                .vectors
                .iter()
                .map(|v| v.amplitudes().iter().copied().collect())
                .collect(),
            label: b.label,
        }
    }
}

impl OrthonormalBasis {
    pub fn new(label: impl Into<String>, vectors: Vec<StateVector>) -> Result<Self> {
        Self::new_with(label, vectors, &Tolerances::DEFAULT)
    }

    pub fn new_with(label: impl Into<String>, vectors: Vec<StateVector>, tol: &Tolerances) -> Result<Self> {
        let dim = vectors.first().map(StateVector::dim).unwrap_or(0);
        check_dim(dim)?;
        same_dim(dim, vectors.len())?;
        for v in &vectors {
            same_dim(dim, v.dim())?;
        }
        let basis = OrthonormalBasis {
            label: label.into(),
            vectors,
        };
        let gram = basis.matrix().adjoint() * basis.matrix();
        let deviation = max_abs(&(gram - DMatrix::<Complex64>::identity(dim, dim)));
        if deviation > tol.orthonormal {
            return Err(Error::NotOrthonormal(deviation));
        }
        Ok(basis)
    }

    /// Builds a basis from the columns of a unitary matrix.
    pub fn from_columns(label: impl Into<String>, m: &DMatrix<Complex64>) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        let vectors = m
            .column_iter()
            .map(|c| StateVector::from_normalized(c.iter().copied().collect(), &tol))
            .collect::<Result<Vec<_>>>()?;
        Self::new(label, vectors)
    }

    pub fn computational(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let vectors = (0..dim)
            .map(|k| StateVector::basis(dim, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrthonormalBasis {
            label: "computational".into(),
            vectors,
        })
    }

    /// Discrete Fourier basis: vector m has amplitude e^{i·m·2πk/dim}/√dim at index k.
    pub fn fourier(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let scale = (dim as f64).sqrt().recip();
        let vectors = (0..dim)
            .map(|m| StateVector {
                amplitudes: DVector::from_fn(dim, |k, _| {
                    // Reduce m·k modulo dim so the phase argument stays small.
                    let phase = 2.0 * PI * ((m * k) % dim) as f64 / dim as f64;
                    Complex64::from_polar(scale, phase)
                }),
            })
            .collect();
        Ok(OrthonormalBasis {
            label: "fourier".into(),
            vectors,
        })
    }

    /// Sylvester–Hadamard basis; `dim` must be a power of two.
    pub fn hadamard(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if !dim.is_power_of_two() {
            return Err(Error::UnsupportedDimension(dim));
        }
        let scale = (dim as f64).sqrt().recip();
        let vectors = (0..dim)
            .map(|j| StateVector {
                amplitudes: DVector::from_fn(dim, |k, _| {
                    let sign = if (j & k).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    Complex64::new(sign * scale, 0.0)
                }),
            })
            .collect();
        Ok(OrthonormalBasis {
            label: "hadamard".into(),
            vectors,
        })
    }

    /// Haar-random basis from Gram–Schmidt on complex Gaussian vectors.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        check_dim(dim)?;
        let mut columns: Vec<DVector<Complex64>> = Vec::with_capacity(dim);
        while columns.len() < dim {
            let mut v = DVector::from_fn(dim, |_, _| standard_normal_complex(rng));
            // Two passes of modified Gram–Schmidt keep orthogonality at roundoff level.
            for _ in 0..2 {
                for c in &columns {
                    let proj = c.dotc(&v);
                    v -= c * proj;
                }
            }
            let norm = v.norm();
            if norm > 1e-6 {
                columns.push(v.unscale(norm));
            }
        }
        Ok(OrthonormalBasis {
            label: "random".into(),
            vectors: columns
                .into_iter()
                .map(|amplitudes| StateVector { amplitudes })
                .collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> &StateVector {
        &self.vectors[k]
    }

    /// Unitary whose k-th column is the k-th basis vector.
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |i, k| self.vectors[k].amplitude(i))
    }

    /// Applies a unitary to every vector.
    pub fn transformed(&self, u: &DMatrix<Complex64>, label: impl Into<String>) -> Result<Self> {
        same_dim(self.dim(), u.nrows())?;
        Self::from_columns(label, &(u * self.matrix()))
    }
}

pub fn fourier_basis(dim: usize) -> Result<OrthonormalBasis> {
    OrthonormalBasis::fourier(dim)
}

// ---------------------------------------------------------------------------
// Observable
// ---------------------------------------------------------------------------

/// A Hermitian operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensityMatrixFile", into = "DensityMatrixFile")]
pub struct Observable {
    matrix: DMatrix<Complex64>,
}

impl TryFrom<DensityMatrixFile> for Observable {
    type Error = Error;

    fn try_from(file: DensityMatrixFile) -> Result<Self> {
        Observable::new(file.into_matrix()?)
    }
}

impl From<Observable> for DensityMatrixFile {
    fn from(o: Observable) -> Self {
        DensityMatrixFile::from_matrix(&o.matrix)
    }
}

impl Observable {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        Self::new_with(matrix, &Tolerances::DEFAULT)
    }

    pub fn new_with(matrix: DMatrix<Complex64>, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        check_dim(matrix.nrows())?;
        let dev = hermitian_deviation(&matrix);
        if dev > tol.hermitian {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Observable { matrix })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Observable {
            matrix: DMatrix::identity(dim, dim),
        })
    }

    pub fn pauli_x() -> Self {
        Observable { matrix: pauli::x() }
    }

    pub fn pauli_y() -> Self {
        Observable { matrix: pauli::y() }
    }

    pub fn pauli_z() -> Self {
        Observable { matrix: pauli::z() }
    }

    /// Random Hermitian matrix (GUE-like).
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        check_dim(dim)?;
        let g = DMatrix::from_fn(dim, dim, |_, _| standard_normal_complex(rng));
        Ok(Observable {
            matrix: (&g + g.adjoint()).unscale(2.0),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Eigenvalues and orthonormal eigenvectors (as matrix columns).
    pub fn eigen(&self) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
        let eig = SymmetricEigen::try_new(self.matrix.clone(), f64::EPSILON, 0).ok_or(Error::Eigendecomposition)?;
        Ok((eig.eigenvalues.iter().copied().collect(), eig.eigenvectors))
    }
}

/// 2×2 Pauli matrices.
pub mod pauli {
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    const O: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const I: Complex64 = Complex64::new(0.0, 1.0);

    pub fn x() -> DMatrix<Complex64> {
        DMatrix::from_row_slice(2, 2, &[O, ONE, ONE, O])
    }

    pub fn y() -> DMatrix<Complex64> {
        DMatrix::from_row_slice(2, 2, &[O, -I, I, O])
    }

    pub fn z() -> DMatrix<Complex64> {
        DMatrix::from_row_slice(2, 2, &[ONE, O, O, -ONE])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn plus() -> StateVector {
        make_state(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap()
    }

    fn plus_i() -> StateVector {
        make_state(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn make_state_normalizes() {
        let zero = make_state(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(zero.amplitude(0), c(1.0, 0.0));
        assert_eq!(zero.amplitude(1), c(0.0, 0.0));

        let p = plus();
        assert_abs_diff_eq!(p.amplitude(0).re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(p.amplitude(1).re, FRAC_1_SQRT_2, epsilon = 1e-15);

        assert!(matches!(
            make_state(vec![c(0.0, 0.0), c(0.0, 0.0)]),
            Err(Error::ZeroVector(_))
        ));
        assert!(matches!(make_state(vec![]), Err(Error::UnsupportedDimension(0))));
    }

    #[test]
    fn overlap_examples() {
        let zero = StateVector::basis(2, 0).unwrap();
        assert_eq!(overlap(&zero, &zero).unwrap(), c(1.0, 0.0));
        assert_abs_diff_eq!(overlap(&zero, &plus()).unwrap().re, FRAC_1_SQRT_2, epsilon = 1e-15);
        let z = overlap(&plus(), &plus_i()).unwrap();
        assert_abs_diff_eq!(z.re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(z.im, 0.5, epsilon = 1e-15);

        let three = StateVector::basis(3, 0).unwrap();
        assert!(matches!(
            overlap(&zero, &three),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn pure_density_examples() {
        let zero = StateVector::basis(2, 0).unwrap();
        let rho = pure_density(&zero);
        assert_eq!(rho.entries()[(0, 0)], c(1.0, 0.0));
        assert_eq!(rho.entries()[(1, 1)], c(0.0, 0.0));

        let rho = pure_density(&plus());
        for z in rho.entries().iter() {
            assert_abs_diff_eq!(z.re, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-15);
        }

        let rho = pure_density(&plus_i());
        let e = rho.entries();
        assert_abs_diff_eq!((e[(0, 1)] - c(0.0, -0.5)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((e[(1, 0)] - c(0.0, 0.5)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e[(0, 0)].re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn fourier_examples() {
        let one = fourier_basis(1).unwrap();
        assert_eq!(one.vector(0).amplitude(0), c(1.0, 0.0));

        let two = fourier_basis(2).unwrap();
        assert_abs_diff_eq!(
            (two.vector(1).amplitude(1) - c(-FRAC_1_SQRT_2, 0.0)).norm(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            (two.vector(0).amplitude(1) - c(FRAC_1_SQRT_2, 0.0)).norm(),
            0.0,
            epsilon = 1e-15
        );

        let four = fourier_basis(4).unwrap();
        let comp = OrthonormalBasis::computational(4).unwrap();
        for f in four.vectors() {
            for e in comp.vectors() {
                assert_abs_diff_eq!(overlap(e, f).unwrap().norm(), 0.5, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn hadamard_requires_power_of_two() {
        assert!(OrthonormalBasis::hadamard(8).is_ok());
        assert!(matches!(
            OrthonormalBasis::hadamard(6),
            Err(Error::UnsupportedDimension(6))
        ));
    }

    #[test]
    fn random_density_examples() {
        let rho = random_density(2, 1, 7).unwrap();
        assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-12);
        let ev = rho.eigenvalues().unwrap();
        assert!(ev[0] >= -1e-9);
        assert_abs_diff_eq!(ev[1], 1.0, epsilon = 1e-10);

        let full = random_density(4, 4, 1).unwrap();
        assert_abs_diff_eq!(full.trace().re, 1.0, epsilon = 1e-12);
        assert!(full.eigenvalues().unwrap()[0] > 0.0);

        assert_eq!(random_density(4, 2, 99).unwrap(), random_density(4, 2, 99).unwrap());
        assert!(matches!(random_density(3, 0, 1), Err(Error::InvalidRank { .. })));
        assert!(matches!(random_density(3, 4, 1), Err(Error::InvalidRank { .. })));
    }

    #[test]
    fn density_rejects_bad_matrices() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::InvalidTrace(_))));
        let m = DMatrix::from_row_slice(2, 2, &[c(1.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotPositive(_))));
    }

    #[test]
    fn basis_rejects_non_orthogonal() {
        let v = vec![StateVector::basis(2, 0).unwrap(), plus()];
        assert!(matches!(OrthonormalBasis::new("bad", v), Err(Error::NotOrthonormal(_))));
    }

    #[test]
    fn json_layout() {
        let s = plus_i();
        let json = serde_json::to_value(&s).unwrap();
        assert_eq!(json["dim"], 2);
        assert_abs_diff_eq!(
            json["amplitudes"][1][1].as_f64().unwrap(),
            FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        let back: StateVector = serde_json::from_value(json).unwrap();
        assert_eq!(back, s);

        let rho = pure_density(&s);
        let json = serde_json::to_value(&rho).unwrap();
        assert_abs_diff_eq!(json["entries"][0][1][1].as_f64().unwrap(), -0.5, epsilon = 1e-15);
        let back: DensityMatrix = serde_json::from_value(json).unwrap();
        assert_eq!(back, rho);

        let bad = r#"{"dim": 2, "amplitudes": [[1.0, 0.0], [1.0, 0.0]]}"#;
        assert!(serde_json::from_str::<StateVector>(bad).is_err());
    }
}
