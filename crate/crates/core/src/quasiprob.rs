//! Kirkwood quasiprobabilities, conditional Kirkwood distributions, weak
//! values, marginals, density-matrix reconstruction and the classical Bayes
//! update they are contrasted with.
//!
//! Quasiprobability objects are deliberately named `kirkwood`: their values
//! are complex and, as the `coxaudit` module shows, do not rank plausibility.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, Observable, OrthonormalBasis, StateVector};
use crate::tolerance::Tolerances;

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// KirkwoodMatrix
// ---------------------------------------------------------------------------

/// Joint Kirkwood table K(a,b) = ⟨b|a⟩⟨a|ρ|b⟩ over two bases.
#[derive(Debug, Clone, PartialEq)]
pub struct KirkwoodMatrix {
    values: DMatrix<Complex64>,
    basis_a: OrthonormalBasis,
    basis_b: OrthonormalBasis,
}

/// Serialized form: bases are referenced by label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KirkwoodFile {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimB")]
    pub dim_b: usize,
    pub values: Vec<Vec<Complex64>>,
    #[serde(rename = "basisA")]
    pub basis_a: String,
    #[serde(rename = "basisB")]
    pub basis_b: String,
}

impl KirkwoodMatrix {
    /// Wraps a measured or stored table, checking the sum rules.
    pub fn from_parts(
        values: DMatrix<Complex64>,
        basis_a: OrthonormalBasis,
        basis_b: OrthonormalBasis,
        tol: &Tolerances,
    ) -> Result<Self> {
        same_dim(basis_a.dim(), values.nrows())?;
        same_dim(basis_b.dim(), values.ncols())?;
        let total: Complex64 = values.iter().sum();
        if (total - Complex64::new(1.0, 0.0)).norm() > tol.norm {
            return Err(Error::InvariantViolation(format!("Kirkwood values sum to {total}")));
        }
        for (a, row) in values.row_iter().enumerate() {
            let s: Complex64 = row.iter().sum();
            if s.im.abs() > tol.norm {
                return Err(Error::ImaginaryResidue {
                    index: a,
                    residue: s.im.abs(),
                });
            }
        }
        for (b, col) in values.column_iter().enumerate() {
            let s: Complex64 = col.iter().sum();
            if s.im.abs() > tol.norm {
                return Err(Error::ImaginaryResidue {
                    index: b,
                    residue: s.im.abs(),
                });
            }
        }
        Ok(KirkwoodMatrix {
            values,
            basis_a,
            basis_b,
        })
    }

    pub fn from_file(file: KirkwoodFile, basis_a: OrthonormalBasis, basis_b: OrthonormalBasis) -> Result<Self> {
        same_dim(file.dim_a, file.values.len())?;
        for row in &file.values {
            same_dim(file.dim_b, row.len())?;
        }
        let values = DMatrix::from_fn(file.dim_a, file.dim_b, |a, b| file.values[a][b]);
        Self::from_parts(values, basis_a, basis_b, &Tolerances::DEFAULT)
    }

    pub fn to_file(&self) -> KirkwoodFile {
        KirkwoodFile {
            dim_a: self.dim_a(),
            dim_b: self.dim_b(),
            values: self.values.row_iter().map(|r| r.iter().copied().collect()).collect(),
            basis_a: self.basis_a.label().to_owned(),
            basis_b: self.basis_b.label().to_owned(),
        }
    }

    /// `(a_index, b_index, re, im)` in row-major order.
    pub fn csv_rows(&self) -> impl Iterator<Item = (usize, usize, f64, f64)> + '_ {
        (0..self.dim_a()).flat_map(move |a| {
            (0..self.dim_b()).map(move |b| {
                let z = self.values[(a, b)];
                (a, b, z.re, z.im)
            })
        })
    }

    pub fn dim_a(&self) -> usize {
        self.values.nrows()
    }

    pub fn dim_b(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> &DMatrix<Complex64> {
        &self.values
    }

    pub fn get(&self, a: usize, b: usize) -> Complex64 {
        self.values[(a, b)]
    }

    pub fn basis_a(&self) -> &OrthonormalBasis {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &OrthonormalBasis {
        &self.basis_b
    }

    pub fn total(&self) -> Complex64 {
        self.values.iter().sum()
    }
}

impl Serialize for KirkwoodMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(serializer)
    }
}

/// K(a,b) = ⟨b|a⟩⟨a|ρ|b⟩ for every pair of basis vectors.
pub fn kirkwood(rho: &DensityMatrix, basis_a: &OrthonormalBasis, basis_b: &OrthonormalBasis) -> Result<KirkwoodMatrix> {
    same_dim(rho.dim(), basis_a.dim())?;
    same_dim(rho.dim(), basis_b.dim())?;
    let a = basis_a.matrix();
    let b = basis_b.matrix();
    // elements[(a, b)] = ⟨a|ρ|b⟩, overlaps[(b, a)] = ⟨b|a⟩
    let elements = a.adjoint() * rho.entries() * &b;
    let overlaps = b.adjoint() * &a;
    let values = DMatrix::from_fn(basis_a.dim(), basis_b.dim(), |i, j| overlaps[(j, i)] * elements[(i, j)]);
    Ok(KirkwoodMatrix {
        values,
        basis_a: basis_a.clone(),
        basis_b: basis_b.clone(),
    })
}

// ---------------------------------------------------------------------------
// Marginals
// ---------------------------------------------------------------------------

/// A real probability vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ClassicalDistribution {
    probs: Vec<f64>,
}

impl TryFrom<Vec<f64>> for ClassicalDistribution {
    type Error = Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        ClassicalDistribution::new(probs)
    }
}

impl From<ClassicalDistribution> for Vec<f64> {
    fn from(d: ClassicalDistribution) -> Self {
        d.probs
    }
}

impl ClassicalDistribution {
    /// Entries must be non-negative and sum to 1 within 1e−12.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::with_sum_tolerance(probs, 1e-12)
    }

    /// Entries in (−tol, 0) are clamped to zero.
    pub fn with_sum_tolerance(mut probs: Vec<f64>, tol: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        for (k, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() || *p < -tol {
                return Err(Error::InvalidDistribution(format!("entry {k} = {p}")));
            }
            *p = p.max(0.0);
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::InvalidDistribution(format!("entries sum to {sum}")));
        }
        Ok(ClassicalDistribution { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Kronecker delta at `index`.
    pub fn delta(n: usize, index: usize) -> Result<Self> {
        let mut probs = vec![0.0; n];
        *probs
            .get_mut(index)
            .ok_or_else(|| Error::InvalidDistribution(format!("index {index} out of range")))? = 1.0;
        Self::new(probs)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// A marginal together with the imaginary part that was discarded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Marginal {
    pub distribution: ClassicalDistribution,
    pub max_imaginary_residue: f64,
}

fn marginal(sums: Vec<Complex64>, tol: &Tolerances) -> Result<Marginal> {
    let mut residue = 0.0f64;
    for (index, s) in sums.iter().enumerate() {
        if s.im.abs() >= tol.imaginary_residue {
            return Err(Error::ImaginaryResidue {
                index,
                residue: s.im.abs(),
            });
        }
        residue = residue.max(s.im.abs());
    }
    let distribution = ClassicalDistribution::with_sum_tolerance(sums.iter().map(|s| s.re).collect(), tol.norm)?;
    Ok(Marginal {
        distribution,
        max_imaginary_residue: residue,
    })
}

/// p(a) = Σ_b K(a,b) = ⟨a|ρ|a⟩.
pub fn marginal_over_b(k: &KirkwoodMatrix, tol: &Tolerances) -> Result<Marginal> {
    marginal(k.values.row_iter().map(|r| r.iter().sum()).collect(), tol)
}

/// p(b) = Σ_a K(a,b) = ⟨b|ρ|b⟩.
pub fn marginal_over_a(k: &KirkwoodMatrix, tol: &Tolerances) -> Result<Marginal> {
    marginal(k.values.column_iter().map(|c| c.iter().sum()).collect(), tol)
}

// ---------------------------------------------------------------------------
// Conditional Kirkwood and weak values
// ---------------------------------------------------------------------------

/// K(m|a,b) = ⟨b|m⟩⟨m|a⟩/⟨b|a⟩ over a basis {m}.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalKirkwood {
    pub values: Vec<Complex64>,
    pub pre: StateVector,
    pub post: StateVector,
    pub basis: OrthonormalBasis,
}

impl ConditionalKirkwood {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn total(&self) -> Complex64 {
        self.values.iter().sum()
    }
}

fn postselection_overlap(pre: &StateVector, post: &StateVector, tol: &Tolerances) -> Result<Complex64> {
    let denom = post.overlap(pre)?;
    if denom.norm() < tol.overlap {
        return Err(Error::NearOrthogonalPostSelection(denom.norm()));
    }
    Ok(denom)
}

pub fn conditional_kirkwood(
    basis: &OrthonormalBasis,
    pre: &StateVector,
    post: &StateVector,
    tol: &Tolerances,
) -> Result<ConditionalKirkwood> {
    same_dim(basis.dim(), pre.dim())?;
    same_dim(basis.dim(), post.dim())?;
    let denom = postselection_overlap(pre, post, tol)?;
    let values = basis
        .vectors()
        .iter()
        .map(|m| Ok(post.overlap(m)? * m.overlap(pre)? / denom))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionalKirkwood {
        values,
        pre: pre.clone(),
        post: post.clone(),
        basis: basis.clone(),
    })
}

/// A_w = ⟨b|A|a⟩/⟨b|a⟩.
pub fn weak_value(
    observable: &Observable,
    pre: &StateVector,
    post: &StateVector,
    tol: &Tolerances,
) -> Result<Complex64> {
    same_dim(observable.dim(), pre.dim())?;
    same_dim(observable.dim(), post.dim())?;
    let denom = postselection_overlap(pre, post, tol)?;
    Ok(post.sandwich(observable.matrix(), pre)? / denom)
}

// ---------------------------------------------------------------------------
// Reconstruction
// ---------------------------------------------------------------------------

/// Recovers ρ from its Kirkwood table.
///
/// The matrix element is ⟨a|ρ|b⟩ = K(a,b)/⟨b|a⟩, which is the orientation
/// that makes `kirkwood(reconstruct_density(K), A, B) == K`.
pub fn reconstruct_density(k: &KirkwoodMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
    same_dim(k.dim_a(), k.dim_b())?;
    let a = k.basis_a.matrix();
    let b = k.basis_b.matrix();
    let overlaps = b.adjoint() * &a;
    let mut elements = DMatrix::zeros(k.dim_a(), k.dim_b());
    for i in 0..k.dim_a() {
        for j in 0..k.dim_b() {
            let o = overlaps[(j, i)];
            if o.norm() < tol.overlap {
                return Err(Error::VanishingOverlap {
                    a: i,
                    b: j,
                    magnitude: o.norm(),
                });
            }
            elements[(i, j)] = k.values[(i, j)] / o;
        }
    }
    let rho = &a * elements * b.adjoint();
    DensityMatrix::new_with(rho, tol).map_err(|e| Error::InvariantViolation(e.to_string()))
}

// ---------------------------------------------------------------------------
// Bayes
// ---------------------------------------------------------------------------

/// How the normalizing p(b) is supplied to [`bayes_update`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evidence {
    Given(f64),
    Computed,
}

/// p(a) → p(a|b) = p(a)·p(b|a)/p(b).
pub fn bayes_update(
    prior: &ClassicalDistribution,
    likelihood: &[f64],
    evidence: Evidence,
    tol: &Tolerances,
) -> Result<ClassicalDistribution> {
    same_dim(prior.len(), likelihood.len())?;
    if let Some((k, l)) = likelihood
        .iter()
        .enumerate()
        .find(|(_, l)| !l.is_finite() || **l < 0.0 || **l > 1.0)
    {
        return Err(Error::InvalidDistribution(format!("likelihood entry {k} = {l}")));
    }
    let computed: f64 = prior.probs().iter().zip(likelihood).map(|(p, l)| p * l).sum();
    let evidence = match evidence {
        Evidence::Given(e) => {
            if e > 0.0 && (e - computed).abs() > tol.evidence {
                return Err(Error::InconsistentEvidence { given: e, computed });
            }
            e
        }
        Evidence::Computed => computed,
    };
    if !(evidence > 0.0) {
        return Err(Error::ZeroEvidence(evidence));
    }
    let posterior = prior
        .probs()
        .iter()
        .zip(likelihood)
        .map(|(p, l)| p * l / evidence)
        .collect();
    ClassicalDistribution::with_sum_tolerance(posterior, tol.evidence.max(1e-12))
}
