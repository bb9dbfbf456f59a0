//! Loading input files with the run's tolerances.

use std::path::Path;

use kirkwood::coxaudit::{trace_curve, ComplexCurve};
use kirkwood::hilbert::{DensityMatrix, Observable, OrthonormalBasis, StateVector};
use kirkwood::nalgebra::DMatrix;
use kirkwood::{Complex64, Tolerances};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

fn dim_mismatch(expected: usize, found: usize) -> CliError {
    kirkwood::Error::DimensionMismatch { expected, found }.into()
}

#[derive(Deserialize)]
struct MatrixFile {
    dim: usize,
    entries: Vec<Vec<Complex64>>,
}

impl MatrixFile {
    fn into_matrix(self) -> CliResult<DMatrix<Complex64>> {
        if self.entries.len() != self.dim {
            return Err(dim_mismatch(self.dim, self.entries.len()));
        }
        if let Some(row) = self.entries.iter().find(|r| r.len() != self.dim) {
            return Err(dim_mismatch(self.dim, row.len()));
        }
        Ok(DMatrix::from_fn(self.dim, self.dim, |i, j| self.entries[i][j]))
    }
}

#[derive(Deserialize)]
struct StateFile {
    dim: usize,
    amplitudes: Vec<Complex64>,
}

#[derive(Deserialize)]
struct BasisFile {
    label: String,
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
}

/// A curve file: `points` (or `values`) with a strictly increasing `param`.
#[derive(Deserialize)]
struct CurveFile {
    #[serde(default)]
    label: Option<String>,
    param: Vec<f64>,
    #[serde(alias = "values")]
    points: Vec<Complex64>,
}

pub fn density(path: &Path, tol: &Tolerances) -> CliResult<DensityMatrix> {
    let m = read_json::<MatrixFile>(path)?.into_matrix()?;
    Ok(DensityMatrix::new_with(m, tol)?)
}

pub fn observable(path: &Path, tol: &Tolerances) -> CliResult<Observable> {
    let m = read_json::<MatrixFile>(path)?.into_matrix()?;
    Ok(Observable::new_with(m, tol)?)
}

pub fn state(path: &Path, tol: &Tolerances) -> CliResult<StateVector> {
    let file: StateFile = read_json(path)?;
    if file.amplitudes.len() != file.dim {
        return Err(dim_mismatch(file.dim, file.amplitudes.len()));
    }
    Ok(StateVector::from_normalized(file.amplitudes, tol)?)
}

/// A built-in basis name or a basis JSON file.
pub fn basis(name: &str, dim: usize, tol: &Tolerances) -> CliResult<OrthonormalBasis> {
    match name {
        "computational" => Ok(OrthonormalBasis::computational(dim)?),
        "fourier" => Ok(OrthonormalBasis::fourier(dim)?),
        "hadamard" => Ok(OrthonormalBasis::hadamard(dim)?),
        path => {
            let file: BasisFile = read_json(Path::new(path))?;
            if file.vectors.len() != file.dim {
                return Err(dim_mismatch(file.dim, file.vectors.len()));
            }
            let vectors = file
                .vectors
                .into_iter()
                .map(|v| {
                    if v.len() != file.dim {
                        return Err(dim_mismatch(file.dim, v.len()));
                    }
                    Ok(StateVector::from_normalized(v, tol)?)
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(OrthonormalBasis::new_with(file.label, vectors, tol)?)
        }
    }
}

pub fn curve(path: &Path, tol: &Tolerances) -> CliResult<ComplexCurve> {
    let file: CurveFile = read_json(path)?;
    let label = file.label.unwrap_or_else(|| path.display().to_string());
    Ok(trace_curve(&file.points, &file.param, &label, tol)?)
}
