//! Projector representation of PCA structures.
//!
//! A rank-k structure is represented by the symmetric idempotent matrix
//! rho_k = sum of e_i (x) e_i over the top k components. The representation
//! is invariant to eigenvector signs and to the basis chosen inside
//! degenerate eigenspaces, which makes Frobenius distances between
//! structures meaningful.

use nalgebra::{DMatrix, DVector};

use crate::core::dataset::Dataset;
use crate::core::eigen::EigenDecomposition;
use crate::error::{Error, Result};

const ORTHONORMAL_TOL: f64 = 1e-8;

/// Symmetric rank-k orthogonal projector.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    entries: DMatrix<f64>,
    rank: usize,
}

impl Projector {
    pub fn m(&self) -> usize {
        self.entries.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

/// The nested sequence rho_1, ..., rho_{m-1} describing a full
/// decomposition (rho_m = I is implied and omitted).
#[derive(Debug, Clone)]
pub struct Cortege {
    projectors: Vec<Projector>,
}

impl Cortege {
    pub fn from_decomposition(decomposition: &EigenDecomposition) -> Result<Self> {
        let m = decomposition.m();
        let mut projectors = Vec::with_capacity(m.saturating_sub(1));
        for k in 1..m {
            projectors.push(projector_from_matrix(&decomposition.top_k(k))?);
        }
        Ok(Cortege { projectors })
    }

    pub fn projectors(&self) -> &[Projector] {
        &self.projectors
    }
}

fn check_orthonormal(basis: &DMatrix<f64>) -> Result<()> {
    let k = basis.ncols();
    let gram = basis.transpose() * basis;
    let mut worst = 0.0f64;
    for a in 0..k {
        for b in 0..k {
            let expected = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((gram[(a, b)] - expected).abs());
        }
    }
    if worst > ORTHONORMAL_TOL {
        return Err(Error::InvalidInput(format!(
            "vectors are not orthonormal: worst Gram deviation {worst:.3e}"
        )));
    }
    Ok(())
}

/// Builds rho_k = E E^T from an m-by-k matrix of orthonormal columns.
pub fn projector_from_matrix(basis: &DMatrix<f64>) -> Result<Projector> {
    let k = basis.ncols();
    if k == 0 || k > basis.nrows() {
        return Err(Error::InvalidInput(format!(
            "need 1..=m basis vectors, got {k} in dimension {}",
            basis.nrows()
        )));
    }
    check_orthonormal(basis)?;
    let mut entries = basis * basis.transpose();
    let m = entries.nrows();
    for a in 0..m {
        for b in (a + 1)..m {
            let s = 0.5 * (entries[(a, b)] + entries[(b, a)]);
            entries[(a, b)] = s;
            entries[(b, a)] = s;
        }
    }
    Ok(Projector { entries, rank: k })
}

/// Builds rho_k from a slice of orthonormal vectors.
pub fn projector_from_vectors(vectors: &[DVector<f64>]) -> Result<Projector> {
    if vectors.is_empty() {
        return Err(Error::InvalidInput("no basis vectors given".into()));
    }
    let m = vectors[0].len();
    if vectors.iter().any(|v| v.len() != m) {
        return Err(Error::InvalidInput("basis vectors of mixed length".into()));
    }
    let mut basis = DMatrix::zeros(m, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        basis.set_column(j, v);
    }
    projector_from_matrix(&basis)
}

/// Frobenius distance between two projectors of the same dimension.
pub fn projector_distance(a: &Projector, b: &Projector) -> Result<f64> {
    if a.m() != b.m() {
        return Err(Error::InvalidInput(format!(
            "projector dimension mismatch: {} vs {}",
            a.m(),
            b.m()
        )));
    }
    Ok((a.entries() - b.entries()).norm())
}

/// Projects every dataset row onto the projector's subspace.
pub fn apply_projector(p: &Projector, data: &Dataset) -> Result<DMatrix<f64>> {
    if p.m() != data.m() {
        return Err(Error::InvalidInput(format!(
            "projector dimension {} does not match data dimension {}",
            p.m(),
            data.m()
        )));
    }
    Ok(data.values() * p.entries())
}
