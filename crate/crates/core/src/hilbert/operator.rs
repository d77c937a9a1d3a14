//! Linear operators over a [`ModeBasis`].

use std::sync::Arc;

use nalgebra::DMatrix;

use super::basis::{tensor_basis, ModeBasis};
use super::eigen::max_abs;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::C64;

/// Square complex matrix tied to a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    basis: Arc<ModeBasis>,
    matrix: DMatrix<C64>,
}

impl Operator {
    pub fn new(basis: Arc<ModeBasis>, matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() != basis.len() || matrix.ncols() != basis.len() {
            return Err(Error::BasisMismatch {
                expected: basis.len(),
                found: matrix.nrows(),
            });
        }
        Ok(Self { basis, matrix })
    }

    pub fn identity(basis: Arc<ModeBasis>) -> Self {
        let n = basis.len();
        Self {
            basis,
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn basis(&self) -> &Arc<ModeBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            basis: self.basis.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// `‖U†U − I‖_max`; zero for exactly unitary operators.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim();
        let product = self.matrix.adjoint() * &self.matrix;
        max_abs(&(product - DMatrix::<C64>::identity(n, n)))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(Self {
            basis: self.basis.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if self.basis.labels() != state.basis().labels() {
            return Err(Error::BasisMismatch {
                expected: self.basis.len(),
                found: state.dim(),
            });
        }
        Ok(StateVector::from_raw(
            self.basis.clone(),
            &self.matrix * state.amplitudes(),
        ))
    }

    /// Kronecker product over the concatenated basis, row-major by
    /// (self index, other index). Operands must have disjoint label sets.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let basis = tensor_basis(&self.basis, &other.basis)?;
        let matrix = self.matrix.kronecker(&other.matrix);
        Ok(Self { basis, matrix })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_basis(other)?;
        Ok(Self {
            basis: self.basis.clone(),
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            basis: self.basis.clone(),
            matrix: self.matrix.map(|e| e * factor),
        }
    }

    /// Sub-operator over the given basis indices (rows and columns alike).
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let basis = self.basis.select(indices)?;
        let n = indices.len();
        let mut matrix = DMatrix::zeros(n, n);
        for (r, &i) in indices.iter().enumerate() {
            for (c, &j) in indices.iter().enumerate() {
                matrix[(r, c)] = self.matrix[(i, j)];
            }
        }
        Ok(Self { basis, matrix })
    }

    /// Restriction to the logical register encoded in the basis.
    pub fn restrict_to_logical(&self) -> Result<Self> {
        self.restrict(&self.basis.logical_indices().to_vec())
    }

    fn check_basis(&self, other: &Self) -> Result<()> {
        if self.basis.labels() != other.basis.labels() {
            return Err(Error::BasisMismatch {
                expected: self.basis.len(),
                found: other.basis.len(),
            });
        }
        Ok(())
    }
}

/// True when `u = e^{i phi} v` within `tol` in the max norm; returns `phi`.
///
/// The phase is read off the largest-magnitude entry of `v`, so the check is
/// insensitive to which entry of a permutation-like matrix happens to be
/// nonzero.
pub fn equal_up_to_global_phase(u: &Operator, v: &Operator, tol: f64) -> Option<f64> {
    if u.basis().labels() != v.basis().labels() {
        return None;
    }
    let m_u = u.matrix();
    let m_v = v.matrix();
    let mut best = (0usize, 0usize);
    let mut best_norm = -1.0;
    for r in 0..m_v.nrows() {
        for c in 0..m_v.ncols() {
            let n = m_v[(r, c)].norm();
            if n > best_norm {
                best_norm = n;
                best = (r, c);
            }
        }
    }
    if best_norm == 0.0 {
        return None;
    }
    let phase = (m_u[best] * m_v[best].conj()).arg();
    let rotation = C64::from_polar(1.0, phase);
    let deviation = max_abs(&(m_u - m_v.map(|e| e * rotation)));
    (deviation <= tol).then_some(phase)
}
