//! Density matrices and the Uhlmann fidelity.

use std::sync::Arc;

use nalgebra::DMatrix;

use super::basis::ModeBasis;
use super::eigen::{clamp_spectrum, hermitian_eigen, max_abs, sqrt_psd};
use super::operator::Operator;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::tolerances;
use crate::C64;

/// Hermitian, unit-trace, positive-semidefinite matrix over a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    basis: Arc<ModeBasis>,
    matrix: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validating constructor: Hermitian and unit trace within
    /// [`tolerances::EXACT`], eigenvalues above [`tolerances::EIGENVALUE_FLOOR`].
    pub fn new(basis: Arc<ModeBasis>, matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() != basis.len() || matrix.ncols() != basis.len() {
            return Err(Error::BasisMismatch {
                expected: basis.len(),
                found: matrix.nrows(),
            });
        }
        let hermiticity = max_abs(&(&matrix - matrix.adjoint()));
        if hermiticity > tolerances::EXACT {
            return Err(Error::NotHermitian {
                deviation: hermiticity,
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tolerances::EXACT || trace.im.abs() > tolerances::EXACT {
            return Err(Error::NotUnitTrace { trace: trace.re });
        }
        let (values, _) = hermitian_eigen(&matrix);
        clamp_spectrum(&values)?;
        Ok(Self { basis, matrix })
    }

    /// `|psi><psi|` of a pure state; valid by construction.
    pub fn from_pure(state: &StateVector) -> Self {
        let amps = state.amplitudes();
        let matrix = amps * amps.adjoint();
        Self {
            basis: state.basis().clone(),
            matrix,
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

    /// `tr(rho^2)`, 1 for pure states.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// `U rho U†`.
    pub fn evolve(&self, u: &Operator) -> Result<Self> {
        if u.basis().labels() != self.basis.labels() {
            return Err(Error::BasisMismatch {
                expected: self.basis.len(),
                found: u.dim(),
            });
        }
        Ok(Self {
            basis: self.basis.clone(),
            matrix: u.matrix() * &self.matrix * u.matrix().adjoint(),
        })
    }

    /// Dominant eigenvector, normalized. Meaningful for (near-)pure states.
    pub fn dominant_eigenvector(&self) -> StateVector {
        let (values, vectors) = hermitian_eigen(&self.matrix);
        let (k, _) = values
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.total_cmp(b))
            .expect("non-empty spectrum");
        let column = vectors.column(k).into_owned();
        StateVector::from_raw(self.basis.clone(), column)
    }
}

/// Uhlmann fidelity `F(rho_e, rho_t) = tr sqrt(sqrt(rho_e) rho_t sqrt(rho_e))`.
///
/// When `rho_t` is pure (purity above `1 - PURITY_PURE`) the rank-1 shortcut
/// `sqrt(<psi| rho_e |psi>)` is used; the two routes agree within
/// [`tolerances::SPECTRAL`] and the test suite pins that agreement.
pub fn uhlmann_fidelity(rho_e: &DensityMatrix, rho_t: &DensityMatrix) -> Result<f64> {
    check_same_basis(rho_e, rho_t)?;
    if rho_t.purity() > 1.0 - tolerances::PURITY_PURE {
        let psi = rho_t.dominant_eigenvector();
        let overlap = (psi.amplitudes().adjoint() * rho_e.matrix() * psi.amplitudes())[(0, 0)];
        return Ok(overlap.re.max(0.0).sqrt().clamp(0.0, 1.0));
    }
    uhlmann_fidelity_general(rho_e, rho_t)
}

/// The general eigendecomposition route, with no pure-state shortcut.
/// Exposed so the shortcut can be cross-checked against it.
pub fn uhlmann_fidelity_general(rho_e: &DensityMatrix, rho_t: &DensityMatrix) -> Result<f64> {
    check_same_basis(rho_e, rho_t)?;
    let sqrt_e = sqrt_psd(rho_e.matrix())?;
    let inner = &sqrt_e * rho_t.matrix() * &sqrt_e;
    let (values, _) = hermitian_eigen(&inner);
    let clamped = clamp_spectrum(&values)?;
    Ok(clamped.iter().map(|v| v.sqrt()).sum::<f64>().clamp(0.0, 1.0))
}

fn check_same_basis(a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
    if a.basis().labels() != b.basis().labels() {
        return Err(Error::BasisMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}
