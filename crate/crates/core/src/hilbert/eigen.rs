//! Hermitian eigendecomposition helpers.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tolerances;
use crate::C64;

/// Max entry modulus, the `max` norm used by every comparison in this crate.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized first
/// so that accumulated rounding from upstream products cannot leak complex
/// eigenvalues into the result.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> (DVector<f64>, DMatrix<C64>) {
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    (eig.eigenvalues, eig.eigenvectors)
}

/// Principal square root of a Hermitian positive-semidefinite matrix.
///
/// Eigenvalues in `[EIGENVALUE_FLOOR, 0]` are clamped to zero (tomography
/// reconstructions produce tiny negative tails); anything below the floor is
/// rejected as genuinely non-PSD.
pub fn sqrt_psd(m: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let (values, vectors) = hermitian_eigen(m);
    let clamped = clamp_spectrum(&values)?;
    let sqrt_diag = DMatrix::from_diagonal(&clamped.map(|v| C64::new(v.sqrt(), 0.0)));
    Ok(&vectors * sqrt_diag * vectors.adjoint())
}

/// Clamp an almost-PSD spectrum to non-negative values, rejecting
/// eigenvalues below the floor.
pub fn clamp_spectrum(values: &DVector<f64>) -> Result<DVector<f64>> {
    for &v in values.iter() {
        if v < tolerances::EIGENVALUE_FLOOR {
            return Err(Error::NegativeEigenvalue { value: v });
        }
    }
    Ok(values.map(|v| v.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn sqrt_of_projector_is_projector() {
        // |+><+| is its own square root.
        let half = c(0.5, 0.0);
        let m = DMatrix::from_row_slice(2, 2, &[half, half, half, half]);
        let root = sqrt_psd(&m).unwrap();
        assert!(max_abs(&(&root - &m)) < 1e-12);
    }

    #[test]
    fn sqrt_squares_back() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        );
        let root = sqrt_psd(&m).unwrap();
        assert!(max_abs(&(&root * &root - &m)) < 1e-10);
    }

    #[test]
    fn tiny_negative_eigenvalue_is_clamped() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1e-9, 0.0)]);
        let root = sqrt_psd(&m).unwrap();
        assert!(root[(1, 1)].norm() < 1e-4);
    }

    #[test]
    fn genuinely_negative_matrix_is_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        assert!(matches!(
            sqrt_psd(&m),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }
}
