//! Pure states over a [`ModeBasis`].

use std::sync::Arc;

use nalgebra::DVector;

use super::basis::{tensor_basis, ModeBasis};
use crate::error::{Error, Result};
use crate::tolerances;
use crate::C64;

/// Normalized complex amplitude vector over a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: Arc<ModeBasis>,
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// Construct a state, enforcing normalization within [`tolerances::EXACT`].
    pub fn normalized(basis: Arc<ModeBasis>, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != basis.len() {
            return Err(Error::BasisMismatch {
                expected: basis.len(),
                found: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > tolerances::EXACT {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            basis,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    /// Rescale arbitrary amplitudes to unit norm.
    pub fn from_unnormalized(basis: Arc<ModeBasis>, amplitudes: Vec<C64>) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq == 0.0 {
            return Err(Error::NotNormalized { norm_sq });
        }
        let scale = norm_sq.sqrt().recip();
        Self::normalized(basis, amplitudes.into_iter().map(|a| a * scale).collect())
    }

    /// Basis state `|index>`.
    pub fn basis_state(basis: Arc<ModeBasis>, index: usize) -> Self {
        let mut amplitudes = vec![C64::new(0.0, 0.0); basis.len()];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self {
            basis,
            amplitudes: DVector::from_vec(amplitudes),
        }
    }

    /// Equal superposition over the logical levels of the register
    /// (zero amplitude elsewhere).
    pub fn equal_logical_superposition(basis: Arc<ModeBasis>) -> Self {
        let d = basis.logical_dim();
        let amp = C64::new((d as f64).sqrt().recip(), 0.0);
        let mut amplitudes = vec![C64::new(0.0, 0.0); basis.len()];
        for &i in basis.logical_indices() {
            amplitudes[i] = amp;
        }
        Self {
            basis,
            amplitudes: DVector::from_vec(amplitudes),
        }
    }

    pub(crate) fn from_raw(basis: Arc<ModeBasis>, amplitudes: DVector<C64>) -> Self {
        Self { basis, amplitudes }
    }

    pub fn basis(&self) -> &Arc<ModeBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `|amplitude|^2` per basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.check_basis(other)?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Kronecker product over the concatenated basis (self major).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let basis = tensor_basis(&self.basis, &other.basis)?;
        let amplitudes = self.amplitudes.kronecker(&other.amplitudes);
        Ok(Self { basis, amplitudes })
    }

    /// True when `self = e^{i phi} other` within `tol`; returns the phase,
    /// taken from the largest-magnitude amplitude of `other`.
    pub fn equal_up_to_global_phase(&self, other: &Self, tol: f64) -> Option<f64> {
        if self.basis.labels() != other.basis.labels() {
            return None;
        }
        let (k, _) = other
            .amplitudes
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.norm().total_cmp(&b.norm()))?;
        let phase = (self.amplitudes[k] * other.amplitudes[k].conj()).arg();
        let rotation = C64::from_polar(1.0, phase);
        let deviation = self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - rotation * b).norm())
            .fold(0.0, f64::max);
        (deviation <= tol).then_some(phase)
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
