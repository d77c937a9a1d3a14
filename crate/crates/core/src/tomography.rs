//! Interferometric state reconstruction: mode populations plus pairwise
//! relative phases recover a pure state, with mode `a` (the first register
//! slot) as the zero-phase gauge.
//!
//! A single interference probability `P = (1 + cos θ)/2` cannot separate
//! `±θ`, so every pair is measured at two reference offsets, `0` and `π/2`;
//! the second offset turns the same fringe into `(1 − sin θ)/2` and makes
//! the inversion single-valued.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, ModeBasis, StateVector};
use crate::{c64, C64};

/// One recorded interference run on a pair of register slots.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceMeasurement {
    pub mode_pair: (String, String),
    pub probability: f64,
    /// Reference phase added to the second slot before the splitter.
    pub reference_offset: f64,
}

/// Relative phase `arg(c_second / c_first)` attributed to a pair of slots.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseLink {
    pub pair: (String, String),
    pub phase: f64,
}

/// Result of a pure-state reconstruction.
#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub state: StateVector,
    pub density: DensityMatrix,
    /// Assigned phase per register slot (gauge: slot 0 at zero).
    pub phases: Vec<f64>,
    /// Slots whose population was too small to carry a phase; these get
    /// phase 0 by convention.
    pub zero_amplitude_modes: Vec<String>,
    /// `|Σ populations − 1|` of the input data.
    pub population_residual: f64,
}

/// Interfere two register slots of a pure state on a balanced splitter after
/// adding `offset` to the second slot; returns the probability of the first
/// output port, renormalized over the pair.
///
/// For slot amplitudes `c₁, c₂` this is
/// `|c₁ + e^{iθ} c₂|² / (2(|c₁|² + |c₂|²))`, which reduces to
/// `(1 + cos(Δφ + θ))/2` at equal magnitudes.
pub fn simulate_interference(
    state: &StateVector,
    pair: (&str, &str),
    offset: f64,
) -> Result<f64> {
    let basis = state.basis();
    let i1 = register_slot(basis, pair.0)?;
    let i2 = register_slot(basis, pair.1)?;
    let c1 = state.amplitude(i1);
    let c2 = state.amplitude(i2);
    let weight = c1.norm_sqr() + c2.norm_sqr();
    if weight <= f64::EPSILON {
        return Err(Error::ZeroPairWeight {
            a: pair.0.to_string(),
            b: pair.1.to_string(),
        });
    }
    let merged = c1 + C64::from_polar(1.0, offset) * c2;
    Ok(merged.norm_sqr() / (2.0 * weight))
}

/// Recover the relative phase from the two-offset probabilities:
/// `cos θ = 2p₀ − 1`, `sin θ = 1 − 2p₉₀`, `θ = atan2(sin, cos) ∈ (−π, π]`.
pub fn extract_phase(p0: f64, p90: f64) -> Result<f64> {
    for p in [p0, p90] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange { value: p });
        }
    }
    let theta = (1.0 - 2.0 * p90).atan2(2.0 * p0 - 1.0);
    // atan2 returns −π for some boundary inputs; fold onto (−π, π].
    Ok(if theta <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        theta
    })
}

/// Reconstruct a pure state from slot populations and a chain of pair
/// phases. Amplitudes are `√population`; phases propagate from slot 0
/// through the link graph. Slots with negligible population are allowed to
/// be unreachable (they get phase 0 and are flagged); any other unreachable
/// slot is an error naming the missing link.
pub fn reconstruct(
    basis: &std::sync::Arc<ModeBasis>,
    populations: &[f64],
    links: &[PhaseLink],
) -> Result<ReconstructionResult> {
    let slots = register_labels(basis);
    let n = slots.len();
    if populations.len() != n {
        return Err(Error::BasisMismatch {
            expected: n,
            found: populations.len(),
        });
    }
    let sum: f64 = populations.iter().sum();
    let tolerance = 1e-6;
    if (sum - 1.0).abs() > tolerance {
        return Err(Error::UnnormalizedPopulations { sum, tolerance });
    }
    for &p in populations {
        if p < 0.0 {
            return Err(Error::ProbabilityOutOfRange { value: p });
        }
    }

    let slot_index = |label: &str| -> Result<usize> {
        slots
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::UnknownMode {
                mode: label.to_string(),
            })
    };
    let mut edges: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for link in links {
        let a = slot_index(&link.pair.0)?;
        let b = slot_index(&link.pair.1)?;
        // phase = arg(c_b) − arg(c_a)
        edges[a].push((b, link.phase));
        edges[b].push((a, -link.phase));
    }

    let negligible = 1e-12;
    let mut phases = vec![None::<f64>; n];
    phases[0] = Some(0.0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let base = phases[i].expect("queued slots have phases");
        for &(j, delta) in &edges[i] {
            if phases[j].is_none() {
                phases[j] = Some(base + delta);
                queue.push_back(j);
            }
        }
    }

    let mut zero_amplitude_modes = Vec::new();
    let mut resolved = Vec::with_capacity(n);
    for (i, phase) in phases.iter().enumerate() {
        match phase {
            Some(p) => resolved.push(*p),
            None if populations[i] <= negligible => {
                zero_amplitude_modes.push(slots[i].clone());
                resolved.push(0.0);
            }
            None => {
                return Err(Error::DisconnectedPhaseChain {
                    mode: slots[i].clone(),
                })
            }
        }
    }

    let mut amplitudes = vec![c64(0.0, 0.0); basis.len()];
    for (l, (&p, phase)) in populations.iter().zip(&resolved).enumerate() {
        let slot = if basis.logical_dim() == n {
            basis.logical_index(l)
        } else {
            l
        };
        amplitudes[slot] = C64::from_polar(p.max(0.0).sqrt(), *phase);
    }
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let amplitudes = DVector::from_vec(amplitudes) / c64(norm, 0.0);
    let state = StateVector::normalized(basis.clone(), amplitudes.iter().copied().collect())?;
    let density = DensityMatrix::from_pure(&state);
    Ok(ReconstructionResult {
        state,
        density,
        phases: resolved,
        zero_amplitude_modes,
        population_residual: (sum - 1.0).abs(),
    })
}

/// The slot labels carrying the reconstructed register: logical labels when
/// the basis encodes a register, otherwise every basis label.
pub fn register_labels(basis: &ModeBasis) -> Vec<String> {
    if basis.logical_dim() > 0 {
        basis
            .logical_indices()
            .iter()
            .map(|&i| basis.label(i).to_string())
            .collect()
    } else {
        basis.labels().to_vec()
    }
}

fn register_slot(basis: &ModeBasis, label: &str) -> Result<usize> {
    basis
        .index_of_label(label)
        .or_else(|| {
            // Allow bare spatial-mode names on a register basis: "b" -> "Hb".
            basis.index_of_label(&format!("H{label}"))
        })
        .ok_or_else(|| Error::UnknownMode {
            mode: label.to_string(),
        })
}

/// The measurement chain used for a register of `n` slots: consecutive
/// pairs in the order `(0,1), (2,3), (1,2), (3,4), ...` — the four-mode case
/// reads `(a,b), (c,d), (b,c)`, matching the pairwise interference schedule
/// of the diagonal-gate measurements.
pub fn default_chain(labels: &[String]) -> Vec<(String, String)> {
    let n = labels.len();
    let mut pairs = Vec::new();
    let mut even: Vec<(String, String)> = Vec::new();
    let mut odd: Vec<(String, String)> = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let pair = (labels[i].clone(), labels[i + 1].clone());
        if i % 2 == 0 {
            even.push(pair);
        } else {
            odd.push(pair);
        }
    }
    pairs.extend(even);
    pairs.extend(odd);
    pairs
}
