//! Statistical photon-counting simulation with component-imperfection noise.
//!
//! Every acquisition draws one noise realization (wave-plate angles and,
//! for interferometric runs, a reference-phase drift), compiles the
//! perturbed circuit, and distributes a Poisson photon total multinomially
//! over the detector channels. Everything is deterministic given
//! `(seed, stream)`; basis-input rows and seed sweeps run on independent
//! streams so parallel execution merges identically to sequential.

mod rng;

pub use rng::stream_rng;

use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution, Normal, Poisson};
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::circuits::{compile_with, paper_circuit, CompileOptions, GatePreset, Netlist};
use crate::error::{Error, Result};
use crate::gates::TruthTable;
use crate::hilbert::{DensityMatrix, ModeBasis, Operator, StateVector};
use crate::tomography::{
    default_chain, extract_phase, reconstruct, register_labels, InterferenceMeasurement,
    PhaseLink, ReconstructionResult,
};

/// Heralded-source and acquisition parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceModel {
    /// Heralded photons per second.
    pub heralded_rate: f64,
    /// Seconds per acquisition.
    pub acquisition_time: f64,
    /// Coincidence window in seconds; reporting metadata only (accidentals
    /// at the default window are negligible and are not modeled).
    pub coincidence_window: f64,
    /// Dark counts per second per detector.
    pub dark_count_rate: f64,
}

impl Default for SourceModel {
    fn default() -> Self {
        Self {
            heralded_rate: 9000.0,
            acquisition_time: 10.0,
            coincidence_window: 2e-9,
            dark_count_rate: 0.0,
        }
    }
}

impl SourceModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.heralded_rate >= 0.0) {
            return Err(Error::InvalidSource {
                reason: format!("heralded_rate {} must be >= 0", self.heralded_rate),
            });
        }
        if !(self.acquisition_time > 0.0) {
            return Err(Error::InvalidSource {
                reason: format!("acquisition_time {} must be > 0", self.acquisition_time),
            });
        }
        if !(self.coincidence_window >= 0.0) || !(self.dark_count_rate >= 0.0) {
            return Err(Error::InvalidSource {
                reason: "coincidence_window and dark_count_rate must be >= 0".into(),
            });
        }
        Ok(())
    }

    pub fn expected_photons(&self) -> f64 {
        self.heralded_rate * self.acquisition_time
    }
}

/// Component-imperfection model. The default calibration reproduces the
/// 99.0–99.95% efficiency/fidelity regime; it is a documented fit, not a
/// claim about any particular apparatus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Gaussian per-element wave-plate miscalibration, radians.
    pub waveplate_angle_sigma: f64,
    /// PBS extinction: fraction of intensity taking the wrong output.
    pub pbs_extinction: f64,
    /// Interferometer drift per pair acquisition, radians.
    pub phase_drift_sigma: f64,
    /// Detection probability multiplier per detector, in (0, 1].
    pub detector_efficiency: f64,
}

impl NoiseModel {
    pub fn zero() -> Self {
        Self {
            waveplate_angle_sigma: 0.0,
            pbs_extinction: 0.0,
            phase_drift_sigma: 0.0,
            detector_efficiency: 1.0,
        }
    }

    /// Documented default calibration: 0.2° wave-plate sigma, 0.002
    /// extinction, 3° pair drift, unit detector efficiency.
    pub fn default_calibrated() -> Self {
        Self {
            waveplate_angle_sigma: 0.2f64.to_radians(),
            pbs_extinction: 0.002,
            phase_drift_sigma: 3.0f64.to_radians(),
            detector_efficiency: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..0.5).contains(&self.pbs_extinction) {
            return Err(Error::InvalidNoise {
                reason: format!("pbs_extinction {} outside [0, 0.5)", self.pbs_extinction),
            });
        }
        if self.waveplate_angle_sigma < 0.0 || self.phase_drift_sigma < 0.0 {
            return Err(Error::InvalidNoise {
                reason: "sigmas must be >= 0".into(),
            });
        }
        if !(self.detector_efficiency > 0.0 && self.detector_efficiency <= 1.0) {
            return Err(Error::InvalidNoise {
                reason: format!(
                    "detector_efficiency {} outside (0, 1]",
                    self.detector_efficiency
                ),
            });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.waveplate_angle_sigma == 0.0
            && self.pbs_extinction == 0.0
            && self.phase_drift_sigma == 0.0
            && self.detector_efficiency == 1.0
    }
}

/// Detector counts from one acquisition, with full parameter echo.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountRecord {
    pub labels: Vec<String>,
    pub counts: Vec<u64>,
    /// Photons drawn from the source during the acquisition.
    pub drawn_photons: u64,
    /// Photons that fell outside every detector channel (loss or routing
    /// out of the register).
    pub lost_photons: u64,
    /// Dark counts included in `counts`.
    pub dark_counts: u64,
    pub seed: u64,
    pub stream: u64,
    pub source: SourceModel,
    pub noise: NoiseModel,
    /// Simulated acquisition time, seconds.
    pub elapsed_seconds: f64,
}

impl CountRecord {
    pub fn total_counts(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// A named set of detector channels; each channel accumulates the
/// probability of a set of basis states.
#[derive(Debug, Clone)]
pub struct DetectorBank {
    labels: Vec<String>,
    channels: Vec<Vec<usize>>,
}

impl DetectorBank {
    /// One detector per basis state (polarization-resolved detection).
    pub fn per_basis_state(basis: &ModeBasis) -> Self {
        Self {
            labels: basis.labels().to_vec(),
            channels: (0..basis.len()).map(|i| vec![i]).collect(),
        }
    }

    /// One detector per logical register slot, accumulating every
    /// polarization in that slot's spatial mode (path detectors are
    /// polarization-blind).
    pub fn per_register_slot(basis: &ModeBasis) -> Self {
        let labels = register_labels(basis);
        let n_spatial = basis.spatial_modes().len();
        let channels = basis
            .logical_indices()
            .iter()
            .map(|&slot| {
                let spatial = slot % n_spatial;
                (0..basis.polarizations().len())
                    .map(|p| basis.index_of(p, spatial))
                    .collect()
            })
            .collect();
        Self { labels, channels }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    /// Channel probabilities for a state (no detector efficiency applied).
    pub fn probabilities(&self, state: &StateVector) -> Vec<f64> {
        self.channels
            .iter()
            .map(|members| members.iter().map(|&i| state.amplitude(i).norm_sqr()).sum())
            .collect()
    }
}

/// One wave-plate-jitter realization of a netlist.
pub fn perturb_netlist(netlist: &Netlist, noise: &NoiseModel, rng: &mut ChaCha12Rng) -> Netlist {
    if noise.waveplate_angle_sigma == 0.0 {
        return netlist.clone();
    }
    let jitter = Normal::new(0.0, noise.waveplate_angle_sigma).expect("sigma >= 0");
    netlist.map_waveplate_angles(|theta| theta + jitter.sample(rng))
}

/// Compile one noise realization of a circuit.
pub fn compile_noisy(
    netlist: &Netlist,
    noise: &NoiseModel,
    rng: &mut ChaCha12Rng,
) -> Result<Operator> {
    let perturbed = perturb_netlist(netlist, noise, rng);
    compile_with(
        &perturbed,
        CompileOptions {
            pbs_extinction: noise.pbs_extinction,
        },
    )
}

fn draw_poisson(rng: &mut ChaCha12Rng, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).expect("mean > 0").sample(rng) as u64
}

/// Multinomial draw via conditional binomials; the remainder after all
/// channels is the lost-photon bin.
fn draw_multinomial(rng: &mut ChaCha12Rng, total: u64, probs: &[f64]) -> (Vec<u64>, u64) {
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = total;
    let mut mass_left = 1.0;
    for (j, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        let conditional = if mass_left > 0.0 {
            (p / mass_left).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let n = if conditional >= 1.0 {
            remaining
        } else if conditional <= 0.0 {
            0
        } else {
            Binomial::new(remaining, conditional)
                .expect("probability in (0, 1)")
                .sample(rng)
        };
        counts[j] = n;
        remaining -= n;
        mass_left -= p;
    }
    (counts, remaining)
}

/// Simulate one counting acquisition of `circuit` on `input`, detectors one
/// per basis state. See [`sample_counts_with`] for custom banks/streams.
pub fn sample_counts(
    circuit: &Netlist,
    input: &StateVector,
    source: &SourceModel,
    noise: &NoiseModel,
    seed: u64,
) -> Result<CountRecord> {
    let bank = DetectorBank::per_basis_state(circuit.basis());
    sample_counts_with(circuit, input, &bank, source, noise, seed, 0)
}

/// Full-control acquisition: one noise realization, perturbed compile,
/// Poisson photon total, multinomial channel distribution, Poisson dark
/// counts. Deterministic in `(seed, stream)`.
pub fn sample_counts_with(
    circuit: &Netlist,
    input: &StateVector,
    detectors: &DetectorBank,
    source: &SourceModel,
    noise: &NoiseModel,
    seed: u64,
    stream: u64,
) -> Result<CountRecord> {
    source.validate()?;
    noise.validate()?;
    if circuit.basis().labels() != input.basis().labels() {
        return Err(Error::BasisMismatch {
            expected: circuit.basis().len(),
            found: input.dim(),
        });
    }
    let mut rng = stream_rng(seed, stream);
    let unitary = compile_noisy(circuit, noise, &mut rng)?;
    let output = unitary.apply(input)?;
    let detect: Vec<f64> = detectors
        .probabilities(&output)
        .into_iter()
        .map(|p| p * noise.detector_efficiency)
        .collect();

    let drawn = draw_poisson(&mut rng, source.expected_photons());
    let (mut counts, lost) = draw_multinomial(&mut rng, drawn, &detect);

    let mut dark_total = 0u64;
    let dark_mean = source.dark_count_rate * source.acquisition_time;
    if dark_mean > 0.0 {
        for count in counts.iter_mut() {
            let dark = draw_poisson(&mut rng, dark_mean);
            *count += dark;
            dark_total += dark;
        }
    }

    Ok(CountRecord {
        labels: detectors.labels().to_vec(),
        counts,
        drawn_photons: drawn,
        lost_photons: lost,
        dark_counts: dark_total,
        seed,
        stream,
        source: *source,
        noise: *noise,
        elapsed_seconds: source.acquisition_time,
    })
}

/// A truth-table experiment: the table plus the raw per-row count records.
#[derive(Debug, Clone)]
pub struct TruthTableRun {
    pub table: TruthTable,
    pub records: Vec<CountRecord>,
}

/// Computational-basis input indices for a gate's table: the four register
/// levels for X/Z presets, all eight hybrid states for controlled presets.
pub fn truth_table_inputs(gate: GatePreset, basis: &ModeBasis) -> Vec<usize> {
    if gate.is_controlled() {
        (0..basis.len()).collect()
    } else {
        basis.logical_indices().to_vec()
    }
}

fn truth_table_bank(gate: GatePreset, basis: &ModeBasis) -> DetectorBank {
    if gate.is_controlled() {
        DetectorBank::per_basis_state(basis)
    } else {
        DetectorBank::per_register_slot(basis)
    }
}

/// Ideal target channel per input row, from the noiseless gate action.
fn ideal_targets(gate: GatePreset, inputs: &[usize], basis: &ModeBasis) -> Vec<usize> {
    let ideal = gate.ideal_operator();
    inputs
        .iter()
        .map(|&input| {
            let level = if gate.is_controlled() {
                input
            } else {
                basis
                    .logical_indices()
                    .iter()
                    .position(|&i| i == input)
                    .expect("input is a register level")
            };
            (0..ideal.dim())
                .max_by(|&a, &b| {
                    ideal
                        .entry(a, level)
                        .norm_sqr()
                        .total_cmp(&ideal.entry(b, level).norm_sqr())
                })
                .expect("non-empty column")
        })
        .collect()
}

fn assemble_table(
    gate: GatePreset,
    inputs: &[usize],
    basis: &ModeBasis,
    bank: &DetectorBank,
    records: Vec<CountRecord>,
) -> TruthTableRun {
    let mut probs = Vec::with_capacity(records.len());
    let mut counts = Vec::with_capacity(records.len());
    for record in &records {
        let total = record.total_counts();
        let row: Vec<f64> = record
            .counts
            .iter()
            .map(|&c| {
                if total == 0 {
                    0.0
                } else {
                    c as f64 / total as f64
                }
            })
            .collect();
        probs.push(row);
        counts.push(record.counts.clone());
    }
    let table = TruthTable {
        input_labels: inputs.iter().map(|&i| basis.label(i).to_string()).collect(),
        output_labels: bank.labels().to_vec(),
        probs,
        counts: Some(counts),
        target_cols: ideal_targets(gate, inputs, basis),
    };
    TruthTableRun { table, records }
}

fn truth_table_row(
    circuit: &Netlist,
    bank: &DetectorBank,
    input_index: usize,
    source: &SourceModel,
    noise: &NoiseModel,
    seed: u64,
    stream: u64,
) -> Result<CountRecord> {
    let input = StateVector::basis_state(circuit.basis().clone(), input_index);
    sample_counts_with(circuit, &input, bank, source, noise, seed, stream)
}

/// Run the full truth-table protocol for a gate preset: every
/// computational-basis input is one acquisition on its own RNG stream.
/// Dispatches to the parallel path when the `parallel` feature is enabled.
pub fn run_truth_table_experiment(
    gate: GatePreset,
    source: &SourceModel,
    noise: &NoiseModel,
    seed: u64,
) -> Result<TruthTableRun> {
    #[cfg(feature = "parallel")]
    {
        run_truth_table_experiment_par(gate, source, noise, seed)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_truth_table_experiment_seq(gate, source, noise, seed)
    }
}

/// Sequential reference path for the truth-table protocol.
pub fn run_truth_table_experiment_seq(
    gate: GatePreset,
    source: &SourceModel,
    noise: &NoiseModel,
    seed: u64,
) -> Result<TruthTableRun> {
    let circuit = paper_circuit(gate)?;
    let basis = circuit.basis().clone();
    let inputs = truth_table_inputs(gate, &basis);
    let bank = truth_table_bank(gate, &basis);
    let records = inputs
        .iter()
        .enumerate()
        .map(|(row, &input)| {
            truth_table_row(&circuit, &bank, input, source, noise, seed, row as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_table(gate, &inputs, &basis, &bank, records))
}

/// Parallel path: one rayon task per basis input; identical output to the
/// sequential path because every row has its own stream.
#[cfg(feature = "parallel")]
pub fn run_truth_table_experiment_par(
    gate: GatePreset,
    source: &SourceModel,
    noise: &NoiseModel,
    seed: u64,
) -> Result<TruthTableRun> {
    let circuit = paper_circuit(gate)?;
    let basis = circuit.basis().clone();
    let inputs = truth_table_inputs(gate, &basis);
    let bank = truth_table_bank(gate, &basis);
    let records = inputs
        .par_iter()
        .enumerate()
        .map(|(row, &input)| {
            truth_table_row(&circuit, &bank, input, source, noise, seed, row as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_table(gate, &inputs, &basis, &bank, records))
}

/// A tomography-based fidelity experiment.
#[derive(Debug, Clone)]
pub struct FidelityRun {
    pub fidelity: f64,
    pub reconstruction: ReconstructionResult,
    pub ideal_output: DensityMatrix,
    pub populations: Vec<f64>,
    pub measurements: Vec<InterferenceMeasurement>,
    pub seed: u64,
}

/// Register basis used for reconstructing a gate's output: the qudit
/// register for X/Z presets, the full eight-state hybrid register for the
/// controlled presets.
fn reconstruction_basis(gate: GatePreset, circuit_basis: &ModeBasis) -> std::sync::Arc<ModeBasis> {
    if gate.is_controlled() {
        ModeBasis::from_labels(circuit_basis.labels()).expect("hybrid labels are distinct")
    } else {
        ModeBasis::qudit(circuit_basis.logical_dim())
    }
}

/// Ideal output density for the equal-superposition input. The input spans
/// the same register the experiment drives: all eight hybrid states for
/// controlled presets, the four qudit levels otherwise.
fn ideal_fidelity_target(
    gate: GatePreset,
    basis: &std::sync::Arc<ModeBasis>,
) -> Result<DensityMatrix> {
    let ideal = gate.ideal_operator();
    let input = if gate.is_controlled() {
        equal_superposition_all(ideal.basis())
    } else {
        StateVector::equal_logical_superposition(ideal.basis().clone())
    };
    let output = ideal.apply(&input)?;
    // Rebuild on the reconstruction basis (same labels, register encoding).
    let state = StateVector::normalized(basis.clone(), output.amplitudes().iter().copied().collect())?;
    Ok(DensityMatrix::from_pure(&state))
}

/// Run the superposition-input fidelity protocol: one population
/// acquisition plus two interference acquisitions (offsets 0 and π/2) per
/// register pair, then a pure-state reconstruction and the Uhlmann fidelity
/// against the ideal output. Stream layout: populations on stream 0, pair
/// `k` offset `j` on stream `1 + 2k + j`.
pub fn run_fidelity_experiment(
    gate: GatePreset,
    source: &SourceModel,
    noise: &NoiseModel,
    seed: u64,
) -> Result<FidelityRun> {
    let circuit = paper_circuit(gate)?;
    let circuit_basis = circuit.basis().clone();
    let input = if gate.is_controlled() {
        equal_superposition_all(&circuit_basis)
    } else {
        StateVector::equal_logical_superposition(circuit_basis.clone())
    };
    let recon_basis = reconstruction_basis(gate, &circuit_basis);
    let slots = register_labels(&recon_basis);

    // Population acquisition.
    let bank = if gate.is_controlled() {
        DetectorBank::per_basis_state(&circuit_basis)
    } else {
        DetectorBank::per_register_slot(&circuit_basis)
    };
    let record = sample_counts_with(&circuit, &input, &bank, source, noise, seed, 0)?;
    let total = record.total_counts().max(1);
    let populations: Vec<f64> = record
        .counts
        .iter()
        .map(|&c| c as f64 / total as f64)
        .collect();

    // Pairwise interference acquisitions.
    let drift = (noise.phase_drift_sigma > 0.0)
        .then(|| Normal::new(0.0, noise.phase_drift_sigma).expect("sigma >= 0"));
    let chain = default_chain(&slots);
    let mut measurements = Vec::with_capacity(chain.len() * 2);
    let mut links = Vec::with_capacity(chain.len());
    for (k, (a, b)) in chain.iter().enumerate() {
        let mut observed = [0.5f64; 2];
        for (j, offset) in [0.0, std::f64::consts::FRAC_PI_2].into_iter().enumerate() {
            let stream = 1 + 2 * k as u64 + j as u64;
            let mut rng = stream_rng(seed, stream);
            let unitary = compile_noisy(&circuit, noise, &mut rng)?;
            let output = unitary.apply(&input)?;
            let delta = drift.map(|d| d.sample(&mut rng)).unwrap_or(0.0);
            let true_p = crate::tomography::simulate_interference(&output, (a, b), offset + delta)?;
            let pair_weight = pair_weight(&output, (a, b));
            let drawn = draw_poisson(&mut rng, source.expected_photons());
            let in_pair = binomial(&mut rng, drawn, (pair_weight * noise.detector_efficiency).min(1.0));
            let hits = binomial(&mut rng, in_pair, true_p.clamp(0.0, 1.0));
            observed[j] = if in_pair == 0 {
                0.5
            } else {
                hits as f64 / in_pair as f64
            };
            measurements.push(InterferenceMeasurement {
                mode_pair: (a.clone(), b.clone()),
                probability: observed[j],
                reference_offset: offset,
            });
        }
        links.push(PhaseLink {
            pair: (a.clone(), b.clone()),
            phase: extract_phase(observed[0].clamp(0.0, 1.0), observed[1].clamp(0.0, 1.0))?,
        });
    }

    let reconstruction = reconstruct(&recon_basis, &populations, &links)?;
    let ideal_output = ideal_fidelity_target(gate, &recon_basis)?;
    let fidelity = crate::hilbert::uhlmann_fidelity(&reconstruction.density, &ideal_output)?;
    Ok(FidelityRun {
        fidelity,
        reconstruction,
        ideal_output,
        populations,
        measurements,
        seed,
    })
}

/// Exact (noiseless, non-sampled) version of the fidelity pipeline: the
/// populations and interference probabilities are taken directly from the
/// compiled output state. Checks the measurement-and-reconstruction chain
/// itself, with no statistical error.
pub fn run_fidelity_exact(gate: GatePreset) -> Result<FidelityRun> {
    let circuit = paper_circuit(gate)?;
    let circuit_basis = circuit.basis().clone();
    let input = if gate.is_controlled() {
        equal_superposition_all(&circuit_basis)
    } else {
        StateVector::equal_logical_superposition(circuit_basis.clone())
    };
    let recon_basis = reconstruction_basis(gate, &circuit_basis);
    let slots = register_labels(&recon_basis);

    let unitary = compile_with(&circuit, CompileOptions::default())?;
    let output = unitary.apply(&input)?;
    let bank = if gate.is_controlled() {
        DetectorBank::per_basis_state(&circuit_basis)
    } else {
        DetectorBank::per_register_slot(&circuit_basis)
    };
    let raw = bank.probabilities(&output);
    let total: f64 = raw.iter().sum();
    let populations: Vec<f64> = raw.into_iter().map(|p| p / total).collect();

    let mut measurements = Vec::new();
    let mut links = Vec::new();
    for (a, b) in default_chain(&slots) {
        let p0 = crate::tomography::simulate_interference(&output, (&a, &b), 0.0)?;
        let p90 =
            crate::tomography::simulate_interference(&output, (&a, &b), std::f64::consts::FRAC_PI_2)?;
        for (offset, p) in [(0.0, p0), (std::f64::consts::FRAC_PI_2, p90)] {
            measurements.push(InterferenceMeasurement {
                mode_pair: (a.clone(), b.clone()),
                probability: p,
                reference_offset: offset,
            });
        }
        links.push(PhaseLink {
            pair: (a.clone(), b.clone()),
            phase: extract_phase(p0.clamp(0.0, 1.0), p90.clamp(0.0, 1.0))?,
        });
    }

    let reconstruction = reconstruct(&recon_basis, &populations, &links)?;
    let ideal_output = ideal_fidelity_target(gate, &recon_basis)?;
    let fidelity = crate::hilbert::uhlmann_fidelity(&reconstruction.density, &ideal_output)?;
    Ok(FidelityRun {
        fidelity,
        reconstruction,
        ideal_output,
        populations,
        measurements,
        seed: 0,
    })
}

fn equal_superposition_all(basis: &std::sync::Arc<ModeBasis>) -> StateVector {
    let n = basis.len();
    let amp = crate::c64((n as f64).sqrt().recip(), 0.0);
    StateVector::normalized(basis.clone(), vec![amp; n]).expect("uniform state is normalized")
}

fn pair_weight(state: &StateVector, pair: (&str, &str)) -> f64 {
    let basis = state.basis();
    let weight_of = |label: &str| {
        basis
            .index_of_label(label)
            .map(|i| state.amplitude(i).norm_sqr())
            .unwrap_or(0.0)
    };
    weight_of(pair.0) + weight_of(pair.1)
}

fn binomial(rng: &mut ChaCha12Rng, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    Binomial::new(n, p).expect("p in (0, 1)").sample(rng)
}

/// Mean efficiency and fidelity of one seeded run of a gate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GateRunSummary {
    pub seed: u64,
    pub average_efficiency: f64,
    pub fidelity: f64,
}

fn gate_seed_run(
    gate: GatePreset,
    source: &SourceModel,
    noise: &NoiseModel,
    seed: u64,
) -> Result<GateRunSummary> {
    let table = run_truth_table_experiment_seq(gate, source, noise, seed)?;
    let fidelity = run_fidelity_experiment(gate, source, noise, seed)?;
    Ok(GateRunSummary {
        seed,
        average_efficiency: table.table.average_efficiency(),
        fidelity: fidelity.fidelity,
    })
}

/// Truth-table efficiency plus tomography fidelity across a seed list;
/// parallel over seeds when the feature is on.
pub fn run_gate_seed_sweep(
    gate: GatePreset,
    source: &SourceModel,
    noise: &NoiseModel,
    seeds: &[u64],
) -> Result<Vec<GateRunSummary>> {
    #[cfg(feature = "parallel")]
    {
        run_gate_seed_sweep_par(gate, source, noise, seeds)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_gate_seed_sweep_seq(gate, source, noise, seeds)
    }
}

/// Sequential reference path for the seed sweep.
pub fn run_gate_seed_sweep_seq(
    gate: GatePreset,
    source: &SourceModel,
    noise: &NoiseModel,
    seeds: &[u64],
) -> Result<Vec<GateRunSummary>> {
    seeds
        .iter()
        .map(|&seed| gate_seed_run(gate, source, noise, seed))
        .collect()
}

/// Parallel seed sweep; bitwise-identical to the sequential path.
#[cfg(feature = "parallel")]
pub fn run_gate_seed_sweep_par(
    gate: GatePreset,
    source: &SourceModel,
    noise: &NoiseModel,
    seeds: &[u64],
) -> Result<Vec<GateRunSummary>> {
    seeds
        .par_iter()
        .map(|&seed| gate_seed_run(gate, source, noise, seed))
        .collect()
}
