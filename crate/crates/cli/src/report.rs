//! Report artifacts and deterministic file output.
//!
//! Every JSON artifact embeds `schema_version` and validates against the
//! matching schema in `schemas/`. JSON is pretty-printed with sorted keys
//! and a trailing newline; CSV is UTF-8 with a header row and LF line
//! endings. Files are written atomically (temp file + rename) so partial
//! artifacts never appear, and runs with identical inputs produce
//! byte-identical trees.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use photonq::gates::TruthTable;
use photonq::montecarlo::{CountRecord, FidelityRun, NoiseModel, SourceModel};
use photonq::resources::ResourceReport;

use crate::config::{NoiseConfig, SourceConfig};

pub const SCHEMA_VERSION: u32 = 1;

/// Output directory: `--out` beats `PHOTONQ_OUT_DIR`, which beats
/// `./photonq-out`.
pub fn resolve_out_dir(flag: Option<&str>) -> PathBuf {
    if let Some(dir) = flag {
        return PathBuf::from(dir);
    }
    if let Ok(dir) = std::env::var("PHOTONQ_OUT_DIR") {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    PathBuf::from("photonq-out")
}

/// Atomic write: temp file in the target directory, then rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let file_name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("artifact");
    let tmp = dir.join(format!(".tmp-{file_name}"));
    fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

/// Serialize with sorted keys, pretty-printed, trailing newline.
pub fn to_sorted_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let value = serde_json::to_value(value)?;
    Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    write_atomic(path, to_sorted_json(value)?.as_bytes())
}

/// One CountRecord per line (sorted keys per line).
pub fn write_jsonl(path: &Path, records: &[CountRecord]) -> anyhow::Result<()> {
    let mut out = String::new();
    for record in records {
        let value = serde_json::to_value(record)?;
        out.push_str(&serde_json::to_string(&value)?);
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())
}

fn csv_writer() -> csv::WriterBuilder {
    let mut builder = csv::WriterBuilder::new();
    builder.terminator(csv::Terminator::Any(b'\n'));
    builder
}

/// Run provenance echoed into stochastic artifacts.
#[derive(Debug, Clone, Serialize)]
pub struct RunStamp {
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseConfig>,
}

impl RunStamp {
    pub fn ideal() -> Self {
        Self {
            mode: "ideal".into(),
            seed: None,
            source: None,
            noise: None,
        }
    }

    pub fn noisy(seed: u64, source: &SourceModel, noise: &NoiseModel) -> Self {
        Self {
            mode: "noisy".into(),
            seed: Some(seed),
            source: Some(SourceConfig::from_model(source)),
            noise: Some(NoiseConfig::from_model(noise)),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TruthTableArtifact {
    pub schema_version: u32,
    pub kind: &'static str,
    pub gate: String,
    #[serde(flatten)]
    pub stamp: RunStamp,
    pub input_labels: Vec<String>,
    pub output_labels: Vec<String>,
    pub probabilities: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<Vec<u64>>>,
    pub row_efficiencies: Vec<f64>,
    pub average_efficiency: f64,
    pub classical_bound: f64,
}

impl TruthTableArtifact {
    pub fn new(gate: &str, table: &TruthTable, stamp: RunStamp) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "truth_table",
            gate: gate.to_string(),
            stamp,
            input_labels: table.input_labels.clone(),
            output_labels: table.output_labels.clone(),
            probabilities: table.probs.clone(),
            counts: table.counts.clone(),
            row_efficiencies: table.row_efficiencies(),
            average_efficiency: table.average_efficiency(),
            classical_bound: photonq::gates::classical_bound().value,
        }
    }
}

/// Truth-table CSV: rows = inputs, columns = outputs, values =
/// probabilities.
pub fn truth_table_csv(table: &TruthTable) -> anyhow::Result<Vec<u8>> {
    let mut writer = csv_writer().from_writer(Vec::new());
    let mut header = vec!["input".to_string()];
    header.extend(table.output_labels.iter().cloned());
    writer.write_record(&header)?;
    for (label, row) in table.input_labels.iter().zip(&table.probs) {
        let mut record = vec![label.clone()];
        record.extend(row.iter().map(|p| format!("{p}")));
        writer.write_record(&record)?;
    }
    Ok(writer.into_inner()?)
}

#[derive(Debug, Serialize)]
pub struct TomographyArtifact {
    pub schema_version: u32,
    pub kind: &'static str,
    pub gate: String,
    #[serde(flatten)]
    pub stamp: RunStamp,
    pub labels: Vec<String>,
    pub populations: Vec<f64>,
    /// Reconstructed amplitudes as `[re, im]` pairs.
    pub amplitudes: Vec<[f64; 2]>,
    /// Assigned phase per register slot (slot 0 is the gauge zero).
    pub phases: Vec<f64>,
    pub density_real: Vec<Vec<f64>>,
    pub density_imag: Vec<Vec<f64>>,
    pub fidelity_vs_ideal: f64,
    pub classical_bound: f64,
    pub zero_amplitude_modes: Vec<String>,
}

impl TomographyArtifact {
    pub fn new(gate: &str, run: &FidelityRun, stamp: RunStamp) -> Self {
        let density = run.reconstruction.density.matrix();
        let n = density.nrows();
        let real: Vec<Vec<f64>> = (0..n)
            .map(|r| (0..n).map(|c| density[(r, c)].re).collect())
            .collect();
        let imag: Vec<Vec<f64>> = (0..n)
            .map(|r| (0..n).map(|c| density[(r, c)].im).collect())
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "tomography",
            gate: gate.to_string(),
            stamp,
            labels: run.reconstruction.state.basis().labels().to_vec(),
            populations: run.populations.clone(),
            amplitudes: run
                .reconstruction
                .state
                .amplitudes()
                .iter()
                .map(|a| [a.re, a.im])
                .collect(),
            phases: run.reconstruction.phases.clone(),
            density_real: real,
            density_imag: imag,
            fidelity_vs_ideal: run.fidelity,
            classical_bound: photonq::gates::classical_bound().value,
            zero_amplitude_modes: run.reconstruction.zero_amplitude_modes.clone(),
        }
    }
}

/// Density-matrix CSV (one part, real or imaginary): header row of basis
/// labels, one row per basis label.
pub fn density_csv(labels: &[String], rows: &[Vec<f64>]) -> anyhow::Result<Vec<u8>> {
    let mut writer = csv_writer().from_writer(Vec::new());
    let mut header = vec!["row".to_string()];
    header.extend(labels.iter().cloned());
    writer.write_record(&header)?;
    for (label, row) in labels.iter().zip(rows) {
        let mut record = vec![label.clone()];
        record.extend(row.iter().map(|v| format!("{v}")));
        writer.write_record(&record)?;
    }
    Ok(writer.into_inner()?)
}

#[derive(Debug, Serialize)]
pub struct ResourcesArtifact {
    pub schema_version: u32,
    pub kind: &'static str,
    pub d_max: usize,
    pub rows: Vec<ResourceReport>,
}

impl ResourcesArtifact {
    pub fn new(d_max: usize, rows: Vec<ResourceReport>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "resources",
            d_max,
            rows,
        }
    }
}

pub fn resources_csv(rows: &[ResourceReport]) -> anyhow::Result<Vec<u8>> {
    let mut writer = csv_writer().from_writer(Vec::new());
    writer.write_record([
        "d",
        "scheme",
        "gate",
        "pbs",
        "hwp",
        "qwp",
        "non_integer_warning",
    ])?;
    for row in rows {
        let scheme = match row.scheme {
            photonq::resources::Scheme::Cascade => "cascade",
            photonq::resources::Scheme::QuantumWalk => "quantum_walk",
        };
        let gate = match row.gate {
            photonq::resources::CountedGate::X => "X",
            photonq::resources::CountedGate::Z => "Z",
            photonq::resources::CountedGate::CX => "CX",
        };
        writer.write_record([
            row.d.to_string(),
            scheme.to_string(),
            gate.to_string(),
            format!("{}", row.pbs_count),
            format!("{}", row.hwp_count),
            format!("{}", row.qwp_count),
            row.non_integer_warning.to_string(),
        ])?;
    }
    Ok(writer.into_inner()?)
}

#[derive(Debug, Serialize)]
pub struct VerifyArtifact {
    pub schema_version: u32,
    pub kind: &'static str,
    pub gate: String,
    pub matches: bool,
    pub max_deviation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global_phase: Option<f64>,
}

impl VerifyArtifact {
    pub fn new(gate: &str, outcome: &photonq::circuits::VerifyOutcome) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "verify",
            gate: gate.to_string(),
            matches: outcome.matches,
            max_deviation: outcome.deviation,
            global_phase: outcome.phase,
        }
    }
}
