//! Run configuration: noise/source files (angles in degrees) and named
//! presets. Unknown fields are rejected.

use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use photonq::montecarlo::{NoiseModel, SourceModel};

/// Noise configuration as written in config files: sigmas in degrees.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    #[serde(default)]
    pub waveplate_angle_sigma_deg: f64,
    #[serde(default)]
    pub pbs_extinction: f64,
    #[serde(default)]
    pub phase_drift_sigma_deg: f64,
    #[serde(default = "one")]
    pub detector_efficiency: f64,
}

fn one() -> f64 {
    1.0
}

impl NoiseConfig {
    pub fn to_model(&self) -> anyhow::Result<NoiseModel> {
        let model = NoiseModel {
            waveplate_angle_sigma: self.waveplate_angle_sigma_deg.to_radians(),
            pbs_extinction: self.pbs_extinction,
            phase_drift_sigma: self.phase_drift_sigma_deg.to_radians(),
            detector_efficiency: self.detector_efficiency,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn from_model(model: &NoiseModel) -> Self {
        Self {
            waveplate_angle_sigma_deg: model.waveplate_angle_sigma.to_degrees(),
            pbs_extinction: model.pbs_extinction,
            phase_drift_sigma_deg: model.phase_drift_sigma.to_degrees(),
            detector_efficiency: model.detector_efficiency,
        }
    }
}

/// Source configuration file: rates per second, times in seconds.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SourceConfig {
    pub heralded_rate: f64,
    pub acquisition_time: f64,
    pub coincidence_window: f64,
    pub dark_count_rate: f64,
}

impl Default for SourceConfig {
    fn default() -> Self {
        Self::from_model(&SourceModel::default())
    }
}

impl SourceConfig {
    pub fn to_model(&self) -> anyhow::Result<SourceModel> {
        let model = SourceModel {
            heralded_rate: self.heralded_rate,
            acquisition_time: self.acquisition_time,
            coincidence_window: self.coincidence_window,
            dark_count_rate: self.dark_count_rate,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn from_model(model: &SourceModel) -> Self {
        Self {
            heralded_rate: model.heralded_rate,
            acquisition_time: model.acquisition_time,
            coincidence_window: model.coincidence_window,
            dark_count_rate: model.dark_count_rate,
        }
    }
}

/// Resolve a `--noise` argument: `default`, `zero`, or a JSON file path.
pub fn resolve_noise(arg: &str) -> anyhow::Result<NoiseModel> {
    match arg {
        "default" => Ok(NoiseModel::default_calibrated()),
        "zero" => Ok(NoiseModel::zero()),
        path => {
            let text = std::fs::read_to_string(Path::new(path))
                .with_context(|| format!("reading noise config {path}"))?;
            let config: NoiseConfig = serde_json::from_str(&text)
                .with_context(|| format!("parsing noise config {path}"))?;
            config.to_model()
        }
    }
}

/// Resolve a `--source` argument: omitted means defaults; otherwise a JSON
/// file path. `photons`, when given, overrides the photon budget per
/// acquisition by rescaling the heralded rate.
pub fn resolve_source(path: Option<&str>, photons: Option<f64>) -> anyhow::Result<SourceModel> {
    let mut model = match path {
        None => SourceModel::default(),
        Some(path) => {
            let text = std::fs::read_to_string(Path::new(path))
                .with_context(|| format!("reading source config {path}"))?;
            let config: SourceConfig = serde_json::from_str(&text)
                .with_context(|| format!("parsing source config {path}"))?;
            config.to_model()?
        }
    };
    if let Some(photons) = photons {
        if photons <= 0.0 {
            bail!("--photons must be positive");
        }
        model.heralded_rate = photons / model.acquisition_time;
    }
    model.validate()?;
    Ok(model)
}
