//! Netlist file format: JSON with angles in degrees.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "X4",
//!   "modes": ["a", "b", "c", "d"],
//!   "stages": [
//!     { "components": [ { "kind": "PBS", "ports": ["c", "d"], "params": {} } ] }
//!   ]
//! }
//! ```
//!
//! Parsing converts degrees to radians; a parse → serialize → parse cycle is
//! a fixed point, and the circuit semantics survive the round trip exactly.

use serde::{Deserialize, Serialize};

use super::{Component, Netlist};
use crate::error::{Error, Result};
use crate::hilbert::ModeBasis;

pub const NETLIST_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetlistFile {
    schema_version: u32,
    name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    provenance: String,
    modes: Vec<String>,
    stages: Vec<StageFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageFile {
    components: Vec<ComponentFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentFile {
    kind: String,
    ports: Vec<String>,
    #[serde(default, skip_serializing_if = "Params::is_empty")]
    params: Params,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta_deg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
}

impl Params {
    fn is_empty(&self) -> bool {
        self.theta_deg.is_none() && self.r.is_none() && self.t.is_none()
    }
}

fn component_to_file(component: &Component) -> ComponentFile {
    let ports = component.ports().into_iter().map(String::from).collect();
    let mut params = Params::default();
    match component {
        Component::Hwp { theta, .. }
        | Component::Qwp { theta, .. }
        | Component::PhaseShifter { theta, .. } => {
            params.theta_deg = Some(theta.to_degrees());
        }
        Component::Vbs { r, t, .. } => {
            params.r = Some(*r);
            params.t = Some(*t);
        }
        Component::Pbs { .. } | Component::BeamDisplacer { .. } | Component::Mirror { .. } => {}
    }
    ComponentFile {
        kind: component.kind().to_string(),
        ports,
        params,
    }
}

fn component_from_file(file: &ComponentFile) -> Result<Component> {
    let one_port = || -> Result<String> {
        if file.ports.len() != 1 {
            return Err(Error::UnknownMode {
                mode: format!("{} expects one port, got {:?}", file.kind, file.ports),
            });
        }
        Ok(file.ports[0].clone())
    };
    let two_ports = || -> Result<[String; 2]> {
        if file.ports.len() != 2 {
            return Err(Error::UnknownMode {
                mode: format!("{} expects two ports, got {:?}", file.kind, file.ports),
            });
        }
        Ok([file.ports[0].clone(), file.ports[1].clone()])
    };
    let theta = || file.params.theta_deg.unwrap_or(0.0).to_radians();
    Ok(match file.kind.as_str() {
        "HWP" => Component::Hwp {
            mode: one_port()?,
            theta: theta(),
        },
        "QWP" => Component::Qwp {
            mode: one_port()?,
            theta: theta(),
        },
        "PS" => Component::PhaseShifter {
            mode: one_port()?,
            theta: theta(),
        },
        "PBS" => Component::Pbs {
            ports: two_ports()?,
        },
        "BD" => Component::BeamDisplacer {
            ports: two_ports()?,
        },
        "VBS" => Component::Vbs {
            ports: two_ports()?,
            r: file.params.r.unwrap_or(1.0),
            t: file.params.t.unwrap_or(0.0),
        },
        "Mirror" => Component::Mirror { mode: one_port()? },
        other => {
            return Err(Error::UnknownMode {
                mode: format!("unknown component kind {other:?}"),
            })
        }
    })
}

/// Serialize a netlist as pretty-printed JSON with sorted keys.
pub fn netlist_to_json(netlist: &Netlist) -> Result<String> {
    let file = NetlistFile {
        schema_version: NETLIST_SCHEMA_VERSION,
        name: netlist.name().to_string(),
        provenance: netlist.provenance().to_string(),
        modes: netlist.basis().spatial_modes().to_vec(),
        stages: netlist
            .stages()
            .iter()
            .map(|s| StageFile {
                components: s.components.iter().map(component_to_file).collect(),
            })
            .collect(),
    };
    let value = serde_json::to_value(&file).map_err(|e| Error::UnknownMode {
        mode: format!("serialization failed: {e}"),
    })?;
    Ok(format!("{:#}\n", value))
}

/// Parse a netlist from JSON. The basis is the two-polarization hybrid
/// space over the file's spatial modes.
pub fn netlist_from_json(json: &str) -> Result<Netlist> {
    let file: NetlistFile = serde_json::from_str(json).map_err(|e| Error::UnknownMode {
        mode: format!("netlist parse error: {e}"),
    })?;
    let mode_refs: Vec<&str> = file.modes.iter().map(String::as_str).collect();
    let basis = ModeBasis::hybrid_over(&mode_refs)?;
    let mut netlist = Netlist::new(basis, file.name)?.with_provenance(file.provenance);
    for stage in &file.stages {
        let components = stage
            .components
            .iter()
            .map(component_from_file)
            .collect::<Result<Vec<_>>>()?;
        netlist.push_stage(components)?;
    }
    Ok(netlist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{compile, paper_circuit, GatePreset};
    use crate::hilbert::eigen::max_abs;

    #[test]
    fn presets_round_trip_through_json() {
        for preset in GatePreset::ALL {
            let net = paper_circuit(preset).unwrap();
            let json = netlist_to_json(&net).unwrap();
            let parsed = netlist_from_json(&json).unwrap();
            assert_eq!(parsed.name(), net.name());
            assert_eq!(parsed.stages().len(), net.stages().len());
            let u = compile(&net).unwrap();
            let v = compile(&parsed).unwrap();
            assert!(max_abs(&(u.matrix() - v.matrix())) < 1e-12, "{preset:?}");
            // Serialization reaches a fixed point after one cycle.
            let json2 = netlist_to_json(&parsed).unwrap();
            let json3 = netlist_to_json(&netlist_from_json(&json2).unwrap()).unwrap();
            assert_eq!(json2, json3, "{preset:?}");
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let json = r#"{
            "schema_version": 1,
            "name": "x",
            "modes": ["a", "b"],
            "stages": [],
            "extra": true
        }"#;
        assert!(netlist_from_json(json).is_err());
    }

    #[test]
    fn unknown_kind_is_rejected() {
        let json = r#"{
            "schema_version": 1,
            "name": "x",
            "modes": ["a", "b"],
            "stages": [ { "components": [ { "kind": "WAT", "ports": ["a"] } ] } ]
        }"#;
        assert!(netlist_from_json(json).is_err());
    }
}
