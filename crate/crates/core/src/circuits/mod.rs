//! Optical-circuit netlists and their compilation to basis operators.
//!
//! A netlist is an ordered list of stages over a fixed polarization ⊗
//! spatial-mode basis; each stage holds components wired to disjoint spatial
//! ports. Compilation multiplies the stage unitaries, later stages applied
//! on the left.
//!
//! PBS and beam-displacer elements embed with the crossed routing of the
//! staircase layouts: the transmitted `H` beam continues into the partner
//! port's rail while the reflected `V` beam stays on its own rail (picking
//! up the `i` reflection phase). This is the scatter element of
//! [`crate::components::pbs_scatter`] composed with the port relabeling the
//! physical layout performs, and it is what lets `d − 1` cascaded splitters
//! realize a cyclic shift on horizontally polarized light.

mod io;
mod prep;
mod presets;

pub use io::{netlist_from_json, netlist_to_json, NETLIST_SCHEMA_VERSION};
pub use prep::{prep_circuit, PrepSpec};
pub use presets::{paper_circuit, verify_netlist, GatePreset, VerifyOutcome};

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::components;
use crate::error::{Error, Result};
use crate::hilbert::{ModeBasis, Operator};
use crate::{c64, C64};

/// A typed optical element wired to named spatial ports.
#[derive(Debug, Clone, PartialEq)]
pub enum Component {
    /// Half-wave plate on one mode; angle in radians.
    Hwp { mode: String, theta: f64 },
    /// Quarter-wave plate on one mode; angle in radians.
    Qwp { mode: String, theta: f64 },
    /// Mode-local phase `e^{iθ}` on both polarizations.
    PhaseShifter { mode: String, theta: f64 },
    /// Polarizing beam splitter across two rails.
    Pbs { ports: [String; 2] },
    /// Beam displacer; routing-equivalent to a PBS on its two rails.
    BeamDisplacer { ports: [String; 2] },
    /// Variable beam splitter `[[r, t], [t, −r]]`, polarization-independent.
    Vbs { ports: [String; 2], r: f64, t: f64 },
    /// Mirror: pure routing, identity on its mode.
    Mirror { mode: String },
}

impl Component {
    pub fn kind(&self) -> &'static str {
        match self {
            Component::Hwp { .. } => "HWP",
            Component::Qwp { .. } => "QWP",
            Component::PhaseShifter { .. } => "PS",
            Component::Pbs { .. } => "PBS",
            Component::BeamDisplacer { .. } => "BD",
            Component::Vbs { .. } => "VBS",
            Component::Mirror { .. } => "Mirror",
        }
    }

    pub fn ports(&self) -> Vec<&str> {
        match self {
            Component::Hwp { mode, .. }
            | Component::Qwp { mode, .. }
            | Component::PhaseShifter { mode, .. }
            | Component::Mirror { mode } => vec![mode],
            Component::Pbs { ports }
            | Component::BeamDisplacer { ports }
            | Component::Vbs { ports, .. } => vec![&ports[0], &ports[1]],
        }
    }
}

/// One feed-forward layer of parallel components.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Stage {
    pub components: Vec<Component>,
}

/// Staged optical circuit over a fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Netlist {
    basis: Arc<ModeBasis>,
    stages: Vec<Stage>,
    name: String,
    provenance: String,
}

impl Netlist {
    pub fn new(basis: Arc<ModeBasis>, name: impl Into<String>) -> Result<Self> {
        let pols = basis.polarizations();
        let supported = pols == ["H"] || pols == ["V", "H"];
        if !supported {
            return Err(Error::UnsupportedBasis);
        }
        Ok(Self {
            basis,
            stages: Vec::new(),
            name: name.into(),
            provenance: String::new(),
        })
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    /// Append a stage, validating port names and per-stage disjointness.
    pub fn push_stage(&mut self, components: Vec<Component>) -> Result<()> {
        let stage_index = self.stages.len();
        let mut used: Vec<&str> = Vec::new();
        for component in &components {
            for port in component.ports() {
                if self.basis.spatial_index(port).is_none() {
                    return Err(Error::UnknownMode { mode: port.into() });
                }
                if used.contains(&port) {
                    return Err(Error::PortCollision {
                        stage: stage_index,
                        mode: port.into(),
                    });
                }
            }
            used.extend(component.ports());
        }
        self.stages.push(Stage { components });
        Ok(())
    }

    pub fn basis(&self) -> &Arc<ModeBasis> {
        &self.basis
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.stages.iter().flat_map(|s| s.components.iter())
    }

    /// Number of components of the given kind (`"PBS"`, `"HWP"`, ...).
    pub fn count_kind(&self, kind: &str) -> usize {
        self.components().filter(|c| c.kind() == kind).count()
    }

    /// Map every wave-plate angle through `f` (used for noise realizations).
    pub fn map_waveplate_angles(&self, mut f: impl FnMut(f64) -> f64) -> Self {
        let stages = self
            .stages
            .iter()
            .map(|stage| Stage {
                components: stage
                    .components
                    .iter()
                    .map(|c| match c {
                        Component::Hwp { mode, theta } => Component::Hwp {
                            mode: mode.clone(),
                            theta: f(*theta),
                        },
                        Component::Qwp { mode, theta } => Component::Qwp {
                            mode: mode.clone(),
                            theta: f(*theta),
                        },
                        other => other.clone(),
                    })
                    .collect(),
            })
            .collect();
        Self {
            basis: self.basis.clone(),
            stages,
            name: self.name.clone(),
            provenance: self.provenance.clone(),
        }
    }
}

/// Compile-time physics options. The default compiles ideal components.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompileOptions {
    /// PBS/BD extinction: fraction of `H` intensity reflected (and of `V`
    /// transmitted) at each splitter.
    pub pbs_extinction: f64,
}

/// Compile a netlist to its basis operator (ideal components).
pub fn compile(netlist: &Netlist) -> Result<Operator> {
    compile_with(netlist, CompileOptions::default())
}

/// Compile with explicit physics options.
pub fn compile_with(netlist: &Netlist, options: CompileOptions) -> Result<Operator> {
    let n = netlist.basis.len();
    let mut total = DMatrix::<C64>::identity(n, n);
    for stage in &netlist.stages {
        let mut layer = DMatrix::<C64>::identity(n, n);
        for component in &stage.components {
            apply_component(&mut layer, &netlist.basis, component, options)?;
        }
        total = layer * total;
    }
    Operator::new(netlist.basis.clone(), total)
}

/// Write a component's action into `layer` (which starts as the identity and
/// whose touched rows/columns are still untouched thanks to stage
/// disjointness).
fn apply_component(
    layer: &mut DMatrix<C64>,
    basis: &ModeBasis,
    component: &Component,
    options: CompileOptions,
) -> Result<()> {
    let pol_index = |pol: &str| basis.polarization_index(pol);
    match component {
        Component::Mirror { .. } => Ok(()),
        Component::PhaseShifter { mode, theta } => {
            let m = basis.spatial_index(mode).ok_or(Error::UnknownMode {
                mode: mode.clone(),
            })?;
            let phase = C64::from_polar(1.0, *theta);
            for p in 0..basis.polarizations().len() {
                let i = basis.index_of(p, m);
                layer[(i, i)] = phase;
            }
            Ok(())
        }
        Component::Hwp { mode, theta } | Component::Qwp { mode, theta } => {
            let local = match component {
                Component::Hwp { .. } => components::hwp_matrix(*theta),
                _ => components::qwp_matrix(*theta),
            };
            let m = basis.spatial_index(mode).ok_or(Error::UnknownMode {
                mode: mode.clone(),
            })?;
            // The local matrix is on (H, V); embed by polarization label.
            let local_pols = ["H", "V"];
            for (lr, pr) in local_pols.iter().enumerate() {
                let Some(gr) = pol_index(pr) else { continue };
                let row = basis.index_of(gr, m);
                for c in 0..basis.len() {
                    layer[(row, c)] = c64(0.0, 0.0);
                }
                for (lc, pc) in local_pols.iter().enumerate() {
                    let Some(gc) = pol_index(pc) else { continue };
                    layer[(row, basis.index_of(gc, m))] = local.entry(lr, lc);
                }
            }
            Ok(())
        }
        Component::Vbs { ports, r, t } => {
            let vbs = components::vbs_matrix(c64(*r, 0.0), c64(*t, 0.0))?;
            let p = basis.spatial_index(&ports[0]).ok_or(Error::UnknownMode {
                mode: ports[0].clone(),
            })?;
            let q = basis.spatial_index(&ports[1]).ok_or(Error::UnknownMode {
                mode: ports[1].clone(),
            })?;
            for pol in 0..basis.polarizations().len() {
                let (ip, iq) = (basis.index_of(pol, p), basis.index_of(pol, q));
                layer[(ip, ip)] = vbs.entry(0, 0);
                layer[(ip, iq)] = vbs.entry(0, 1);
                layer[(iq, ip)] = vbs.entry(1, 0);
                layer[(iq, iq)] = vbs.entry(1, 1);
            }
            Ok(())
        }
        Component::Pbs { ports } | Component::BeamDisplacer { ports } => {
            let scatter = components::pbs_scatter_with_extinction(options.pbs_extinction)?;
            let sb = scatter.basis().clone();
            let p = basis.spatial_index(&ports[0]).ok_or(Error::UnknownMode {
                mode: ports[0].clone(),
            })?;
            let q = basis.spatial_index(&ports[1]).ok_or(Error::UnknownMode {
                mode: ports[1].clone(),
            })?;
            // Crossed routing: the scatter's output port 1 feeds rail q and
            // output port 2 feeds rail p, so transmitted H hops rails and
            // reflected V stays home.
            let out_rail = [q, p];
            let in_rail = [p, q];
            for pol in ["V", "H"] {
                let Some(gp) = pol_index(pol) else { continue };
                let sp = sb.polarization_index(pol).expect("scatter has V and H");
                for out_port in 0..2 {
                    let row_local = sb.index_of(sp, out_port);
                    let row = basis.index_of(gp, out_rail[out_port]);
                    for c in 0..basis.len() {
                        layer[(row, c)] = c64(0.0, 0.0);
                    }
                    for in_port in 0..2 {
                        let col_local = sb.index_of(sp, in_port);
                        let col = basis.index_of(gp, in_rail[in_port]);
                        layer[(row, col)] = scatter.entry(row_local, col_local);
                    }
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{equal_up_to_global_phase, StateVector};
    use crate::tolerances;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn empty_netlist_compiles_to_identity() {
        let net = Netlist::new(ModeBasis::hybrid(4), "empty").unwrap();
        let u = compile(&net).unwrap();
        let id = Operator::identity(u.basis().clone());
        assert_eq!(u.matrix(), id.matrix());
    }

    #[test]
    fn single_hwp_swaps_polarizations_on_one_mode() {
        let mut net = Netlist::new(ModeBasis::hybrid(2), "hwp").unwrap();
        net.push_stage(vec![Component::Hwp {
            mode: "a".into(),
            theta: FRAC_PI_4,
        }])
        .unwrap();
        let u = compile(&net).unwrap();
        let basis = u.basis().clone();
        let ha = basis.index_of_label("Ha").unwrap();
        let va = basis.index_of_label("Va").unwrap();
        let hb = basis.index_of_label("Hb").unwrap();
        let input = StateVector::basis_state(basis.clone(), ha);
        let out = u.apply(&input).unwrap();
        assert!((out.amplitude(va) - c64(1.0, 0.0)).norm() < tolerances::STRICT);
        // Identity elsewhere.
        let input_b = StateVector::basis_state(basis, hb);
        let out_b = u.apply(&input_b).unwrap();
        assert!((out_b.amplitude(hb) - c64(1.0, 0.0)).norm() < tolerances::STRICT);
    }

    #[test]
    fn pbs_routing_crosses_h_and_holds_v() {
        let mut net = Netlist::new(ModeBasis::hybrid(2), "pbs").unwrap();
        net.push_stage(vec![Component::Pbs {
            ports: ["a".into(), "b".into()],
        }])
        .unwrap();
        let u = compile(&net).unwrap();
        let b = u.basis().clone();
        let idx = |l: &str| b.index_of_label(l).unwrap();
        assert!((u.entry(idx("Hb"), idx("Ha")) - c64(1.0, 0.0)).norm() < 1e-15);
        assert!((u.entry(idx("Ha"), idx("Hb")) - c64(1.0, 0.0)).norm() < 1e-15);
        assert!((u.entry(idx("Va"), idx("Va")) - c64(0.0, 1.0)).norm() < 1e-15);
        assert!((u.entry(idx("Vb"), idx("Vb")) - c64(0.0, 1.0)).norm() < 1e-15);
        assert!(u.unitarity_deviation() < 1e-15);
    }

    #[test]
    fn beam_displacer_matches_pbs_routing() {
        let make = |crossed: bool| {
            let mut net = Netlist::new(ModeBasis::hybrid(2), "bd").unwrap();
            let ports = ["a".to_string(), "b".to_string()];
            net.push_stage(vec![if crossed {
                Component::Pbs { ports }
            } else {
                Component::BeamDisplacer { ports }
            }])
            .unwrap();
            compile(&net).unwrap()
        };
        let pbs = make(true);
        let bd = make(false);
        assert!(equal_up_to_global_phase(&bd, &pbs, 0.0).is_some());
    }

    #[test]
    fn port_collision_is_rejected() {
        let mut net = Netlist::new(ModeBasis::hybrid(4), "bad").unwrap();
        let err = net.push_stage(vec![
            Component::Pbs {
                ports: ["a".into(), "b".into()],
            },
            Component::Hwp {
                mode: "b".into(),
                theta: 0.0,
            },
        ]);
        assert!(matches!(err, Err(Error::PortCollision { .. })));
    }

    #[test]
    fn unknown_mode_is_rejected() {
        let mut net = Netlist::new(ModeBasis::hybrid(2), "bad").unwrap();
        let err = net.push_stage(vec![Component::Mirror { mode: "z".into() }]);
        assert!(matches!(err, Err(Error::UnknownMode { .. })));
    }

    #[test]
    fn stage_order_is_left_multiplication() {
        // PS(π/2) on a then HWP(π/4) on a: H -> i V overall on mode a.
        let mut net = Netlist::new(ModeBasis::hybrid(2), "order").unwrap();
        net.push_stage(vec![Component::PhaseShifter {
            mode: "a".into(),
            theta: std::f64::consts::FRAC_PI_2,
        }])
        .unwrap();
        net.push_stage(vec![Component::Hwp {
            mode: "a".into(),
            theta: FRAC_PI_4,
        }])
        .unwrap();
        let u = compile(&net).unwrap();
        let b = u.basis().clone();
        let idx = |l: &str| b.index_of_label(l).unwrap();
        assert!((u.entry(idx("Va"), idx("Ha")) - c64(0.0, 1.0)).norm() < 1e-15);
    }
}
