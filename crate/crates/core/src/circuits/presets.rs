//! Prebuilt gate-section netlists for the nine four-dimensional presets.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};
use std::fmt;
use std::str::FromStr;

use super::{compile, Component, Netlist};
use crate::components::phase_sandwich_angles;
use crate::error::{Error, Result};
use crate::gates::{cx_hybrid, pauli_x, pauli_z};
use crate::hilbert::{ModeBasis, Operator};
use crate::tolerances;

/// The nine gate presets, named with ASCII-safe suffixes
/// (`_sq` for the square, `_dag` for the adjoint).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GatePreset {
    X4,
    X4Sq,
    X4Dag,
    Z4,
    Z4Sq,
    Z4Dag,
    Cx4,
    Cx4Sq,
    Cx4Dag,
}

impl GatePreset {
    pub const ALL: [GatePreset; 9] = [
        GatePreset::X4,
        GatePreset::X4Sq,
        GatePreset::X4Dag,
        GatePreset::Z4,
        GatePreset::Z4Sq,
        GatePreset::Z4Dag,
        GatePreset::Cx4,
        GatePreset::Cx4Sq,
        GatePreset::Cx4Dag,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GatePreset::X4 => "X4",
            GatePreset::X4Sq => "X4_sq",
            GatePreset::X4Dag => "X4_dag",
            GatePreset::Z4 => "Z4",
            GatePreset::Z4Sq => "Z4_sq",
            GatePreset::Z4Dag => "Z4_dag",
            GatePreset::Cx4 => "CX4",
            GatePreset::Cx4Sq => "CX4_sq",
            GatePreset::Cx4Dag => "CX4_dag",
        }
    }

    /// Gate power `n` (1, 2, or 3 for the adjoint).
    pub fn power(&self) -> i64 {
        match self {
            GatePreset::X4 | GatePreset::Z4 | GatePreset::Cx4 => 1,
            GatePreset::X4Sq | GatePreset::Z4Sq | GatePreset::Cx4Sq => 2,
            GatePreset::X4Dag | GatePreset::Z4Dag | GatePreset::Cx4Dag => 3,
        }
    }

    /// True for the polarization-controlled presets, which act on the full
    /// eight-dimensional hybrid space.
    pub fn is_controlled(&self) -> bool {
        matches!(self, GatePreset::Cx4 | GatePreset::Cx4Sq | GatePreset::Cx4Dag)
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self, GatePreset::Z4 | GatePreset::Z4Sq | GatePreset::Z4Dag)
    }

    /// Ideal target unitary: 4×4 on the qudit register for X/Z presets,
    /// 8×8 block form for the controlled presets.
    pub fn ideal_operator(&self) -> Operator {
        let n = self.power();
        match self {
            GatePreset::X4 | GatePreset::X4Sq | GatePreset::X4Dag => {
                pauli_x(4, n).expect("d = 4")
            }
            GatePreset::Z4 | GatePreset::Z4Sq | GatePreset::Z4Dag => {
                pauli_z(4, n).expect("d = 4")
            }
            GatePreset::Cx4 | GatePreset::Cx4Sq | GatePreset::Cx4Dag => {
                cx_hybrid(n).expect("d = 4")
            }
        }
    }
}

impl fmt::Display for GatePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GatePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GatePreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownMode { mode: s.to_string() })
    }
}

/// Stages of splitter transpositions realizing the cyclic shift `X₄ⁿ` on
/// horizontally polarized light. A `d`-cycle needs `d − 1` splitters; the
/// square decomposes into two disjoint swaps (an even permutation cannot be
/// a product of three transpositions).
fn shift_network(n: i64) -> Vec<Vec<[&'static str; 2]>> {
    match n.rem_euclid(4) {
        1 => vec![vec![["c", "d"]], vec![["b", "c"]], vec![["a", "b"]]],
        2 => vec![vec![["a", "c"], ["b", "d"]]],
        3 => vec![vec![["a", "b"]], vec![["b", "c"]], vec![["c", "d"]]],
        _ => vec![],
    }
}

fn pbs(ports: [&str; 2]) -> Component {
    Component::Pbs {
        ports: [ports[0].into(), ports[1].into()],
    }
}

/// Compensating wave-plate group for a controlled gate: cancels the
/// per-mode reflection phases the splitter network leaves on the `V`
/// components, without disturbing the `H` block. Returns the plate layer
/// and the trailing phase-trim layer.
fn compensation_for(bare: &Netlist) -> Result<(Vec<Component>, Vec<Component>)> {
    let u = compile(bare)?;
    let basis = u.basis().clone();
    let mut plates = Vec::new();
    let mut trims = Vec::new();
    for (m, mode) in basis.spatial_modes().to_vec().iter().enumerate() {
        let v_index = basis.index_of(0, m);
        let phase = u.entry(v_index, v_index);
        debug_assert!((phase.norm() - 1.0).abs() < tolerances::EXACT);
        let quarter = ((phase.arg() / FRAC_PI_2).round() as i64).rem_euclid(4);
        match quarter {
            0 => {}
            // V carries i: retard V by π/2 (QWP at 90°) and trim the path.
            1 => {
                plates.push(Component::Qwp {
                    mode: mode.clone(),
                    theta: FRAC_PI_2,
                });
                trims.push(Component::PhaseShifter {
                    mode: mode.clone(),
                    theta: (-FRAC_PI_4).rem_euclid(TAU),
                });
            }
            // V carries −1: a half-wave plate at 0° flips it back.
            2 => plates.push(Component::Hwp {
                mode: mode.clone(),
                theta: 0.0,
            }),
            // V carries −i: advance V by π/2 (QWP at 0°) and trim.
            _ => {
                plates.push(Component::Qwp {
                    mode: mode.clone(),
                    theta: 0.0,
                });
                trims.push(Component::PhaseShifter {
                    mode: mode.clone(),
                    theta: FRAC_PI_4,
                });
            }
        }
    }
    Ok((plates, trims))
}

/// Gate-section netlist of a preset (state preparation excluded), over the
/// eight-dimensional hybrid basis.
///
/// X-family: the bare splitter cascade. Z-family: one wave-plate triple per
/// mode placing phase `2πnl/4` on level `l` (the zero-phase reference triple
/// sits on mode `a`). Controlled family: the matching splitter cascade plus
/// the compensating wave-plate group.
pub fn paper_circuit(preset: GatePreset) -> Result<Netlist> {
    let basis = ModeBasis::hybrid(4);
    let mut net = Netlist::new(basis.clone(), preset.name())?
        .with_provenance(format!("preset:{}", preset.name()));
    match preset {
        GatePreset::X4 | GatePreset::X4Sq | GatePreset::X4Dag => {
            for stage in shift_network(preset.power()) {
                net.push_stage(stage.into_iter().map(pbs).collect())?;
            }
        }
        GatePreset::Z4 | GatePreset::Z4Sq | GatePreset::Z4Dag => {
            let n = preset.power();
            let modes = basis.spatial_modes().to_vec();
            let mut q1_layer = Vec::new();
            let mut h1_layer = Vec::new();
            let mut q2_layer = Vec::new();
            for (l, mode) in modes.iter().enumerate() {
                let phase = TAU * (n as usize * l % 4) as f64 / 4.0;
                let (q1, h1, q2) = phase_sandwich_angles(phase)?;
                q1_layer.push(Component::Qwp {
                    mode: mode.clone(),
                    theta: q1,
                });
                h1_layer.push(Component::Hwp {
                    mode: mode.clone(),
                    theta: h1,
                });
                q2_layer.push(Component::Qwp {
                    mode: mode.clone(),
                    theta: q2,
                });
            }
            net.push_stage(q1_layer)?;
            net.push_stage(h1_layer)?;
            net.push_stage(q2_layer)?;
        }
        GatePreset::Cx4 | GatePreset::Cx4Sq | GatePreset::Cx4Dag => {
            for stage in shift_network(preset.power()) {
                net.push_stage(stage.into_iter().map(pbs).collect())?;
            }
            let (plates, trims) = compensation_for(&net)?;
            if !plates.is_empty() {
                net.push_stage(plates)?;
            }
            if !trims.is_empty() {
                net.push_stage(trims)?;
            }
        }
    }
    Ok(net)
}

/// Outcome of checking a compiled netlist against an ideal target.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOutcome {
    pub matches: bool,
    /// Extracted global phase when matched.
    pub phase: Option<f64>,
    /// Max-norm deviation after aligning the global phase.
    pub deviation: f64,
}

/// Compile a netlist and compare it against a preset's ideal gate up to a
/// global phase at [`tolerances::EXACT`]. X/Z targets are compared on the
/// logical (horizontal) block; controlled targets on the full hybrid space.
pub fn verify_netlist(netlist: &Netlist, preset: GatePreset) -> Result<VerifyOutcome> {
    let compiled = compile(netlist)?;
    let compared = if preset.is_controlled() {
        compiled
    } else {
        compiled.restrict_to_logical()?
    };
    let ideal = preset.ideal_operator();
    Ok(phase_compare(&compared, &ideal))
}

fn phase_compare(u: &Operator, v: &Operator) -> VerifyOutcome {
    use crate::hilbert::eigen::max_abs;
    use crate::C64;
    if u.basis().labels() != v.basis().labels() {
        return VerifyOutcome {
            matches: false,
            phase: None,
            deviation: f64::INFINITY,
        };
    }
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
    let phase = (u.matrix()[best] * m_v[best].conj()).arg();
    let rotation = C64::from_polar(1.0, phase);
    let deviation = max_abs(&(u.matrix() - m_v.map(|e| e * rotation)));
    VerifyOutcome {
        matches: deviation <= tolerances::EXACT,
        phase: (deviation <= tolerances::EXACT).then_some(phase),
        deviation,
    }
}
