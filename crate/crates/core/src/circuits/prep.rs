//! State preparation: a three-splitter tree producing an arbitrary
//! four-mode superposition from a single horizontally polarized input.

use super::{Component, Netlist};
use crate::error::{Error, Result};
use crate::hilbert::ModeBasis;
use crate::tolerances;
use crate::C64;

/// Target amplitudes `(α, β, γ, δ)` on modes `(a, b, c, d)`, normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrepSpec {
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub delta: C64,
}

impl PrepSpec {
    pub fn new(alpha: C64, beta: C64, gamma: C64, delta: C64) -> Result<Self> {
        let norm_sq =
            alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr() + delta.norm_sqr();
        if (norm_sq - 1.0).abs() > tolerances::EXACT {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn amplitudes(&self) -> [C64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    /// Equal superposition `(1/2)(|a> + |b> + |c> + |d>)`.
    pub fn equal_superposition() -> Self {
        let h = C64::new(0.5, 0.0);
        Self {
            alpha: h,
            beta: h,
            gamma: h,
            delta: h,
        }
    }
}

/// Build the splitter tree for a target superposition.
///
/// Splitter 1 divides the injected mode `a` between the `(a, b)` branch
/// (weight `r₁ = √(|α|²+|β|²)`) and the `(c, d)` branch (weight
/// `t₁ = √(|γ|²+|δ|²)`); splitters 2 and 3 set the in-branch ratios
/// `t₂ = |α|/r₁, r₂ = |β|/r₁, r₃ = |γ|/t₁, t₃ = |δ|/t₁`. Splitter
/// amplitudes are real; target phases ride on trailing phase shifters with
/// mode `a` as the zero-phase reference. A vanishing branch gets the
/// degenerate setting `(r, t) = (1, 0)`, which routes nothing anywhere that
/// matters.
pub fn prep_circuit(spec: &PrepSpec) -> Result<Netlist> {
    let [alpha, beta, gamma, delta] = spec.amplitudes();
    let r1 = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    let t1 = (gamma.norm_sqr() + delta.norm_sqr()).sqrt();

    // In-branch coefficients; the degenerate branch keeps (1, 0).
    let (t2, r2) = if r1 > 0.0 {
        (alpha.norm() / r1, beta.norm() / r1)
    } else {
        (1.0, 0.0)
    };
    let (r3, t3) = if t1 > 0.0 {
        (gamma.norm() / t1, delta.norm() / t1)
    } else {
        (1.0, 0.0)
    };

    let mut net = Netlist::new(ModeBasis::hybrid(4), "prep")?.with_provenance(format!(
        "prep(alpha={alpha}, beta={beta}, gamma={gamma}, delta={delta})"
    ));
    // Splitter 1: a -> r1·a + t1·c.
    net.push_stage(vec![Component::Vbs {
        ports: ["a".into(), "c".into()],
        r: r1,
        t: t1,
    }])?;
    // Splitter 2 on (a, b) and splitter 3 on (c, d) act in parallel.
    net.push_stage(vec![
        Component::Vbs {
            ports: ["a".into(), "b".into()],
            r: t2,
            t: r2,
        },
        Component::Vbs {
            ports: ["c".into(), "d".into()],
            r: r3,
            t: t3,
        },
    ])?;
    // Phases relative to mode a.
    let reference = alpha.arg();
    let mut shifters = Vec::new();
    for (mode, amp) in [("b", beta), ("c", gamma), ("d", delta)] {
        if amp.norm() == 0.0 {
            continue;
        }
        let phase = amp.arg() - reference;
        if phase.abs() > 0.0 {
            shifters.push(Component::PhaseShifter {
                mode: mode.into(),
                theta: phase,
            });
        }
    }
    if !shifters.is_empty() {
        net.push_stage(shifters)?;
    }
    Ok(net)
}
