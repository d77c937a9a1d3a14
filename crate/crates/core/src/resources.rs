//! Closed-form component-count estimates: the splitter-cascade scheme
//! against the quantum-walk construction, for arbitrary dimension.

use serde::Serialize;

use crate::error::{Error, Result};

/// Which construction a report counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Splitter cascade over polarization-path encoding.
    Cascade,
    /// Quantum-walk construction.
    QuantumWalk,
}

/// Gate family a cascade count refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CountedGate {
    X,
    Z,
    CX,
}

/// Component counts for one scheme at one dimension.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResourceReport {
    pub d: usize,
    pub scheme: Scheme,
    pub gate: CountedGate,
    pub pbs_count: f64,
    pub hwp_count: f64,
    pub qwp_count: f64,
    /// Set when a formula evaluates to a non-integer (odd dimensions in the
    /// quantum-walk polynomials); the value is reported as-is.
    pub non_integer_warning: bool,
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { dim: d });
    }
    Ok(())
}

/// Cascade-scheme counts: `d − 1` PBSs for X and CX, `d` HWPs plus `2d`
/// QWPs for Z. Gate sections only; state preparation is excluded.
pub fn cascade_counts(d: usize, gate: CountedGate) -> Result<ResourceReport> {
    check_dim(d)?;
    let (pbs, hwp, qwp) = match gate {
        CountedGate::X | CountedGate::CX => ((d - 1) as f64, 0.0, 0.0),
        CountedGate::Z => (0.0, d as f64, 2.0 * d as f64),
    };
    Ok(ResourceReport {
        d,
        scheme: Scheme::Cascade,
        gate,
        pbs_count: pbs,
        hwp_count: hwp,
        qwp_count: qwp,
        non_integer_warning: false,
    })
}

/// Quantum-walk counts for X/CX: `1.5d² − 2.5d + 1` PBSs and
/// `3d² − 5d + 2` HWPs. Odd dimensions evaluate to non-integers and are
/// flagged rather than rejected.
pub fn quantum_walk_counts(d: usize) -> Result<ResourceReport> {
    check_dim(d)?;
    let df = d as f64;
    let pbs = 1.5 * df * df - 2.5 * df + 1.0;
    let hwp = 3.0 * df * df - 5.0 * df + 2.0;
    let non_integer = pbs.fract() != 0.0 || hwp.fract() != 0.0;
    Ok(ResourceReport {
        d,
        scheme: Scheme::QuantumWalk,
        gate: CountedGate::X,
        pbs_count: pbs,
        hwp_count: hwp,
        qwp_count: 0.0,
        non_integer_warning: non_integer,
    })
}
