//! Ideal generalized Pauli gates for arbitrary dimension and power, plus
//! truth tables and the reported classical fidelity bound.

use std::f64::consts::TAU;
use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hilbert::{ModeBasis, Operator};
use crate::{c64, C64};

/// Gate family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateFamily {
    X,
    Z,
    Y,
    /// Polarization-controlled cyclic shift on the spatial register
    /// (qubit control ⊗ qudit target).
    CxHybrid,
    /// Two-qudit controlled shift `|k>|l> -> |k>|k ⊕ l ⊕ (n−1)>`.
    CxQudit,
}

/// Dimension, power, and family of a generalized Pauli gate. The power is
/// reduced modulo `d` on construction; negative powers wrap (so `-1` is the
/// adjoint).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GateSpec {
    pub d: usize,
    pub n: usize,
    pub family: GateFamily,
}

impl GateSpec {
    pub fn new(d: usize, n: i64, family: GateFamily) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall { dim: d });
        }
        let n = n.rem_euclid(d as i64) as usize;
        Ok(Self { d, n, family })
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = match self.family {
            GateFamily::X => "X",
            GateFamily::Z => "Z",
            GateFamily::Y => "Y",
            GateFamily::CxHybrid => "CX",
            GateFamily::CxQudit => "CXq",
        };
        write!(f, "{family}_{}^{}", self.d, self.n)
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { dim: d });
    }
    Ok(())
}

/// `X_d^n |l> = |l ⊕ n mod d>`: the cyclic shift as a permutation matrix.
pub fn pauli_x(d: usize, n: i64) -> Result<Operator> {
    check_dim(d)?;
    let n = n.rem_euclid(d as i64) as usize;
    let mut m = DMatrix::zeros(d, d);
    for l in 0..d {
        m[((l + n) % d, l)] = c64(1.0, 0.0);
    }
    Operator::new(ModeBasis::qudit(d), m)
}

/// `Z_d^n |l> = ω^{n·l} |l>` with `ω = exp(2πi/d)`.
pub fn pauli_z(d: usize, n: i64) -> Result<Operator> {
    check_dim(d)?;
    let n = n.rem_euclid(d as i64) as usize;
    let mut m = DMatrix::zeros(d, d);
    for l in 0..d {
        m[(l, l)] = C64::from_polar(1.0, TAU * (n * l % d) as f64 / d as f64);
    }
    Operator::new(ModeBasis::qudit(d), m)
}

/// `Y_d^n = X_d^n · Z_d^n`.
pub fn pauli_y(d: usize, n: i64) -> Result<Operator> {
    pauli_x(d, n)?.compose(&pauli_z(d, n)?)
}

/// Two-qudit controlled shift `|k>|l> -> |k>|k ⊕ l ⊕ (n−1) mod d>`,
/// taken literally including the `n−1` offset.
///
/// Note this makes `CX^n` differ from `(CX^1)^n` for `n ≥ 2` whenever the
/// control is nonzero: `(CX^1)^2 |k>|l> = |k>|l ⊕ 2k>` while
/// `CX^2 |k>|l> = |k>|l ⊕ k ⊕ 1>`. Both semantics are exposed; the optical
/// constructions use the polarization-controlled form [`cx_hybrid`], whose
/// powers compose normally.
pub fn cx_qudit(d: usize, n: i64) -> Result<Operator> {
    check_dim(d)?;
    if n < 1 {
        return Err(Error::DimensionTooSmall { dim: n.max(0) as usize });
    }
    let n = n as usize;
    let dim = d * d;
    let labels: Vec<String> = (0..d)
        .flat_map(|k| (0..d).map(move |l| format!("{k}{l}")))
        .collect();
    let basis = ModeBasis::from_labels(&labels)?;
    let mut m = DMatrix::zeros(dim, dim);
    for k in 0..d {
        for l in 0..d {
            let target = (k + l + n - 1) % d;
            m[(k * d + target, k * d + l)] = c64(1.0, 0.0);
        }
    }
    Operator::new(basis, m)
}

/// Polarization-controlled shift on the four-dimensional hybrid space:
/// identity on the `V` block, `X_4^n` on the `H` block, basis ordered
/// `(Va..Vd, Ha..Hd)`.
pub fn cx_hybrid(n: i64) -> Result<Operator> {
    let d = 4;
    let basis = ModeBasis::hybrid(d);
    let x = pauli_x(d, n)?;
    let mut m = DMatrix::identity(2 * d, 2 * d);
    for r in 0..d {
        for c in 0..d {
            m[(d + r, d + c)] = x.entry(r, c);
        }
    }
    Operator::new(basis, m)
}

/// Output-probability table `P(i,j) = |<j|U|i>|²` over all basis states,
/// for the selected input rows.
#[derive(Debug, Clone)]
pub struct TruthTable {
    pub input_labels: Vec<String>,
    pub output_labels: Vec<String>,
    /// `probs[i][j]`: probability of output `j` given input `i`.
    pub probs: Vec<Vec<f64>>,
    /// Raw detector counts backing `probs`, when the table came from a
    /// counting experiment.
    pub counts: Option<Vec<Vec<u64>>>,
    /// Ideal output column per input row; conversion efficiency reads here.
    pub target_cols: Vec<usize>,
}

impl TruthTable {
    /// Conversion efficiency per input row: probability mass on the ideal
    /// target output.
    pub fn row_efficiencies(&self) -> Vec<f64> {
        self.probs
            .iter()
            .zip(&self.target_cols)
            .map(|(row, &t)| row[t])
            .collect()
    }

    pub fn average_efficiency(&self) -> f64 {
        let effs = self.row_efficiencies();
        effs.iter().sum::<f64>() / effs.len() as f64
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.probs.iter().map(|row| row.iter().sum()).collect()
    }
}

/// Exact truth table of a unitary for the given input basis indices.
/// Targets are the maximum-probability outputs (one-hot for the ideal gates).
pub fn truth_table(u: &Operator, inputs: &[usize]) -> TruthTable {
    let basis = u.basis();
    let mut probs = Vec::with_capacity(inputs.len());
    let mut targets = Vec::with_capacity(inputs.len());
    for &i in inputs {
        let row: Vec<f64> = (0..u.dim()).map(|j| u.entry(j, i).norm_sqr()).collect();
        let target = row
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.total_cmp(b))
            .map(|(j, _)| j)
            .unwrap_or(0);
        probs.push(row);
        targets.push(target);
    }
    TruthTable {
        input_labels: inputs.iter().map(|&i| basis.label(i).to_string()).collect(),
        output_labels: basis.labels().to_vec(),
        probs,
        counts: None,
        target_cols: targets,
    }
}

/// Reported classical-strategy fidelity bound, used only to annotate reports.
#[derive(Debug, Clone, Copy)]
pub struct ClassicalBound {
    pub value: f64,
    pub note: &'static str,
}

/// The reported classical bound of 49.82% for this gate set. A constant,
/// not recomputed.
pub fn classical_bound() -> ClassicalBound {
    ClassicalBound {
        value: 0.4982,
        note: "reported classical-strategy fidelity bound for four-dimensional gates",
    }
}
