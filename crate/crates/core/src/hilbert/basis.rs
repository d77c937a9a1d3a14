//! Basis bookkeeping for the polarization ⊗ spatial-mode Hilbert space.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered basis of a polarization ⊗ spatial-mode space.
///
/// Basis order is polarization-major, spatial-minor with `V` before `H`,
/// so the two-polarization four-mode hybrid space reads
/// `(Va, Vb, Vc, Vd, Ha, Hb, Hc, Hd)`. The logical qudit levels are encoded
/// on the horizontal block: `|0> <-> |Ha>`, `|1> <-> |Hb>`, and so on.
///
/// Either axis may be trivial (a single empty label) so that factor spaces
/// such as a bare polarization qubit or a bare spatial register can be
/// expressed and combined with [`tensor_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeBasis {
    polarizations: Vec<String>,
    spatial_modes: Vec<String>,
    labels: Vec<String>,
    /// Logical level `l` -> basis index; empty when the space is not a
    /// computational register.
    encoding: Vec<usize>,
}

impl ModeBasis {
    fn build(
        polarizations: Vec<String>,
        spatial_modes: Vec<String>,
        encoding: Vec<usize>,
    ) -> Result<Arc<Self>> {
        let mut labels = Vec::with_capacity(polarizations.len() * spatial_modes.len());
        for p in &polarizations {
            for m in &spatial_modes {
                labels.push(format!("{p}{m}"));
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel { label: l.clone() });
            }
        }
        Ok(Arc::new(Self {
            polarizations,
            spatial_modes,
            labels,
            encoding,
        }))
    }

    /// Default spatial-mode names: `a, b, c, ...` and `m26, m27, ...` past `z`.
    pub fn default_mode_labels(d: usize) -> Vec<String> {
        (0..d)
            .map(|l| {
                if l < 26 {
                    char::from(b'a' + l as u8).to_string()
                } else {
                    format!("m{l}")
                }
            })
            .collect()
    }

    /// `d`-level computational register carried on horizontally polarized
    /// photons in `d` spatial modes: labels `Ha, Hb, ...`.
    pub fn qudit(d: usize) -> Arc<Self> {
        let basis = Self::build(
            vec!["H".into()],
            Self::default_mode_labels(d),
            (0..d).collect(),
        );
        basis.expect("default qudit labels are distinct")
    }

    /// Full two-polarization space over `d` spatial modes,
    /// ordered `(Va, ..., Ha, ...)`; logical levels sit on the `H` block.
    pub fn hybrid(d: usize) -> Arc<Self> {
        let basis = Self::build(
            vec!["V".into(), "H".into()],
            Self::default_mode_labels(d),
            (d..2 * d).collect(),
        );
        basis.expect("default hybrid labels are distinct")
    }

    /// Hybrid space over explicit spatial-mode names, logical levels on the
    /// `H` block (as [`ModeBasis::hybrid`] but with caller-chosen names).
    pub fn hybrid_over(modes: &[&str]) -> Result<Arc<Self>> {
        let d = modes.len();
        Self::build(
            vec!["V".into(), "H".into()],
            modes.iter().map(|m| m.to_string()).collect(),
            (d..2 * d).collect(),
        )
    }

    /// Bare polarization qubit ordered `(V, H)`.
    pub fn polarization() -> Arc<Self> {
        Self::build(vec!["V".into(), "H".into()], vec![String::new()], vec![])
            .expect("two labels are distinct")
    }

    /// Bare polarization qubit ordered `(H, V)`; the convention used by the
    /// wave-plate component matrices.
    pub fn polarization_hv() -> Arc<Self> {
        Self::build(vec!["H".into(), "V".into()], vec![String::new()], vec![])
            .expect("two labels are distinct")
    }

    /// Bare spatial register over the given mode names.
    pub fn spatial(modes: &[&str]) -> Result<Arc<Self>> {
        Self::build(
            vec![String::new()],
            modes.iter().map(|m| m.to_string()).collect(),
            vec![],
        )
    }

    /// Generic constructor for custom polarization/spatial label sets.
    pub fn with_axes(polarizations: &[&str], spatial_modes: &[&str]) -> Result<Arc<Self>> {
        Self::build(
            polarizations.iter().map(|p| p.to_string()).collect(),
            spatial_modes.iter().map(|m| m.to_string()).collect(),
            vec![],
        )
    }

    /// Abstract register over explicit labels (used for multi-qudit spaces
    /// that have no polarization/spatial structure).
    pub fn from_labels(labels: &[String]) -> Result<Arc<Self>> {
        Self::build(
            vec![String::new()],
            labels.to_vec(),
            (0..labels.len()).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn polarizations(&self) -> &[String] {
        &self.polarizations
    }

    pub fn spatial_modes(&self) -> &[String] {
        &self.spatial_modes
    }

    /// Number of logical levels encoded in this basis (0 when not a register).
    pub fn logical_dim(&self) -> usize {
        self.encoding.len()
    }

    /// Basis index of logical level `l`.
    pub fn logical_index(&self, l: usize) -> usize {
        self.encoding[l]
    }

    /// Basis indices of the logical register, in level order.
    pub fn logical_indices(&self) -> &[usize] {
        &self.encoding
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn spatial_index(&self, mode: &str) -> Option<usize> {
        self.spatial_modes.iter().position(|m| m == mode)
    }

    pub fn polarization_index(&self, pol: &str) -> Option<usize> {
        self.polarizations.iter().position(|p| p == pol)
    }

    /// Basis index of `(polarization, spatial mode)` by axis indices.
    pub fn index_of(&self, pol: usize, spatial: usize) -> usize {
        pol * self.spatial_modes.len() + spatial
    }

    /// Sub-basis over a subset of basis indices, in the given order.
    /// The result is an abstract register over the selected labels.
    pub fn select(&self, indices: &[usize]) -> Result<Arc<Self>> {
        let labels: Vec<String> = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Self::from_labels(&labels)
    }
}

impl fmt::Display for ModeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.labels.join(", "))
    }
}

/// Kronecker-product basis: labels concatenate pairwise in row-major order
/// (first operand major). Operands must be over disjoint label sets.
pub fn tensor_basis(a: &ModeBasis, b: &ModeBasis) -> Result<Arc<ModeBasis>> {
    for la in a.labels() {
        if b.labels().iter().any(|lb| lb == la) {
            return Err(Error::OverlappingLabels);
        }
    }
    let trivial = |axis: &[String]| axis.len() == 1 && axis[0].is_empty();
    // The Eq.-style construction (polarization qubit) ⊗ (spatial register)
    // keeps both axes; any other combination collapses to a flat label list.
    if trivial(&a.spatial_modes) && trivial(&b.polarizations) {
        return ModeBasis::build(a.polarizations.clone(), b.spatial_modes.clone(), vec![]);
    }
    let labels: Vec<String> = a
        .labels()
        .iter()
        .flat_map(|la| b.labels().iter().map(move |lb| format!("{la}{lb}")))
        .collect();
    ModeBasis::build(vec![String::new()], labels, vec![])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hybrid_ordering_is_v_major() {
        let basis = ModeBasis::hybrid(4);
        assert_eq!(
            basis.labels(),
            &["Va", "Vb", "Vc", "Vd", "Ha", "Hb", "Hc", "Hd"]
        );
        assert_eq!(basis.logical_indices(), &[4, 5, 6, 7]);
    }

    #[test]
    fn qudit_encoding_is_identity() {
        let basis = ModeBasis::qudit(4);
        assert_eq!(basis.labels(), &["Ha", "Hb", "Hc", "Hd"]);
        assert_eq!(basis.logical_index(2), 2);
    }

    #[test]
    fn tensor_of_polarization_and_spatial_is_hybrid() {
        let pol = ModeBasis::polarization();
        let spatial = ModeBasis::spatial(&["a", "b", "c", "d"]).unwrap();
        let product = tensor_basis(&pol, &spatial).unwrap();
        assert_eq!(product.labels(), ModeBasis::hybrid(4).labels());
    }

    #[test]
    fn tensor_rejects_shared_labels() {
        let a = ModeBasis::spatial(&["a", "b"]).unwrap();
        let b = ModeBasis::spatial(&["b", "c"]).unwrap();
        assert!(matches!(
            tensor_basis(&a, &b),
            Err(Error::OverlappingLabels)
        ));
    }

    #[test]
    fn mode_labels_past_alphabet() {
        let labels = ModeBasis::default_mode_labels(28);
        assert_eq!(labels[0], "a");
        assert_eq!(labels[25], "z");
        assert_eq!(labels[26], "m26");
    }
}
