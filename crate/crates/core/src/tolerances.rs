//! Numerical tolerances used across the crate.
//!
//! Single knob for platform float variance: exact algebra gets `EXACT`,
//! anything routed through an eigendecomposition gets `SPECTRAL`.

/// Comparisons between quantities produced by exact algebra
/// (matrix products, permutations, closed-form entries).
pub const EXACT: f64 = 1e-10;

/// Comparisons involving eigendecomposition-derived quantities
/// (matrix square roots, fidelities, reconstructed spectra).
pub const SPECTRAL: f64 = 1e-8;

/// Brute-force algebraic identities checked entrywise (group laws,
/// commutation relations, involutions).
pub const STRICT: f64 = 1e-12;

/// Eigenvalues of a density matrix below this are rejected; values in
/// `[EIGENVALUE_FLOOR, 0]` are clamped to zero before taking square roots.
pub const EIGENVALUE_FLOOR: f64 = -1e-8;

/// `tr(rho^2) > 1 - PURITY_PURE` marks a density matrix as pure, enabling
/// the rank-1 fidelity shortcut.
pub const PURITY_PURE: f64 = 1e-10;
