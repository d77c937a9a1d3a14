//! Unitary models of the optical elements: wave plates, polarizing beam
//! splitters, variable beam splitters, and phase shifters.
//!
//! Wave-plate matrices are written on the `(H, V)` polarization basis; all
//! angles are radians with the fast axis measured from horizontal.

use std::f64::consts::FRAC_PI_4;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hilbert::{ModeBasis, Operator};
use crate::tolerances;
use crate::{c64, C64};

/// Half-wave plate at angle `theta`:
/// `|H> -> cos2θ|H> + sin2θ|V>`, `|V> -> sin2θ|H> − cos2θ|V>`.
pub fn hwp_matrix(theta: f64) -> Operator {
    let (s, c) = (2.0 * theta).sin_cos();
    Operator::new(
        ModeBasis::polarization_hv(),
        DMatrix::from_row_slice(2, 2, &[c64(c, 0.0), c64(s, 0.0), c64(s, 0.0), c64(-c, 0.0)]),
    )
    .expect("2x2 on the polarization basis")
}

/// Quarter-wave plate at angle `theta`, fixed convention
/// `e^{-iπ/4} · R(θ) · diag(1, i) · R(−θ)`:
///
/// ```text
/// e^{-iπ/4} [[cos²θ + i·sin²θ,  (1−i)·sinθcosθ],
///            [(1−i)·sinθcosθ,   sin²θ + i·cos²θ]]
/// ```
///
/// The convention is frozen by the phase-sandwich table test below: each
/// QWP–HWP–QWP group must impart the tabulated relative phase on `H`.
pub fn qwp_matrix(theta: f64) -> Operator {
    let (s, c) = theta.sin_cos();
    let g = C64::from_polar(1.0, -FRAC_PI_4);
    let diag_h = c64(c * c, s * s) * g;
    let diag_v = c64(s * s, c * c) * g;
    let off = c64(s * c, -s * c) * g;
    Operator::new(
        ModeBasis::polarization_hv(),
        DMatrix::from_row_slice(2, 2, &[diag_h, off, off, diag_v]),
    )
    .expect("2x2 on the polarization basis")
}

/// Wave-plate triple `(QWP1, HWP1, QWP2)` realizing a relative phase
/// `e^{iθ}` on a spatial mode, angles in radians.
///
/// Only the four tabulated phases `0, π/2, π, 3π/2` occur in the diagonal
/// gate constructions; every qudit-level phase `2πnl/d mod 2π` for the
/// four-dimensional gates reduces to one of them.
pub fn phase_sandwich_angles(phase: f64) -> Result<(f64, f64, f64)> {
    use std::f64::consts::{FRAC_PI_2, PI};
    let tau = 2.0 * PI;
    let reduced = phase.rem_euclid(tau);
    let quarter = (reduced / FRAC_PI_2).round() as i64 % 4;
    if (reduced - quarter as f64 * FRAC_PI_2).abs() > tolerances::EXACT {
        return Err(Error::InvalidNoise {
            reason: format!("phase {phase} is not a multiple of π/2"),
        });
    }
    // (QWP1, HWP1, QWP2) angles per tabulated row, radians.
    Ok(match quarter {
        0 => (0.0, 0.0, 0.0),
        1 => (FRAC_PI_2, 0.0, 0.0),
        2 => (0.0, FRAC_PI_2, 0.0),
        _ => (FRAC_PI_2, FRAC_PI_2, 0.0),
    })
}

/// Polarization matrix of the sandwich for a given phase: the photon passes
/// QWP1, then HWP1, then QWP2.
pub fn phase_sandwich_matrix(phase: f64) -> Result<Operator> {
    let (q1, h1, q2) = phase_sandwich_angles(phase)?;
    qwp_matrix(q2)
        .compose(&hwp_matrix(h1))
        .and_then(|m| m.compose(&qwp_matrix(q1)))
}

/// Polarizing beam splitter scatter matrix on `{V, H} × {p1, p2}`:
/// `H` transmits (`|H,p1> -> |H,p1'>`), `V` reflects with the conventional
/// `i` phase (`|V,p1> -> i|V,p2'>`).
pub fn pbs_scatter() -> Operator {
    pbs_scatter_with_extinction(0.0).expect("zero extinction is valid")
}

/// PBS scatter with extinction `eps`: a fraction `eps` of `H` intensity
/// reflects and of `V` intensity transmits. Unitary for any `eps` in
/// `[0, 0.5)`; `eps = 0` recovers the ideal element.
pub fn pbs_scatter_with_extinction(eps: f64) -> Result<Operator> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::InvalidNoise {
            reason: format!("pbs extinction {eps} outside [0, 0.5)"),
        });
    }
    let basis = ModeBasis::with_axes(&["V", "H"], &["p1", "p2"])?;
    let keep = (1.0 - eps).sqrt();
    let leak = eps.sqrt();
    let mut m = DMatrix::zeros(4, 4);
    // Order (Vp1, Vp2, Hp1, Hp2), columns are inputs.
    // V reflects across ports with phase i, leaking √eps into transmission:
    m[(0, 0)] = c64(leak, 0.0);
    m[(1, 0)] = c64(0.0, keep);
    m[(0, 1)] = c64(0.0, keep);
    m[(1, 1)] = c64(leak, 0.0);
    // H transmits, leaking i√eps into the reflected port:
    m[(2, 2)] = c64(keep, 0.0);
    m[(3, 2)] = c64(0.0, leak);
    m[(2, 3)] = c64(0.0, leak);
    m[(3, 3)] = c64(keep, 0.0);
    Operator::new(basis, m)
}

/// Variable beam splitter `[[r, t], [t*, −r*]]` on two spatial ports,
/// polarization-independent. Requires `|r|² + |t|² = 1`.
pub fn vbs_matrix(r: C64, t: C64) -> Result<Operator> {
    let norm_sq = r.norm_sqr() + t.norm_sqr();
    if (norm_sq - 1.0).abs() > tolerances::EXACT {
        return Err(Error::InvalidSplitter { norm_sq });
    }
    let basis = ModeBasis::spatial(&["p1", "p2"])?;
    Operator::new(
        basis,
        DMatrix::from_row_slice(2, 2, &[r, t, t.conj(), -r.conj()]),
    )
}

/// Mode-local phase `e^{iθ}` as a 1×1 operator.
pub fn phase_shifter_matrix(theta: f64) -> Operator {
    let basis = ModeBasis::spatial(&["p1"]).expect("single label");
    Operator::new(
        basis,
        DMatrix::from_element(1, 1, C64::from_polar(1.0, theta)),
    )
    .expect("1x1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{equal_up_to_global_phase, StateVector};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn diag2(a: C64, b: C64) -> Operator {
        Operator::new(
            ModeBasis::polarization_hv(),
            DMatrix::from_row_slice(2, 2, &[a, c64(0.0, 0.0), c64(0.0, 0.0), b]),
        )
        .unwrap()
    }

    #[test]
    fn hwp_at_zero_is_diag_1_minus1() {
        let m = hwp_matrix(0.0);
        assert!(equal_up_to_global_phase(&m, &diag2(c64(1.0, 0.0), c64(-1.0, 0.0)), 0.0).is_some());
    }

    #[test]
    fn hwp_at_pi_over_8_is_hadamard() {
        let m = hwp_matrix(PI / 8.0);
        let h = 0.5f64.sqrt();
        for (r, c, want) in [(0, 0, h), (0, 1, h), (1, 0, h), (1, 1, -h)] {
            assert!((m.entry(r, c) - c64(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn hwp_at_pi_over_4_swaps_h_and_v() {
        let m = hwp_matrix(FRAC_PI_2 / 2.0);
        assert!((m.entry(0, 1) - c64(1.0, 0.0)).norm() < 1e-15);
        assert!((m.entry(1, 0) - c64(1.0, 0.0)).norm() < 1e-15);
        assert!(m.entry(0, 0).norm() < 1e-15);
    }

    #[test]
    fn qwp_at_zero_is_diag_1_i_up_to_phase() {
        let m = qwp_matrix(0.0);
        let want = diag2(c64(1.0, 0.0), c64(0.0, 1.0));
        assert!(equal_up_to_global_phase(&m, &want, 1e-12).is_some());
    }

    #[test]
    fn wave_plates_are_unitary_on_dense_sweep() {
        for k in 0..=720 {
            let theta = k as f64 * PI / 360.0;
            assert!(hwp_matrix(theta).unitarity_deviation() < 1e-12);
            assert!(qwp_matrix(theta).unitarity_deviation() < 1e-12);
        }
    }

    #[test]
    fn hwp_is_involutory() {
        for k in 0..36 {
            let theta = k as f64 * PI / 18.0;
            let sq = hwp_matrix(theta).compose(&hwp_matrix(theta)).unwrap();
            assert!(sq.unitarity_deviation() < 1e-12);
            let id = Operator::identity(sq.basis().clone());
            assert!(equal_up_to_global_phase(&sq, &id, 1e-12).is_some());
        }
    }

    #[test]
    fn qwp_squared_is_hwp_up_to_phase() {
        for k in 0..36 {
            let theta = k as f64 * PI / 18.0;
            let sq = qwp_matrix(theta).compose(&qwp_matrix(theta)).unwrap();
            assert!(equal_up_to_global_phase(&sq, &hwp_matrix(theta), 1e-10).is_some());
        }
    }

    /// Each tabulated sandwich imparts `e^{iθ}` on `H` relative to the θ=0
    /// reference group, i.e. `diag(S₀ᴴᴴ, Sθᴴᴴ) ∝ diag(1, e^{iθ})`. A single
    /// sandwich alone is not `diag(1, e^{iθ})` on `(H, V)`: the reference
    /// group sits on the phase-reference mode in every diagonal circuit.
    #[test]
    fn sandwich_table_reproduces_relative_phases() {
        let reference = phase_sandwich_matrix(0.0).unwrap();
        for phase in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
            let s = phase_sandwich_matrix(phase).unwrap();
            // No polarization mixing at the tabulated angles.
            assert!(s.entry(0, 1).norm() < 1e-15);
            assert!(s.entry(1, 0).norm() < 1e-15);
            let got = diag2(reference.entry(0, 0), s.entry(0, 0));
            let want = diag2(c64(1.0, 0.0), C64::from_polar(1.0, phase));
            let dev = equal_up_to_global_phase(&got, &want, tolerances::EXACT);
            assert!(dev.is_some(), "sandwich phase {phase} failed");
        }
    }

    #[test]
    fn sandwich_angles_match_tabulated_rows() {
        let deg = |r: f64| r.to_degrees().round();
        let (q1, h1, q2) = phase_sandwich_angles(FRAC_PI_2).unwrap();
        assert_eq!((deg(q1), deg(h1), deg(q2)), (90.0, 0.0, 0.0));
        let (q1, h1, q2) = phase_sandwich_angles(PI).unwrap();
        assert_eq!((deg(q1), deg(h1), deg(q2)), (0.0, 90.0, 0.0));
        let (q1, h1, q2) = phase_sandwich_angles(3.0 * FRAC_PI_2).unwrap();
        assert_eq!((deg(q1), deg(h1), deg(q2)), (90.0, 90.0, 0.0));
    }

    #[test]
    fn pbs_transmits_h_and_reflects_v_with_i() {
        let pbs = pbs_scatter();
        let basis = pbs.basis().clone();
        let idx = |label: &str| basis.index_of_label(label).unwrap();
        // |H,p1> -> |H,p1'>
        assert!((pbs.entry(idx("Hp1"), idx("Hp1")) - c64(1.0, 0.0)).norm() < 1e-15);
        // |V,p1> -> i |V,p2'>
        assert!((pbs.entry(idx("Vp2"), idx("Vp1")) - c64(0.0, 1.0)).norm() < 1e-15);
        assert!((pbs.entry(idx("Vp1"), idx("Vp2")) - c64(0.0, 1.0)).norm() < 1e-15);
        assert!(pbs.unitarity_deviation() < 1e-15);
    }

    #[test]
    fn pbs_acts_linearly_on_superpositions() {
        let pbs = pbs_scatter();
        let basis = pbs.basis().clone();
        let h = 0.5f64.sqrt();
        let mut amps = vec![c64(0.0, 0.0); 4];
        amps[basis.index_of_label("Hp1").unwrap()] = c64(h, 0.0);
        amps[basis.index_of_label("Vp1").unwrap()] = c64(h, 0.0);
        let input = StateVector::normalized(basis.clone(), amps).unwrap();
        let out = pbs.apply(&input).unwrap();
        assert!((out.amplitude(basis.index_of_label("Hp1").unwrap()) - c64(h, 0.0)).norm() < 1e-15);
        assert!((out.amplitude(basis.index_of_label("Vp2").unwrap()) - c64(0.0, h)).norm() < 1e-15);
    }

    #[test]
    fn pbs_extinction_stays_unitary() {
        for eps in [0.0, 1e-4, 0.002, 0.05, 0.3] {
            let pbs = pbs_scatter_with_extinction(eps).unwrap();
            assert!(pbs.unitarity_deviation() < 1e-12, "eps = {eps}");
        }
        assert!(pbs_scatter_with_extinction(0.5).is_err());
    }

    #[test]
    fn vbs_fully_reflective_and_balanced() {
        let full = vbs_matrix(c64(1.0, 0.0), c64(0.0, 0.0)).unwrap();
        assert!((full.entry(0, 0) - c64(1.0, 0.0)).norm() < 1e-15);
        let h = 0.5f64.sqrt();
        let balanced = vbs_matrix(c64(h, 0.0), c64(h, 0.0)).unwrap();
        assert!((balanced.entry(0, 1) - c64(h, 0.0)).norm() < 1e-15);
        assert!(balanced.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn vbs_rejects_unnormalized_amplitudes() {
        assert!(matches!(
            vbs_matrix(c64(0.9, 0.0), c64(0.9, 0.0)),
            Err(Error::InvalidSplitter { .. })
        ));
    }

    #[test]
    fn vbs_unitary_for_complex_amplitudes() {
        let r = C64::from_polar(0.6, 0.7);
        let t = C64::from_polar(0.8, -1.1);
        let m = vbs_matrix(r, t).unwrap();
        assert!(m.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn phase_shifter_values() {
        assert!((phase_shifter_matrix(0.0).entry(0, 0) - c64(1.0, 0.0)).norm() < 1e-15);
        assert!((phase_shifter_matrix(FRAC_PI_2).entry(0, 0) - c64(0.0, 1.0)).norm() < 1e-15);
        assert!(
            (phase_shifter_matrix(3.0 * FRAC_PI_2).entry(0, 0) - c64(0.0, -1.0)).norm() < 1e-15
        );
    }
}
