//! Acceptance suite: every release-gating criterion as one test, each
//! printing a `PASS` line (run with `--nocapture` to see them).

mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::Instant;

use photonq::circuits::{paper_circuit, verify_netlist, GatePreset};
use photonq::components::phase_sandwich_matrix;
use photonq::gates::{classical_bound, pauli_x, pauli_y, pauli_z};
use photonq::hilbert::{
    equal_up_to_global_phase, eigen::max_abs, uhlmann_fidelity, DensityMatrix, ModeBasis,
    Operator, StateVector,
};
use photonq::montecarlo::{
    run_fidelity_experiment, run_gate_seed_sweep, run_truth_table_experiment, NoiseModel,
    SourceModel,
};
use photonq::nalgebra::DMatrix;
use photonq::resources::{cascade_counts, quantum_walk_counts, CountedGate};
use photonq::tomography::{
    default_chain, extract_phase, reconstruct, simulate_interference, PhaseLink,
};
use photonq::{c64, C64};

fn pass(criterion: u32, name: &str, detail: impl std::fmt::Display) {
    println!("acceptance {criterion} ({name}): PASS [{detail}]");
}

/// Criterion 1: each of the nine presets compiles to its ideal gate up to a
/// global phase with max deviation <= 1e-10, all in under a second.
#[test]
fn criterion_1_ideal_gate_equivalence() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for preset in GatePreset::ALL {
        let netlist = paper_circuit(preset).unwrap();
        let outcome = verify_netlist(&netlist, preset).unwrap();
        assert!(
            outcome.matches,
            "{}: deviation {:e} exceeds 1e-10",
            preset.name(),
            outcome.deviation
        );
        worst = worst.max(outcome.deviation);
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "nine verifications took {elapsed:?}"
    );
    pass(
        1,
        "ideal-gate equivalence",
        format!("worst deviation {worst:.2e}, {elapsed:?}"),
    );
}

/// Criterion 2: all four wave-plate-triple rows impart `diag(1, e^{iθ})` up
/// to a global phase within 1e-10, phases θ ∈ {0, π/2, π, 3π/2} relative to
/// the θ = 0 reference triple.
#[test]
fn criterion_2_phase_sandwich_table() {
    let basis = ModeBasis::polarization_hv();
    let diag2 = |a: C64, b: C64| {
        Operator::new(
            basis.clone(),
            DMatrix::from_row_slice(2, 2, &[a, c64(0.0, 0.0), c64(0.0, 0.0), b]),
        )
        .unwrap()
    };
    let reference = phase_sandwich_matrix(0.0).unwrap();
    for theta in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
        let sandwich = phase_sandwich_matrix(theta).unwrap();
        let got = diag2(reference.entry(0, 0), sandwich.entry(0, 0));
        let want = diag2(c64(1.0, 0.0), C64::from_polar(1.0, theta));
        assert!(
            equal_up_to_global_phase(&got, &want, 1e-10).is_some(),
            "sandwich row theta = {theta}"
        );
    }
    pass(2, "wave-plate phase table", "4 rows at 1e-10");
}

/// Criterion 3: brute-force algebra for d = 2..8 within 1e-12: the
/// commutation `ZX = ωXZ`, the cyclic identities `X^d = Z^d = I`, the
/// adjoint identities at d = 4, and `Y^n = X^n Z^n`.
#[test]
fn criterion_3_algebraic_suite() {
    for d in 2..=8usize {
        let x = pauli_x(d, 1).unwrap();
        let z = pauli_z(d, 1).unwrap();
        let omega = C64::from_polar(1.0, TAU / d as f64);
        let zx = z.compose(&x).unwrap();
        let xz_scaled = x.compose(&z).unwrap().scale(omega);
        assert!(max_abs(&(zx.matrix() - xz_scaled.matrix())) <= 1e-12, "d={d}");

        let mut x_power = Operator::identity(x.basis().clone());
        let mut z_power = Operator::identity(z.basis().clone());
        for _ in 0..d {
            x_power = x.compose(&x_power).unwrap();
            z_power = z.compose(&z_power).unwrap();
        }
        let id = Operator::identity(x.basis().clone());
        assert!(max_abs(&(x_power.matrix() - id.matrix())) <= 1e-12, "X^{d}");
        assert!(max_abs(&(z_power.matrix() - id.matrix())) <= 1e-12, "Z^{d}");

        for n in 0..d as i64 {
            let y = pauli_y(d, n).unwrap();
            let xn_zn = pauli_x(d, n).unwrap().compose(&pauli_z(d, n).unwrap()).unwrap();
            assert!(max_abs(&(y.matrix() - xn_zn.matrix())) <= 1e-12, "Y_{d}^{n}");
        }
    }
    let x3 = pauli_x(4, 3).unwrap();
    let x_dag = pauli_x(4, 1).unwrap().adjoint();
    assert!(max_abs(&(x3.matrix() - x_dag.matrix())) <= 1e-12);
    let z3 = pauli_z(4, 3).unwrap();
    let z_dag = pauli_z(4, 1).unwrap().adjoint();
    assert!(max_abs(&(z3.matrix() - z_dag.matrix())) <= 1e-12);
    pass(3, "algebraic suite", "d = 2..8 at 1e-12");
}

/// Criterion 4: resource formulas at d = 4 — quantum walk 15 PBSs and
/// 30 HWPs, cascade X 3 PBSs, cascade Z 4 HWPs + 8 QWPs — and the built
/// netlists carry exactly the counted components.
#[test]
fn criterion_4_resource_numbers() {
    let walk = quantum_walk_counts(4).unwrap();
    assert_eq!((walk.pbs_count, walk.hwp_count), (15.0, 30.0));
    let x = cascade_counts(4, CountedGate::X).unwrap();
    assert_eq!(x.pbs_count, 3.0);
    let z = cascade_counts(4, CountedGate::Z).unwrap();
    assert_eq!((z.hwp_count, z.qwp_count), (4.0, 8.0));
    let cx = cascade_counts(4, CountedGate::CX).unwrap();
    assert_eq!(cx.pbs_count, 3.0);

    let x4 = paper_circuit(GatePreset::X4).unwrap();
    assert_eq!(x4.count_kind("PBS") as f64, x.pbs_count);
    assert_eq!(x4.count_kind("HWP"), 0);
    assert_eq!(x4.count_kind("QWP"), 0);
    let z4 = paper_circuit(GatePreset::Z4).unwrap();
    assert_eq!(z4.count_kind("HWP") as f64, z.hwp_count);
    assert_eq!(z4.count_kind("QWP") as f64, z.qwp_count);
    assert_eq!(z4.count_kind("PBS"), 0);
    let cx4 = paper_circuit(GatePreset::Cx4).unwrap();
    assert_eq!(cx4.count_kind("PBS") as f64, cx.pbs_count);
    pass(4, "resource numbers", "formulas = netlists at d = 4");
}

/// Criterion 5: the noiseless statistical pipeline at the default photon
/// budget (9000/s × 10 s): every off-target table entry below 0.1%,
/// tomography fidelity at least 0.999, under 10 s per gate.
#[test]
fn criterion_5_noiseless_pipeline() {
    let source = SourceModel::default();
    let noise = NoiseModel::zero();
    let mut slowest = 0.0f64;
    for (i, preset) in GatePreset::ALL.into_iter().enumerate() {
        let start = Instant::now();
        let run = run_truth_table_experiment(preset, &source, &noise, 1000 + i as u64).unwrap();
        for (row, &target) in run.table.probs.iter().zip(&run.table.target_cols) {
            for (j, &p) in row.iter().enumerate() {
                if j != target {
                    assert!(p < 0.001, "{}: off-target entry {p}", preset.name());
                }
            }
        }
        let fidelity = run_fidelity_experiment(preset, &source, &noise, 2000 + i as u64)
            .unwrap()
            .fidelity;
        assert!(fidelity >= 0.999, "{}: fidelity {fidelity}", preset.name());
        let elapsed = start.elapsed().as_secs_f64();
        assert!(elapsed < 10.0, "{}: took {elapsed} s", preset.name());
        slowest = slowest.max(elapsed);
    }
    pass(
        5,
        "noiseless statistical pipeline",
        format!("slowest gate {slowest:.2} s"),
    );
}

/// Criterion 6: calibrated-band reproduction over 20 seeds with the
/// documented default noise model. The exact reported percentages are not
/// reproducible (the physical error budget is unpublished); the check is a
/// band property: mean efficiency and mean fidelity in [99.0%, 99.95%],
/// seed-to-seed deviation under 0.5%, and every single fidelity above the
/// classical bound. The efficiency band covers the six gates whose tables
/// involve mode routing; a diagonal gate's table is exactly the identity
/// (no mechanism moves photons between paths), so its efficiency is 1 by
/// construction and only its fidelity is banded.
#[test]
fn criterion_6_calibrated_band_reproduction() {
    let source = SourceModel::default();
    let noise = NoiseModel::default_calibrated();
    let seeds: Vec<u64> = (1..=20).collect();
    let bound = classical_bound().value;

    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let std_dev = |v: &[f64]| {
        let m = mean(v);
        (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
    };

    let mut detail = Vec::new();
    for preset in GatePreset::ALL {
        let runs = run_gate_seed_sweep(preset, &source, &noise, &seeds).unwrap();
        let effs: Vec<f64> = runs.iter().map(|r| r.average_efficiency).collect();
        let fids: Vec<f64> = runs.iter().map(|r| r.fidelity).collect();

        let fid_mean = mean(&fids);
        assert!(
            (0.99..=0.9995).contains(&fid_mean),
            "{}: mean fidelity {fid_mean}",
            preset.name()
        );
        assert!(
            std_dev(&fids) < 0.005,
            "{}: fidelity spread {}",
            preset.name(),
            std_dev(&fids)
        );
        for &f in &fids {
            assert!(f > bound, "{}: fidelity {f} under the classical bound", preset.name());
        }

        if !preset.is_diagonal() {
            let eff_mean = mean(&effs);
            assert!(
                (0.99..=0.9995).contains(&eff_mean),
                "{}: mean efficiency {eff_mean}",
                preset.name()
            );
            assert!(
                std_dev(&effs) < 0.005,
                "{}: efficiency spread {}",
                preset.name(),
                std_dev(&effs)
            );
        } else {
            // Diagonal gates: the table is the identity exactly.
            for &e in &effs {
                assert_eq!(e, 1.0, "{}", preset.name());
            }
        }
        detail.push(format!("{} F={:.4}", preset.name(), fid_mean));
    }
    pass(6, "calibrated band reproduction", detail.join(", "));
}

/// Criterion 7: 1000 random dense pure states (every amplitude above 0.05
/// in magnitude) survive the measure-then-reconstruct round trip with
/// fidelity at least 1 − 1e-6 under noiseless measurement.
#[test]
fn criterion_7_tomography_round_trip() {
    use rand::Rng;
    let mut rng = photonq::montecarlo::stream_rng(0xF1DE, 0);
    let basis = ModeBasis::qudit(4);
    let labels: Vec<String> = basis.labels().to_vec();
    let mut worst: f64 = 1.0;
    let mut accepted = 0;
    while accepted < 1000 {
        let amps: Vec<C64> = (0..4)
            .map(|_| {
                c64(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                )
            })
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let amps: Vec<C64> = amps.into_iter().map(|a| a / norm).collect();
        if amps.iter().any(|a| a.norm() <= 0.05) {
            continue;
        }
        accepted += 1;
        let state = StateVector::normalized(basis.clone(), amps).unwrap();
        let populations = state.probabilities();
        let links: Vec<PhaseLink> = default_chain(&labels)
            .into_iter()
            .map(|(a, b)| {
                let p0 = simulate_interference(&state, (&a, &b), 0.0).unwrap();
                let p90 = simulate_interference(&state, (&a, &b), FRAC_PI_2).unwrap();
                PhaseLink {
                    pair: (a, b),
                    phase: extract_phase(p0.clamp(0.0, 1.0), p90.clamp(0.0, 1.0)).unwrap(),
                }
            })
            .collect();
        let rec = reconstruct(&basis, &populations, &links).unwrap();
        let fidelity =
            uhlmann_fidelity(&rec.density, &DensityMatrix::from_pure(&state)).unwrap();
        assert!(fidelity >= 1.0 - 1e-6, "state {accepted}: fidelity {fidelity}");
        worst = worst.min(fidelity);
    }
    pass(
        7,
        "tomography round trip",
        format!("1000 states, worst fidelity 1 - {:.1e}", 1.0 - worst),
    );
}

/// Criterion 8: the reproduction bundle is byte-identical across runs with
/// the same seed.
#[test]
fn criterion_8_reproduction_determinism() {
    let dir_a = common::scratch_dir("bundle-a");
    let dir_b = common::scratch_dir("bundle-b");
    for dir in [&dir_a, &dir_b] {
        let out = common::run(&[
            "reproduce-paper",
            "--seed",
            "42",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{out:?}");
    }
    let tree_a = common::snapshot_tree(&dir_a);
    let tree_b = common::snapshot_tree(&dir_b);
    assert!(!tree_a.is_empty());
    assert_eq!(
        tree_a.iter().map(|(p, _)| p).collect::<Vec<_>>(),
        tree_b.iter().map(|(p, _)| p).collect::<Vec<_>>()
    );
    for ((path_a, bytes_a), (_, bytes_b)) in tree_a.iter().zip(&tree_b) {
        assert_eq!(bytes_a, bytes_b, "{path_a} differs between runs");
    }
    pass(
        8,
        "reproduction determinism",
        format!("{} files byte-identical", tree_a.len()),
    );
}
