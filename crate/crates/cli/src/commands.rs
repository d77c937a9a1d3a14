//! Subcommand implementations. Exit codes: 0 success, 1 verification or
//! acceptance failure, 2 usage/parse errors (the latter surface as `Err`
//! and are mapped in `main`).

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Subcommand, ValueEnum};

use photonq::circuits::{
    netlist_from_json, netlist_to_json, paper_circuit, verify_netlist, GatePreset, Netlist,
};
use photonq::gates::truth_table;
use photonq::montecarlo::{
    run_fidelity_exact, run_fidelity_experiment, run_truth_table_experiment, FidelityRun,
    NoiseModel, SourceModel, TruthTableRun,
};
use photonq::resources::{cascade_counts, quantum_walk_counts, CountedGate};

use crate::config::{resolve_noise, resolve_source};
use crate::report::{
    self, density_csv, resources_csv, truth_table_csv, write_atomic, write_json, write_jsonl,
    ResourcesArtifact, RunStamp, TomographyArtifact, TruthTableArtifact, VerifyArtifact,
};

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a gate netlist and check it against the ideal gate up to a
    /// global phase.
    Verify(VerifyArgs),
    /// Run the computational-basis truth-table protocol and write the
    /// probability table.
    TruthTable(ExperimentArgs),
    /// Run the superposition-input interferometric reconstruction and write
    /// the density matrix and fidelity.
    Tomography(ExperimentArgs),
    /// Tabulate component counts of both constructions over a dimension
    /// range.
    Resources(ResourcesArgs),
    /// Write a gate preset's netlist as JSON.
    ExportNetlist(ExportArgs),
    /// Run the full reproduction bundle: verification, truth tables,
    /// tomography, and resource tables for all nine presets.
    ReproducePaper(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Gate preset to verify (also the comparison target for --netlist).
    #[arg(long)]
    gate: Option<String>,
    /// Netlist JSON file to verify instead of a preset circuit.
    #[arg(long)]
    netlist: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Both,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Gate preset (X4, X4_sq, X4_dag, Z4, Z4_sq, Z4_dag, CX4, CX4_sq,
    /// CX4_dag).
    #[arg(long)]
    gate: String,
    /// Exact probabilities, no sampling or noise.
    #[arg(long, conflicts_with_all = ["noise", "seed"])]
    ideal: bool,
    /// Noise model: "default", "zero", or a JSON config path.
    #[arg(long)]
    noise: Option<String>,
    /// RNG seed; required for any stochastic run.
    #[arg(long)]
    seed: Option<u64>,
    /// Source config JSON path (heralded rate, acquisition time, ...).
    #[arg(long)]
    source: Option<String>,
    /// Override the photon budget per acquisition.
    #[arg(long)]
    photons: Option<f64>,
    /// Output directory (default: $PHOTONQ_OUT_DIR or ./photonq-out).
    #[arg(long)]
    out: Option<String>,
    /// Which artifact formats to write.
    #[arg(long, value_enum, default_value_t = Format::Both)]
    format: Format,
}

#[derive(Debug, Args)]
pub struct ResourcesArgs {
    /// Largest dimension to tabulate (>= 2).
    #[arg(long)]
    d_max: usize,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    format: Format,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    gate: String,
    /// Output file (default: <out-dir>/<gate>.netlist.json).
    #[arg(long)]
    out: Option<String>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// RNG seed for every stochastic run in the bundle.
    #[arg(long)]
    seed: u64,
    /// Noise model for the stochastic runs.
    #[arg(long, default_value = "default")]
    noise: String,
    /// Largest dimension in the resource table.
    #[arg(long, default_value_t = 16)]
    d_max: usize,
    #[arg(long)]
    out: Option<String>,
}

pub fn dispatch(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Verify(args) => cmd_verify(args),
        Command::TruthTable(args) => cmd_truth_table(args),
        Command::Tomography(args) => cmd_tomography(args),
        Command::Resources(args) => cmd_resources(args),
        Command::ExportNetlist(args) => cmd_export_netlist(args),
        Command::ReproducePaper(args) => cmd_reproduce(args),
    }
}

fn parse_gate(name: &str) -> anyhow::Result<GatePreset> {
    name.parse::<GatePreset>()
        .map_err(|_| anyhow::anyhow!("unknown gate preset {name:?}; expected one of {}",
            GatePreset::ALL.map(|p| p.name()).join(", ")))
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<i32> {
    let (netlist, preset): (Netlist, GatePreset) = match (&args.netlist, &args.gate) {
        (Some(path), gate) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading netlist {}", path.display()))?;
            let netlist = netlist_from_json(&text)
                .with_context(|| format!("parsing netlist {}", path.display()))?;
            let preset = match gate {
                Some(name) => parse_gate(name)?,
                None => parse_gate(netlist.name())
                    .context("netlist name is not a gate preset; pass --gate")?,
            };
            (netlist, preset)
        }
        (None, Some(name)) => {
            let preset = parse_gate(name)?;
            (paper_circuit(preset)?, preset)
        }
        (None, None) => bail!("pass --gate <preset> and/or --netlist <path>"),
    };

    let outcome = verify_netlist(&netlist, preset)?;
    match outcome.phase {
        Some(phase) => println!(
            "{}: max deviation {:.3e}, global phase {:+.6} rad -> MATCH",
            preset.name(),
            outcome.deviation,
            phase
        ),
        None => println!(
            "{}: max deviation {:.3e} -> MISMATCH",
            preset.name(),
            outcome.deviation
        ),
    }
    Ok(if outcome.matches { 0 } else { 1 })
}

/// Shared stochastic-run plumbing: resolves noise/source and enforces the
/// seed requirement.
fn stochastic_setup(
    args: &ExperimentArgs,
) -> anyhow::Result<(NoiseModel, SourceModel, u64)> {
    let noise_arg = args.noise.as_deref().unwrap_or("default");
    let noise = resolve_noise(noise_arg)?;
    let source = resolve_source(args.source.as_deref(), args.photons)?;
    let seed = args
        .seed
        .ok_or_else(|| anyhow::anyhow!("--seed is required for stochastic runs (no wall-clock default)"))?;
    Ok((noise, source, seed))
}

fn cmd_truth_table(args: ExperimentArgs) -> anyhow::Result<i32> {
    let preset = parse_gate(&args.gate)?;
    let out_dir = report::resolve_out_dir(args.out.as_deref());

    let (table, records, stamp) = if args.ideal {
        let ideal = preset.ideal_operator();
        let table = truth_table(&ideal, &(0..ideal.dim()).collect::<Vec<_>>());
        (table, None, RunStamp::ideal())
    } else {
        let (noise, source, seed) = stochastic_setup(&args)?;
        let TruthTableRun { table, records } =
            run_truth_table_experiment(preset, &source, &noise, seed)?;
        (table, Some(records), RunStamp::noisy(seed, &source, &noise))
    };
    let artifact = TruthTableArtifact::new(preset.name(), &table, stamp);

    let base = out_dir.join(format!("truth_table_{}", preset.name()));
    if args.format != Format::Csv {
        write_json(&base.with_extension("json"), &artifact)?;
    }
    if args.format != Format::Json {
        write_atomic(&base.with_extension("csv"), &truth_table_csv(&table)?)?;
    }
    if let Some(records) = &records {
        write_jsonl(&out_dir.join(format!("counts_{}.jsonl", preset.name())), records)?;
    }
    println!(
        "{}: average efficiency {:.4} ({} rows) -> {}",
        preset.name(),
        artifact.average_efficiency,
        artifact.input_labels.len(),
        out_dir.display()
    );
    Ok(0)
}

fn cmd_tomography(args: ExperimentArgs) -> anyhow::Result<i32> {
    let preset = parse_gate(&args.gate)?;
    let out_dir = report::resolve_out_dir(args.out.as_deref());

    let (run, stamp): (FidelityRun, RunStamp) = if args.ideal {
        (run_fidelity_exact(preset)?, RunStamp::ideal())
    } else {
        let (noise, source, seed) = stochastic_setup(&args)?;
        (
            run_fidelity_experiment(preset, &source, &noise, seed)?,
            RunStamp::noisy(seed, &source, &noise),
        )
    };
    let artifact = TomographyArtifact::new(preset.name(), &run, stamp);

    let base = out_dir.join(format!("tomography_{}", preset.name()));
    if args.format != Format::Csv {
        write_json(&base.with_extension("json"), &artifact)?;
    }
    if args.format != Format::Json {
        write_atomic(
            &out_dir.join(format!("tomography_{}_density_real.csv", preset.name())),
            &density_csv(&artifact.labels, &artifact.density_real)?,
        )?;
        write_atomic(
            &out_dir.join(format!("tomography_{}_density_imag.csv", preset.name())),
            &density_csv(&artifact.labels, &artifact.density_imag)?,
        )?;
    }
    println!(
        "{}: fidelity vs ideal {:.6} -> {}",
        preset.name(),
        run.fidelity,
        out_dir.display()
    );
    Ok(0)
}

fn resource_rows(d_max: usize) -> anyhow::Result<Vec<photonq::resources::ResourceReport>> {
    let mut rows = Vec::new();
    for d in 2..=d_max {
        rows.push(cascade_counts(d, CountedGate::X)?);
        rows.push(cascade_counts(d, CountedGate::Z)?);
        rows.push(cascade_counts(d, CountedGate::CX)?);
        rows.push(quantum_walk_counts(d)?);
    }
    Ok(rows)
}

fn cmd_resources(args: ResourcesArgs) -> anyhow::Result<i32> {
    if args.d_max < 2 {
        bail!("--d-max must be at least 2");
    }
    let out_dir = report::resolve_out_dir(args.out.as_deref());
    let rows = resource_rows(args.d_max)?;
    let artifact = ResourcesArtifact::new(args.d_max, rows);
    if args.format != Format::Csv {
        write_json(&out_dir.join("resources.json"), &artifact)?;
    }
    if args.format != Format::Json {
        write_atomic(&out_dir.join("resources.csv"), &resources_csv(&artifact.rows)?)?;
    }
    println!(
        "resource table for d = 2..={} -> {}",
        args.d_max,
        out_dir.display()
    );
    Ok(0)
}

fn cmd_export_netlist(args: ExportArgs) -> anyhow::Result<i32> {
    let preset = parse_gate(&args.gate)?;
    let netlist = paper_circuit(preset)?;
    let json = netlist_to_json(&netlist)?;
    let path = match args.out {
        Some(path) => PathBuf::from(path),
        None => report::resolve_out_dir(None).join(format!("{}.netlist.json", preset.name())),
    };
    write_atomic(&path, json.as_bytes())?;
    println!("{} netlist -> {}", preset.name(), path.display());
    Ok(0)
}

fn cmd_reproduce(args: ReproduceArgs) -> anyhow::Result<i32> {
    let noise = resolve_noise(&args.noise)?;
    let source = SourceModel::default();
    let out_dir = report::resolve_out_dir(args.out.as_deref());
    let seed = args.seed;

    // Ideal-equivalence check for every preset first; a failed gate fails
    // the bundle.
    let mut verifications = Vec::new();
    let mut all_match = true;
    for preset in GatePreset::ALL {
        let netlist = paper_circuit(preset)?;
        let outcome = verify_netlist(&netlist, preset)?;
        all_match &= outcome.matches;
        verifications.push(VerifyArtifact::new(preset.name(), &outcome));
    }
    write_json(&out_dir.join("verification").join("gates.json"), &verifications)?;

    for preset in GatePreset::ALL {
        let run = run_truth_table_experiment(preset, &source, &noise, seed)?;
        let stamp = RunStamp::noisy(seed, &source, &noise);
        let artifact = TruthTableArtifact::new(preset.name(), &run.table, stamp);
        let dir = out_dir.join("truth_tables");
        write_json(&dir.join(format!("{}.json", preset.name())), &artifact)?;
        write_atomic(
            &dir.join(format!("{}.csv", preset.name())),
            &truth_table_csv(&run.table)?,
        )?;
        write_jsonl(
            &out_dir.join("counts").join(format!("{}.jsonl", preset.name())),
            &run.records,
        )?;

        let fidelity = run_fidelity_experiment(preset, &source, &noise, seed)?;
        let stamp = RunStamp::noisy(seed, &source, &noise);
        let artifact = TomographyArtifact::new(preset.name(), &fidelity, stamp);
        let dir = out_dir.join("tomography");
        write_json(&dir.join(format!("{}.json", preset.name())), &artifact)?;
        write_atomic(
            &dir.join(format!("{}_density_real.csv", preset.name())),
            &density_csv(&artifact.labels, &artifact.density_real)?,
        )?;
        write_atomic(
            &dir.join(format!("{}_density_imag.csv", preset.name())),
            &density_csv(&artifact.labels, &artifact.density_imag)?,
        )?;

        let netlist_json = netlist_to_json(&paper_circuit(preset)?)?;
        write_atomic(
            &out_dir.join("netlists").join(format!("{}.json", preset.name())),
            netlist_json.as_bytes(),
        )?;
    }

    let rows = resource_rows(args.d_max)?;
    let artifact = ResourcesArtifact::new(args.d_max, rows);
    let dir = out_dir.join("resources");
    write_json(&dir.join("resources.json"), &artifact)?;
    write_atomic(&dir.join("resources.csv"), &resources_csv(&artifact.rows)?)?;

    #[derive(serde::Serialize)]
    struct Manifest {
        schema_version: u32,
        kind: &'static str,
        seed: u64,
        noise: crate::config::NoiseConfig,
        source: crate::config::SourceConfig,
        gates: Vec<&'static str>,
        d_max: usize,
    }
    write_json(
        &out_dir.join("manifest.json"),
        &Manifest {
            schema_version: report::SCHEMA_VERSION,
            kind: "manifest",
            seed,
            noise: crate::config::NoiseConfig::from_model(&noise),
            source: crate::config::SourceConfig::from_model(&source),
            gates: GatePreset::ALL.iter().map(|p| p.name()).collect(),
            d_max: args.d_max,
        },
    )?;

    println!(
        "reproduction bundle (seed {seed}) -> {} [{}]",
        out_dir.display(),
        if all_match { "all gates verified" } else { "VERIFICATION FAILURES" }
    );
    Ok(if all_match { 0 } else { 1 })
}

