//! `stsynth`: command-line front end for connectivity-aware re-synthesis.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage, input
//! or synthesis errors. Diagnostics go to stderr, machine output to stdout
//! or to the files named by flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use stsynth::harness::{bench_row, bench_table, count_grid, preset_index, to_tsv, BenchRow};
use stsynth::linsynth::widen_transform;
use stsynth::verify::{slice_states_equal, MAX_DENSE_QUBITS};
use stsynth::{
    equivalent_up_to_phase, extract_sliced, linear_action, linear_tf_synth, phase_nw_synth_with, phase_poly_equal,
    preset_graph, resynthesize, AugmentedLinearTransform, Circuit, ConnectivityGraph, ParityMatrix, PhaseSynthOptions,
    PivotRule, BENCHMARK_PRESETS, PRESET_NAMES,
};

#[derive(Parser, Debug)]
#[command(
    name = "stsynth",
    version,
    about = "Re-synthesize Clifford+T circuits for qubit connectivity graphs"
)]
struct Cli {
    /// JSON file with defaults for `graph`, `seed`, `trials`, `report` and
    /// `verify`; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Route a circuit with the SWAP template or one of the optimizers.
    Resynth(ResynthArgs),
    /// Synthesize an affine linear transform (matrix file) on a graph.
    SynthLinear(SynthLinearArgs),
    /// Synthesize a phase-polynomial network (terms file) on a graph.
    SynthPhase(SynthPhaseArgs),
    /// Compare two circuits.
    Verify(VerifyArgs),
    /// Random-circuit overhead table.
    Bench(BenchArgs),
    /// Print the phase polynomial of a circuit.
    DumpPhasepoly(DumpArgs),
    /// Print or write the built-in architectures as graph files.
    Presets(PresetsArgs),
}

#[derive(Args, Debug)]
struct ResynthArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    circuit: PathBuf,
    /// Preset name or graph file.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, value_enum)]
    report: Option<ReportFormat>,
    /// Check the output against the input (dense simulation up to 12
    /// qubits, slice states beyond).
    #[arg(long)]
    verify: bool,
    /// Where to write the routed circuit.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SynthLinearArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SynthPhaseArgs {
    #[arg(long)]
    terms: PathBuf,
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, value_enum, default_value_t = Pivot::Splitting)]
    pivot: Pivot,
    /// Append the {CNOT, X} circuit that restores every wire, so the output
    /// is exactly the diagonal unitary of the terms.
    #[arg(long)]
    restore: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, value_enum, default_value_t = VerifyMode::Unitary)]
    mode: VerifyMode,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Single-cell parameters: `n=<qubits> cnots=<count> trials=<t>`.
    #[arg(long, num_args = 1.., value_name = "KEY=VALUE")]
    random: Vec<String>,
    /// Architectures to run (repeatable); all five benchmark presets by
    /// default.
    #[arg(long)]
    graph: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, value_enum)]
    report: Option<ReportFormat>,
}

#[derive(Args, Debug)]
struct DumpArgs {
    #[arg(long)]
    circuit: PathBuf,
}

#[derive(Args, Debug)]
struct PresetsArgs {
    /// Only this preset.
    #[arg(long)]
    name: Option<String>,
    /// Write `<name>.graph` files into this directory instead of stdout.
    #[arg(long)]
    dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Algo {
    Swap,
    OptA,
    OptB,
}

impl From<Algo> for stsynth::Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Swap => stsynth::Algorithm::Swap,
            Algo::OptA => stsynth::Algorithm::OptA,
            Algo::OptB => stsynth::Algorithm::OptB,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ReportFormat {
    Tsv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Pivot {
    Splitting,
    LargestCofactor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    /// Dense unitaries up to global phase (at most 12 qubits).
    Unitary,
    /// Phase polynomial and output parities (H-free circuits).
    Phasepoly,
    /// Affine action ({CNOT, X} circuits).
    Linear,
    /// Wire states around every H plus the phase polynomial.
    Slices,
}

/// Defaults read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RunConfig {
    graph: Option<String>,
    seed: Option<u64>,
    trials: Option<usize>,
    report: Option<ReportFormat>,
    verify: Option<bool>,
}

/// Reason for a non-zero exit.
enum Failure {
    /// Exit 1.
    Verification(String),
    /// Exit 2.
    Usage(String),
}

impl From<stsynth::Error> for Failure {
    fn from(e: stsynth::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let config = match &cli.config {
        Some(path) => serde_json::from_str::<RunConfig>(&read(path)?)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Resynth(args) => resynth(args, &config),
        Command::SynthLinear(args) => synth_linear(args, &config),
        Command::SynthPhase(args) => synth_phase(args, &config),
        Command::Verify(args) => verify(args),
        Command::Bench(args) => bench(args, &config),
        Command::DumpPhasepoly(args) => {
            let c = load_circuit(&args.circuit)?;
            let (poly, _, _) = extract_sliced(&c)?;
            print!("{}", poly.dump());
            Ok(())
        }
        Command::Presets(args) => presets(args),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_circuit(path: &Path) -> CliResult<Circuit> {
    Circuit::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// A preset name, or else a graph file.
fn load_graph(selector: Option<&str>, config: &RunConfig) -> CliResult<ConnectivityGraph> {
    let Some(selector) = selector.or(config.graph.as_deref()) else {
        return Err(Failure::Usage(format!(
            "--graph is required (a graph file or one of: {})",
            PRESET_NAMES.join(", ")
        )));
    };
    if PRESET_NAMES.contains(&selector) || !Path::new(selector).exists() {
        return Ok(preset_graph(selector)?);
    }
    ConnectivityGraph::parse(&read(Path::new(selector))?).map_err(|e| Failure::Usage(format!("{selector}: {e}")))
}

fn resynth(args: ResynthArgs, config: &RunConfig) -> CliResult<()> {
    let c = load_circuit(&args.circuit)?;
    let g = load_graph(args.graph.as_deref(), config)?;
    let (out, report) = resynthesize(&c, &g, args.algo.into())?;
    if let Some(path) = &args.output {
        write(path, &out.to_string())?;
    }
    match args.report.or(config.report).unwrap_or(ReportFormat::Tsv) {
        ReportFormat::Tsv => println!("{}\n{}", stsynth::ResynthesisReport::TSV_HEADER, report.tsv_row()),
        ReportFormat::Json => println!("{}", json(&report)?),
    }
    if args.verify || config.verify == Some(true) {
        let wide = Circuit::from_gates(out.num_qubits(), c.gates().iter().copied())?;
        let ok = if wide.num_qubits() <= MAX_DENSE_QUBITS {
            equivalent_up_to_phase(&wide, &out)?
        } else {
            slice_states_equal(&wide, &out)?
        };
        let valid = out.connectivity_violations(&g).is_empty();
        if !ok || !valid {
            return Err(Failure::Verification(format!(
                "equivalent: {ok}, connectivity-valid: {valid}"
            )));
        }
        eprintln!("verified: equivalent and connectivity-valid");
    }
    Ok(())
}

fn synth_linear(args: SynthLinearArgs, config: &RunConfig) -> CliResult<()> {
    let a = AugmentedLinearTransform::parse(&read(&args.matrix)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.matrix.display())))?;
    let g = load_graph(args.graph.as_deref(), config)?;
    let c = linear_tf_synth(&a, &g)?;
    emit(args.output.as_deref(), &c.to_string())?;
    eprintln!("{} CNOTs", c.cnot_count());
    if args.verify || config.verify == Some(true) {
        let ok = linear_action(&c)? == widen_transform(&a, g.num_vertices())?;
        let valid = c.connectivity_violations(&g).is_empty();
        if !ok || !valid {
            return Err(Failure::Verification(format!(
                "implements the transform: {ok}, connectivity-valid: {valid}"
            )));
        }
    }
    Ok(())
}

fn synth_phase(args: SynthPhaseArgs, config: &RunConfig) -> CliResult<()> {
    let p = ParityMatrix::parse_terms(&read(&args.terms)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.terms.display())))?;
    let g = load_graph(args.graph.as_deref(), config)?;
    let opts = PhaseSynthOptions {
        pivot: match args.pivot {
            Pivot::Splitting => PivotRule::Splitting,
            Pivot::LargestCofactor => PivotRule::LargestCofactor,
        },
        ..Default::default()
    };
    let res = phase_nw_synth_with(&p, &g, opts)?;
    let mut c = res.circuit;
    if args.restore {
        let fix = res.residual.inverse()?;
        c.extend_from(&linear_tf_synth(&fix, &g)?)?;
    }
    emit(args.output.as_deref(), &c.to_string())?;
    eprintln!("{} CNOTs", c.cnot_count());
    Ok(())
}

fn verify(args: VerifyArgs) -> CliResult<()> {
    let a = load_circuit(&args.a)?;
    let b = load_circuit(&args.b)?;
    let ok = match args.mode {
        VerifyMode::Unitary => equivalent_up_to_phase(&a, &b)?,
        VerifyMode::Phasepoly => phase_poly_equal(&a, &b)?,
        VerifyMode::Linear => a.num_qubits() == b.num_qubits() && linear_action(&a)? == linear_action(&b)?,
        VerifyMode::Slices => slice_states_equal(&a, &b)?,
    };
    if ok {
        println!("equivalent");
        Ok(())
    } else {
        println!("not equivalent");
        Err(Failure::Verification("circuits differ".into()))
    }
}

/// Parsed `--random` parameters.
#[derive(Debug, Default)]
struct RandomSpec {
    n: Option<usize>,
    cnots: Option<usize>,
    trials: Option<usize>,
}

fn parse_random(items: &[String]) -> CliResult<RandomSpec> {
    let mut spec = RandomSpec::default();
    for item in items {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected KEY=VALUE, got `{item}`")))?;
        let value: usize = value
            .parse()
            .map_err(|_| Failure::Usage(format!("`{item}`: value must be a non-negative integer")))?;
        match key {
            "n" => spec.n = Some(value),
            "cnots" => spec.cnots = Some(value),
            "trials" => spec.trials = Some(value),
            _ => return Err(Failure::Usage(format!("unknown key `{key}` (n, cnots, trials)"))),
        }
    }
    Ok(spec)
}

fn bench(args: BenchArgs, config: &RunConfig) -> CliResult<()> {
    let spec = parse_random(&args.random)?;
    let seed = args.seed.or(config.seed).unwrap_or(0);
    let trials = spec.trials.or(args.trials).or(config.trials).unwrap_or(10);
    let mut names: Vec<String> = args.graph.clone();
    if names.is_empty() {
        names = match &config.graph {
            Some(g) => vec![g.clone()],
            None => BENCHMARK_PRESETS.iter().map(|s| s.to_string()).collect(),
        };
    }
    let rows: Vec<BenchRow> =
        if spec.n.is_none() && spec.cnots.is_none() && names.iter().all(|n| PRESET_NAMES.contains(&n.as_str())) {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            bench_table(&names, None, trials, seed)?
        } else {
            let mut rows = Vec::new();
            for name in &names {
                let g = load_graph(Some(name), config)?;
                let n = spec.n.unwrap_or(g.num_vertices());
                let counts = match spec.cnots {
                    Some(k) => vec![k],
                    None => count_grid(g.num_vertices()).to_vec(),
                };
                for k in counts {
                    rows.push(bench_row(name, preset_index(name), &g, n, k, trials, seed)?);
                }
            }
            rows
        };
    match args.report.or(config.report).unwrap_or(ReportFormat::Tsv) {
        ReportFormat::Tsv => print!("{}", to_tsv(&rows)),
        ReportFormat::Json => println!("{}", json(&rows)?),
    }
    Ok(())
}

fn presets(args: PresetsArgs) -> CliResult<()> {
    let names: Vec<&str> = match &args.name {
        Some(n) => vec![n.as_str()],
        None => PRESET_NAMES.to_vec(),
    };
    if let Some(dir) = &args.dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    }
    for name in names {
        let g = preset_graph(name)?;
        match &args.dir {
            Some(dir) => write(&dir.join(format!("{name}.graph")), &g.to_string())?,
            None => print!("# {name}\n{g}"),
        }
    }
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))
}
