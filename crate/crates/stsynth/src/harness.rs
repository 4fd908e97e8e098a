//! Random-circuit benchmark in the shape of the usual overhead tables: one
//! row per (architecture, initial CNOT count) with the mean overhead of each
//! strategy and the mean time of the two re-synthesis pipelines.
//!
//! Trials run in parallel. Each trial draws its circuit from its own ChaCha
//! stream, derived from the seed, the architecture, the count and the trial
//! index, so every column except the timings depends only on the seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::{cnot_opt_a, cnot_opt_b, overhead_pct, swap_template};
use crate::random::random_circuit;
use crate::topology::{preset_graph, ConnectivityGraph, PRESET_NAMES};

/// Initial CNOT counts used for the 9-qubit grid.
pub const SMALL_COUNTS: [usize; 5] = [3, 5, 10, 20, 30];
/// Initial CNOT counts used for the 16- and 20-qubit architectures.
pub const LARGE_COUNTS: [usize; 7] = [4, 8, 16, 32, 64, 128, 256];

/// Default count grid for an architecture.
pub fn count_grid(num_qubits: usize) -> &'static [usize] {
    if num_qubits <= 9 {
        &SMALL_COUNTS
    } else {
        &LARGE_COUNTS
    }
}

/// One table row. Percentages and times are means over the trials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub architecture: String,
    pub qubits: usize,
    pub initial_count: usize,
    pub trials: usize,
    pub swap_pct: f64,
    pub opt_a_pct: f64,
    pub opt_a_time_s: f64,
    pub opt_b_pct: f64,
    pub opt_b_time_s: f64,
}

/// Column names of [`to_tsv`].
pub const TSV_COLUMNS: [&str; 8] = [
    "architecture",
    "qubits",
    "initial_count",
    "swap_pct",
    "opt_a_pct",
    "opt_a_time_s",
    "opt_b_pct",
    "opt_b_time_s",
];

/// Counts of one trial.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Trial {
    swap: f64,
    opt_a: f64,
    opt_a_time: f64,
    opt_b: f64,
    opt_b_time: f64,
}

fn stream_id(arch: usize, count: usize, trial: usize) -> u64 {
    ((arch as u64) << 48) | ((count as u64) << 24) | trial as u64
}

fn run_trial(g: &ConnectivityGraph, n: usize, count: usize, seed: u64, stream: u64) -> Result<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let c = random_circuit(&mut rng, n, count);
    let pct = |out: usize| overhead_pct(c.cnot_count(), out).unwrap_or(0.0);
    let swap = swap_template(&c, g)?;
    let (_, a) = cnot_opt_a(&c, g)?;
    let (_, b) = cnot_opt_b(&c, g)?;
    Ok(Trial {
        swap: pct(swap.cnot_count()),
        opt_a: pct(a.output_cnots),
        opt_a_time: a.wall_time_s,
        opt_b: pct(b.output_cnots),
        opt_b_time: b.wall_time_s,
    })
}

/// Runs `trials` random circuits with `count` CNOTs on qubits `1..=n` of `g`.
/// `arch_index` only selects the RNG stream family.
pub fn bench_row(
    architecture: &str,
    arch_index: usize,
    g: &ConnectivityGraph,
    n: usize,
    count: usize,
    trials: usize,
    seed: u64,
) -> Result<BenchRow> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    if n < 2 || n > g.num_vertices() {
        return Err(Error::InvalidArgument(format!(
            "{n} qubits on a {}-vertex graph",
            g.num_vertices()
        )));
    }
    let results = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(g, n, count, seed, stream_id(arch_index, count, t)))
        .collect::<Result<Vec<_>>>()?;
    let mean = |f: fn(&Trial) -> f64| results.iter().map(f).sum::<f64>() / trials as f64;
    Ok(BenchRow {
        architecture: architecture.to_string(),
        qubits: n,
        initial_count: count,
        trials,
        swap_pct: mean(|t| t.swap),
        opt_a_pct: mean(|t| t.opt_a),
        opt_a_time_s: mean(|t| t.opt_a_time),
        opt_b_pct: mean(|t| t.opt_b),
        opt_b_time_s: mean(|t| t.opt_b_time),
    })
}

/// Stream family used by [`bench_table`] for a preset name.
pub fn preset_index(name: &str) -> usize {
    PRESET_NAMES
        .iter()
        .position(|p| *p == name)
        .unwrap_or(PRESET_NAMES.len())
}

/// Runs the full grid for each named preset. `counts` overrides the default
/// [`count_grid`] of every architecture.
pub fn bench_table(presets: &[&str], counts: Option<&[usize]>, trials: usize, seed: u64) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for name in presets {
        let g = preset_graph(name)?;
        let index = preset_index(name);
        for &count in counts.unwrap_or_else(|| count_grid(g.num_vertices())) {
            rows.push(bench_row(name, index, &g, g.num_vertices(), count, trials, seed)?);
        }
    }
    Ok(rows)
}

/// Renders rows as TSV with a header line; percentages with two decimals,
/// times with four.
pub fn to_tsv(rows: &[BenchRow]) -> String {
    let mut out = TSV_COLUMNS.join("\t");
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{:.2}\t{:.2}\t{:.4}\t{:.2}\t{:.4}\n",
            r.architecture,
            r.qubits,
            r.initial_count,
            r.swap_pct,
            r.opt_a_pct,
            r.opt_a_time_s,
            r.opt_b_pct,
            r.opt_b_time_s
        ));
    }
    out
}
