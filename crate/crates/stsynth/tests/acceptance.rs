//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process fails if any criterion fails, except for the ones listed in
//! `EXPECTED_FAILURES`. Each of those must fail for its stated reason.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::golden::{
    linear_trace_mismatches, missing_terms, narrated_circuit, phase_cnot_mismatches, singles, LINEAR_CNOTS,
    NARRATED_PLACEMENT, TRACKED_PLACEMENT,
};
use common::oracles::{optimal_steiner, spanning_tree_leaf_counts};
use common::{linear_example, phase_example};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stsynth::harness::{bench_table, TSV_COLUMNS};
use stsynth::linsynth::linear_tf_synth_traced;
use stsynth::phasesynth::{phase_nw_synth_with, PhaseSynthOptions};
use stsynth::pipeline::{cnot_opt_a, cnot_opt_b, overhead_pct, swap_template};
use stsynth::random::{random_circuit, random_hfree_circuit, random_invertible};
use stsynth::{
    equivalent_up_to_phase, linear_action, linear_tf_synth, phase_poly_equal, preset_graph, steiner_tree,
    AugmentedLinearTransform, Bits, Circuit, ConnectivityGraph, Gate, GateKind, VertexSet, BENCHMARK_PRESETS,
};

/// Runtime bound of the two worked examples.
const EXAMPLE_TIME_LIMIT: Duration = Duration::from_secs(1);
/// Runtime bound of the equivalence suite.
const SUITE_TIME_LIMIT: Duration = Duration::from_secs(600);
/// Random circuits in the equivalence suite and their CNOT counts.
const SUITE_SIZE: usize = 200;
const SUITE_COUNTS: [usize; 5] = [3, 5, 10, 20, 30];
/// Largest graph and terminal set in the exhaustive Steiner check.
const STEINER_MAX_VERTICES: usize = 7;
const STEINER_MAX_TERMINALS: usize = 4;
/// Grid shapes and sample size of the scaling check, and the headroom
/// factor applied to the constant fitted at the smallest size.
const SCALING_GRIDS: [(usize, usize); 5] = [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)];
const SCALING_SAMPLES: usize = 200;
const SCALING_HEADROOM: f64 = 1.5;
/// Random H-free circuits in the cross-oracle check, and their size bounds.
const CROSS_ORACLE_CIRCUITS: usize = 500;
const CROSS_ORACLE_MAX_QUBITS: usize = 6;
const CROSS_ORACLE_MAX_GATES: usize = 24;
/// Trials per cell of the benchmark-shape check.
const BENCH_TRIALS: usize = 2;

/// Criteria that cannot pass as stated, with the reason they fail.
const EXPECTED_FAILURES: [(usize, &str); 1] = [(
    3,
    "the narrated X placement leaves example terms unrealized, so it cannot be reproduced together with \
     the all-terms requirement",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let g = preset_graph("appendix-2x3").unwrap();
    let start = Instant::now();
    let c = linear_tf_synth(&linear_example(), &g).unwrap();
    let elapsed = start.elapsed();
    let action_ok = linear_action(&c).unwrap() == linear_example();
    let violations = c.connectivity_violations(&g).len();
    outcome(
        c.cnot_count() == LINEAR_CNOTS && action_ok && violations == 0 && elapsed < EXAMPLE_TIME_LIMIT,
        format!(
            "{} CNOTs, action equals A: {action_ok}, violations: {violations}, {:.3} ms",
            c.cnot_count(),
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn criterion_2() -> Outcome {
    let g = preset_graph("appendix-2x3").unwrap();
    let trace = linear_tf_synth_traced(&linear_example(), &g).unwrap();
    let mismatches = linear_trace_mismatches(&trace);
    let detail = if mismatches.is_empty() {
        "all CNOT lists and printed matrices of both phases reproduced".to_string()
    } else {
        mismatches.join("; ")
    };
    outcome(mismatches.is_empty(), detail)
}

fn criterion_3() -> Outcome {
    let g = preset_graph("appendix-2x3").unwrap();
    let start = Instant::now();
    let r = phase_nw_synth_with(&phase_example(), &g, PhaseSynthOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let cnot_mismatches = phase_cnot_mismatches(&r);
    let realized: Vec<(usize, usize, Vec<Gate>)> = r
        .iterations
        .iter()
        .flat_map(|it| it.realized.iter().map(move |x| (it.iteration, x.wire, x.gates.clone())))
        .collect();
    let phase_only =
        |gates: &[Gate]| -> Vec<Gate> { gates.iter().copied().filter(|g| g.kind != GateKind::X).collect() };
    let narrated: Vec<(usize, usize, Vec<Gate>)> = NARRATED_PLACEMENT
        .iter()
        .map(|&(k, w, kinds)| (k, w, singles(kinds, w)))
        .collect();
    let phases_and_wires = realized.len() == narrated.len()
        && realized
            .iter()
            .zip(&narrated)
            .all(|(a, b)| a.0 == b.0 && a.1 == b.1 && phase_only(&a.2) == phase_only(&b.2));
    let x_differs = realized.iter().zip(&narrated).filter(|(a, b)| a.2 != b.2).count();
    let tracked_ok = realized.len() == TRACKED_PLACEMENT.len();
    let missing_ours = missing_terms(&r.circuit);
    let missing_narrated = missing_terms(&narrated_circuit());
    let pass = cnot_mismatches.is_empty()
        && phases_and_wires
        && x_differs == 0
        && missing_ours == 0
        && elapsed < EXAMPLE_TIME_LIMIT;
    outcome(
        pass,
        format!(
            "CNOT lists, pivots and matrices exact: {}; phase gates and wires as narrated: {phases_and_wires}; \
             X gates differ from the narration at {x_differs} of {} placements (tracked placement: {tracked_ok}); \
             terms missing from our output: {missing_ours}; terms missing with the narrated X placement: \
             {missing_narrated}; {:.3} ms",
            cnot_mismatches.is_empty(),
            narrated.len(),
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

/// Overheads `(swap, opt-a, opt-b)` per circuit of the equivalence suite.
type SuiteOverheads = Vec<(f64, f64, f64)>;

fn criterion_4() -> (Outcome, SuiteOverheads) {
    let g = preset_graph("9q-square").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut overheads = Vec::with_capacity(SUITE_SIZE);
    for k in 0..SUITE_SIZE {
        let count = SUITE_COUNTS[k % SUITE_COUNTS.len()];
        let c = random_circuit(&mut rng, 9, count);
        let swap = swap_template(&c, &g).unwrap();
        let (a, _) = cnot_opt_a(&c, &g).unwrap();
        let (b, _) = cnot_opt_b(&c, &g).unwrap();
        for (name, out) in [("swap", &swap), ("opt-a", &a), ("opt-b", &b)] {
            let equivalent = equivalent_up_to_phase(&c, out).unwrap();
            let valid = out.connectivity_violations(&g).is_empty();
            if !equivalent || !valid {
                failures.push(format!("circuit {k} {name}: equivalent {equivalent}, valid {valid}"));
            }
        }
        let pct = |out: &Circuit| overhead_pct(count, out.cnot_count()).unwrap();
        overheads.push((pct(&swap), pct(&a), pct(&b)));
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < SUITE_TIME_LIMIT;
    let detail = format!(
        "{} circuits x 3 strategies, {} failures{}, {:.1} s",
        SUITE_SIZE,
        failures.len(),
        failures.first().map_or(String::new(), |f| format!(" (first: {f})")),
        elapsed.as_secs_f64()
    );
    (outcome(pass, detail), overheads)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 0 {
        (v[m - 1] + v[m]) / 2.0
    } else {
        v[m]
    }
}

fn criterion_5(overheads: &SuiteOverheads) -> Outcome {
    let swap = median(overheads.iter().map(|o| o.0).collect());
    let a = median(overheads.iter().map(|o| o.1).collect());
    let b = median(overheads.iter().map(|o| o.2).collect());
    outcome(
        a <= swap,
        format!("median overhead: swap {swap:.1}%, opt-a {a:.1}%, opt-b {b:.1}% (opt-b not ordered)"),
    )
}

/// Adjacency bitmasks of every connected graph on `1..=max_n` vertices, one
/// per isomorphism class, grown by adding one vertex at a time.
fn connected_graphs(max_n: usize) -> Vec<(usize, Vec<u32>)> {
    fn canonical(n: usize, adj: &[u32]) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        for perm in (0..n).permutations(n) {
            let mut relabeled = vec![0u32; n];
            for (u, row) in adj.iter().enumerate() {
                for v in 0..n {
                    if row >> v & 1 == 1 {
                        relabeled[perm[u]] |= 1 << perm[v];
                    }
                }
            }
            if best.as_ref().is_none_or(|b| relabeled < *b) {
                best = Some(relabeled);
            }
        }
        best.unwrap_or_default()
    }
    let mut all = vec![(1, vec![0u32])];
    let mut layer = vec![vec![0u32]];
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for adj in &layer {
            for mask in 1u32..(1 << (n - 1)) {
                let mut grown = adj.clone();
                grown.push(mask);
                for (v, row) in grown.iter_mut().enumerate().take(n - 1) {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (n - 1);
                    }
                }
                let key = canonical(n, &grown);
                if seen.insert(key.clone()) {
                    next.push(key);
                }
            }
        }
        all.extend(next.iter().map(|a| (n, a.clone())));
        layer = next;
    }
    all
}

fn criterion_6() -> Outcome {
    let graphs = connected_graphs(STEINER_MAX_VERTICES);
    let per_size: BTreeMap<usize, usize> = graphs.iter().map(|(n, _)| *n).counts().into_iter().collect();
    let mut instances = 0usize;
    let mut suboptimal = 0usize;
    let mut violations = Vec::new();
    let mut worst_ratio = 1.0f64;
    for (n, adj) in &graphs {
        let edges: Vec<(usize, usize)> = (0..*n)
            .flat_map(|u| {
                (u + 1..*n)
                    .filter(move |&v| adj[u] >> v & 1 == 1)
                    .map(move |v| (u + 1, v + 1))
            })
            .collect();
        let g = ConnectivityGraph::new(*n, &edges).unwrap();
        for size in 1..=STEINER_MAX_TERMINALS.min(*n) {
            for terminals in (1..=*n).combinations(size) {
                instances += 1;
                let terminals: BTreeSet<usize> = terminals.into_iter().collect();
                let root = *terminals.iter().next().unwrap();
                let w = steiner_tree(&g, &VertexSet::all(*n), &terminals, root)
                    .unwrap()
                    .weight();
                let (opt, optimal_sets) = optimal_steiner(&g, &terminals);
                if w == opt {
                    continue;
                }
                suboptimal += 1;
                worst_ratio = worst_ratio.max(w as f64 / opt as f64);
                // Bound with the fewest leaves any optimal tree has:
                // w ≤ 2(1 - 1/ℓ)·OPT  ⇔  w·ℓ ≤ 2(ℓ - 1)·OPT.
                let leaves = optimal_sets
                    .iter()
                    .flat_map(|s| spanning_tree_leaf_counts(&g, s))
                    .min()
                    .unwrap();
                if w * leaves > 2 * (leaves - 1) * opt {
                    violations.push(format!(
                        "{edges:?} {terminals:?}: weight {w}, OPT {opt}, leaves {leaves}"
                    ));
                }
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{} graphs (per size {:?}), {instances} terminal sets, {suboptimal} suboptimal, worst ratio {worst_ratio:.3}, \
             {} bound violations{}",
            graphs.len(),
            per_size.values().collect::<Vec<_>>(),
            violations.len(),
            violations.first().map_or(String::new(), |v| format!(" (first: {v})"))
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    let mut means = Vec::new();
    for (rows, cols) in SCALING_GRIDS {
        let g = ConnectivityGraph::grid(rows, cols);
        let n = rows * cols;
        let total: usize = (0..SCALING_SAMPLES)
            .map(|_| {
                let a = AugmentedLinearTransform::from_parts(&random_invertible(&mut rng, n), &Bits::zeros(n)).unwrap();
                linear_tf_synth(&a, &g).unwrap().cnot_count()
            })
            .sum();
        means.push((n, total as f64 / SCALING_SAMPLES as f64));
    }
    let (n0, m0) = means[0];
    let c = SCALING_HEADROOM * m0 / (n0 * n0) as f64;
    let pass = means.iter().all(|&(n, m)| m <= c * (n * n) as f64);
    let detail = means
        .iter()
        .map(|&(n, m)| format!("n={n}: {m:.1} (bound {:.1})", c * (n * n) as f64))
        .join(", ");
    outcome(pass, format!("c = {c:.3}; mean CNOTs {detail}"))
}

/// Line graph `1 - 2 - ... - n`, used to produce rewritten but equivalent
/// H-free circuits.
fn line(n: usize) -> ConnectivityGraph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (v, v + 1)).collect();
    ConnectivityGraph::new(n, &edges).unwrap()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    let mut equal = 0usize;
    let mut counterexamples = 0usize;
    for k in 0..CROSS_ORACLE_CIRCUITS {
        let n = 2 + k % (CROSS_ORACLE_MAX_QUBITS - 1);
        let a = random_hfree_circuit(&mut rng, n, 1 + k % CROSS_ORACLE_MAX_GATES);
        // Alternate between a rewritten equivalent, an unrelated circuit and
        // a one-gate mutation so both sides of the implication occur.
        let b = match k % 3 {
            0 => cnot_opt_a(&a, &line(n)).unwrap().0,
            1 => random_hfree_circuit(&mut rng, n, 1 + k % CROSS_ORACLE_MAX_GATES),
            _ => {
                let mut gates = a.gates().to_vec();
                gates.push(Gate::single(GateKind::T, 1 + k % n));
                Circuit::from_gates(n, gates).unwrap()
            }
        };
        if phase_poly_equal(&a, &b).unwrap() {
            equal += 1;
            if !equivalent_up_to_phase(&a, &b).unwrap() {
                counterexamples += 1;
            }
        }
    }
    outcome(
        counterexamples == 0 && equal > 0,
        format!(
            "{CROSS_ORACLE_CIRCUITS} pairs, {equal} with equal phase polynomials, {counterexamples} counterexamples"
        ),
    )
}

fn criterion_9() -> Outcome {
    let rows = bench_table(&BENCHMARK_PRESETS, None, BENCH_TRIALS, 9).unwrap();
    let text = stsynth::harness::to_tsv(&rows);
    let lines: Vec<&str> = text.lines().collect();
    let mut problems = Vec::new();
    if lines.first().copied() != Some(TSV_COLUMNS.join("\t").as_str()) {
        problems.push("header".to_string());
    }
    let mut expected = Vec::new();
    for name in BENCHMARK_PRESETS {
        let n = preset_graph(name).unwrap().num_vertices();
        for &count in stsynth::harness::count_grid(n) {
            expected.push((name.to_string(), n, count));
        }
    }
    if lines.len() != expected.len() + 1 {
        problems.push(format!("{} data lines, expected {}", lines.len() - 1, expected.len()));
    }
    for (line, (name, n, count)) in lines.iter().skip(1).zip(&expected) {
        let fields: Vec<&str> = line.split('\t').collect();
        let numeric = fields.len() == TSV_COLUMNS.len() && fields[3..].iter().all(|f| f.parse::<f64>().is_ok());
        if !numeric || fields[0] != name || fields[1] != n.to_string() || fields[2] != count.to_string() {
            problems.push(format!("row `{line}`"));
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{} rows over {} architectures, {} columns{}",
            lines.len().saturating_sub(1),
            BENCHMARK_PRESETS.len(),
            TSV_COLUMNS.len(),
            problems.first().map_or(String::new(), |p| format!("; problem: {p}"))
        ),
    )
}

fn main() -> ExitCode {
    // `cargo test -- <filter>` style arguments are ignored; the report always
    // covers every criterion.
    let (c4, overheads) = criterion_4();
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        c4,
        criterion_5(&overheads),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let mut ok = true;
    for (i, r) in results.iter().enumerate() {
        let k = i + 1;
        let expected = EXPECTED_FAILURES.iter().find(|(c, _)| *c == k);
        let status = if r.pass { "PASS" } else { "FAIL" };
        match (r.pass, expected) {
            (false, Some((_, why))) => println!("criterion {k}: {status} (expected: {why}) - {}", r.detail),
            (true, Some(_)) => {
                ok = false;
                println!(
                    "criterion {k}: {status} (unexpected pass; update the expected failures) - {}",
                    r.detail
                );
            }
            (pass, None) => {
                ok &= pass;
                println!("criterion {k}: {status} - {}", r.detail);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
