//! Linear and phase-network synthesis on random instances: replayed
//! actions, realized phase terms and connectivity.

mod common;

use common::oracles::connected_graph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stsynth::linsynth::widen_transform;
use stsynth::phasepoly::{expand, QubitState};
use stsynth::random::{random_parity_matrix, random_transform};
use stsynth::{
    extract_hfree, linear_action, linear_tf_synth, phase_nw_synth_with, preset_graph, ConnectivityGraph, ParityMatrix,
    PhaseSynthOptions, PivotRule, PRESET_NAMES,
};

fn check_linear(a: &stsynth::AugmentedLinearTransform, g: &ConnectivityGraph) -> Result<(), TestCaseError> {
    let c = linear_tf_synth(a, g).unwrap();
    prop_assert!(c.connectivity_violations(g).is_empty());
    prop_assert_eq!(
        linear_action(&c).unwrap(),
        widen_transform(a, g.num_vertices()).unwrap()
    );
    Ok(())
}

/// Synthesizes `p` and checks that the output's phase polynomial, expanded
/// over the input variables, is exactly `p`, and that the reported residual
/// is the output's linear action.
fn check_phase(p: &ParityMatrix, g: &ConnectivityGraph, pivot: PivotRule) -> Result<(), TestCaseError> {
    let opts = PhaseSynthOptions {
        pivot,
        ..Default::default()
    };
    let res = phase_nw_synth_with(p, g, opts).unwrap();
    prop_assert!(res.circuit.connectivity_violations(g).is_empty());
    let n = g.num_vertices();
    let (poly, state) = extract_hfree(&res.circuit).unwrap();
    let wide = ParityMatrix::new(n, p.terms().map(|(c, b, f)| (c, b.resized(n), f))).unwrap();
    let expected = expand(&wide, &QubitState::initial(n, n)).unwrap();
    prop_assert_eq!(poly.canonical(), expected.canonical());
    prop_assert_eq!(state.to_transform().unwrap(), res.residual);
    Ok(())
}

#[test]
fn two_hundred_random_transforms_on_presets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..200 {
        let name = PRESET_NAMES[k % PRESET_NAMES.len()];
        let g = preset_graph(name).unwrap();
        let n = g.num_vertices();
        let a = random_transform(&mut rng, n, k % 2 == 0);
        check_linear(&a, &g).unwrap();
    }
}

#[test]
fn one_hundred_random_parity_matrices_on_presets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xface);
    for k in 0..100 {
        let name = PRESET_NAMES[k % PRESET_NAMES.len()];
        let g = preset_graph(name).unwrap();
        let n = g.num_vertices();
        let p = random_parity_matrix(&mut rng, n, 1 + k % 24, k % 3 == 0);
        check_phase(&p, &g, PivotRule::Splitting).unwrap();
        check_phase(&p, &g, PivotRule::LargestCofactor).unwrap();
    }
}

#[test]
fn narrow_inputs_are_widened_with_identity_rows() {
    let g = preset_graph("9q-square").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let a = random_transform(&mut rng, 5, true);
    check_linear(&a, &g).unwrap();
    let p = random_parity_matrix(&mut rng, 5, 9, true);
    check_phase(&p, &g, PivotRule::Splitting).unwrap();
}

fn graph_and_seed() -> impl Strategy<Value = (ConnectivityGraph, u64)> {
    (connected_graph(8), any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linear_synthesis_on_arbitrary_connected_graphs((g, seed) in graph_and_seed()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_transform(&mut rng, g.num_vertices(), seed % 2 == 1);
        check_linear(&a, &g)?;
    }

    #[test]
    fn phase_synthesis_on_arbitrary_connected_graphs((g, seed) in graph_and_seed(), terms in 1usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_parity_matrix(&mut rng, g.num_vertices(), terms, seed % 2 == 1);
        check_phase(&p, &g, PivotRule::Splitting)?;
    }

    /// Synthesizing `A` then `B` realizes `A` followed by `B`.
    #[test]
    fn linear_synthesis_composes(seed in any::<u64>()) {
        let g = preset_graph("16q-square").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_transform(&mut rng, 16, true);
        let b = random_transform(&mut rng, 16, true);
        let mut c = linear_tf_synth(&a, &g).unwrap();
        c.extend_from(&linear_tf_synth(&b, &g).unwrap()).unwrap();
        prop_assert_eq!(linear_action(&c).unwrap(), a.then(&b).unwrap());
    }
}
