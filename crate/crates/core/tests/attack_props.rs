mod common;

use common::*;
use gridvuln::attack::{
    attack_betweenness, attack_eigen_iterative, attack_eigen_single_shot, attack_random,
    attack_trace_greedy, eigen_perturbation_scores, exhaustive_optimal_removal, largest_eigenvalue,
    AttackTrace,
};
use gridvuln::generate::random_connected;
use gridvuln::{Edge, Grid};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Grid> {
    (3usize..=max_n)
        .prop_flat_map(|n| (Just(n), 1u64..(1u64 << (n * (n - 1) / 2))))
        .prop_map(|(n, mask)| from_mask(n, mask))
}

fn all_schemes(g: &Grid, k: usize, seed: u64) -> Vec<AttackTrace> {
    vec![
        attack_eigen_iterative(g, k).unwrap(),
        attack_eigen_single_shot(g, k).unwrap(),
        attack_trace_greedy(g, k, 6).unwrap(),
        attack_random(g, k, seed).unwrap(),
        attack_betweenness(g, k, false).unwrap(),
        attack_betweenness(g, k, true).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn first_order_score_bounds_the_drop(g in arb_graph(8)) {
        let beta = largest_eigenvalue(&g).unwrap();
        for (e, score) in eigen_perturbation_scores(&g).unwrap() {
            let after = largest_eigenvalue(&g.remove_edge(e).unwrap()).unwrap();
            prop_assert!(beta - after <= score + 1e-8, "{e}: drop {} > {score}", beta - after);
        }
    }

    #[test]
    fn traces_are_consistent(g in arb_graph(7), k in 1usize..5, seed in any::<u64>()) {
        for t in all_schemes(&g, k, seed) {
            prop_assert_eq!(t.beta_trajectory.len(), t.removed.len() + 1);
            prop_assert!(t.beta_trajectory.windows(2).all(|w| w[1] <= w[0]));
            prop_assert_eq!(t.removed.len(), k.min(g.edge_count()));
            let mut distinct = t.removed.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert_eq!(distinct.len(), t.removed.len());
            let rest = g.remove_edges(&t.removed).unwrap();
            prop_assert!((largest_eigenvalue(&rest).unwrap() - t.final_beta()).abs() < 1e-8);
        }
    }

    #[test]
    fn oracle_dominates_every_scheme(g in arb_graph(7), seed in any::<u64>()) {
        let (_, best) = exhaustive_optimal_removal(&g, 1).unwrap();
        for t in all_schemes(&g, 1, seed) {
            prop_assert!(best <= t.final_beta() + 1e-9, "{:?}", t.scheme);
        }
    }

    #[test]
    fn pair_oracle_beats_greedy_pairs(g in arb_graph(6)) {
        prop_assume!(g.edge_count() >= 2);
        let (set, best) = exhaustive_optimal_removal(&g, 2).unwrap();
        prop_assert_eq!(set.len(), 2);
        prop_assert!(best <= attack_eigen_iterative(&g, 2).unwrap().final_beta() + 1e-9);
    }

    #[test]
    fn walk_counts_are_supermodular(
        n in 3usize..=7,
        a_bits in any::<u64>(),
        b_bits in any::<u64>(),
        pick in any::<prop::sample::Index>(),
        r in 2u32..=3,
    ) {
        let pairs = n * (n - 1) / 2;
        let full = (1u64 << pairs) - 1;
        let a = a_bits & full;
        prop_assume!(a != full);
        let b = a & b_bits;
        let outside: Vec<usize> = (0..pairs).filter(|k| a >> k & 1 == 0).collect();
        let c = 1u64 << outside[pick.index(outside.len())];
        let f = |mask| closed_walks(&from_mask(n, mask), 2 * r) as i128;
        prop_assert!(f(a | c) - f(a) >= f(b | c) - f(b));
    }
}

#[test]
fn k4_first_removal_for_every_scheme() {
    let expected = (1.0 + 17f64.sqrt()) / 2.0;
    for t in all_schemes(&complete(4), 1, 3) {
        assert!((t.final_beta() - expected).abs() < 1e-8, "{:?}", t.scheme);
    }
}

#[test]
fn trace_greedy_usually_finds_the_best_single_line() {
    let mut hits = 0;
    for seed in 0..50 {
        let g = random_connected(6, 9, seed).unwrap();
        let (_, best) = exhaustive_optimal_removal(&g, 1).unwrap();
        let t = attack_trace_greedy(&g, 1, 20).unwrap();
        if (t.final_beta() - best).abs() <= 1e-9 {
            hits += 1;
        }
    }
    assert!(hits >= 40, "{hits}/50");
}

#[test]
fn schemes_are_deterministic() {
    let g = fixture("ieee118_style.txt");
    assert_eq!(
        attack_random(&g, 10, 9).unwrap(),
        attack_random(&g, 10, 9).unwrap()
    );
    assert_ne!(
        attack_random(&g, 10, 9).unwrap().removed,
        attack_random(&g, 10, 10).unwrap().removed
    );
    assert_eq!(
        attack_eigen_iterative(&g, 5).unwrap(),
        attack_eigen_iterative(&g, 5).unwrap()
    );
}

#[test]
fn parallel_candidate_scan_matches_single_worker() {
    let g = random_connected(30, 50, 11).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| attack_trace_greedy(&g, 4, 20).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn middle_of_a_path_goes_first() {
    let t = attack_betweenness(&path(4), 1, false).unwrap();
    assert_eq!(t.removed, vec![Edge::new(1, 2)]);
    let t = attack_eigen_iterative(&path(5), 1).unwrap();
    assert!(t.removed == vec![Edge::new(1, 2)] || t.removed == vec![Edge::new(2, 3)]);
}
