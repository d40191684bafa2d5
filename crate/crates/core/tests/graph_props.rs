mod common;

use common::*;
use gridvuln::graph::{
    connected_components, edge_betweenness, largest_component_size, parse_edge_list, parse_json,
    to_edge_list, to_json, AliveMask, Indexing,
};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = gridvuln::Grid> {
    (2usize..9)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), 0u64..(1u64 << pairs))
        })
        .prop_map(|(n, mask)| from_mask(n, mask))
}

proptest! {
    #[test]
    fn degree_sum_and_symmetry(g in arb_graph()) {
        let n = g.node_count();
        let degrees: usize = (0..n).map(|i| g.degree(i)).sum();
        prop_assert_eq!(degrees, 2 * g.edge_count());
        for i in 0..n {
            prop_assert_eq!(g.adjacency(i, i), 0);
            for j in 0..n {
                prop_assert_eq!(g.adjacency(i, j), g.adjacency(j, i));
            }
        }
    }

    #[test]
    fn betweenness_matches_pairwise_definition(g in arb_graph()) {
        let fast = edge_betweenness(&g);
        let slow = brute_edge_betweenness(&g);
        for (e, expected) in g.edges().iter().zip(slow) {
            prop_assert!((fast[e] - expected).abs() < 1e-9, "{e}: {} vs {expected}", fast[e]);
        }
        let total: f64 = fast.values().sum();
        prop_assert!((total - total_distance(&g) as f64).abs() < 1e-9);
    }

    #[test]
    fn components_partition_the_survivors(g in arb_graph(), bits in any::<u16>()) {
        let n = g.node_count();
        let mask = AliveMask::new((0..n).map(|i| bits >> i & 1 == 1).collect());
        let part = connected_components(&g, &mask).unwrap();
        prop_assert_eq!(part.sizes().iter().sum::<usize>(), mask.alive_count());
        let largest = largest_component_size(&g, &mask).unwrap();
        prop_assert_eq!(largest, part.largest());
        prop_assert!(part.sizes().windows(2).all(|w| w[0] >= w[1]));
        for e in g.edges() {
            if mask.is_alive(e.u) && mask.is_alive(e.v) {
                prop_assert_eq!(part.component_of(e.u), part.component_of(e.v));
            }
        }
    }

    #[test]
    fn removal_keeps_nodes_and_drops_one_edge(g in arb_graph(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.edge_count() > 0);
        let e = g.edges()[pick.index(g.edge_count())];
        let h = g.remove_edge(e).unwrap();
        prop_assert_eq!(h.node_count(), g.node_count());
        prop_assert_eq!(h.edge_count() + 1, g.edge_count());
        prop_assert!(!h.has_edge(e.u, e.v));
    }

    #[test]
    fn both_formats_round_trip(g in arb_graph()) {
        prop_assume!(g.edge_count() > 0);
        prop_assert_eq!(parse_json(&to_json(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_edge_list(&to_edge_list(&g), Indexing::ZeroBased).unwrap(), g);
    }
}

#[test]
fn fixtures_have_advertised_sizes() {
    for (name, n, m) in [
        ("ieee118_style.txt", 118, 179),
        ("ieee300_style.txt", 300, 411),
        ("ucte_style.txt", 1254, 1811),
    ] {
        let g = fixture(name);
        assert_eq!((g.node_count(), g.edge_count()), (n, m), "{name}");
        assert!(g.is_connected(), "{name}");
    }
}

#[test]
fn one_based_list_shifts_to_zero() {
    let g = parse_edge_list("1 2\n2 3\n3 1\n", Indexing::Auto).unwrap();
    assert_eq!(g, complete(3));
    assert_eq!(g.labels(), Some(&[1u64, 2, 3][..]));
}
