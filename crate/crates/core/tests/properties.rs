use proptest::prelude::*;

use longcycle::canon::{canonical_form, canonical_mask, edge_mask};
use longcycle::crosscheck::{circumference_dp, connectivity_naive, independence_naive};
use longcycle::graph6::{parse_graph6, write_graph6};
use longcycle::invariants::{circumference, connectivity, independence_number, InvariantBundle};
use longcycle::theorems::{check_statement, StatementId, Status};
use longcycle::{Budget, Graph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n).unwrap();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Longest cycle by unpruned DFS from every start vertex.
fn circumference_by_dfs(g: &Graph) -> usize {
    fn go(g: &Graph, start: usize, v: usize, seen: &mut Vec<bool>, len: usize, best: &mut usize) {
        for w in g.neighbors(v) {
            if w == start && len >= 3 {
                *best = (*best).max(len);
            }
            if w > start && !seen[w] {
                seen[w] = true;
                go(g, start, w, seen, len + 1, best);
                seen[w] = false;
            }
        }
    }
    let mut best = 0;
    for s in 0..g.n() {
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        go(g, s, s, &mut seen, 1, &mut best);
    }
    if best > 0 {
        best
    } else if g.edge_count() > 0 {
        2
    } else {
        1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trips(g in graph(20)) {
        let text = write_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn connectivity_at_most_min_degree(g in graph(10)) {
        let k = connectivity(&g);
        prop_assert!(k <= g.min_degree().unwrap());
        prop_assert_eq!(k, connectivity_naive(&g));
    }

    #[test]
    fn invariants_agree_with_second_solvers(g in graph(9)) {
        let b = InvariantBundle::compute(&g).unwrap();
        prop_assert_eq!(b.c, circumference_dp(&g).unwrap());
        prop_assert_eq!(b.alpha, independence_naive(&g));
        if b.c >= 3 {
            prop_assert!(b.witness.is_valid_in(&g));
            prop_assert_eq!(b.witness.len(), b.c);
        }
    }

    #[test]
    fn circumference_matches_plain_dfs(g in graph(7)) {
        prop_assert_eq!(circumference(&g).unwrap().0, circumference_by_dfs(&g));
    }

    #[test]
    fn adding_an_edge_is_monotone(g in graph(9), u in 0usize..9, v in 0usize..9) {
        let n = g.n();
        let (u, v) = (u % n, v % n);
        prop_assume!(u != v && !g.has_edge(u, v));
        let mut h = g.clone();
        h.add_edge(u, v);
        prop_assert!(circumference(&h).unwrap().0 >= circumference(&g).unwrap().0);
        prop_assert!(independence_number(&h) <= independence_number(&g));
        prop_assert!(connectivity(&h) >= connectivity(&g));
    }

    #[test]
    fn invariants_survive_relabelling(g in graph(8).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        let (g, perm) = g;
        let h = g.permuted(&perm);
        let (a, b) = (InvariantBundle::compute(&g).unwrap(), InvariantBundle::compute(&h).unwrap());
        prop_assert_eq!((a.delta, a.kappa, a.alpha, a.c), (b.delta, b.kappa, b.alpha, b.c));
        prop_assert_eq!(canonical_mask(&g), canonical_mask(&h));
        let (mask, relabel) = canonical_form(&g);
        prop_assert_eq!(mask, edge_mask(&g.permuted(&relabel)));
        prop_assert!(mask <= edge_mask(&h));
    }

    #[test]
    fn dirac_bound_holds(g in graph(9)) {
        let r = check_statement(&g, StatementId::ThmE, &Budget::unlimited());
        prop_assert!(matches!(r.status, Status::Held | Status::Tight | Status::Vacuous), "{:?}", r);
    }

    #[test]
    fn endfragments_keep_connectivity_after_deletion(g in graph(9)) {
        let r = check_statement(&g, StatementId::LemB, &Budget::unlimited());
        prop_assert!(r.status != Status::Counterexample && r.status != Status::Unknown, "{:?}", r);
    }
}
