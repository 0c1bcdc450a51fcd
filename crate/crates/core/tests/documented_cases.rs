//! Worked examples for each module, checked end to end.

use longcycle::dsl::resolve;
use longcycle::families::{
    clique_join, complete, cycle, limit_h, named, path, petersen, random_gnp, HReading,
};
use longcycle::fragments::{enumerate_fragments, fragment_complement, minimum_cutsets, Fragment};
use longcycle::graph::VertexSet;
use longcycle::invariants::{
    circumference, connectivity, independence_number, is_hamiltonian, longest_cycle_through_edges,
    longest_path_between, min_degree,
};
use longcycle::path_systems::{combined_cycles, cycle_through_matching, MatchingCycle};
use longcycle::schemes::{has_sdr, min_host_bruteforce, BoundLemma, HostKind};
use longcycle::search::{scan_to_writer, ScanConfig};
use longcycle::stream::StreamSpec;
use longcycle::theorems::{check_statement, tightness_scan, StatementId, Status};
use longcycle::{Budget, Graph};

fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

fn count(n: usize, connected: bool) -> usize {
    StreamSpec::Enumerate {
        n,
        connected,
        dedup: true,
    }
    .open()
    .unwrap()
    .count()
}

#[test]
fn limit_family_shapes() {
    let h = limit_h(1, 1, 1, 1, HReading::Disjoint).unwrap();
    assert_eq!((h.n(), h.edge_count()), (3, 2));
    let h = limit_h(1, 1, 5, 4, HReading::Disjoint).unwrap();
    assert_eq!((h.n(), h.edge_count()), (11, 29));
    // k = t: every independent vertex sees K_b
    let h = limit_h(1, 1, 3, 3, HReading::Disjoint).unwrap();
    assert!((3..6).all(|v| h.has_edge(v, 6)));
    assert_eq!(clique_join(1, 1, 1).unwrap(), complete(2).unwrap());
    assert_eq!(clique_join(4, 2, 3).unwrap().n(), 11);
}

#[test]
fn petersen_is_cubic_with_girth_five() {
    let g = petersen();
    assert_eq!(g.n(), 10);
    assert!((0..10).all(|v| g.degree(v) == 3));
    // no triangle and no 4-cycle
    for (u, v) in g.edges() {
        assert!(g.neighbors(u).intersection(g.neighbors(v)).is_empty());
    }
    for u in 0..10 {
        for v in u + 1..10 {
            if !g.has_edge(u, v) {
                assert!(g.neighbors(u).intersection(g.neighbors(v)).len() <= 1);
            }
        }
    }
    assert_eq!(named("petersen").unwrap(), g);
}

#[test]
fn random_graph_extremes_and_determinism() {
    assert_eq!(random_gnp(7, 0.0, 1).unwrap().edge_count(), 0);
    assert_eq!(random_gnp(7, 1.0, 1).unwrap(), complete(7).unwrap());
    assert_eq!(
        random_gnp(8, 0.5, 42).unwrap(),
        random_gnp(8, 0.5, 42).unwrap()
    );
    assert_eq!(
        resolve("gnp(8,0.5,42)").unwrap().graph,
        random_gnp(8, 0.5, 42).unwrap()
    );
}

#[test]
fn enumeration_counts() {
    assert_eq!(count(1, false), 1);
    assert_eq!((count(3, false), count(3, true)), (4, 2));
    assert_eq!((count(4, false), count(4, true)), (11, 6));
    assert_eq!(count(5, false), 34);
    assert_eq!(count(7, false), 1044);
}

#[test]
fn invariant_examples() {
    let c5 = cycle(5).unwrap();
    let four = clique_join(4, 2, 3).unwrap();
    assert_eq!(min_degree(&c5).unwrap(), 2);
    assert_eq!(min_degree(&complete(6).unwrap()).unwrap(), 5);
    assert_eq!(min_degree(&four).unwrap(), 4);
    assert_eq!(connectivity(&complete(5).unwrap()), 4);
    assert_eq!(connectivity(&petersen()), 3);
    assert_eq!(connectivity(&four), 3);
    assert_eq!(independence_number(&complete(5).unwrap()), 1);
    assert_eq!(independence_number(&c5), 2);
    assert_eq!(independence_number(&petersen()), 4);
    assert_eq!(circumference(&cycle(7).unwrap()).unwrap().0, 7);
    assert_eq!(circumference(&path(4).unwrap()).unwrap().0, 2);
    assert_eq!(circumference(&petersen()).unwrap().0, 9);
    assert_eq!(circumference(&clique_join(5, 2, 4).unwrap()).unwrap().0, 12);
    assert!(is_hamiltonian(&cycle(6).unwrap()));
    assert!(!is_hamiltonian(&petersen()));
    assert!(!is_hamiltonian(&complete(2).unwrap()));
    assert_eq!(longest_path_between(&c5, 0, 1).unwrap(), Some(4));
    assert_eq!(
        longest_path_between(&complete(4).unwrap(), 0, 3).unwrap(),
        Some(3)
    );
}

#[test]
fn cycles_through_prescribed_edges() {
    let c5 = cycle(5).unwrap();
    assert_eq!(
        longest_cycle_through_edges(&c5, &[(0, 1)], true)
            .unwrap()
            .unwrap()
            .len(),
        5
    );
    let k4 = complete(4).unwrap();
    let c = longest_cycle_through_edges(&k4, &[(0, 1), (2, 3)], true)
        .unwrap()
        .unwrap();
    assert_eq!(c.len(), 4);
    assert!(c.uses_edge(0, 1) && c.uses_edge(2, 3));
    let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    assert!(longest_cycle_through_edges(&star, &[(0, 1)], true)
        .unwrap()
        .is_none());
}

#[test]
fn cutset_and_fragment_examples() {
    let c5 = cycle(5).unwrap();
    let mut cuts: Vec<Vec<usize>> = minimum_cutsets(&c5).iter().map(|s| s.to_vec()).collect();
    cuts.sort();
    assert_eq!(
        cuts,
        vec![vec![0, 2], vec![0, 3], vec![1, 3], vec![1, 4], vec![2, 4]]
    );
    let four = clique_join(4, 2, 3).unwrap();
    assert!(minimum_cutsets(&four).contains(&set(&[8, 9, 10])));
    assert!(minimum_cutsets(&complete(4).unwrap()).is_empty());

    let cat = enumerate_fragments(&c5).unwrap();
    assert_eq!(cat.fragments.len(), 10);
    let ends: Vec<_> = cat.endfragments().map(|(_, f)| f.x.to_vec()).collect();
    assert_eq!(ends, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
    let cat = enumerate_fragments(&four).unwrap();
    assert_eq!(cat.fragments.len(), 14);
    assert_eq!(cat.endfragments().count(), 4);
    assert!(enumerate_fragments(&complete(5).unwrap())
        .unwrap()
        .fragments
        .is_empty());

    let f = Fragment::on(&c5, set(&[1]));
    assert_eq!(
        (f.s, fragment_complement(&f).x),
        (set(&[0, 2]), set(&[3, 4]))
    );
    let f = Fragment::on(&four, set(&[0, 1]));
    assert_eq!(fragment_complement(&f).x, set(&[2, 3, 4, 5, 6, 7]));
    for f in &enumerate_fragments(&four).unwrap().fragments {
        assert_eq!(fragment_complement(&fragment_complement(f)), *f);
    }
}

#[test]
fn combined_cycles_stay_within_circumference() {
    let g = petersen();
    let c = circumference(&g).unwrap().0;
    for f in &enumerate_fragments(&g).unwrap().fragments {
        let cc = combined_cycles(&g, f, &Budget::unlimited()).unwrap();
        if let (Some(s1), Some(s2)) = (&cc.c_star, &cc.c_star_star) {
            assert!(s1.is_valid_in(&g) && s2.is_valid_in(&g));
            assert!(s1.vertex_set().is_subset(s2.vertex_set()));
            assert!(s1.len() <= s2.len() && s2.len() <= c);
        }
    }
}

fn matchings(edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for &(u, v) in edges {
        let extra: Vec<_> = out
            .iter()
            .filter(|m| m.iter().all(|&(a, b)| a != u && a != v && b != u && b != v))
            .map(|m| {
                let mut m = m.clone();
                m.push((u, v));
                m
            })
            .collect();
        out.extend(extra);
    }
    out
}

#[test]
fn matching_cycle_can_be_absent_without_the_degree_condition() {
    // among 2-connected graphs on at most 8 vertices with 2δ <= 3κ - 2 there
    // is an endfragment and matching with no cycle through it
    let mut witness = None;
    'outer: for n in 4..=8 {
        for (_, g) in StreamSpec::enumerate_connected(n)
            .open()
            .unwrap()
            .map(Result::unwrap)
        {
            let (d, k) = (g.min_degree().unwrap(), connectivity(&g));
            if k < 2 || 2 * d > 3 * k - 2 {
                continue;
            }
            let cat = enumerate_fragments(&g).unwrap();
            for (_, f) in cat.endfragments() {
                let s_edges: Vec<(usize, usize)> = g
                    .edges()
                    .filter(|&(u, v)| f.s.contains(u) && f.s.contains(v))
                    .collect();
                for l in matchings(&s_edges) {
                    let r = cycle_through_matching(&g, f, &l, &Budget::unlimited()).unwrap();
                    if r == MatchingCycle::Absent {
                        witness = Some((g.clone(), f.x, l));
                        break 'outer;
                    }
                }
            }
        }
    }
    let (g, x, e) = witness.expect("a graph with no cycle through the matching");
    let d = g.min_degree().unwrap();
    assert!(2 * d <= 3 * connectivity(&g) - 2, "{x:?} {e:?}");
}

#[test]
fn structural_lemma_cases() {
    // first L15 hit on the f = 2, S ⊆ V↑ branch in a seeded G(9, 0.6) scan
    let g = resolve("HQtt\\Zz").unwrap().graph;
    let r = check_statement(&g, StatementId::L15, &Budget::unlimited());
    assert_eq!(r.status, Status::Held);
    let branches = r.witness.unwrap()["branches"].clone();
    assert_eq!(branches, serde_json::json!(["f=2, S⊆V↑"]));

    let r = check_statement(&cycle(6).unwrap(), StatementId::L12, &Budget::unlimited());
    assert_eq!(
        (r.hyp, r.concl, r.status),
        (Some(false), None, Status::Vacuous)
    );
}

#[test]
fn sdr_and_scheme_oracle_examples() {
    assert!(has_sdr(&[0b01, 0b10]));
    assert!(!has_sdr(&[0b1, 0b1]));
    assert!(!has_sdr(&[0b01, 0b11, 0b11]));
    let a = min_host_bruteforce(&[1, 1], 3, HostKind::Cycle, 14)
        .unwrap()
        .unwrap();
    assert!(a.len as i64 >= BoundLemma::A.bound(&[1, 1], 3).unwrap());
    assert_eq!(
        min_host_bruteforce(&[1, 1], 2, HostKind::Cycle, 14)
            .unwrap()
            .unwrap()
            .len,
        4
    );
    assert_eq!(
        min_host_bruteforce(&[1, 1], 2, HostKind::Path, 14)
            .unwrap()
            .unwrap()
            .len,
        3
    );
}

#[test]
fn statement_scans() {
    use StatementId::*;
    let cfg = ScanConfig {
        stream: StreamSpec::enumerate_connected(6),
        statements: vec![ThmE, ThmF, ThmG, Thm1],
        budget_ms: None,
        workers: 0,
        output: Default::default(),
        resume: None,
        seed: None,
        limit: None,
    };
    let out = scan_to_writer(&cfg, &mut std::io::sink()).unwrap();
    assert_eq!(out.totals.counterexample, 0);

    let graphs: Vec<Graph> = (2..=8)
        .flat_map(|n| {
            StreamSpec::enumerate_connected(n)
                .open()
                .unwrap()
                .map(|r| r.unwrap().1)
        })
        .collect();
    let tight = tightness_scan(graphs.iter().cloned(), ThmF, None);
    assert!(tight.iter().all(|r| r.slack == Some(0)));
    assert!(tight.iter().any(|r| r.tight));

    for n in 4..=9 {
        let r = check_statement(&cycle(n).unwrap(), ThmE, &Budget::unlimited());
        assert!(!r.tight && r.slack.unwrap() >= 0, "C_{n}");
    }
}
