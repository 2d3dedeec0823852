//! The pattern search and the hereditary heart-vertex test against slow
//! reference implementations written directly on adjacency matrices.

mod common;

use common::{arb_bigraph, graph};
use proptest::prelude::*;
use qbmg::bigraph::BiGraph;
use qbmg::oracles::{
    find_forbidden, find_pattern, hereditary_heart_check, hereditary_heart_check_with_cap, is_induced_embedding,
    pattern_graph, refine_witness, HeartCheck, OracleError,
};
use qbmg::recognition::{heart_tree, PatternId, Verdict, Witness};

fn template(id: PatternId) -> (usize, Vec<(usize, usize)>) {
    match id {
        PatternId::P6 => (6, (1..6).map(|i| (i - 1, i)).collect()),
        PatternId::C6 => (6, (0..6).map(|i| (i, (i + 1) % 6)).collect()),
        PatternId::Sunlet4 => (8, (0..4).flat_map(|i| [(i, (i + 1) % 4), (i, i + 4)]).collect()),
    }
}

fn matrix(g: &BiGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Tries every injective assignment of pattern vertices.
fn brute_contains(g: &BiGraph, id: PatternId) -> bool {
    let (k, edges) = template(id);
    let mut p = vec![vec![false; k]; k];
    for (a, b) in edges {
        p[a][b] = true;
        p[b][a] = true;
    }
    let m = matrix(g);
    let mut map = Vec::with_capacity(k);
    let mut used = vec![false; g.vertex_count()];
    fn extend(map: &mut Vec<usize>, used: &mut [bool], p: &[Vec<bool>], m: &[Vec<bool>]) -> bool {
        let i = map.len();
        if i == p.len() {
            return true;
        }
        for v in 0..m.len() {
            if used[v] || (0..i).any(|j| p[i][j] != m[v][map[j]]) {
                continue;
            }
            used[v] = true;
            map.push(v);
            if extend(map, used, p, m) {
                return true;
            }
            map.pop();
            used[v] = false;
        }
        false
    }
    extend(&mut map, &mut used, &p, &m)
}

fn subset_connected(m: &[Vec<bool>], mask: u32) -> bool {
    let first = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << first;
    let mut stack = vec![first];
    while let Some(v) = stack.pop() {
        for (w, &adjacent) in m[v].iter().enumerate() {
            if mask >> w & 1 == 1 && seen >> w & 1 == 0 && adjacent {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen == mask
}

/// Smallest connected vertex subset without a heart-vertex, if any.
fn brute_heartless(g: &BiGraph) -> Option<usize> {
    let n = g.vertex_count();
    let m = matrix(g);
    (1u32..1 << n)
        .filter(|&mask| subset_connected(&m, mask))
        .filter(|&mask| {
            let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            !members.iter().any(|&v| members.iter().all(|&w| g.color(w) == g.color(v) || m[v][w]))
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pattern_search_matches_brute_force(g in arb_bigraph(8)) {
        for id in PatternId::ALL {
            let found = find_pattern(&g, id);
            prop_assert_eq!(found.is_some(), brute_contains(&g, id), "{}", id);
            if let Some(e) = found {
                prop_assert!(is_induced_embedding(&g, &pattern_graph(id), &e.map));
            }
        }
    }

    #[test]
    fn hereditary_check_matches_brute_force(g in arb_bigraph(9)) {
        match hereditary_heart_check(&g).unwrap() {
            HeartCheck::Holds => prop_assert_eq!(brute_heartless(&g), None),
            HeartCheck::Violated(vs) => prop_assert_eq!(Some(vs.len()), brute_heartless(&g)),
        }
    }

    #[test]
    fn minimum_heartless_sets_are_forbidden_patterns(g in arb_bigraph(10)) {
        if let HeartCheck::Violated(vs) = hereditary_heart_check(&g).unwrap() {
            let (sub, _) = g.induced_subgraph(&vs).unwrap();
            let matches = PatternId::ALL
                .iter()
                .filter(|&&id| {
                    let p = pattern_graph(id);
                    p.vertex_count() == sub.vertex_count() && p.edge_count() == sub.edge_count() && brute_contains(&sub, id)
                })
                .count();
            prop_assert_eq!(matches, 1);
        }
    }

    #[test]
    fn refined_witness_lies_inside_heartless_set(g in arb_bigraph(12)) {
        if let Verdict::Rejected(w) = heart_tree(&g).unwrap() {
            let heartless = w.vertices().to_vec();
            let Witness::ForbiddenPattern { pattern, embedding } = refine_witness(&g, &w).unwrap() else {
                panic!("refinement must give a pattern");
            };
            prop_assert!(embedding.iter().all(|v| heartless.contains(v)));
            prop_assert!(is_induced_embedding(&g, &pattern_graph(pattern), &embedding));
        }
    }
}

#[test]
fn patterns_are_minimal() {
    for id in PatternId::ALL {
        let p = pattern_graph(id);
        assert!(find_forbidden(&p).is_some());
        for drop in 0..p.vertex_count() {
            let keep: Vec<usize> = (0..p.vertex_count()).filter(|&v| v != drop).collect();
            let (sub, _) = p.induced_subgraph(&keep).unwrap();
            assert!(heart_tree(&sub).unwrap().is_accepted(), "{id} minus vertex {drop}");
            assert!(hereditary_heart_check(&sub).unwrap().holds());
        }
    }
}

#[test]
fn fixture_patterns_found_in_order() {
    let sunlet = graph("sunlet4.graph");
    let e = find_forbidden(&sunlet).unwrap();
    assert_eq!(e.pattern, PatternId::Sunlet4);
    assert_eq!(find_forbidden(&graph("p6.graph")).unwrap().map, vec![0, 1, 2, 3, 4, 5]);
    assert_eq!(find_forbidden(&graph("c6.graph")).unwrap().pattern, PatternId::C6);
}

#[test]
fn hereditary_cap() {
    let big = BiGraph::from_bits(&[0; 17], &[]).unwrap();
    assert_eq!(hereditary_heart_check(&big), Err(OracleError::SizeCapExceeded { n: 17, cap: 16 }));
    assert!(hereditary_heart_check_with_cap(&big, 17).unwrap().holds());
}
