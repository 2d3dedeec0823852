#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use qbmg::bigraph::{BiGraph, Color};
use qbmg::formats::{parse_graph, parse_tree};
use qbmg::genlab::TreeGenConfig;
use qbmg::phylo::PhyloTree;

pub fn fixture_path(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect()
}

pub fn graph(name: &str) -> BiGraph {
    parse_graph(&fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn tree(name: &str) -> PhyloTree {
    parse_tree(&fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

/// Colored graphs on `1..=max_n` vertices with independent edge coins.
pub fn arb_bigraph(max_n: usize) -> impl Strategy<Value = BiGraph> {
    (1..=max_n)
        .prop_flat_map(|n| (prop::collection::vec(any::<bool>(), n), prop::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(colors, coins)| {
            let n = colors.len();
            let colors: Vec<Color> = colors.into_iter().map(|c| if c { Color::One } else { Color::Zero }).collect();
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| colors[u] != colors[v] && coins[u * n + v])
                .collect();
            BiGraph::from_edges(colors, &edges).unwrap()
        })
}

pub fn arb_tree_config(max_leaves: usize) -> impl Strategy<Value = TreeGenConfig> {
    (1..=max_leaves, any::<u64>(), 0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64).prop_map(
        |(leaf_count, seed, internal_bias, trunc_self_prob, color_prob)| TreeGenConfig {
            leaf_count,
            seed,
            internal_bias,
            trunc_self_prob,
            color_prob,
        },
    )
}
