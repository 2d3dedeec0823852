//! From a tree `(T, σ, u)` to the graphs it explains.
//!
//! [`explain`] goes through the directed quasi-best match graph and
//! symmetrizes it. [`explain_by_definition`] evaluates the pairwise
//! condition literally and serves as an independent second route.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::bigraph::{BiGraph, Color, VertexId};
use crate::phylo::{Leaf, NodeId, PhyloTree, Subtree, TreeError, Truncation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("leaf names of the tree do not match vertex names of the graph")]
    NameMismatch,
    #[error("the tree does not explain the graph")]
    NotExplaining,
    #[error("input tree {0} is monochromatic with more than one leaf")]
    MonochromaticComponent(usize),
    #[error("no input trees")]
    NoTrees,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// The undirected graph explained by a tree. Vertex `i` of `graph` is the
/// leaf `leaf_nodes[i]`; leaves are numbered in preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplainedGraph {
    pub graph: BiGraph,
    pub leaf_nodes: Vec<NodeId>,
}

/// The directed 2-colored quasi-best match graph of a tree, on the same
/// vertex numbering as [`ExplainedGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedQbmg {
    pub names: Vec<String>,
    pub colors: Vec<Color>,
    pub out_arcs: Vec<Vec<VertexId>>,
}

impl DirectedQbmg {
    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out_arcs.iter().enumerate().flat_map(|(x, targets)| targets.iter().map(move |&y| (x, y)))
    }

    pub fn arc_count(&self) -> usize {
        self.out_arcs.iter().map(Vec::len).sum()
    }

    /// Forgets arc directions.
    pub fn underlying(&self) -> BiGraph {
        let edges: Vec<_> = self.arcs().collect();
        BiGraph::with_names(self.names.clone(), self.colors.clone(), &edges).expect("arcs join opposite colors")
    }
}

/// How [`best_matches_with`] locates best matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchStrategy {
    /// Climb to the lowest ancestor that sees the opposite color.
    #[default]
    AncestorWalk,
    /// Compare `lca(x, y)` against `lca(x, z)` for all opposite-colored pairs.
    AllPairsLca,
}

/// Best matches of leaf `x`: the opposite-colored leaves below the lowest
/// ancestor of `x` whose subtree contains the opposite color.
pub fn best_matches(t: &PhyloTree, x: NodeId) -> Vec<NodeId> {
    best_matches_with(t, x, MatchStrategy::AncestorWalk)
}

pub fn best_matches_with(t: &PhyloTree, x: NodeId, strategy: MatchStrategy) -> Vec<NodeId> {
    let Some(leaf) = t.leaf(x) else {
        return Vec::new();
    };
    let other = leaf.color.opposite();
    match strategy {
        MatchStrategy::AncestorWalk => {
            let mut v = x;
            while !t.subtree_colors(v).contains(other) {
                match t.parent(v) {
                    Some(p) => v = p,
                    None => return Vec::new(),
                }
            }
            t.leaves_below(v).into_iter().filter(|&y| t.leaf(y).is_some_and(|l| l.color == other)).collect()
        }
        MatchStrategy::AllPairsLca => {
            let candidates: Vec<NodeId> =
                t.leaves().into_iter().filter(|&y| t.leaf(y).is_some_and(|l| l.color == other)).collect();
            candidates
                .iter()
                .copied()
                .filter(|&y| {
                    let xy = t.lca_nodes(x, y);
                    candidates.iter().all(|&z| t.is_ancestor(t.lca_nodes(x, z), xy))
                })
                .collect()
        }
    }
}

fn leaf_numbering(t: &PhyloTree) -> (Vec<NodeId>, HashMap<NodeId, VertexId>) {
    let leaves = t.leaves();
    let index = leaves.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    (leaves, index)
}

fn leaf_data(t: &PhyloTree, leaves: &[NodeId]) -> (Vec<String>, Vec<Color>) {
    leaves
        .iter()
        .map(|&l| {
            let leaf = t.leaf(l).expect("leaf node");
            (leaf.name.clone(), leaf.color)
        })
        .unzip()
}

/// Arc `x -> y` iff `u(x) = root` and `y` is a best match of `x`.
pub fn directed_qbmg(t: &PhyloTree) -> DirectedQbmg {
    let (leaves, index) = leaf_numbering(t);
    let (names, colors) = leaf_data(t, &leaves);
    let out_arcs = leaves
        .iter()
        .map(|&x| {
            if t.leaf(x).expect("leaf node").trunc == Truncation::Leaf {
                return Vec::new();
            }
            let mut targets: Vec<VertexId> = best_matches(t, x).iter().map(|y| index[y]).collect();
            targets.sort_unstable();
            targets
        })
        .collect();
    DirectedQbmg { names, colors, out_arcs }
}

/// The undirected graph explained by `t`.
pub fn explain(t: &PhyloTree) -> ExplainedGraph {
    let leaves = t.leaves();
    ExplainedGraph { graph: directed_qbmg(t).underlying(), leaf_nodes: leaves }
}

/// Literal pairwise evaluation: `xy` is an edge iff the colors differ and
/// either `u(x) = root` and `y` lies below `lca(x, z)` for every `z` of
/// `y`'s color, or the same holds with `x` and `y` exchanged. Cubic in the
/// number of leaves; meant as a cross-check.
pub fn explain_by_definition(t: &PhyloTree) -> ExplainedGraph {
    let (leaves, _) = leaf_numbering(t);
    let (names, colors) = leaf_data(t, &leaves);
    let one_sided = |x: usize, y: usize| {
        t.leaf(leaves[x]).expect("leaf").trunc == Truncation::Root
            && (0..leaves.len())
                .filter(|&z| colors[z] == colors[y])
                .all(|z| t.is_ancestor(t.lca_nodes(leaves[x], leaves[z]), leaves[y]))
    };
    let mut edges = Vec::new();
    for x in 0..leaves.len() {
        for y in x + 1..leaves.len() {
            if colors[x] != colors[y] && (one_sided(x, y) || one_sided(y, x)) {
                edges.push((x, y));
            }
        }
    }
    let graph = BiGraph::with_names(names, colors, &edges).expect("edges join opposite colors");
    ExplainedGraph { graph, leaf_nodes: leaves }
}

/// Compares two graphs through their vertex names: same name set, same
/// colors, same edges.
pub fn same_graph_by_name(a: &BiGraph, b: &BiGraph) -> Result<bool, SemanticsError> {
    if a.vertex_count() != b.vertex_count() {
        return Err(SemanticsError::NameMismatch);
    }
    let lookup: HashMap<&str, VertexId> = b.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let to_b: Vec<VertexId> = a
        .names()
        .iter()
        .map(|n| lookup.get(n.as_str()).copied().ok_or(SemanticsError::NameMismatch))
        .collect::<Result<_, _>>()?;
    if a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    if to_b.iter().enumerate().any(|(v, &w)| a.color(v) != b.color(w)) {
        return Ok(false);
    }
    Ok(a.edges().all(|(u, v)| b.has_edge(to_b[u], to_b[v])))
}

/// True iff `t` explains exactly `g` (names, colors and edges).
pub fn check_explains(t: &PhyloTree, g: &BiGraph) -> Result<bool, SemanticsError> {
    same_graph_by_name(&explain(t).graph, g)
}

fn require_explains(t: &PhyloTree, g: &BiGraph) -> Result<(), SemanticsError> {
    if check_explains(t, g)? {
        Ok(())
    } else {
        Err(SemanticsError::NotExplaining)
    }
}

/// True iff contracting any single internal arc changes the explained
/// graph. This certifies minimality against single contractions only.
pub fn check_least_resolved(t: &PhyloTree, g: &BiGraph) -> Result<bool, SemanticsError> {
    require_explains(t, g)?;
    for (v, w) in t.internal_arcs() {
        let contracted = t.contract_arc(v, w)?;
        if same_graph_by_name(&explain(&contracted).graph, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A structural defect of a supposedly least-resolved explaining tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LrtViolation {
    /// No edge of the graph has this internal node as its lca.
    NoEdgeAtNode(NodeId),
    /// All leaves below this internal node share one color.
    MonochromaticNode(NodeId),
    /// Neither endpoint's parent is an ancestor of the other endpoint with
    /// truncation at the root.
    UncoveredEdge(String, String),
}

/// Audits an explaining tree for the structure every least-resolved tree
/// has: each internal node is the lca of some edge, no internal subtree is
/// monochromatic, and each edge `xy` has `u(x) = root` with `parent(x)`
/// above `y` (or symmetrically).
///
/// The first two conditions only constrain the root when `g` is
/// connected; the root of a disconnected graph's tree joins components.
pub fn validate_lrt_structure(t: &PhyloTree, g: &BiGraph) -> Result<Vec<LrtViolation>, SemanticsError> {
    require_explains(t, g)?;
    let explained = explain(t);
    let graph = &explained.graph;
    let leaves = &explained.leaf_nodes;
    let connected = graph.is_connected();

    let mut edge_lcas = HashSet::new();
    for (x, y) in graph.edges() {
        edge_lcas.insert(t.lca_nodes(leaves[x], leaves[y]));
    }

    let mut violations = Vec::new();
    for v in t.preorder() {
        if t.is_leaf(v) || (v == t.root() && !connected) {
            continue;
        }
        if !edge_lcas.contains(&v) {
            violations.push(LrtViolation::NoEdgeAtNode(v));
        }
        if t.subtree_colors(v).len() < 2 {
            violations.push(LrtViolation::MonochromaticNode(v));
        }
    }

    let covers = |a: NodeId, b: NodeId| {
        t.leaf(a).expect("leaf").trunc == Truncation::Root && t.parent(a).is_some_and(|p| t.is_ancestor(p, b))
    };
    for (x, y) in graph.edges() {
        if !covers(leaves[x], leaves[y]) && !covers(leaves[y], leaves[x]) {
            violations.push(LrtViolation::UncoveredEdge(graph.name(x).into(), graph.name(y).into()));
        }
    }
    Ok(violations)
}

/// Hangs the given trees below a fresh root, so that the result explains
/// the disjoint union of their graphs. A single input is returned as is.
pub fn union_explainer(trees: &[PhyloTree]) -> Result<PhyloTree, SemanticsError> {
    match trees {
        [] => return Err(SemanticsError::NoTrees),
        [only] => return Ok(only.clone()),
        _ => {}
    }
    let mut kids = Vec::with_capacity(trees.len());
    for (i, t) in trees.iter().enumerate() {
        if t.leaf_count() > 1 && t.subtree_colors(t.root()).len() < 2 {
            return Err(SemanticsError::MonochromaticComponent(i));
        }
        kids.push(t.to_subtree(t.root()));
    }
    Ok(PhyloTree::from_subtree(Subtree::Node(kids))?)
}

/// Star over the given leaves, all with truncation at the root.
pub fn biclique_star(g: &BiGraph) -> Result<PhyloTree, TreeError> {
    let trunc = if g.vertex_count() == 1 { Truncation::Leaf } else { Truncation::Root };
    PhyloTree::star((0..g.vertex_count()).map(|v| Leaf::new(g.name(v), g.color(v), trunc)).collect())
}
