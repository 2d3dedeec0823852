//! Heart-vertex recognition: decides membership and builds a least-resolved
//! explaining tree.
//!
//! Each pending tree node `v` owns a vertex set `F(v)`. The heart-vertices of
//! `G[F(v)]` become leaves of `v` with truncation at the root; the remaining
//! vertices split into connected components, singletons become leaves with
//! truncation at themselves and larger components become new pending
//! children. A connected `G[F(v)]` without a heart-vertex proves the input
//! is not in the class.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::bigraph::{infer_bipartition, BiGraph, Bipartition, GraphError, VertexId};
use crate::phylo::{Leaf, NodeId, PhyloTree, TreeBuilder, Truncation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognitionError {
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The three forbidden induced subgraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternId {
    P6,
    C6,
    Sunlet4,
}

impl PatternId {
    pub const ALL: [PatternId; 3] = [PatternId::P6, PatternId::C6, PatternId::Sunlet4];

    pub fn label(self) -> &'static str {
        match self {
            PatternId::P6 => "P6",
            PatternId::C6 => "C6",
            PatternId::Sunlet4 => "Sunlet4",
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Evidence that a graph is not in the class. Vertex ids refer to the
/// recognized graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A vertex set inducing a connected subgraph without heart-vertex.
    HeartlessSubgraph(Vec<VertexId>),
    /// `embedding[i]` is the image of pattern vertex `i`.
    ForbiddenPattern { pattern: PatternId, embedding: Vec<VertexId> },
    /// An odd closed walk; the input is not bipartite.
    OddCycle(Vec<VertexId>),
}

impl Witness {
    /// `kind: name name ..` with names taken from `names`.
    pub fn describe(&self, names: &[String]) -> String {
        let (label, vs) = match self {
            Witness::HeartlessSubgraph(vs) => ("heartless", vs),
            Witness::ForbiddenPattern { pattern, embedding } => (pattern.label(), embedding),
            Witness::OddCycle(vs) => ("odd-cycle", vs),
        };
        let listed: Vec<&str> = vs.iter().map(|&v| names[v].as_str()).collect();
        format!("{label}: {}", listed.join(" "))
    }

    pub fn vertices(&self) -> &[VertexId] {
        match self {
            Witness::HeartlessSubgraph(vs) | Witness::OddCycle(vs) => vs,
            Witness::ForbiddenPattern { embedding, .. } => embedding,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted(PhyloTree),
    Rejected(Witness),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted(_))
    }

    pub fn tree(&self) -> Option<&PhyloTree> {
        match self {
            Verdict::Accepted(t) => Some(t),
            Verdict::Rejected(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Accepted(_) => None,
            Verdict::Rejected(w) => Some(w),
        }
    }
}

/// Pending tree nodes with their induced subgraphs, processed FIFO.
struct Frontier {
    // (tree node, G[F(v)], local id -> id in the input graph)
    pending: VecDeque<(NodeId, BiGraph, Vec<VertexId>)>,
}

/// Runs the heart-vertex recognition on a colored graph.
///
/// Children of each node are attached as: heart-vertices by ascending id,
/// then the components of the remainder by smallest member.
pub fn heart_tree(g: &BiGraph) -> Result<Verdict, RecognitionError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(RecognitionError::EmptyGraph);
    }
    let leaf = |v: VertexId, trunc| Leaf::new(g.name(v), g.color(v), trunc);
    if n == 1 {
        let tree = PhyloTree::single(leaf(0, Truncation::Leaf)).expect("single leaf with u = self");
        return Ok(Verdict::Accepted(tree));
    }

    let mut builder = TreeBuilder::new();
    let mut frontier = Frontier { pending: VecDeque::new() };
    frontier.pending.push_back((builder.root(), g.clone(), (0..n).collect()));

    while let Some((v, gv, origin)) = frontier.pending.pop_front() {
        let hearts = gv.heart_vertices();
        if hearts.is_empty() && gv.is_connected() {
            return Ok(Verdict::Rejected(Witness::HeartlessSubgraph(origin)));
        }
        let mut is_heart = vec![false; gv.vertex_count()];
        for &x in &hearts {
            is_heart[x] = true;
            builder.add_leaf(v, leaf(origin[x], Truncation::Root));
        }
        let rest: Vec<VertexId> = (0..gv.vertex_count()).filter(|&x| !is_heart[x]).collect();
        let remainder = gv.induced_unchecked(&rest);
        for component in remainder.connected_components() {
            if let [single] = component[..] {
                builder.add_leaf(v, leaf(origin[rest[single]], Truncation::Leaf));
            } else {
                let w = builder.add_internal(v);
                // component ids are local to `remainder`; map them back to `gv`
                let members: Vec<VertexId> = component.iter().map(|&c| rest[c]).collect();
                let sub = gv.induced_unchecked(&members);
                let sub_origin = members.iter().map(|&x| origin[x]).collect();
                frontier.pending.push_back((w, sub, sub_origin));
            }
        }
    }
    let tree = builder.build().expect("every processed node receives at least two children");
    Ok(Verdict::Accepted(tree))
}

/// Infers the bipartition first; a non-bipartite input is rejected with an
/// odd cycle.
pub fn recognize_with_colors(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Verdict, RecognitionError> {
    if n == 0 {
        return Err(RecognitionError::EmptyGraph);
    }
    match infer_bipartition(n, edges)? {
        Bipartition::Proper(g) => heart_tree(&g),
        Bipartition::OddCycle(walk) => Ok(Verdict::Rejected(Witness::OddCycle(walk))),
    }
}

/// Membership only.
pub fn is_un2qbmg(g: &BiGraph) -> bool {
    !g.is_empty() && heart_tree(g).map(|v| v.is_accepted()).unwrap_or(false)
}
