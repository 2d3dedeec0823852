//! Brute-force membership tests that do not share code with the
//! recognition algorithm: induced search for the three forbidden patterns,
//! and enumeration of all connected induced subgraphs looking for one
//! without heart-vertex.

use thiserror::Error;

use crate::bigraph::{BiGraph, VertexId};
use crate::recognition::{heart_tree, PatternId, RecognitionError, Witness};

pub const DEFAULT_HEREDITARY_CAP: usize = 16;
pub const DEFAULT_PATTERN_CAP: usize = 512;
/// Subsets are bit masks in a `u64`.
pub const MAX_HEREDITARY_CAP: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("expected a heartless-subgraph witness")]
    NotHeartless,
    #[error(transparent)]
    Recognition(#[from] RecognitionError),
}

/// Induced-subgraph embedding of a forbidden pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub pattern: PatternId,
    /// `map[i]` is the image of pattern vertex `i`.
    pub map: Vec<VertexId>,
}

impl From<Embedding> for Witness {
    fn from(e: Embedding) -> Self {
        Witness::ForbiddenPattern { pattern: e.pattern, embedding: e.map }
    }
}

/// Template graph for a pattern.
///
/// `P6` and `C6` are numbered along the path/cycle. `Sunlet4` has the cycle
/// `0 1 2 3` followed by pendants `4..8`, pendant `4 + i` attached to `i`.
pub fn pattern_graph(id: PatternId) -> BiGraph {
    match id {
        PatternId::P6 => BiGraph::from_bits(&[0, 1, 0, 1, 0, 1], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]),
        PatternId::C6 => BiGraph::from_bits(&[0, 1, 0, 1, 0, 1], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]),
        PatternId::Sunlet4 => BiGraph::from_bits(
            &[0, 1, 0, 1, 1, 0, 1, 0],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5), (2, 6), (3, 7)],
        ),
    }
    .expect("pattern templates are properly colored")
}

/// Row-major adjacency bit matrix.
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(g: &BiGraph) -> Self {
        let n = g.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for (u, v) in g.edges() {
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        BitMatrix { words, bits }
    }

    fn has(&self, u: VertexId, v: VertexId) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

/// True iff `map` is injective and maps edges to edges and non-edges to
/// non-edges.
pub fn is_induced_embedding(g: &BiGraph, pattern: &BiGraph, map: &[VertexId]) -> bool {
    let k = pattern.vertex_count();
    if map.len() != k || map.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            if map[i] == map[j] || pattern.has_edge(i, j) != g.has_edge(map[i], map[j]) {
                return false;
            }
        }
    }
    true
}

struct PatternSearch<'a> {
    g: &'a BiGraph,
    adj: &'a BitMatrix,
    pattern: BiGraph,
    // pattern vertices in BFS order, each after its anchor
    order: Vec<VertexId>,
    anchor: Vec<Option<VertexId>>,
    map: Vec<VertexId>,
    used: Vec<bool>,
}

impl<'a> PatternSearch<'a> {
    fn new(g: &'a BiGraph, adj: &'a BitMatrix, id: PatternId) -> Self {
        let pattern = pattern_graph(id);
        let k = pattern.vertex_count();
        let mut order = vec![0];
        let mut anchor = vec![None; k];
        let mut seen = vec![false; k];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for &q in pattern.neighbors(p) {
                if !seen[q] {
                    seen[q] = true;
                    anchor[q] = Some(p);
                    order.push(q);
                }
            }
        }
        PatternSearch { g, adj, pattern, order, anchor, map: vec![usize::MAX; k], used: vec![false; g.vertex_count()] }
    }

    fn run(&mut self) -> Option<Vec<VertexId>> {
        self.extend(0).then(|| self.map.clone())
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let candidates: Vec<VertexId> = match self.anchor[p] {
            None => (0..self.g.vertex_count()).collect(),
            Some(a) => self.g.neighbors(self.map[a]).to_vec(),
        };
        // colors are either all preserved or all swapped
        let flip = (depth > 0).then(|| {
            let first = self.order[0];
            self.g.color(self.map[first]) != self.pattern.color(first)
        });
        for c in candidates {
            if self.used[c] || self.g.degree(c) < self.pattern.degree(p) {
                continue;
            }
            if let Some(flip) = flip {
                if (self.g.color(c) != self.pattern.color(p)) != flip {
                    continue;
                }
            }
            let consistent =
                self.order[..depth].iter().all(|&q| self.pattern.has_edge(p, q) == self.adj.has(c, self.map[q]));
            if !consistent {
                continue;
            }
            self.map[p] = c;
            self.used[c] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[c] = false;
        }
        self.map[p] = usize::MAX;
        false
    }
}

/// First induced copy of `id` in `g`, trying images in ascending id order.
pub fn find_pattern(g: &BiGraph, id: PatternId) -> Option<Embedding> {
    let adj = BitMatrix::new(g);
    find_pattern_in(g, &adj, id)
}

fn find_pattern_in(g: &BiGraph, adj: &BitMatrix, id: PatternId) -> Option<Embedding> {
    let map = PatternSearch::new(g, adj, id).run()?;
    assert!(is_induced_embedding(g, &pattern_graph(id), &map), "pattern search returned a non-induced embedding");
    Some(Embedding { pattern: id, map })
}

/// Looks for an induced `P6`, then `C6`, then `Sunlet4`.
pub fn find_forbidden(g: &BiGraph) -> Option<Embedding> {
    let adj = BitMatrix::new(g);
    PatternId::ALL.iter().find_map(|&id| find_pattern_in(g, &adj, id))
}

pub fn find_forbidden_with_cap(g: &BiGraph, cap: usize) -> Result<Option<Embedding>, OracleError> {
    if g.vertex_count() > cap {
        return Err(OracleError::SizeCapExceeded { n: g.vertex_count(), cap });
    }
    Ok(find_forbidden(g))
}

/// Outcome of [`hereditary_heart_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeartCheck {
    Holds,
    /// A minimum-cardinality vertex set inducing a connected subgraph
    /// without heart-vertex.
    Violated(Vec<VertexId>),
}

impl HeartCheck {
    pub fn holds(&self) -> bool {
        matches!(self, HeartCheck::Holds)
    }
}

/// Checks every connected induced subgraph for a heart-vertex, in order of
/// increasing size. Exponential; refuses graphs above `cap` vertices.
pub fn hereditary_heart_check_with_cap(g: &BiGraph, cap: usize) -> Result<HeartCheck, OracleError> {
    let n = g.vertex_count();
    let cap = cap.min(MAX_HEREDITARY_CAP);
    if n > cap {
        return Err(OracleError::SizeCapExceeded { n, cap });
    }
    let nbr: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    let mut class = [0u64; 2];
    for v in 0..n {
        class[g.color(v).index()] |= 1 << v;
    }
    let opposite = |v: usize| class[g.color(v).opposite().index()];

    let connected = |set: u64| {
        let mut reach = set & set.wrapping_neg();
        loop {
            let mut next = reach;
            let mut bits = reach;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= nbr[v] & set;
            }
            if next == reach {
                return reach == set;
            }
            reach = next;
        }
    };
    let has_heart = |set: u64| {
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if nbr[v] & set == opposite(v) & set {
                return true;
            }
        }
        false
    };

    for k in 1..=n {
        let last = ((1u64 << k) - 1) << (n - k);
        let mut set = (1u64 << k) - 1;
        loop {
            if connected(set) && !has_heart(set) {
                let members = (0..n).filter(|&v| set >> v & 1 == 1).collect();
                return Ok(HeartCheck::Violated(members));
            }
            if set == last {
                break;
            }
            // next subset of the same size (Gosper)
            let low = set & set.wrapping_neg();
            let ripple = set + low;
            set = (((ripple ^ set) >> 2) / low) | ripple;
        }
    }
    Ok(HeartCheck::Holds)
}

pub fn hereditary_heart_check(g: &BiGraph) -> Result<HeartCheck, OracleError> {
    hereditary_heart_check_with_cap(g, DEFAULT_HEREDITARY_CAP)
}

/// Turns a heartless-subgraph witness into a forbidden pattern inside it.
pub fn refine_witness(g: &BiGraph, witness: &Witness) -> Result<Witness, OracleError> {
    let Witness::HeartlessSubgraph(vs) = witness else {
        return Err(OracleError::NotHeartless);
    };
    let (sub, origin) = g.induced_subgraph(vs).map_err(|e| OracleError::InternalInconsistency(e.to_string()))?;
    match find_forbidden(&sub) {
        Some(e) => {
            Ok(Witness::ForbiddenPattern { pattern: e.pattern, embedding: e.map.iter().map(|&v| origin[v]).collect() })
        }
        None => Err(OracleError::InternalInconsistency(format!(
            "heartless subgraph on {} vertices contains no forbidden pattern",
            vs.len()
        ))),
    }
}

/// Membership according to each of the three independent tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts {
    pub heart_tree: bool,
    pub forbidden_free: bool,
    pub hereditary: bool,
}

impl Verdicts {
    pub fn agree(&self) -> bool {
        self.heart_tree == self.forbidden_free && self.forbidden_free == self.hereditary
    }
}

pub fn membership_verdicts(g: &BiGraph, cap: usize) -> Result<Verdicts, OracleError> {
    let hereditary = hereditary_heart_check_with_cap(g, cap)?.holds();
    Ok(Verdicts { heart_tree: heart_tree(g)?.is_accepted(), forbidden_free: find_forbidden(g).is_none(), hereditary })
}

/// True iff the recognition verdict, forbidden-pattern freeness and the
/// hereditary heart-vertex test agree on `g`.
pub fn naive_explain_equivalence(g: &BiGraph, cap: usize) -> Result<bool, OracleError> {
    Ok(membership_verdicts(g, cap)?.agree())
}

/// A vertex of maximum degree, lowest id on ties.
pub fn max_degree_vertex(g: &BiGraph) -> Option<VertexId> {
    (0..g.vertex_count()).rev().max_by_key(|&v| g.degree(v))
}
