//! Instance generation, exhaustive enumeration of small bipartite graphs and
//! the three-way cross-check harness.
//!
//! All randomness comes from SplitMix64. Draws are derived from its raw
//! 64-bit outputs with the fixed rules in [`Sampler`], so a seed yields the
//! same instance in any implementation that follows them.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use thiserror::Error;

use crate::bigraph::{default_names, BiGraph, Color, VertexId};
use crate::formats::serialize_graph;
use crate::oracles::{membership_verdicts, OracleError, Verdicts, DEFAULT_HEREDITARY_CAP};
use crate::phylo::{Leaf, PhyloTree, Subtree, Truncation};
use crate::semantics::explain;

/// Identifier written into report headers.
pub const PRNG_ALGORITHM: &str = "splitmix64";
/// Largest `max_n` accepted by [`enumerate_bipartite`].
pub const MAX_ENUMERATION_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("max_n = {n} exceeds the enumeration cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
}

/// Seeded draws on top of SplitMix64.
///
/// * `unit()` is `(next >> 11) * 2^-53`, uniform in `[0, 1)`.
/// * `chance(p)` is `unit() < p`.
/// * `below(k)` is `next % k`.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: SplitMix64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: SplitMix64::seed_from_u64(seed) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn below(&mut self, k: usize) -> usize {
        (self.next_u64() % k as u64) as usize
    }

    /// Fisher-Yates from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeGenConfig {
    pub leaf_count: usize,
    pub seed: u64,
    /// Probability that a node splits its leaves into nested groups instead
    /// of taking them all as direct children. `0` gives a star.
    pub internal_bias: f64,
    pub trunc_self_prob: f64,
    pub color_prob: f64,
}

impl TreeGenConfig {
    pub fn new(leaf_count: usize, seed: u64) -> Self {
        TreeGenConfig { leaf_count, seed, internal_bias: 0.5, trunc_self_prob: 0.3, color_prob: 0.5 }
    }

    fn validate(&self) -> Result<(), GenError> {
        if self.leaf_count == 0 {
            return Err(GenError::InvalidConfig("leaf_count must be at least 1".into()));
        }
        for (name, p) in [
            ("internal_bias", self.internal_bias),
            ("trunc_self_prob", self.trunc_self_prob),
            ("color_prob", self.color_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(GenError::InvalidConfig(format!("{name} = {p} is not in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Random phylogenetic tree with leaves `x1..xL` in preorder.
///
/// A node holding `k >= 2` leaves keeps them all as children with
/// probability `1 - internal_bias`; otherwise it splits them into `m` groups,
/// `m` uniform in `2..k`, cut at random positions, and recurses.
pub fn random_tree(cfg: &TreeGenConfig) -> Result<PhyloTree, GenError> {
    cfg.validate()?;
    let mut rng = Sampler::new(cfg.seed);
    let shape = split(cfg.leaf_count, cfg.internal_bias, &mut rng);
    let mut next = 0;
    let tree = decorate(shape, cfg, &mut rng, &mut next, cfg.leaf_count == 1);
    Ok(PhyloTree::from_subtree(tree).expect("generated shapes are phylogenetic"))
}

enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

fn split(k: usize, bias: f64, rng: &mut Sampler) -> Shape {
    if k == 1 {
        return Shape::Leaf;
    }
    if k == 2 || !rng.chance(bias) {
        return Shape::Node((0..k).map(|_| Shape::Leaf).collect());
    }
    let m = 2 + rng.below(k - 2);
    // choose m - 1 distinct cut points among 1..k
    let mut cuts: Vec<usize> = (1..k).collect();
    rng.shuffle(&mut cuts);
    let mut cuts = cuts[..m - 1].to_vec();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(m);
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(k)) {
        parts.push(split(c - start, bias, rng));
        start = c;
    }
    Shape::Node(parts)
}

fn decorate(shape: Shape, cfg: &TreeGenConfig, rng: &mut Sampler, next: &mut usize, single: bool) -> Subtree {
    match shape {
        Shape::Leaf => {
            *next += 1;
            let color = if rng.chance(cfg.color_prob) { Color::One } else { Color::Zero };
            let self_trunc = rng.chance(cfg.trunc_self_prob);
            let trunc = if single || self_trunc { Truncation::Leaf } else { Truncation::Root };
            Subtree::Leaf(Leaf::new(format!("x{next}"), color, trunc))
        }
        Shape::Node(kids) => Subtree::Node(kids.into_iter().map(|k| decorate(k, cfg, rng, next, single)).collect()),
    }
}

/// Each vertex gets color `One` with probability 1/2, each cross-color pair
/// becomes an edge with probability `edge_prob`.
pub fn random_bipartite(n: usize, edge_prob: f64, seed: u64) -> Result<BiGraph, GenError> {
    if n == 0 {
        return Err(GenError::InvalidConfig("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(GenError::InvalidConfig(format!("edge_prob = {edge_prob} is not in [0, 1]")));
    }
    let mut rng = Sampler::new(seed);
    let colors: Vec<Color> = (0..n).map(|_| if rng.chance(0.5) { Color::One } else { Color::Zero }).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] != colors[v] && rng.chance(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Ok(BiGraph::from_edges(colors, &edges).expect("edges join opposite colors"))
}

/// Graph explained by a random tree; always in the class.
pub fn random_un2qbmg(cfg: &TreeGenConfig) -> Result<BiGraph, GenError> {
    Ok(explain(&random_tree(cfg)?).graph)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dedupe {
    Labeled,
    /// One representative per color-preserving isomorphism class.
    IsoClasses,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumConfig {
    pub max_n: usize,
    pub connected_only: bool,
    pub dedupe: Dedupe,
}

impl EnumConfig {
    pub fn new(max_n: usize) -> Self {
        EnumConfig { max_n, connected_only: false, dedupe: Dedupe::Labeled }
    }

    pub fn connected_only(mut self) -> Self {
        self.connected_only = true;
        self
    }

    pub fn iso_classes(mut self) -> Self {
        self.dedupe = Dedupe::IsoClasses;
        self
    }
}

/// Streams bipartite graphs on `1..=max_n` vertices.
///
/// For each `n`, colorings are combined with every subset of the
/// cross-color pairs. In labeled mode vertex `0` is kept in class `Zero`:
/// swapping the two colors is then the only labeled symmetry left out, so
/// each labeled connected bipartite graph appears exactly once. In
/// iso-class mode all colorings are visited, so classes whose `Zero` side is
/// empty are also represented.
pub fn enumerate_bipartite(cfg: &EnumConfig) -> Result<BipartiteEnumerator, GenError> {
    if cfg.max_n == 0 {
        return Err(GenError::InvalidConfig("max_n must be at least 1".into()));
    }
    if cfg.max_n > MAX_ENUMERATION_N {
        return Err(GenError::SizeCapExceeded { n: cfg.max_n, cap: MAX_ENUMERATION_N });
    }
    let mut it = BipartiteEnumerator {
        cfg: cfg.clone(),
        n: 1,
        coloring: 0,
        shift: usize::from(cfg.dedupe == Dedupe::Labeled),
        pairs: Vec::new(),
        edge_mask: 0,
        seen: HashSet::new(),
        done: false,
    };
    it.load_coloring();
    Ok(it)
}

pub struct BipartiteEnumerator {
    cfg: EnumConfig,
    n: usize,
    // bit i set: vertex i + shift has color One
    coloring: u64,
    shift: usize,
    pairs: Vec<(VertexId, VertexId)>,
    edge_mask: u64,
    seen: HashSet<Vec<u8>>,
    done: bool,
}

impl BipartiteEnumerator {
    fn color(&self, v: usize) -> Color {
        if v >= self.shift && self.coloring >> (v - self.shift) & 1 == 1 {
            Color::One
        } else {
            Color::Zero
        }
    }

    fn load_coloring(&mut self) {
        let n = self.n;
        self.pairs = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.color(u) != self.color(v))
            .collect();
        self.edge_mask = 0;
    }

    /// Moves to the next (n, coloring, edge set); false when exhausted.
    fn advance(&mut self) -> bool {
        if self.edge_mask + 1 < 1u64 << self.pairs.len() {
            self.edge_mask += 1;
            return true;
        }
        if self.coloring + 1 < 1u64 << (self.n - self.shift) {
            self.coloring += 1;
        } else if self.n < self.cfg.max_n {
            self.n += 1;
            self.coloring = 0;
        } else {
            return false;
        }
        self.load_coloring();
        true
    }

    fn current(&self) -> BiGraph {
        let colors = (0..self.n).map(|v| self.color(v)).collect();
        let edges: Vec<_> =
            self.pairs.iter().enumerate().filter(|(i, _)| self.edge_mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        BiGraph::from_edges(colors, &edges).expect("cross-color pairs only")
    }
}

impl Iterator for BipartiteEnumerator {
    type Item = BiGraph;

    fn next(&mut self) -> Option<BiGraph> {
        while !self.done {
            let g = self.current();
            if !self.advance() {
                self.done = true;
            }
            if self.cfg.connected_only && !g.is_connected() {
                continue;
            }
            if self.cfg.dedupe == Dedupe::IsoClasses && !self.seen.insert(canonical_form(&g)) {
                continue;
            }
            return Some(g);
        }
        None
    }
}

/// Canonical key under color-preserving vertex permutations.
///
/// Vertices are first ordered by (color, degree); the key is the smallest
/// biadjacency bit string over all orderings that permute only within equal
/// (color, degree) cells, found by branch and bound row by row.
pub fn canonical_form(g: &BiGraph) -> Vec<u8> {
    let n = g.vertex_count();
    let cell_of = |v: VertexId| (g.color(v), g.degree(v));
    let mut rows: Vec<VertexId> = (0..n).filter(|&v| g.color(v) == Color::Zero).collect();
    let mut cols: Vec<VertexId> = (0..n).filter(|&v| g.color(v) == Color::One).collect();
    rows.sort_by_key(|&v| cell_of(v));
    cols.sort_by_key(|&v| cell_of(v));

    let mut key = vec![rows.len() as u8, cols.len() as u8];
    key.extend(rows.iter().chain(cols.iter()).map(|&v| g.degree(v) as u8));

    // Enumerate column orders within cells; for each, rows can be sorted
    // within their cells by their bit pattern, which is optimal for that
    // column order.
    let col_cells = cells(&cols, |v| g.degree(v));
    let row_cells = cells(&rows, |v| g.degree(v));
    let mut best: Option<Vec<u8>> = None;
    let mut order = cols.clone();
    permute_cells(&mut order, &col_cells, 0, &mut |cols_order| {
        let mut matrix: Vec<Vec<u8>> = Vec::with_capacity(rows.len());
        for &(start, end) in &row_cells {
            let mut block: Vec<Vec<u8>> = rows[start..end]
                .iter()
                .map(|&r| cols_order.iter().map(|&c| g.has_edge(r, c) as u8).collect())
                .collect();
            block.sort();
            matrix.extend(block);
        }
        let flat: Vec<u8> = matrix.concat();
        if best.as_ref().is_none_or(|b| flat < *b) {
            best = Some(flat);
        }
    });
    key.extend(best.unwrap_or_default());
    key
}

fn cells(sorted: &[VertexId], degree: impl Fn(VertexId) -> usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || degree(sorted[i]) != degree(sorted[start]) {
            out.push((start, i));
            start = i;
        }
    }
    out
}

fn permute_cells(order: &mut Vec<VertexId>, cells: &[(usize, usize)], cell: usize, visit: &mut dyn FnMut(&[VertexId])) {
    if cell == cells.len() {
        visit(order);
        return;
    }
    let (start, end) = cells[cell];
    permute_range(order, end, start, cells, cell, visit);
}

fn permute_range(
    order: &mut Vec<VertexId>,
    end: usize,
    i: usize,
    cells: &[(usize, usize)],
    cell: usize,
    visit: &mut dyn FnMut(&[VertexId]),
) {
    if i + 1 >= end {
        permute_cells(order, cells, cell + 1, visit);
        return;
    }
    for j in i..end {
        order.swap(i, j);
        permute_range(order, end, i + 1, cells, cell, visit);
        order.swap(i, j);
    }
}

/// One line of a cross-check report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckRecord {
    pub id: usize,
    pub n: usize,
    pub verdicts: Verdicts,
}

/// The first instance on which the three tests disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub id: usize,
    pub verdicts: Verdicts,
    pub graph_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossCheckReport {
    /// Free-form `# key: value` header lines, without the `# ` prefix.
    pub header: Vec<String>,
    pub records: Vec<CrossCheckRecord>,
    pub disagreement: Option<Disagreement>,
}

impl CrossCheckReport {
    pub fn total(&self) -> usize {
        self.records.len()
    }

    pub fn agreeing(&self) -> usize {
        self.records.iter().filter(|r| r.verdicts.agree()).count()
    }

    pub fn accepted(&self) -> usize {
        self.records.iter().filter(|r| r.verdicts.agree() && r.verdicts.heart_tree).count()
    }

    pub fn rejected(&self) -> usize {
        self.records.iter().filter(|r| r.verdicts.agree() && !r.verdicts.heart_tree).count()
    }

    pub fn all_agree(&self) -> bool {
        self.disagreement.is_none()
    }

    /// Line-oriented text: header comments, one tab-separated record per
    /// graph (`id n heart_tree forbidden_free hereditary`), then a summary
    /// block of `# key<TAB>value` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            let _ = writeln!(out, "# {h}");
        }
        let _ = writeln!(out, "# id\tn\theart_tree\tforbidden_free\thereditary_heart");
        let word = |b: bool| if b { "accept" } else { "reject" };
        for r in &self.records {
            let v = r.verdicts;
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                r.id,
                r.n,
                word(v.heart_tree),
                word(v.forbidden_free),
                word(v.hereditary)
            );
        }
        let _ = writeln!(out, "# summary");
        let _ = writeln!(out, "# total\t{}", self.total());
        let _ = writeln!(out, "# accepted\t{}", self.accepted());
        let _ = writeln!(out, "# rejected\t{}", self.rejected());
        let _ = writeln!(out, "# disagreements\t{}", self.total() - self.agreeing());
        if let Some(d) = &self.disagreement {
            let _ = writeln!(out, "# first disagreement at id {}", d.id);
            for line in d.graph_text.lines() {
                let _ = writeln!(out, "# | {line}");
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckOptions {
    pub hereditary_cap: usize,
    /// Graphs evaluated in parallel per batch.
    pub batch: usize,
}

impl Default for CrossCheckOptions {
    fn default() -> Self {
        CrossCheckOptions { hereditary_cap: DEFAULT_HEREDITARY_CAP, batch: 4096 }
    }
}

/// Runs the three membership tests on every graph, numbering instances from
/// 1 in corpus order. Processing stops at the first disagreement, which is
/// kept with its serialized graph; records after it are dropped, so the
/// report is independent of scheduling.
pub fn cross_check<I>(corpus: I, opts: &CrossCheckOptions) -> Result<CrossCheckReport, OracleError>
where
    I: IntoIterator<Item = BiGraph>,
{
    let mut report = CrossCheckReport::default();
    let mut iter = corpus.into_iter();
    let mut next_id = 1;
    loop {
        let batch: Vec<BiGraph> = iter.by_ref().take(opts.batch.max(1)).collect();
        if batch.is_empty() {
            return Ok(report);
        }
        let verdicts: Vec<Verdicts> =
            batch.par_iter().map(|g| membership_verdicts(g, opts.hereditary_cap)).collect::<Result<_, _>>()?;
        for (g, v) in batch.iter().zip(verdicts) {
            let id = next_id;
            next_id += 1;
            report.records.push(CrossCheckRecord { id, n: g.vertex_count(), verdicts: v });
            if !v.agree() {
                report.disagreement = Some(Disagreement { id, verdicts: v, graph_text: serialize_graph(g) });
                return Ok(report);
            }
        }
    }
}

/// Vertex names `x1..xn`, re-exported for callers building corpora.
pub fn names(n: usize) -> Vec<String> {
    default_names(n)
}
