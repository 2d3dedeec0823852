//! Vertex-colored bipartite graphs.
//!
//! A [`BiGraph`] stores dense vertex ids `0..n`, a display name and a
//! [`Color`] per vertex, and sorted neighbor lists. Every edge joins the two
//! color classes. All algorithms in this crate work on ids; the text formats
//! work on names.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Dense vertex identifier, `0..n` within one graph.
pub type VertexId = usize;

/// One of the two vertex colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Zero,
    One,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Zero => Color::One,
            Color::One => Color::Zero,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Color::Zero => 0,
            Color::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Option<Color> {
        match i {
            0 => Some(Color::Zero),
            1 => Some(Color::One),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {0}-{1} joins two vertices of the same color")]
    MonochromaticEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate vertex name `{0}`")]
    DuplicateName(String),
    #[error("empty vertex name at vertex {0}")]
    EmptyName(VertexId),
    #[error("{names} names given for {colors} colored vertices")]
    LengthMismatch { names: usize, colors: usize },
}

/// A properly 2-colored simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiGraph {
    names: Vec<String>,
    colors: Vec<Color>,
    adj: Vec<Vec<VertexId>>,
}

/// Result of [`infer_bipartition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Proper(BiGraph),
    /// A closed walk `v0 v1 .. v(k-1) v0` of odd length `k`.
    OddCycle(Vec<VertexId>),
}

/// Default display names `x1, x2, ..`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn check_names(names: &[String]) -> Result<(), GraphError> {
    let mut seen = HashSet::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(GraphError::EmptyName(i));
        }
        if !seen.insert(name.as_str()) {
            return Err(GraphError::DuplicateName(name.clone()));
        }
    }
    Ok(())
}

fn build_adjacency(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Vec<Vec<VertexId>>, GraphError> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    Ok(adj)
}

impl BiGraph {
    /// Builds a graph with default names `x1..xn`.
    pub fn from_edges(colors: Vec<Color>, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let names = default_names(colors.len());
        Self::with_names(names, colors, edges)
    }

    pub fn with_names(
        names: Vec<String>,
        colors: Vec<Color>,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        if names.len() != colors.len() {
            return Err(GraphError::LengthMismatch { names: names.len(), colors: colors.len() });
        }
        check_names(&names)?;
        let adj = build_adjacency(colors.len(), edges)?;
        for (u, list) in adj.iter().enumerate() {
            if let Some(&v) = list.iter().find(|&&v| colors[v] == colors[u]) {
                return Err(GraphError::MonochromaticEdge(u.min(v), u.max(v)));
            }
        }
        Ok(BiGraph { names, colors, adj })
    }

    /// Convenience for small fixtures: colors given as `0`/`1`.
    pub fn from_bits(colors: &[u8], edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let colors = colors.iter().map(|&c| if c == 0 { Color::Zero } else { Color::One }).collect();
        Self::from_edges(colors, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic id order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Sizes of the color classes, indexed by [`Color::index`].
    pub fn class_sizes(&self) -> [usize; 2] {
        let mut sizes = [0; 2];
        for c in &self.colors {
            sizes[c.index()] += 1;
        }
        sizes
    }

    /// Returns the subgraph induced by `vs` (sorted, deduplicated) together
    /// with the map from new ids back to ids of `self`.
    pub fn induced_subgraph(&self, vs: &[VertexId]) -> Result<(BiGraph, Vec<VertexId>), GraphError> {
        let n = self.vertex_count();
        let mut origin: Vec<VertexId> = vs.to_vec();
        origin.sort_unstable();
        origin.dedup();
        if let Some(&bad) = origin.iter().find(|&&v| v >= n) {
            return Err(GraphError::OutOfRange { vertex: bad, n });
        }
        Ok((self.induced_unchecked(&origin), origin))
    }

    /// `origin` must be sorted, duplicate-free and in range.
    pub(crate) fn induced_unchecked(&self, origin: &[VertexId]) -> BiGraph {
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in origin.iter().enumerate() {
            local[v] = i;
        }
        let adj = origin
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&w| (local[w] != usize::MAX).then_some(local[w])).collect())
            .collect();
        BiGraph {
            names: origin.iter().map(|&v| self.names[v].clone()).collect(),
            colors: origin.iter().map(|&v| self.colors[v]).collect(),
            adj,
        }
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut part = Vec::new();
            while let Some(v) = queue.pop_front() {
                part.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            part.sort_unstable();
            components.push(part);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.connected_components().len() == 1
    }

    /// Vertices adjacent to every vertex of the opposite color. A vertex
    /// whose opposite class is empty qualifies vacuously.
    pub fn heart_vertices(&self) -> Vec<VertexId> {
        let sizes = self.class_sizes();
        (0..self.vertex_count()).filter(|&v| self.adj[v].len() == sizes[self.colors[v].opposite().index()]).collect()
    }

    /// Disjoint union; vertex ids of later parts are shifted past earlier ones.
    pub fn disjoint_union(parts: &[BiGraph]) -> Result<BiGraph, GraphError> {
        let mut names = Vec::new();
        let mut colors = Vec::new();
        let mut edges = Vec::new();
        for g in parts {
            let offset = names.len();
            names.extend(g.names.iter().cloned());
            colors.extend_from_slice(&g.colors);
            edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        }
        Self::with_names(names, colors, &edges)
    }

    /// Same graph with new display names.
    pub fn renamed(&self, names: Vec<String>) -> Result<BiGraph, GraphError> {
        if names.len() != self.vertex_count() {
            return Err(GraphError::LengthMismatch { names: names.len(), colors: self.vertex_count() });
        }
        check_names(&names)?;
        Ok(BiGraph { names, colors: self.colors.clone(), adj: self.adj.clone() })
    }
}

/// Assigns a proper 2-coloring by breadth-first search, color `Zero` to the
/// lowest id of each component, or returns an odd closed walk.
pub fn infer_bipartition(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Bipartition, GraphError> {
    infer_bipartition_named(default_names(n), edges)
}

pub fn infer_bipartition_named(names: Vec<String>, edges: &[(VertexId, VertexId)]) -> Result<Bipartition, GraphError> {
    let n = names.len();
    check_names(&names)?;
    for &(u, v) in edges {
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Ok(Bipartition::OddCycle(vec![u]));
        }
    }
    let adj = build_adjacency(n, edges)?;
    let mut color: Vec<Option<Color>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::new();
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(Color::Zero);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let cv = color[v].expect("queued vertices are colored");
            for &w in &adj[v] {
                match color[w] {
                    None => {
                        color[w] = Some(cv.opposite());
                        parent[w] = v;
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => {
                        return Ok(Bipartition::OddCycle(odd_cycle(v, w, &parent, &depth)));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let colors = color.into_iter().map(|c| c.expect("all vertices visited")).collect();
    Ok(Bipartition::Proper(BiGraph { names, colors, adj }))
}

/// Closes the BFS-tree paths from `a` and `b` (equal color, adjacent) at
/// their common ancestor.
fn odd_cycle(a: VertexId, b: VertexId, parent: &[usize], depth: &[usize]) -> Vec<VertexId> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}
