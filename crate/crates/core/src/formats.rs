//! Text formats.
//!
//! Graph format, one declaration per line, `#` starts a comment:
//!
//! ```text
//! v x1 0
//! v x2 1
//! e x1 x2
//! ```
//!
//! The color column is optional but must be given for all vertices or for
//! none; without it the bipartition is inferred.
//!
//! Trees use Newick with a fixed leaf annotation, for example
//! `(x1[c=0,u=root],(x2[c=1,u=self],x3[c=0,u=root]));`.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::bigraph::{infer_bipartition_named, BiGraph, Bipartition, Color, GraphError, VertexId};
use crate::phylo::{Leaf, PhyloTree, Subtree, TreeError, Truncation};
use crate::semantics::DirectedQbmg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: edge {a}-{b} joins two vertices of the same color")]
    MonochromaticEdge { line: usize, a: String, b: String },
    #[error("line {line}: vertex `{name}` declared twice")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: self-loop at `{name}`")]
    SelfLoop { line: usize, name: String },
    #[error("no vertices declared ({lines} lines read)")]
    EmptyGraph { lines: usize },
    #[error("line {line}: colors must be declared for every vertex or for none")]
    MixedColorDeclaration { line: usize },
    #[error("graph is not bipartite, odd cycle {}", .cycle.join(" "))]
    NotBipartite { cycle: Vec<String> },
    #[error("byte {pos}: {message}")]
    TreeSyntax { pos: usize, message: String },
    #[error("byte {pos}: duplicate leaf name `{name}`")]
    DuplicateLeafName { pos: usize, name: String },
    #[error("byte {pos}: internal node with a single child")]
    UnaryInternalNode { pos: usize },
    #[error("byte {pos}: a single-leaf tree must use u=self")]
    SingleLeafRootTrunc { pos: usize },
    #[error("graph6 byte {pos}: {message}")]
    Graph6 { pos: usize, message: String },
}

pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(is_name_byte)
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-')
}

/// A parsed graph file before the coloring is settled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub names: Vec<String>,
    /// `None` when no vertex line carries a color.
    pub colors: Option<Vec<Color>>,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl GraphDocument {
    /// Declared colors are used as given; otherwise the bipartition is
    /// inferred and may fail with an odd cycle.
    pub fn into_bipartition(self) -> Result<Bipartition, GraphError> {
        match self.colors {
            Some(colors) => BiGraph::with_names(self.names, colors, &self.edges).map(Bipartition::Proper),
            None => infer_bipartition_named(self.names, &self.edges),
        }
    }

    pub fn into_bigraph(self) -> Result<BiGraph, FormatError> {
        let names = self.names.clone();
        match self.into_bipartition() {
            Ok(Bipartition::Proper(g)) => Ok(g),
            Ok(Bipartition::OddCycle(walk)) => {
                Err(FormatError::NotBipartite { cycle: walk.into_iter().map(|v| names[v].clone()).collect() })
            }
            // names, ranges and colors were checked line by line
            Err(e) => unreachable!("validated graph document rejected: {e}"),
        }
    }
}

pub fn parse_graph_document(text: &str) -> Result<GraphDocument, FormatError> {
    let mut names: Vec<String> = Vec::new();
    let mut colors: Vec<Option<Color>> = Vec::new();
    let mut index: HashMap<String, VertexId> = HashMap::new();
    let mut edges = Vec::new();
    let mut lines = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        lines = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let syntax = |message: &str| FormatError::Syntax { line, message: message.to_string() };
        match tokens.as_slice() {
            [] => {}
            ["v", name, rest @ ..] => {
                if !is_valid_name(name) {
                    return Err(syntax(&format!("invalid vertex name `{name}`")));
                }
                let color = match rest {
                    [] => None,
                    ["0"] => Some(Color::Zero),
                    ["1"] => Some(Color::One),
                    [c] => return Err(syntax(&format!("color must be 0 or 1, found `{c}`"))),
                    _ => return Err(syntax("expected `v NAME [0|1]`")),
                };
                if colors.first().is_some_and(|first| first.is_some() != color.is_some()) {
                    return Err(FormatError::MixedColorDeclaration { line });
                }
                if index.insert(name.to_string(), names.len()).is_some() {
                    return Err(FormatError::DuplicateVertex { line, name: name.to_string() });
                }
                names.push(name.to_string());
                colors.push(color);
            }
            ["e", a, b] => {
                let lookup = |name: &str| {
                    index.get(name).copied().ok_or_else(|| FormatError::UnknownVertex { line, name: name.to_string() })
                };
                let (u, v) = (lookup(a)?, lookup(b)?);
                if u == v {
                    return Err(FormatError::SelfLoop { line, name: a.to_string() });
                }
                if let (Some(cu), Some(cv)) = (colors[u], colors[v]) {
                    if cu == cv {
                        return Err(FormatError::MonochromaticEdge { line, a: a.to_string(), b: b.to_string() });
                    }
                }
                edges.push((u, v));
            }
            ["e", ..] => return Err(syntax("expected `e NAME NAME`")),
            [kw, ..] => return Err(syntax(&format!("unknown declaration `{kw}`"))),
        }
    }
    if names.is_empty() {
        return Err(FormatError::EmptyGraph { lines });
    }
    let colors = colors.into_iter().collect::<Option<Vec<Color>>>();
    Ok(GraphDocument { names, colors, edges })
}

pub fn parse_graph(text: &str) -> Result<BiGraph, FormatError> {
    parse_graph_document(text)?.into_bigraph()
}

/// Vertices in id order, then edges sorted by (smaller name, larger name).
pub fn serialize_graph(g: &BiGraph) -> String {
    let mut out = String::new();
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "v {} {}", g.name(v), g.color(v).index());
    }
    let mut edges: Vec<(&str, &str)> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (g.name(u), g.name(v));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        let _ = writeln!(out, "e {a} {b}");
    }
    out
}

struct TreeParser<'a> {
    text: &'a [u8],
    pos: usize,
    seen: HashMap<String, usize>,
}

impl<'a> TreeParser<'a> {
    fn error(&self, message: impl Into<String>) -> FormatError {
        FormatError::TreeSyntax { pos: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<(), FormatError> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.error(format!("expected `{}`, found `{}`", byte as char, b as char))),
            None => Err(self.error(format!("expected `{}`, found end of input", byte as char))),
        }
    }

    fn word(&mut self) -> Result<&'a str, FormatError> {
        self.skip_ws();
        let start = self.pos;
        while self.text.get(self.pos).copied().is_some_and(is_name_byte) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(std::str::from_utf8(&self.text[start..self.pos]).expect("name bytes are ASCII"))
    }

    fn leaf(&mut self) -> Result<Leaf, FormatError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.word()?;
        self.expect(b'[')?;
        self.key(b'c')?;
        let color = match self.word()? {
            "0" => Color::Zero,
            "1" => Color::One,
            other => return Err(self.error(format!("color must be 0 or 1, found `{other}`"))),
        };
        self.expect(b',')?;
        self.key(b'u')?;
        let trunc = match self.word()? {
            "self" => Truncation::Leaf,
            "root" => Truncation::Root,
            other => return Err(self.error(format!("truncation must be self or root, found `{other}`"))),
        };
        self.expect(b']')?;
        if self.seen.insert(name.to_string(), start).is_some() {
            return Err(FormatError::DuplicateLeafName { pos: start, name: name.to_string() });
        }
        Ok(Leaf::new(name, color, trunc))
    }

    fn key(&mut self, key: u8) -> Result<(), FormatError> {
        self.expect(key)?;
        self.expect(b'=')
    }

    /// Iterative so that deeply nested input cannot exhaust the stack.
    fn tree(&mut self) -> Result<Subtree, FormatError> {
        // (position of `(`, children so far)
        let mut open: Vec<(usize, Vec<Subtree>)> = Vec::new();
        'node: loop {
            if self.peek() == Some(b'(') {
                open.push((self.pos, Vec::new()));
                self.pos += 1;
                continue;
            }
            let mut item = Subtree::Leaf(self.leaf()?);
            loop {
                let Some((_, kids)) = open.last_mut() else {
                    break 'node Ok(item);
                };
                match self.peek() {
                    Some(b',') => {
                        kids.push(item);
                        self.pos += 1;
                        continue 'node;
                    }
                    Some(b')') => {
                        kids.push(item);
                        self.pos += 1;
                        let (at, kids) = open.pop().expect("checked above");
                        if kids.len() < 2 {
                            return Err(FormatError::UnaryInternalNode { pos: at });
                        }
                        item = Subtree::Node(kids);
                    }
                    _ => return Err(self.error("expected `,` or `)`")),
                }
            }
        }
    }
}

pub fn parse_tree(text: &str) -> Result<PhyloTree, FormatError> {
    let mut p = TreeParser { text: text.as_bytes(), pos: 0, seen: HashMap::new() };
    let shape = p.tree()?;
    p.expect(b';')?;
    if p.peek().is_some() {
        return Err(p.error("unexpected input after `;`"));
    }
    if let Subtree::Leaf(leaf) = &shape {
        if leaf.trunc == Truncation::Root {
            return Err(FormatError::SingleLeafRootTrunc {
                pos: p.text.iter().position(|b| !b.is_ascii_whitespace()).unwrap_or(0),
            });
        }
    }
    PhyloTree::from_subtree(shape).map_err(|e| match e {
        // the parser reports these with positions before building
        TreeError::DuplicateLeafName(_) | TreeError::UnaryInternalNode(_) | TreeError::SingleLeafRootTrunc => {
            unreachable!("parser admitted an invalid tree: {e}")
        }
        other => FormatError::TreeSyntax { pos: 0, message: other.to_string() },
    })
}

/// Children in stored order, no whitespace.
pub fn serialize_tree(t: &PhyloTree) -> String {
    let mut out = String::new();
    let mut stack = vec![(t.root(), 0usize)];
    while let Some((v, next)) = stack.pop() {
        if let Some(leaf) = t.leaf(v) {
            let _ = write!(out, "{}[c={},u={}]", leaf.name, leaf.color.index(), leaf.trunc.keyword());
            continue;
        }
        let kids = t.children(v);
        if next == kids.len() {
            out.push(')');
            continue;
        }
        out.push(if next == 0 { '(' } else { ',' });
        stack.push((v, next + 1));
        stack.push((kids[next], 0));
    }
    out.push(';');
    out
}

/// Reads one graph6 line (an optional `>>graph6<<` header is skipped) and
/// infers the coloring. Vertices are named `x1..xn`.
pub fn parse_graph6(line: &str) -> Result<Bipartition, FormatError> {
    let body = line.trim();
    let body = body.strip_prefix(">>graph6<<").unwrap_or(body).as_bytes();
    let err = |pos: usize, message: &str| FormatError::Graph6 { pos, message: message.to_string() };
    let mut values = Vec::with_capacity(body.len());
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, "byte outside 63..=126"));
        }
        values.push((b - 63) as usize);
    }
    let (n, start) = match values.as_slice() {
        [] => return Err(err(0, "empty input")),
        [63, 63, rest @ ..] => {
            if rest.len() < 6 {
                return Err(err(2, "truncated vertex count"));
            }
            (rest[..6].iter().fold(0, |acc, &x| acc << 6 | x), 8)
        }
        [63, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err(1, "truncated vertex count"));
            }
            (rest[..3].iter().fold(0, |acc, &x| acc << 6 | x), 4)
        }
        [x, ..] => (*x, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if values.len() - start != needed {
        return Err(err(body.len(), &format!("expected {needed} data bytes for {n} vertices")));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = values[start + k / 6];
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if n == 0 {
        return Err(err(0, "graph has no vertices"));
    }
    crate::bigraph::infer_bipartition(n, &edges).map_err(|e| err(0, &e.to_string()))
}

/// Renders a value in Graphviz DOT.
pub trait ToDot {
    fn to_dot(&self) -> String;
}

pub fn export_dot<T: ToDot + ?Sized>(value: &T) -> String {
    value.to_dot()
}

fn escaped(name: &str) -> String {
    name.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quoted(name: &str) -> String {
    format!("\"{}\"", escaped(name))
}

/// Color 0 is drawn filled, color 1 hollow.
fn vertex_style(c: Color) -> &'static str {
    match c {
        Color::Zero => "shape=circle, style=filled, fillcolor=black, fontcolor=white",
        Color::One => "shape=circle, style=solid, fillcolor=white, fontcolor=black",
    }
}

impl ToDot for BiGraph {
    fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(out, "  {} [{}];", quoted(self.name(v)), vertex_style(self.color(v)));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", quoted(self.name(u)), quoted(self.name(v)));
        }
        out.push_str("}\n");
        out
    }
}

impl ToDot for PhyloTree {
    fn to_dot(&self) -> String {
        let mut out = String::from("digraph T {\n");
        let order = self.preorder();
        for &v in &order {
            match self.leaf(v) {
                Some(leaf) => {
                    let label = format!("\"{}\\nu={}\"", escaped(&leaf.name), leaf.trunc.keyword());
                    let _ = writeln!(out, "  {v} [label={label}, {}];", vertex_style(leaf.color));
                }
                None => {
                    let _ = writeln!(out, "  {v} [shape=point];");
                }
            }
        }
        for &v in &order {
            for &w in self.children(v) {
                let _ = writeln!(out, "  {v} -> {w};");
            }
        }
        out.push_str("}\n");
        out
    }
}

impl ToDot for DirectedQbmg {
    fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for (name, &c) in self.names.iter().zip(&self.colors) {
            let _ = writeln!(out, "  {} [{}];", quoted(name), vertex_style(c));
        }
        for (x, y) in self.arcs() {
            let _ = writeln!(out, "  {} -> {};", quoted(&self.names[x]), quoted(&self.names[y]));
        }
        out.push_str("}\n");
        out
    }
}
