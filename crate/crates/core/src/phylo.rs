//! Rooted phylogenetic trees with a binary leaf coloring and a two-valued
//! truncation map.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::bigraph::Color;

/// Index of a node in a [`PhyloTree`] arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

/// How far toward the root a leaf looks for matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truncation {
    /// `u(x) = x`: the leaf has no outgoing matches.
    Leaf,
    /// `u(x) = root`: every best match counts.
    Root,
}

impl Truncation {
    pub fn keyword(self) -> &'static str {
        match self {
            Truncation::Leaf => "self",
            Truncation::Root => "root",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leaf {
    pub name: String,
    pub color: Color,
    pub trunc: Truncation,
}

impl Leaf {
    pub fn new(name: impl Into<String>, color: Color, trunc: Truncation) -> Self {
        Leaf { name: name.into(), color, trunc }
    }
}

/// Nested description of a tree; children keep their order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subtree {
    Leaf(Leaf),
    Node(Vec<Subtree>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("node {0} is not a leaf")]
    NotALeaf(NodeId),
    #[error("node {0} does not exist")]
    UnknownNode(NodeId),
    #[error("{0} -> {1} is not an internal arc")]
    NotInternalArc(NodeId, NodeId),
    #[error("internal node {0} has fewer than two children")]
    UnaryInternalNode(NodeId),
    #[error("duplicate leaf name `{0}`")]
    DuplicateLeafName(String),
    #[error("empty leaf name")]
    EmptyLeafName,
    #[error("a single-leaf tree must use truncation `self`")]
    SingleLeafRootTrunc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    parent: Option<NodeId>,
    children: Vec<NodeId>,
    leaf: Option<Leaf>,
}

/// A rooted phylogenetic tree. Immutable once built.
///
/// Nodes live in an arena; node `0` is the root. Children are ordered and
/// every traversal follows that order.
#[derive(Debug, Clone)]
pub struct PhyloTree {
    nodes: Vec<Node>,
    depth: Vec<usize>,
    // bit c set iff a leaf of color c lies below the node
    color_mask: Vec<u8>,
}

/// Set of colors occurring below a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorSet(u8);

impl ColorSet {
    pub fn contains(self, c: Color) -> bool {
        self.0 & (1 << c.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// Incremental arena construction. Nodes are numbered in creation order.
#[derive(Debug, Default)]
pub struct TreeBuilder {
    nodes: Vec<Node>,
}

impl TreeBuilder {
    /// Starts with an internal root.
    pub fn new() -> Self {
        TreeBuilder { nodes: vec![Node { parent: None, children: Vec::new(), leaf: None }] }
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn add_internal(&mut self, parent: NodeId) -> NodeId {
        self.push(parent, None)
    }

    pub fn add_leaf(&mut self, parent: NodeId, leaf: Leaf) -> NodeId {
        self.push(parent, Some(leaf))
    }

    fn push(&mut self, parent: NodeId, leaf: Option<Leaf>) -> NodeId {
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node { parent: Some(parent), children: Vec::new(), leaf });
        self.nodes[parent.0].children.push(id);
        id
    }

    pub fn build(self) -> Result<PhyloTree, TreeError> {
        PhyloTree::from_nodes(self.nodes)
    }
}

impl PhyloTree {
    /// The degenerate tree whose root is its only leaf.
    pub fn single(leaf: Leaf) -> Result<Self, TreeError> {
        Self::from_nodes(vec![Node { parent: None, children: Vec::new(), leaf: Some(leaf) }])
    }

    /// Root with all leaves as direct children.
    pub fn star(leaves: Vec<Leaf>) -> Result<Self, TreeError> {
        if leaves.len() == 1 {
            return Self::single(leaves.into_iter().next().expect("one leaf"));
        }
        Self::from_subtree(Subtree::Node(leaves.into_iter().map(Subtree::Leaf).collect()))
    }

    /// Builds the arena in preorder.
    pub fn from_subtree(shape: Subtree) -> Result<Self, TreeError> {
        let mut nodes: Vec<Node> = Vec::new();
        let mut stack: Vec<(Subtree, Option<NodeId>)> = vec![(shape, None)];
        while let Some((shape, parent)) = stack.pop() {
            let id = NodeId(nodes.len());
            if let Some(p) = parent {
                nodes[p.0].children.push(id);
            }
            match shape {
                Subtree::Leaf(leaf) => nodes.push(Node { parent, children: Vec::new(), leaf: Some(leaf) }),
                Subtree::Node(kids) => {
                    nodes.push(Node { parent, children: Vec::new(), leaf: None });
                    stack.extend(kids.into_iter().rev().map(|k| (k, Some(id))));
                }
            }
        }
        Self::from_nodes(nodes)
    }

    fn from_nodes(nodes: Vec<Node>) -> Result<Self, TreeError> {
        let mut names = HashSet::new();
        for (i, node) in nodes.iter().enumerate() {
            match &node.leaf {
                Some(leaf) => {
                    if !node.children.is_empty() {
                        return Err(TreeError::NotALeaf(NodeId(i)));
                    }
                    if leaf.name.is_empty() {
                        return Err(TreeError::EmptyLeafName);
                    }
                    if !names.insert(leaf.name.as_str()) {
                        return Err(TreeError::DuplicateLeafName(leaf.name.clone()));
                    }
                }
                None => {
                    if node.children.len() < 2 {
                        return Err(TreeError::UnaryInternalNode(NodeId(i)));
                    }
                }
            }
        }
        if nodes.len() == 1 && nodes[0].leaf.as_ref().map(|l| l.trunc) == Some(Truncation::Root) {
            return Err(TreeError::SingleLeafRootTrunc);
        }
        let mut depth = vec![0; nodes.len()];
        let mut color_mask = vec![0u8; nodes.len()];
        let order = preorder_of(&nodes);
        for &v in &order {
            if let Some(p) = nodes[v.0].parent {
                depth[v.0] = depth[p.0] + 1;
            }
        }
        for &v in order.iter().rev() {
            let node = &nodes[v.0];
            let mut mask = node.leaf.as_ref().map_or(0, |l| 1u8 << l.color.index());
            for c in &node.children {
                mask |= color_mask[c.0];
            }
            color_mask[v.0] = mask;
        }
        Ok(PhyloTree { nodes, depth, color_mask })
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v.0].parent
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.nodes[v.0].children
    }

    pub fn leaf(&self, v: NodeId) -> Option<&Leaf> {
        self.nodes[v.0].leaf.as_ref()
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.nodes[v.0].leaf.is_some()
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v.0]
    }

    pub fn preorder(&self) -> Vec<NodeId> {
        preorder_of(&self.nodes)
    }

    /// Leaf nodes in preorder.
    pub fn leaves(&self) -> Vec<NodeId> {
        self.preorder().into_iter().filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.leaf.is_some()).count()
    }

    pub fn find_leaf(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.leaf.as_ref().is_some_and(|l| l.name == name)).map(NodeId)
    }

    /// Leaves of the subtree rooted at `v`, in preorder.
    pub fn leaves_below(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(w) = stack.pop() {
            if self.is_leaf(w) {
                out.push(w);
            }
            stack.extend(self.children(w).iter().rev());
        }
        out
    }

    pub fn subtree_colors(&self, v: NodeId) -> ColorSet {
        ColorSet(self.color_mask[v.0])
    }

    fn check_node(&self, v: NodeId) -> Result<(), TreeError> {
        if v.0 < self.nodes.len() {
            Ok(())
        } else {
            Err(TreeError::UnknownNode(v))
        }
    }

    /// Deepest common ancestor of two leaves (a node is its own ancestor).
    pub fn lca(&self, a: NodeId, b: NodeId) -> Result<NodeId, TreeError> {
        for v in [a, b] {
            self.check_node(v)?;
            if !self.is_leaf(v) {
                return Err(TreeError::NotALeaf(v));
            }
        }
        Ok(self.lca_nodes(a, b))
    }

    /// Parent-pointer walk, O(depth).
    pub(crate) fn lca_nodes(&self, mut a: NodeId, mut b: NodeId) -> NodeId {
        while self.depth[a.0] > self.depth[b.0] {
            a = self.nodes[a.0].parent.expect("non-root has parent");
        }
        while self.depth[b.0] > self.depth[a.0] {
            b = self.nodes[b.0].parent.expect("non-root has parent");
        }
        while a != b {
            a = self.nodes[a.0].parent.expect("non-root has parent");
            b = self.nodes[b.0].parent.expect("non-root has parent");
        }
        a
    }

    /// True iff `w` lies in the subtree rooted at `v` (reflexive).
    pub fn is_ancestor(&self, v: NodeId, mut w: NodeId) -> bool {
        if v.0 >= self.nodes.len() || w.0 >= self.nodes.len() {
            return false;
        }
        while self.depth[w.0] > self.depth[v.0] {
            w = self.nodes[w.0].parent.expect("non-root has parent");
        }
        v == w
    }

    /// Parent-to-child arcs whose child is internal, in preorder of the child.
    pub fn internal_arcs(&self) -> Vec<(NodeId, NodeId)> {
        self.preorder()
            .into_iter()
            .filter(|&w| !self.is_leaf(w))
            .filter_map(|w| self.parent(w).map(|v| (v, w)))
            .collect()
    }

    /// Contracts the internal arc `v -> w`: the children of `w` take its
    /// place among the children of `v`.
    pub fn contract_arc(&self, v: NodeId, w: NodeId) -> Result<PhyloTree, TreeError> {
        self.check_node(v)?;
        self.check_node(w)?;
        if self.is_leaf(w) || self.parent(w) != Some(v) {
            return Err(TreeError::NotInternalArc(v, w));
        }
        Self::from_nodes(self.rebuilt_skipping(w))
    }

    /// The nested description of the subtree at `v`.
    pub fn to_subtree(&self, v: NodeId) -> Subtree {
        let mut built: Vec<Option<Subtree>> = vec![None; self.nodes.len()];
        let mut order = vec![v];
        let mut i = 0;
        while i < order.len() {
            order.extend_from_slice(self.children(order[i]));
            i += 1;
        }
        for &u in order.iter().rev() {
            built[u.0] = Some(match self.leaf(u) {
                Some(leaf) => Subtree::Leaf(leaf.clone()),
                None => Subtree::Node(
                    self.children(u)
                        .iter()
                        .map(|c| built[c.0].take().expect("children come later in BFS order"))
                        .collect(),
                ),
            });
        }
        built[v.0].take().expect("root of the walk")
    }

    /// Arena in preorder with node `skip` replaced by its children.
    fn rebuilt_skipping(&self, skip: NodeId) -> Vec<Node> {
        let mut nodes: Vec<Node> = Vec::with_capacity(self.nodes.len());
        let mut stack: Vec<(NodeId, Option<NodeId>)> = vec![(self.root(), None)];
        while let Some((v, parent)) = stack.pop() {
            let id = NodeId(nodes.len());
            if let Some(p) = parent {
                nodes[p.0].children.push(id);
            }
            nodes.push(Node { parent, children: Vec::new(), leaf: self.nodes[v.0].leaf.clone() });
            let mut kids = Vec::new();
            for &c in self.children(v) {
                if c == skip {
                    kids.extend_from_slice(self.children(c));
                } else {
                    kids.push(c);
                }
            }
            stack.extend(kids.into_iter().rev().map(|c| (c, Some(id))));
        }
        nodes
    }
}

/// Structural equality: same nested shape, child order and leaf data,
/// regardless of arena numbering.
impl PartialEq for PhyloTree {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.preorder(), other.preorder());
        a.len() == b.len()
            && a.iter()
                .zip(&b)
                .all(|(&x, &y)| self.leaf(x) == other.leaf(y) && self.children(x).len() == other.children(y).len())
    }
}

impl Eq for PhyloTree {}

fn preorder_of(nodes: &[Node]) -> Vec<NodeId> {
    let mut order = Vec::with_capacity(nodes.len());
    let mut stack = vec![NodeId(0)];
    while let Some(v) = stack.pop() {
        order.push(v);
        stack.extend(nodes[v.0].children.iter().rev());
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::{One, Zero};
    use Truncation::{Leaf as Own, Root};

    fn leaf(name: &str, color: Color, trunc: Truncation) -> Subtree {
        Subtree::Leaf(Leaf::new(name, color, trunc))
    }

    /// ((x1,x2),(x3,x4)) with u(x2)=x2.
    fn fig1() -> PhyloTree {
        PhyloTree::from_subtree(Subtree::Node(vec![
            Subtree::Node(vec![leaf("x1", Zero, Root), leaf("x2", One, Own)]),
            Subtree::Node(vec![leaf("x3", Zero, Root), leaf("x4", One, Root)]),
        ]))
        .unwrap()
    }

    /// (x1,x2,(x3,x4)).
    fn fig2a() -> PhyloTree {
        PhyloTree::from_subtree(Subtree::Node(vec![
            leaf("x1", One, Own),
            leaf("x2", Zero, Root),
            Subtree::Node(vec![leaf("x3", One, Root), leaf("x4", Zero, Root)]),
        ]))
        .unwrap()
    }

    fn star(n: usize) -> PhyloTree {
        let leaves =
            (0..n).map(|i| Leaf::new(format!("x{}", i + 1), if i % 2 == 0 { Zero } else { One }, Root)).collect();
        PhyloTree::star(leaves).unwrap()
    }

    fn node(t: &PhyloTree, name: &str) -> NodeId {
        t.find_leaf(name).unwrap()
    }

    #[test]
    fn lca_cases() {
        let t = fig1();
        let x1 = node(&t, "x1");
        assert_eq!(t.lca(x1, x1).unwrap(), x1);
        let cherry = t.parent(x1).unwrap();
        assert_eq!(t.lca(x1, node(&t, "x2")).unwrap(), cherry);
        assert_ne!(cherry, t.root());
        assert_eq!(t.lca(x1, node(&t, "x3")).unwrap(), t.root());
        assert_eq!(t.lca(x1, cherry), Err(TreeError::NotALeaf(cherry)));

        let s = star(4);
        assert_eq!(s.lca(node(&s, "x2"), node(&s, "x4")).unwrap(), s.root());
    }

    #[test]
    fn ancestry() {
        let t = fig2a();
        for v in t.preorder() {
            assert!(t.is_ancestor(t.root(), v));
        }
        let x1 = node(&t, "x1");
        assert!(!t.is_ancestor(x1, t.root()));
        assert!(!t.is_ancestor(x1, node(&t, "x2")));
        let inner = t.parent(node(&t, "x3")).unwrap();
        assert!(t.is_ancestor(inner, node(&t, "x4")));
        assert!(!t.is_ancestor(inner, node(&t, "x2")));
    }

    #[test]
    fn arcs_and_contraction() {
        assert!(star(4).internal_arcs().is_empty());
        let single = PhyloTree::single(Leaf::new("x", Zero, Own)).unwrap();
        assert!(single.internal_arcs().is_empty());
        let fig2b = PhyloTree::from_subtree(Subtree::Node(vec![
            Subtree::Node(vec![leaf("x1", Zero, Root), leaf("x2", One, Root)]),
            leaf("x3", Zero, Root),
            Subtree::Node(vec![leaf("x4", One, Root), leaf("x5", Zero, Root)]),
        ]))
        .unwrap();
        assert_eq!(fig2b.internal_arcs().len(), 2);

        let t = fig2a();
        let arcs = t.internal_arcs();
        assert_eq!(arcs.len(), 1);
        let (v, w) = arcs[0];
        let c = t.contract_arc(v, w).unwrap();
        assert_eq!(c.node_count(), t.node_count() - 1);
        assert!(c.internal_arcs().is_empty());
        assert_eq!(c.children(c.root()).len(), 4);
        let names: Vec<_> = c.leaves().iter().map(|&l| c.leaf(l).unwrap().name.clone()).collect();
        assert_eq!(names, ["x1", "x2", "x3", "x4"]);
        assert_eq!(t.contract_arc(t.root(), node(&t, "x1")), Err(TreeError::NotInternalArc(t.root(), node(&t, "x1"))));
    }

    #[test]
    fn colors_below() {
        let t = fig1();
        let x1 = node(&t, "x1");
        let s = t.subtree_colors(x1);
        assert!(s.contains(Zero) && !s.contains(One));
        assert_eq!(t.subtree_colors(t.root()).len(), 2);
        let mono = PhyloTree::from_subtree(Subtree::Node(vec![
            Subtree::Node(vec![leaf("a", Zero, Root), leaf("b", Zero, Root)]),
            leaf("c", One, Root),
        ]))
        .unwrap();
        let cherry = mono.parent(node(&mono, "a")).unwrap();
        assert_eq!(mono.subtree_colors(cherry).len(), 1);
    }

    #[test]
    fn invalid_shapes() {
        let unary = PhyloTree::from_subtree(Subtree::Node(vec![leaf("x", Zero, Own)]));
        assert_eq!(unary, Err(TreeError::UnaryInternalNode(NodeId(0))));
        let dup = PhyloTree::from_subtree(Subtree::Node(vec![leaf("x", Zero, Own), leaf("x", One, Own)]));
        assert_eq!(dup, Err(TreeError::DuplicateLeafName("x".into())));
        assert_eq!(PhyloTree::single(Leaf::new("x", Zero, Root)), Err(TreeError::SingleLeafRootTrunc));
    }

    #[test]
    fn builder_matches_subtree() {
        let mut b = TreeBuilder::new();
        let r = b.root();
        let w = b.add_internal(r);
        b.add_leaf(w, Leaf::new("x1", Zero, Root));
        b.add_leaf(w, Leaf::new("x2", One, Own));
        let w2 = b.add_internal(r);
        b.add_leaf(w2, Leaf::new("x3", Zero, Root));
        b.add_leaf(w2, Leaf::new("x4", One, Root));
        assert_eq!(b.build().unwrap(), fig1());
    }
}
