//! Binary partition trees shared by every structured-decomposable family.
//!
//! Nodes are stored in a dense array where children always precede their
//! parent, so a single forward pass evaluates the whole tree.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CombineMode {
    Kronecker,
    Hadamard,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Leaf {
        var: usize,
        cardinality: usize,
    },
    Internal {
        left: NodeId,
        right: NodeId,
        mode: CombineMode,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionNode {
    pub id: NodeId,
    pub kind: NodeKind,
}

impl PartitionNode {
    pub fn is_leaf(&self) -> bool {
        matches!(self.kind, NodeKind::Leaf { .. })
    }
}

/// Nested-pair description of a partition tree, e.g. `((0,1),(2,3))`.
///
/// In the textual form a pair prefixed with `h` combines by Hadamard product:
/// `h(0,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeSpec {
    Leaf(usize),
    Pair(Box<TreeSpec>, Box<TreeSpec>, CombineMode),
}

impl TreeSpec {
    pub fn leaf(var: usize) -> Self {
        Self::Leaf(var)
    }

    pub fn pair(left: TreeSpec, right: TreeSpec) -> Self {
        Self::Pair(Box::new(left), Box::new(right), CombineMode::Kronecker)
    }

    pub fn hadamard(left: TreeSpec, right: TreeSpec) -> Self {
        Self::Pair(Box::new(left), Box::new(right), CombineMode::Hadamard)
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Self::Leaf(v) => out.push(*v),
            Self::Pair(l, r, _) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Leaf(v) => write!(f, "{}", v),
            Self::Pair(l, r, mode) => {
                if *mode == CombineMode::Hadamard {
                    write!(f, "h")?;
                }
                write!(f, "({},{})", l, r)
            }
        }
    }
}

impl FromStr for TreeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::EmptySpec);
        }
        let mut pos = 0;
        let spec = parse_spec(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::InvalidTree(format!(
                "trailing input at position {}",
                pos
            )));
        }
        Ok(spec)
    }
}

fn parse_spec(chars: &[char], pos: &mut usize) -> Result<TreeSpec> {
    let err = |p: usize| Error::InvalidTree(format!("unexpected input at position {}", p));
    let mut mode = CombineMode::Kronecker;
    if chars.get(*pos) == Some(&'h') {
        mode = CombineMode::Hadamard;
        *pos += 1;
    }
    match chars.get(*pos) {
        Some('(') => {
            *pos += 1;
            let left = parse_spec(chars, pos)?;
            if chars.get(*pos) != Some(&',') {
                return Err(err(*pos));
            }
            *pos += 1;
            let right = parse_spec(chars, pos)?;
            if chars.get(*pos) != Some(&')') {
                return Err(err(*pos));
            }
            *pos += 1;
            Ok(TreeSpec::Pair(Box::new(left), Box::new(right), mode))
        }
        Some(c) if c.is_ascii_digit() && mode == CombineMode::Kronecker => {
            let start = *pos;
            while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let digits: String = chars[start..*pos].iter().collect();
            digits.parse().map(TreeSpec::Leaf).map_err(|_| err(start))
        }
        _ => Err(err(*pos)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCircuit {
    nodes: Vec<PartitionNode>,
    root: NodeId,
    cardinalities: Vec<usize>,
    leaf_of_var: Vec<NodeId>,
    parent: Vec<Option<NodeId>>,
}

impl PartitionCircuit {
    /// Builds a tree from a nested spec. Variables must be `0..n` each exactly once.
    pub fn build(spec: &TreeSpec, cardinalities: &[usize]) -> Result<Self> {
        let mut vars = Vec::new();
        spec.collect_vars(&mut vars);
        let mut seen = BTreeSet::new();
        for &v in &vars {
            if !seen.insert(v) {
                return Err(Error::DuplicateVariable(v));
            }
        }
        let mut nodes = Vec::new();
        let root = push_spec(spec, cardinalities, &mut nodes)?;
        Self::from_nodes(nodes, root, cardinalities.to_vec())
    }

    /// Validates an explicit node list. Children must have smaller ids than
    /// their parent; ids must equal positions.
    pub fn from_nodes(
        nodes: Vec<PartitionNode>,
        root: NodeId,
        cardinalities: Vec<usize>,
    ) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptySpec);
        }
        if root >= nodes.len() {
            return Err(Error::UnknownNode(root));
        }
        let n_vars = cardinalities.len();
        let mut parent = vec![None; nodes.len()];
        let mut leaf_of_var = vec![usize::MAX; n_vars];
        for (pos, node) in nodes.iter().enumerate() {
            if node.id != pos {
                return Err(Error::InvalidTree(format!(
                    "node at position {} has id {}",
                    pos, node.id
                )));
            }
            match node.kind {
                NodeKind::Leaf { var, cardinality } => {
                    if var >= n_vars {
                        return Err(Error::InvalidTree(format!(
                            "leaf {} references unknown variable {}",
                            pos, var
                        )));
                    }
                    if cardinality != cardinalities[var] || cardinality == 0 {
                        return Err(Error::InvalidTree(format!(
                            "leaf {} cardinality {} disagrees with variable {}",
                            pos, cardinality, var
                        )));
                    }
                    if leaf_of_var[var] != usize::MAX {
                        return Err(Error::DuplicateVariable(var));
                    }
                    leaf_of_var[var] = pos;
                }
                NodeKind::Internal { left, right, .. } => {
                    for child in [left, right] {
                        if child >= pos {
                            return Err(Error::InvalidTree(format!(
                                "node {} has child {} that does not precede it",
                                pos, child
                            )));
                        }
                        if parent[child].replace(pos).is_some() {
                            return Err(Error::InvalidTree(format!(
                                "node {} has more than one parent",
                                child
                            )));
                        }
                    }
                    if left == right {
                        return Err(Error::InvalidTree(format!(
                            "node {} uses child {} twice",
                            pos, left
                        )));
                    }
                }
            }
        }
        if let Some(v) = leaf_of_var.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidTree(format!("variable {} has no leaf", v)));
        }
        for (id, p) in parent.iter().enumerate() {
            if id != root && p.is_none() {
                return Err(Error::InvalidTree(format!(
                    "node {} is disconnected from the root",
                    id
                )));
            }
        }
        if parent[root].is_some() {
            return Err(Error::InvalidTree("root has a parent".into()));
        }
        Ok(Self {
            nodes,
            root,
            cardinalities,
            leaf_of_var,
            parent,
        })
    }

    pub fn nodes(&self) -> &[PartitionNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Result<&PartitionNode> {
        self.nodes.get(id).ok_or(Error::UnknownNode(id))
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn cardinalities(&self) -> &[usize] {
        &self.cardinalities
    }

    pub fn num_vars(&self) -> usize {
        self.cardinalities.len()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent.get(id).copied().flatten()
    }

    pub fn leaf_of_var(&self, var: usize) -> Option<NodeId> {
        self.leaf_of_var.get(var).copied()
    }

    pub fn leaf_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().filter(|n| n.is_leaf()).map(|n| n.id)
    }

    pub fn internal_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().filter(|n| !n.is_leaf()).map(|n| n.id)
    }

    pub fn children(&self, id: NodeId) -> Option<(NodeId, NodeId, CombineMode)> {
        match self.nodes.get(id)?.kind {
            NodeKind::Internal { left, right, mode } => Some((left, right, mode)),
            NodeKind::Leaf { .. } => None,
        }
    }

    /// Variables under `id`.
    pub fn scope_of(&self, id: NodeId) -> Result<BTreeSet<usize>> {
        self.node(id)?;
        let mut scope = BTreeSet::new();
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            match self.nodes[n].kind {
                NodeKind::Leaf { var, .. } => {
                    scope.insert(var);
                }
                NodeKind::Internal { left, right, .. } => {
                    stack.push(left);
                    stack.push(right);
                }
            }
        }
        Ok(scope)
    }

    /// Distance from the root; layers are the sets of nodes sharing a depth.
    pub fn depth(&self, id: NodeId) -> Result<usize> {
        self.node(id)?;
        let mut d = 0;
        let mut cur = id;
        while let Some(p) = self.parent(cur) {
            d += 1;
            cur = p;
        }
        Ok(d)
    }

    pub fn layers(&self) -> Vec<Vec<NodeId>> {
        let mut layers: Vec<Vec<NodeId>> = Vec::new();
        for id in 0..self.nodes.len() {
            let d = self.depth(id).expect("valid id");
            if layers.len() <= d {
                layers.resize(d + 1, Vec::new());
            }
            layers[d].push(id);
        }
        layers
    }

    /// Nested spec equivalent to this tree.
    pub fn to_spec(&self) -> TreeSpec {
        self.spec_at(self.root)
    }

    fn spec_at(&self, id: NodeId) -> TreeSpec {
        match self.nodes[id].kind {
            NodeKind::Leaf { var, .. } => TreeSpec::Leaf(var),
            NodeKind::Internal { left, right, mode } => TreeSpec::Pair(
                Box::new(self.spec_at(left)),
                Box::new(self.spec_at(right)),
                mode,
            ),
        }
    }

    /// Same tree with every internal node set to `mode`.
    pub fn with_mode(&self, mode: CombineMode) -> Self {
        let mut out = self.clone();
        for node in &mut out.nodes {
            if let NodeKind::Internal { mode: m, .. } = &mut node.kind {
                *m = mode;
            }
        }
        out
    }

    /// True iff both trees split variables identically (ordered children,
    /// same variable placement and cardinalities). Node ids and combine modes
    /// are ignored.
    pub fn same_vtree(&self, other: &Self) -> bool {
        self.cardinalities == other.cardinalities && self.same_subtree(self.root, other, other.root)
    }

    fn same_subtree(&self, a: NodeId, other: &Self, b: NodeId) -> bool {
        match (&self.nodes[a].kind, &other.nodes[b].kind) {
            (NodeKind::Leaf { var: va, .. }, NodeKind::Leaf { var: vb, .. }) => va == vb,
            (
                NodeKind::Internal {
                    left: la,
                    right: ra,
                    ..
                },
                NodeKind::Internal {
                    left: lb,
                    right: rb,
                    ..
                },
            ) => self.same_subtree(*la, other, *lb) && self.same_subtree(*ra, other, *rb),
            _ => false,
        }
    }
}

fn push_spec(
    spec: &TreeSpec,
    cardinalities: &[usize],
    nodes: &mut Vec<PartitionNode>,
) -> Result<NodeId> {
    let kind = match spec {
        TreeSpec::Leaf(var) => {
            let cardinality = *cardinalities.get(*var).ok_or_else(|| {
                Error::InvalidTree(format!("variable {} has no cardinality", var))
            })?;
            NodeKind::Leaf {
                var: *var,
                cardinality,
            }
        }
        TreeSpec::Pair(l, r, mode) => {
            let left = push_spec(l, cardinalities, nodes)?;
            let right = push_spec(r, cardinalities, nodes)?;
            NodeKind::Internal {
                left,
                right,
                mode: *mode,
            }
        }
    };
    let id = nodes.len();
    nodes.push(PartitionNode { id, kind });
    Ok(id)
}

/// Random binary tree over `num_vars` variables: variables are shuffled and
/// split recursively at a uniform cut point.
pub fn random_tree_spec(
    num_vars: usize,
    mode: CombineMode,
    rng: &mut crate::random::CircuitRng,
) -> TreeSpec {
    use rand::seq::SliceRandom;
    let mut vars: Vec<usize> = (0..num_vars).collect();
    vars.shuffle(rng);
    split_spec(&vars, mode, rng)
}

fn split_spec(vars: &[usize], mode: CombineMode, rng: &mut crate::random::CircuitRng) -> TreeSpec {
    if vars.len() == 1 {
        return TreeSpec::Leaf(vars[0]);
    }
    let cut = crate::random::uniform_in(1, vars.len() - 1, rng);
    let left = split_spec(&vars[..cut], mode, rng);
    let right = split_spec(&vars[cut..], mode, rng);
    TreeSpec::Pair(Box::new(left), Box::new(right), mode)
}
