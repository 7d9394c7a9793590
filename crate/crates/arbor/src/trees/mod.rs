//! Signed rooted trees `(T, ρ, ε)`: canonical forms, enumeration of
//! isomorphism classes, component negation and orientation counts.
//!
//! Edges adjacent to the root carry no sign; every other edge carries `±1`.
//! The dimension attached to a tree is `vertex_count − 1`.

mod enumerate;

pub use enumerate::enumerate;

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("root {0} is not a vertex")]
    BadRoot(usize),
    #[error("edge ({0}, {1}) is out of range or a loop")]
    BadEdge(usize, usize),
    #[error("expected {expected} edges, got {got}")]
    EdgeCount { expected: usize, got: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge {0}-{1} needs a sign")]
    MissingSign(usize, usize),
    #[error("root-adjacent edge {0}-{1} must not carry a sign")]
    RootEdgeSigned(usize, usize),
    #[error("sign on {0}-{1} is not an edge")]
    SignOnNonEdge(usize, usize),
    #[error("sign {0} is not ±1")]
    BadSign(i64),
    #[error("malformed sign key {0:?}")]
    BadSignKey(String),
    #[error("vertex {0} is not adjacent to the root")]
    NotAComponent(usize),
    #[error("tree too large for orientation counting")]
    TooLarge,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// A signed rooted tree with vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedRootedTree {
    vertex_count: usize,
    root: usize,
    edges: Vec<(usize, usize)>,
    signs: BTreeMap<(usize, usize), i8>,
}

impl SignedRootedTree {
    pub fn new(
        vertex_count: usize,
        root: usize,
        edges: Vec<(usize, usize)>,
        signs: BTreeMap<(usize, usize), i8>,
    ) -> Result<Self, TreeError> {
        if vertex_count == 0 {
            return Err(TreeError::Empty);
        }
        if root >= vertex_count {
            return Err(TreeError::BadRoot(root));
        }
        if edges.len() != vertex_count - 1 {
            return Err(TreeError::EdgeCount { expected: vertex_count - 1, got: edges.len() });
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| key(u, v)).collect();
        for &(u, v) in &edges {
            if u == v || v >= vertex_count {
                return Err(TreeError::BadEdge(u, v));
            }
        }
        let signs: BTreeMap<(usize, usize), i8> =
            signs.into_iter().map(|((u, v), s)| (key(u, v), s)).collect();
        let t = SignedRootedTree { vertex_count, root, edges, signs };
        // n − 1 edges and connected ⇒ acyclic.
        if t.bfs_order().len() != vertex_count {
            return Err(TreeError::Disconnected);
        }
        for (&(u, v), &s) in &t.signs {
            if !t.edges.contains(&(u, v)) {
                return Err(TreeError::SignOnNonEdge(u, v));
            }
            if s != 1 && s != -1 {
                return Err(TreeError::BadSign(s as i64));
            }
        }
        for &(u, v) in &t.edges {
            let at_root = u == root || v == root;
            match (at_root, t.signs.contains_key(&(u, v))) {
                (true, true) => return Err(TreeError::RootEdgeSigned(u, v)),
                (false, false) => return Err(TreeError::MissingSign(u, v)),
                _ => {}
            }
        }
        Ok(t)
    }

    /// The one-vertex tree.
    pub fn point() -> Self {
        SignedRootedTree { vertex_count: 1, root: 0, edges: vec![], signs: BTreeMap::new() }
    }

    /// The chain `A_k` rooted at an end, with the given signs on the
    /// non-root edges (`signs.len() = k − 2`).
    pub fn chain(signs: &[i8]) -> Result<Self, TreeError> {
        let k = signs.len() + 2;
        let edges = (0..k - 1).map(|i| (i, i + 1)).collect();
        let s = signs.iter().enumerate().map(|(i, &s)| ((i + 1, i + 2), s)).collect();
        Self::new(k, 0, edges, s)
    }

    /// The star with `leaves` leaves rooted at its center.
    pub fn star(leaves: usize) -> Self {
        let edges = (1..=leaves).map(|i| (0, i)).collect();
        Self::new(leaves + 1, 0, edges, BTreeMap::new()).expect("stars are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn signs(&self) -> &BTreeMap<(usize, usize), i8> {
        &self.signs
    }

    pub fn sign(&self, u: usize, v: usize) -> Option<i8> {
        self.signs.get(&key(u, v)).copied()
    }

    /// Dimension `n(T) = vertex_count − 1`.
    pub fn dimension(&self) -> usize {
        self.vertex_count - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn root_edge_count(&self) -> usize {
        self.edges.iter().filter(|&&(u, v)| u == self.root || v == self.root).count()
    }

    /// All edge signs are `+1`.
    pub fn is_positive(&self) -> bool {
        self.signs.values().all(|&s| s == 1)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.root]);
        seen[self.root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Children lists of the tree hung from its root.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.vertex_count];
        let mut children = vec![Vec::new(); self.vertex_count];
        for v in self.bfs_order() {
            for w in self.neighbors(v) {
                if w != self.root && parent[w] == usize::MAX && parent[v] != w {
                    parent[w] = v;
                    children[v].push(w);
                }
            }
        }
        children
    }

    /// Vertices of the component of `T ∖ ρ` through the root child `c`.
    pub fn component(&self, c: usize) -> Result<Vec<usize>, TreeError> {
        if !self.neighbors(self.root).contains(&c) {
            return Err(TreeError::NotAComponent(c));
        }
        let children = self.children();
        let mut out = Vec::new();
        let mut stack = vec![c];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(children[v].iter().copied());
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Root children, one per component of `T ∖ ρ`.
    pub fn components(&self) -> Vec<usize> {
        self.neighbors(self.root)
    }

    /// AHU encoding: `(` + sorted child codes + `)`, each child code
    /// prefixed by its edge sign (`+`/`-`), or nothing below the root.
    pub fn canonical_form(&self) -> String {
        let children = self.children();
        self.encode(self.root, &children)
    }

    fn encode(&self, v: usize, children: &[Vec<usize>]) -> String {
        let mut parts: Vec<String> = children[v]
            .iter()
            .map(|&c| {
                let prefix = match self.sign(v, c) {
                    Some(1) => "+",
                    Some(_) => "-",
                    None => "",
                };
                format!("{prefix}{}", self.encode(c, children))
            })
            .collect();
        parts.sort();
        format!("({})", parts.concat())
    }

    pub fn is_isomorphic(&self, other: &SignedRootedTree) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Flip every sign in the chosen components of `T ∖ ρ`, each named by
    /// its root child.
    pub fn negate_components(&self, components: &[usize]) -> Result<SignedRootedTree, TreeError> {
        let mut out = self.clone();
        for &c in components {
            let verts = self.component(c)?;
            for (&(u, v), s) in out.signs.iter_mut() {
                if verts.binary_search(&u).is_ok() && verts.binary_search(&v).is_ok() {
                    *s = -*s;
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            schema_version: None,
            vertices: self.vertex_count,
            root: self.root,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            signs: self.signs.iter().map(|(&(u, v), &s)| (format!("{u}-{v}"), s as i64)).collect(),
        }
    }

    pub fn from_json(j: &TreeJson) -> Result<Self, TreeError> {
        let mut signs = BTreeMap::new();
        for (k, &s) in &j.signs {
            let parse = || -> Option<(usize, usize)> {
                let (a, b) = k.split_once('-')?;
                Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
            };
            let (u, v) = parse().ok_or_else(|| TreeError::BadSignKey(k.clone()))?;
            if s != 1 && s != -1 {
                return Err(TreeError::BadSign(s));
            }
            signs.insert(key(u, v), s as i8);
        }
        Self::new(j.vertices, j.root, j.edges.iter().map(|e| (e[0], e[1])).collect(), signs)
    }
}

/// Wire format `{"vertices": k, "root": 0, "edges": [[u,v]..], "signs": {"u-v": ±1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub vertices: usize,
    pub root: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub signs: BTreeMap<String, i64>,
}

/// Orientation-structure counts for a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationClassCount {
    pub tree: SignedRootedTree,
    /// `2^{#edges}`.
    pub torsor_size: u128,
    /// `2^{#root edges}`.
    pub iso_classes: u128,
}

pub fn orientation_counts(t: &SignedRootedTree) -> Result<OrientationClassCount, TreeError> {
    if t.edge_count() >= 128 {
        return Err(TreeError::TooLarge);
    }
    Ok(OrientationClassCount {
        tree: t.clone(),
        torsor_size: 1u128 << t.edge_count(),
        iso_classes: 1u128 << t.root_edge_count(),
    })
}
