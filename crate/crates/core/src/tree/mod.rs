//! Finite rooted non-planar trees, the objects of Ω.
//!
//! Edges point upward from the root: every vertex has exactly one output
//! edge below it and an unordered set of input edges above it. Edges that
//! are the output of no vertex are leaves; the root is the input of no
//! vertex. Nullary vertices are allowed, so `C_0` is a tree.
//!
//! Edge names are kept sorted, and an [`EdgeId`] is the position of a name
//! in that order. Vertex names are labels only: two trees with the same
//! edges and incidence compare equal whatever their vertices are called.

mod canon;
mod construct;
mod enumerate;
mod term;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::hash::{Hash, Hasher};

use crate::{Error, Result};

pub use canon::{canonical_code, is_isomorphic, isomorphism, CanonicalCode};
pub use construct::{closure, decalage, Closure, Decalage};
pub(crate) use construct::decalage_any as construct_decalage_any;
pub use enumerate::enumerate_trees;

pub type EdgeId = usize;
pub type VertexId = usize;

#[derive(Clone, Debug)]
pub struct Vertex {
    name: String,
    output: EdgeId,
    inputs: Vec<EdgeId>,
}

impl Vertex {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn output(&self) -> EdgeId {
        self.output
    }

    /// Input edges in increasing id order. The order carries no meaning.
    pub fn inputs(&self) -> &[EdgeId] {
        &self.inputs
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

#[derive(Clone, Debug)]
pub struct Tree {
    edges: Vec<String>,
    root: EdgeId,
    /// Sorted by output edge, which is unique per vertex.
    vertices: Vec<Vertex>,
    above: Vec<Option<VertexId>>,
    below: Vec<Option<VertexId>>,
}

/// A vertex given by names, as accepted by [`Tree::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub name: String,
    pub output: String,
    pub inputs: Vec<String>,
}

impl VertexSpec {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        output: impl Into<String>,
        inputs: impl IntoIterator<Item = S>,
    ) -> Self {
        VertexSpec {
            name: name.into(),
            output: output.into(),
            inputs: inputs.into_iter().map(Into::into).collect(),
        }
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges
            && self.root == other.root
            && self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .zip(&other.vertices)
                .all(|(a, b)| a.output == b.output && a.inputs == b.inputs)
    }
}

impl Eq for Tree {}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by edge names, root, then incidence; vertex names are ignored as
/// for equality.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        let incidence = |t: &Tree| t.vertices.iter().map(|v| (v.output, v.inputs.clone())).collect::<Vec<_>>();
        (&self.edges, self.root)
            .cmp(&(&other.edges, other.root))
            .then_with(|| incidence(self).cmp(&incidence(other)))
    }
}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.edges.hash(state);
        self.root.hash(state);
        for v in &self.vertices {
            v.output.hash(state);
            v.inputs.hash(state);
        }
    }
}

impl Tree {
    /// Builds a tree from names, checking every structural invariant.
    pub fn new<S: Into<String>>(
        edges: impl IntoIterator<Item = S>,
        root: &str,
        vertices: impl IntoIterator<Item = VertexSpec>,
    ) -> Result<Tree> {
        let names: Vec<String> = edges.into_iter().map(Into::into).collect();
        let lookup = |n: &str| -> Result<usize> {
            names
                .iter()
                .position(|e| e == n)
                .ok_or_else(|| Error::InvalidTree(format!("unknown edge `{n}`")))
        };
        let root = lookup(root)?;
        let mut raw = Vec::new();
        for v in vertices {
            let out = lookup(&v.output)?;
            let ins = v.inputs.iter().map(|n| lookup(n)).collect::<Result<Vec<_>>>()?;
            raw.push((v.name, out, ins));
        }
        Tree::assemble(names, root, raw)
    }

    /// Builds a tree from edge names and vertices referring to positions in
    /// `edges`. Positions are renumbered into sorted-name order.
    pub(crate) fn assemble(
        edges: Vec<String>,
        root: usize,
        vertices: Vec<(String, usize, Vec<usize>)>,
    ) -> Result<Tree> {
        let n = edges.len();
        if n == 0 {
            return Err(Error::InvalidTree("a tree has at least one edge".into()));
        }
        if root >= n {
            return Err(Error::InvalidTree("root out of range".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| edges[a].cmp(&edges[b]));
        let mut rank = alloc::vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let sorted: Vec<String> = order.iter().map(|&i| edges[i].clone()).collect();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTree("duplicate edge name".into()));
        }

        let mut names = BTreeSet::new();
        let mut verts = Vec::with_capacity(vertices.len());
        for (name, out, ins) in vertices {
            if out >= n || ins.iter().any(|&i| i >= n) {
                return Err(Error::InvalidTree(format!("vertex `{name}` refers to an unknown edge")));
            }
            if !names.insert(name.clone()) {
                return Err(Error::InvalidTree(format!("duplicate vertex name `{name}`")));
            }
            let mut inputs: Vec<usize> = ins.iter().map(|&i| rank[i]).collect();
            inputs.sort_unstable();
            if inputs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidTree(format!("vertex `{name}` repeats an input")));
            }
            verts.push(Vertex { name, output: rank[out], inputs });
        }
        verts.sort_by_key(|v| v.output);
        Tree::from_sorted(sorted, rank[root], verts)
    }

    fn from_sorted(edges: Vec<String>, root: EdgeId, vertices: Vec<Vertex>) -> Result<Tree> {
        let n = edges.len();
        let mut above = alloc::vec![None; n];
        let mut below = alloc::vec![None; n];
        for (vi, v) in vertices.iter().enumerate() {
            if above[v.output].replace(vi).is_some() {
                return Err(Error::InvalidTree(format!(
                    "edge `{}` is the output of two vertices",
                    edges[v.output]
                )));
            }
            for &i in &v.inputs {
                if below[i].replace(vi).is_some() {
                    return Err(Error::InvalidTree(format!(
                        "edge `{}` is an input of two vertices",
                        edges[i]
                    )));
                }
            }
        }
        if below[root].is_some() {
            return Err(Error::InvalidTree("the root is an input of a vertex".into()));
        }
        for e in 0..n {
            if e != root && below[e].is_none() {
                return Err(Error::InvalidTree(format!(
                    "edge `{}` is disconnected from the root",
                    edges[e]
                )));
            }
            // Walking down must reach the root without revisiting an edge.
            let mut cur = e;
            let mut steps = 0;
            while let Some(v) = below[cur] {
                cur = vertices[v].output;
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidTree("the incidence graph has a cycle".into()));
                }
            }
        }
        Ok(Tree { edges, root, vertices, above, below })
    }

    /// The tree with one edge and no vertices.
    pub fn eta() -> Tree {
        Tree::assemble(alloc::vec!["0".into()], 0, Vec::new()).expect("η is a tree")
    }

    /// The n-corolla: root `0`, leaves `1..=n`, one vertex `v`.
    pub fn corolla(n: usize) -> Tree {
        let edges = (0..=n).map(|i| i.to_string()).collect();
        let v = (String::from("v"), 0, (1..=n).collect());
        Tree::assemble(edges, 0, alloc::vec![v]).expect("corollas are trees")
    }

    /// The linear tree `L_n`: edges `n` (root) down to `0` (leaf), with
    /// unary vertex `vi` between edges `i` and `i-1`.
    pub fn linear(n: usize) -> Tree {
        let edges = (0..=n).map(|i| i.to_string()).collect();
        let vertices = (1..=n).map(|i| (format!("v{i}"), i, alloc::vec![i - 1])).collect();
        Tree::assemble(edges, n, vertices).expect("linear trees are trees")
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edges
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e]
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.binary_search_by(|e| e.as_str().cmp(name)).ok()
    }

    pub fn root(&self) -> EdgeId {
        self.root
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.name == name)
    }

    /// The vertex whose output is `e`, if any.
    pub fn above(&self, e: EdgeId) -> Option<VertexId> {
        self.above[e]
    }

    /// The vertex having `e` as an input, if any.
    pub fn below(&self, e: EdgeId) -> Option<VertexId> {
        self.below[e]
    }

    pub fn is_leaf(&self, e: EdgeId) -> bool {
        self.above[e].is_none()
    }

    pub fn leaves(&self) -> Vec<EdgeId> {
        (0..self.edge_count()).filter(|&e| self.is_leaf(e)).collect()
    }

    /// Edges between two vertices.
    pub fn inner_edges(&self) -> Vec<EdgeId> {
        (0..self.edge_count())
            .filter(|&e| self.above[e].is_some() && self.below[e].is_some())
            .collect()
    }

    pub fn is_inner(&self, e: EdgeId) -> bool {
        self.above[e].is_some() && self.below[e].is_some()
    }

    /// A tree is closed when it has no leaves.
    pub fn is_closed(&self) -> bool {
        self.above.iter().all(Option::is_some)
    }

    pub fn is_linear(&self) -> bool {
        self.vertices.iter().all(|v| v.arity() == 1)
    }

    /// Whether `upper` lies on or above `lower`.
    pub fn is_at_or_above(&self, upper: EdgeId, lower: EdgeId) -> bool {
        let mut cur = upper;
        loop {
            if cur == lower {
                return true;
            }
            match self.below[cur] {
                Some(v) => cur = self.vertices[v].output,
                None => return false,
            }
        }
    }

    /// Edges in breadth-first order from the root.
    pub fn edges_from_root(&self) -> Vec<EdgeId> {
        let mut order = alloc::vec![self.root];
        let mut i = 0;
        while i < order.len() {
            if let Some(v) = self.above[order[i]] {
                order.extend_from_slice(&self.vertices[v].inputs);
            }
            i += 1;
        }
        order
    }

    /// Vertices in breadth-first order from the root.
    pub fn vertices_from_root(&self) -> Vec<VertexId> {
        self.edges_from_root().into_iter().filter_map(|e| self.above[e]).collect()
    }

    /// Whether `inputs` is the input set of an operation of the free operad
    /// with output `output`: the edges reachable upward from `output` without
    /// crossing an element of `inputs` must be saturated by vertices, and every
    /// element of `inputs` must be reached exactly once.
    pub fn is_operation(&self, output: EdgeId, inputs: &[EdgeId]) -> bool {
        self.witness(output, inputs).is_some()
    }

    /// The vertices of the subtree realising the operation `inputs → output`.
    /// Empty for the identity operation.
    pub fn witness(&self, output: EdgeId, inputs: &[EdgeId]) -> Option<Vec<VertexId>> {
        let n = self.edge_count();
        if output >= n {
            return None;
        }
        let mut marked = alloc::vec![false; n];
        for &i in inputs {
            if i >= n || marked[i] {
                return None;
            }
            marked[i] = true;
        }
        let mut reached = 0;
        let mut witness = Vec::new();
        let mut stack = alloc::vec![output];
        while let Some(e) = stack.pop() {
            if marked[e] {
                reached += 1;
                continue;
            }
            {
                let v = self.above[e]?;
                witness.push(v);
                stack.extend_from_slice(&self.vertices[v].inputs);
            }
        }
        if reached != inputs.len() {
            return None;
        }
        witness.sort_unstable();
        Some(witness)
    }

    /// Every input set of an operation with output `e`, each sorted.
    pub fn cuts(&self, e: EdgeId) -> Vec<Vec<EdgeId>> {
        let mut out: Vec<Vec<EdgeId>> = alloc::vec![alloc::vec![e]];
        if let Some(v) = self.above[e] {
            let mut partial: Vec<Vec<EdgeId>> = alloc::vec![Vec::new()];
            for &i in &self.vertices[v].inputs {
                let sub = self.cuts(i);
                let mut next = Vec::with_capacity(partial.len() * sub.len());
                for p in &partial {
                    for s in &sub {
                        let mut c = p.clone();
                        c.extend_from_slice(s);
                        next.push(c);
                    }
                }
                partial = next;
            }
            for mut c in partial {
                c.sort_unstable();
                out.push(c);
            }
        }
        out.sort();
        out
    }

    /// Removes the unary vertex `v` and its input edge, attaching whatever
    /// sat above the input to the output. Returns the smaller tree and the
    /// map from old edge ids to new ones, sending the input to the output.
    pub fn collapse_unary(&self, v: VertexId) -> Result<(Tree, Vec<EdgeId>)> {
        let vertex = &self.vertices[v];
        if vertex.arity() != 1 {
            return Err(Error::InvalidTree(format!("vertex `{}` is not unary", vertex.name)));
        }
        let (input, output) = (vertex.inputs[0], vertex.output);
        let mut raw = self.raw_vertices();
        if let Some(u) = self.above[input] {
            raw[u].1 = output;
        }
        raw.remove(v);
        let mut pos = alloc::vec![usize::MAX; self.edge_count()];
        let mut edges = Vec::new();
        for e in (0..self.edge_count()).filter(|&e| e != input) {
            pos[e] = edges.len();
            edges.push(self.edges[e].clone());
        }
        let raw = raw
            .into_iter()
            .map(|(n, o, ins)| (n, pos[o], ins.into_iter().map(|i| pos[i]).collect()))
            .collect();
        // Positions are already in sorted-name order.
        let smaller = Tree::assemble(edges, pos[self.root], raw)?;
        pos[input] = pos[output];
        Ok((smaller, pos))
    }

    /// A fresh vertex name derived from `base`.
    pub(crate) fn fresh_vertex_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.vertex_id(n).is_some())
    }

    pub(crate) fn fresh_edge_name(&self, base: &str) -> String {
        fresh_name(base, |n| self.edge_id(n).is_some())
    }

    /// Vertices as `(name, output position, input positions)` over
    /// `edge_names()`, the form accepted by `assemble`.
    pub(crate) fn raw_vertices(&self) -> Vec<(String, usize, Vec<usize>)> {
        self.vertices
            .iter()
            .map(|v| (v.name.clone(), v.output, v.inputs.clone()))
            .collect()
    }
}

pub(crate) fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let mut name = String::from(base);
    while taken(&name) {
        name.push('\'');
    }
    name
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn example_tree() -> Tree {
        "a[u](b[v](c,d), e[w](), f)".parse().unwrap()
    }

    #[test]
    fn basic_constructors() {
        let eta = Tree::eta();
        assert_eq!((eta.edge_count(), eta.vertex_count()), (1, 0));
        let c0 = Tree::corolla(0);
        assert_eq!((c0.edge_count(), c0.vertex_count()), (1, 1));
        assert!(c0.is_closed());
        let l2 = Tree::linear(2);
        assert_eq!((l2.edge_count(), l2.vertex_count()), (3, 2));
        assert!(l2.vertices().iter().all(|v| v.arity() == 1));
        assert_eq!(l2.edge_name(l2.root()), "2");
        assert!(is_isomorphic(&Tree::linear(1), &Tree::corolla(1)));
    }

    #[test]
    fn leaves_and_root_of_the_example_tree() {
        let t = example_tree();
        let leaves: Vec<&str> = t.leaves().into_iter().map(|e| t.edge_name(e)).collect();
        assert_eq!(leaves, ["c", "d", "f"]);
        let inner: Vec<&str> = t.inner_edges().into_iter().map(|e| t.edge_name(e)).collect();
        assert_eq!(inner, ["b", "e"]);
        assert_eq!(t.edge_name(t.root()), "a");
        assert!(!t.is_closed());
    }

    #[test]
    fn rejects_malformed_trees() {
        let two_roots = Tree::new(["a", "b"], "a", []);
        assert!(matches!(two_roots, Err(Error::InvalidTree(_))));
        let shared_input = Tree::new(
            ["a", "b", "c"],
            "a",
            [VertexSpec::new("u", "a", ["b"]), VertexSpec::new("w", "b", ["b"])],
        );
        assert!(shared_input.is_err());
        let root_as_input = Tree::new(["a", "b"], "a", [VertexSpec::new("u", "b", ["a"])]);
        assert!(root_as_input.is_err());
        let cycle = Tree::new(
            ["r", "x", "y"],
            "r",
            [VertexSpec::new("u", "x", ["y"]), VertexSpec::new("w", "y", ["x"])],
        );
        assert!(cycle.is_err());
        let dup = Tree::new(["a", "a"], "a", []);
        assert!(dup.is_err());
    }

    #[test]
    fn vertex_names_do_not_affect_equality() {
        let a: Tree = "r[x](p,q)".parse().unwrap();
        let b: Tree = "r[y](q,p)".parse().unwrap();
        assert_eq!(a, b);
        let c: Tree = "r[x](p,s)".parse().unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn operations_follow_saturation() {
        let t = example_tree();
        let id = |n| t.edge_id(n).unwrap();
        assert!(t.is_operation(id("a"), &[id("c"), id("d"), id("f")]));
        assert!(t.is_operation(id("a"), &[id("b"), id("e"), id("f")]));
        assert!(t.is_operation(id("e"), &[]));
        assert!(t.is_operation(id("b"), &[id("b")]));
        // b is below c, so they cannot both be inputs.
        assert!(!t.is_operation(id("a"), &[id("b"), id("c"), id("f")]));
        // f is never reached.
        assert!(!t.is_operation(id("a"), &[id("b"), id("e")]));
        assert!(!t.is_operation(id("a"), &[id("c"), id("c"), id("d"), id("f")]));
        assert_eq!(t.witness(id("a"), &[id("c"), id("d"), id("f")]).unwrap().len(), 3);
        let cuts_a = t.cuts(id("a"));
        assert_eq!(cuts_a.len(), 5);
        assert!(cuts_a.contains(&vec![id("c"), id("d"), id("f")]));
    }

    #[test]
    fn at_or_above() {
        let t = example_tree();
        let id = |n| t.edge_id(n).unwrap();
        assert!(t.is_at_or_above(id("c"), id("a")));
        assert!(t.is_at_or_above(id("c"), id("b")));
        assert!(!t.is_at_or_above(id("c"), id("e")));
        assert!(!t.is_at_or_above(id("a"), id("c")));
    }
}
