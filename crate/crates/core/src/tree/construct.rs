//! Closure and décalage of trees.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{EdgeId, Tree, VertexId};
use crate::{Error, Result};

/// The closure of a tree: a nullary vertex named `{leaf}.cap` on top of
/// every leaf. Edges are untouched, so edge ids of the original tree are
/// edge ids of the closure and the inclusion is the identity on edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub tree: Tree,
    /// The capping vertices, one per leaf of the original tree.
    pub caps: Vec<VertexId>,
}

pub fn closure(t: &Tree) -> Closure {
    let mut raw = t.raw_vertices();
    let mut names = Vec::new();
    for leaf in t.leaves() {
        let name = fresh_among(&raw, &format!("{}.cap", t.edge_name(leaf)));
        names.push(name.clone());
        raw.push((name, leaf, Vec::new()));
    }
    let tree = Tree::assemble(t.edge_names().to_vec(), t.root(), raw).expect("capping leaves keeps a tree");
    let caps = names.iter().map(|n| tree.vertex_id(n).expect("cap exists")).collect();
    Closure { tree, caps }
}

fn fresh_among(raw: &[(String, usize, Vec<usize>)], base: &str) -> String {
    super::fresh_name(base, |n| raw.iter().any(|v| v.0 == n))
}

/// The décalage `D(T)`: a new root edge `{root}.dec` below the old root,
/// joined to it by a new unary vertex `{root}.dec.v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decalage {
    pub tree: Tree,
    /// Edge map of the inclusion `u_T : T → D(T)`.
    pub inclusion: Vec<EdgeId>,
    /// The new root edge, picked out by `a_T : η → D(T)`.
    pub new_root: EdgeId,
    pub new_vertex: VertexId,
}

/// Décalage of a closed tree.
pub fn decalage(t: &Tree) -> Result<Decalage> {
    if let Some(&leaf) = t.leaves().first() {
        return Err(Error::NotClosed(t.edge_name(leaf).into()));
    }
    Ok(decalage_any(t))
}

/// The same construction without the closedness check. `D` is only a
/// functor on closed trees, so this is kept for searches that need the
/// object for arbitrary trees.
pub(crate) fn decalage_any(t: &Tree) -> Decalage {
    let root_name = t.edge_name(t.root());
    let new_edge = t.fresh_edge_name(&format!("{root_name}.dec"));
    let mut edges = t.edge_names().to_vec();
    edges.push(new_edge.clone());
    let mut raw = t.raw_vertices();
    let vname = fresh_among(&raw, &format!("{new_edge}.v"));
    raw.push((vname.clone(), edges.len() - 1, alloc::vec![t.root()]));
    let tree = Tree::assemble(edges, t.edge_count(), raw).expect("grafting below the root keeps a tree");
    let inclusion = t.edge_names().iter().map(|n| tree.edge_id(n).expect("edge kept")).collect();
    let new_root = tree.root();
    let new_vertex = tree.vertex_id(&vname).expect("new vertex exists");
    Decalage { tree, inclusion, new_root, new_vertex }
}
