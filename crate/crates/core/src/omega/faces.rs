//! Elementary faces and degeneracies.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::Morphism;
use crate::tree::{EdgeId, Tree, VertexId};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceKind {
    /// Contraction of an inner edge of the target.
    Inner(EdgeId),
    /// Removal of an outer vertex of the target.
    Outer(VertexId),
    /// An edge of a one-vertex target, seen as a map from η.
    Corolla(EdgeId),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub kind: FaceKind,
    pub map: Morphism,
}

impl Face {
    pub fn is_inner(&self) -> bool {
        matches!(self.kind, FaceKind::Inner(_))
    }
}

fn eta_named(name: &str) -> Tree {
    Tree::assemble(alloc::vec![String::from(name)], 0, Vec::new()).expect("η is a tree")
}

/// The source of the inner face at `e`: `e` is removed and the vertices
/// below and above it merge, keeping the name of the lower one.
pub fn contract_edge(t: &Tree, e: EdgeId) -> Result<Tree> {
    if !t.is_inner(e) {
        return Err(Error::NotInnerEdge(t.edge_name(e).into()));
    }
    let lower = t.below(e).expect("inner");
    let upper = t.above(e).expect("inner");
    let mut raw = t.raw_vertices();
    let upper_inputs = raw[upper].2.clone();
    raw[lower].2.retain(|&i| i != e);
    raw[lower].2.extend(upper_inputs);
    raw.remove(upper);
    Ok(drop_edges(t, &[e], raw, t.root()))
}

/// Rebuilds `t` without the edges in `gone`, given vertices over the old
/// edge positions.
fn drop_edges(t: &Tree, gone: &[EdgeId], raw: Vec<(String, usize, Vec<usize>)>, root: EdgeId) -> Tree {
    let mut pos = alloc::vec![usize::MAX; t.edge_count()];
    let mut edges = Vec::new();
    for e in 0..t.edge_count() {
        if !gone.contains(&e) {
            pos[e] = edges.len();
            edges.push(String::from(t.edge_name(e)));
        }
    }
    let raw = raw
        .into_iter()
        .map(|(n, o, ins)| (n, pos[o], ins.into_iter().map(|i| pos[i]).collect()))
        .collect();
    Tree::assemble(edges, pos[root], raw).expect("faces of trees are trees")
}

/// Whether `v` can be chopped off: the tree has at least two vertices and
/// exactly one inner edge is adjacent to `v`.
pub fn is_outer_vertex(t: &Tree, v: VertexId) -> bool {
    let vertex = t.vertex(v);
    let adjacent = core::iter::once(vertex.output())
        .chain(vertex.inputs().iter().copied())
        .filter(|&e| t.is_inner(e))
        .count();
    t.vertex_count() >= 2 && adjacent == 1
}

/// The source of the outer face at `v`.
pub fn chop_vertex(t: &Tree, v: VertexId) -> Result<Tree> {
    if !is_outer_vertex(t, v) {
        return Err(Error::InvalidMorphism(format!("`{}` is not an outer vertex", t.vertex(v).name())));
    }
    let vertex = t.vertex(v);
    let mut raw = t.raw_vertices();
    raw.remove(v);
    if t.is_inner(vertex.output()) {
        // A top vertex: its inputs are leaves and go with it.
        Ok(drop_edges(t, vertex.inputs(), raw, t.root()))
    } else {
        // The root vertex: keep only the part above its inner input.
        let keep = vertex.inputs().iter().copied().find(|&i| t.is_inner(i)).expect("one inner input");
        let mut gone: Vec<EdgeId> = vertex.inputs().iter().copied().filter(|&i| i != keep).collect();
        gone.push(vertex.output());
        Ok(drop_edges(t, &gone, raw, keep))
    }
}

pub fn inner_face(t: &Arc<Tree>, e: EdgeId) -> Result<Face> {
    let source = Arc::new(contract_edge(t, e)?);
    let map = Morphism::inclusion(source, t.clone())?;
    Ok(Face { kind: FaceKind::Inner(e), map })
}

pub fn outer_face(t: &Arc<Tree>, v: VertexId) -> Result<Face> {
    let source = Arc::new(chop_vertex(t, v)?);
    let map = Morphism::inclusion(source, t.clone())?;
    Ok(Face { kind: FaceKind::Outer(v), map })
}

/// Inner faces, then outer faces, then the edges of a corolla.
pub fn elementary_faces(t: &Arc<Tree>) -> Vec<Face> {
    let mut faces = Vec::new();
    for e in t.inner_edges() {
        faces.push(inner_face(t, e).expect("inner edge"));
    }
    for v in 0..t.vertex_count() {
        if is_outer_vertex(t, v) {
            faces.push(outer_face(t, v).expect("outer vertex"));
        }
    }
    if t.vertex_count() == 1 {
        for e in 0..t.edge_count() {
            let source = Arc::new(eta_named(t.edge_name(e)));
            let map = Morphism::inclusion(source, t.clone()).expect("edges are η-elements");
            faces.push(Face { kind: FaceKind::Corolla(e), map });
        }
    }
    faces
}

/// The degeneracy `σ_e : S → t`, where `S` has a unary vertex `{e}.id`
/// inserted in `e`, with `e` below it and a new edge `{e}.up` above it.
pub fn degeneracy(t: &Arc<Tree>, e: EdgeId) -> Morphism {
    let name = t.edge_name(e);
    let up = t.fresh_edge_name(&format!("{name}.up"));
    let mut edges = t.edge_names().to_vec();
    edges.push(up);
    let new = edges.len() - 1;
    let mut raw = t.raw_vertices();
    if let Some(v) = t.above(e) {
        raw[v].1 = new;
    }
    let vname = t.fresh_vertex_name(&format!("{name}.id"));
    raw.push((vname, e, alloc::vec![new]));
    let source = Arc::new(Tree::assemble(edges, t.root(), raw).expect("inserting a unary vertex keeps a tree"));
    let edge_map = source
        .edge_names()
        .iter()
        .map(|n| t.edge_id(n).unwrap_or(e))
        .collect();
    Morphism::new_unchecked(source, t.clone(), edge_map)
}

pub fn elementary_degeneracies(t: &Arc<Tree>) -> Vec<Morphism> {
    (0..t.edge_count()).map(|e| degeneracy(t, e)).collect()
}
