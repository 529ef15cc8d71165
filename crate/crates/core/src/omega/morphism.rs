use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use itertools::Itertools;

use crate::tree::{EdgeId, Tree, VertexId};
use crate::{Error, Result};

/// An operation of the free operad `Ω(T)`: an output edge, an ordered list
/// of distinct input edges, and the vertices of the subtree between them.
/// The identity operation on `e` has inputs `[e]` and an empty witness.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperadOp {
    pub output: EdgeId,
    pub inputs: Vec<EdgeId>,
    pub witness: Vec<VertexId>,
}

impl OperadOp {
    pub fn is_identity(&self) -> bool {
        self.inputs.len() == 1 && self.inputs[0] == self.output
    }
}

/// Every operation of `Ω(t)`, one per input set and ordering of it.
pub fn operations_of(t: &Tree) -> Vec<OperadOp> {
    let mut ops = Vec::new();
    for d in 0..t.edge_count() {
        for cut in t.cuts(d) {
            let witness = t.witness(d, &cut).expect("cuts are operations");
            for inputs in cut.iter().copied().permutations(cut.len()) {
                ops.push(OperadOp { output: d, inputs, witness: witness.clone() });
            }
        }
    }
    ops
}

/// A morphism `S → T` of Ω, that is a map of operads `Ω(S) → Ω(T)`.
///
/// Such a map is fixed by its action on colours: a vertex `v` of `S` must go
/// to the operation of `Ω(T)` from the images of the inputs of `v` to the
/// image of its output, and there is at most one of those. So only the edge
/// map is stored, and [`Morphism::vertex_image`] recovers the operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: Arc<Tree>,
    target: Arc<Tree>,
    edge_map: Vec<EdgeId>,
}

impl Morphism {
    pub fn new(source: Arc<Tree>, target: Arc<Tree>, edge_map: Vec<EdgeId>) -> Result<Morphism> {
        if edge_map.len() != source.edge_count() || edge_map.iter().any(|&e| e >= target.edge_count()) {
            return Err(Error::InvalidMorphism("edge map has the wrong shape".into()));
        }
        let m = Morphism { source, target, edge_map };
        for (vi, v) in m.source.vertices().iter().enumerate() {
            let inputs: Vec<EdgeId> = v.inputs().iter().map(|&i| m.edge_map[i]).collect();
            if !m.target.is_operation(m.edge_map[v.output()], &inputs) {
                return Err(Error::InvalidMorphism(format!(
                    "vertex `{}` has no image operation",
                    m.source.vertex(vi).name()
                )));
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Arc<Tree>, target: Arc<Tree>, edge_map: Vec<EdgeId>) -> Morphism {
        debug_assert!(Morphism::new(source.clone(), target.clone(), edge_map.clone()).is_ok());
        Morphism { source, target, edge_map }
    }

    /// The map sending each edge of `source` to the edge of `target` with
    /// the same name.
    pub fn inclusion(source: Arc<Tree>, target: Arc<Tree>) -> Result<Morphism> {
        let edge_map = source
            .edge_names()
            .iter()
            .map(|n| {
                target
                    .edge_id(n)
                    .ok_or_else(|| Error::InvalidMorphism(format!("edge `{n}` is missing from the target")))
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(source, target, edge_map)
    }

    pub fn identity(t: Arc<Tree>) -> Morphism {
        let edge_map = (0..t.edge_count()).collect();
        Morphism { source: t.clone(), target: t, edge_map }
    }

    pub fn source(&self) -> &Arc<Tree> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Tree> {
        &self.target
    }

    pub fn edge_map(&self) -> &[EdgeId] {
        &self.edge_map
    }

    pub fn apply(&self, e: EdgeId) -> EdgeId {
        self.edge_map[e]
    }

    /// The operation a source vertex is sent to, with inputs ordered like
    /// the inputs of the vertex.
    pub fn vertex_image(&self, v: VertexId) -> OperadOp {
        let vertex = self.source.vertex(v);
        let output = self.edge_map[vertex.output()];
        let inputs: Vec<EdgeId> = vertex.inputs().iter().map(|&i| self.edge_map[i]).collect();
        let witness = self.target.witness(output, &inputs).expect("morphisms send vertices to operations");
        OperadOp { output, inputs, witness }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism) -> Result<Morphism> {
        compose(self, first)
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target && self.edge_map.iter().enumerate().all(|(i, &e)| i == e)
    }

    pub fn is_root_preserving(&self) -> bool {
        self.edge_map[self.source.root()] == self.target.root()
    }

    /// Monomorphisms of Ω are exactly the maps injective on edges.
    pub fn is_injective(&self) -> bool {
        let mut seen = alloc::vec![false; self.target.edge_count()];
        self.edge_map.iter().all(|&e| !core::mem::replace(&mut seen[e], true))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.source.edge_count() == self.target.edge_count()
            && self.source.vertex_count() == self.target.vertex_count()
    }
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if !Arc::ptr_eq(&f.target, &g.source) && *f.target != *g.source {
        return Err(Error::SourceTargetMismatch);
    }
    let edge_map = f.edge_map.iter().map(|&e| g.edge_map[e]).collect();
    Ok(Morphism { source: f.source.clone(), target: g.target.clone(), edge_map })
}

/// Every morphism `s → t`, sorted by edge map.
pub fn hom(s: &Arc<Tree>, t: &Arc<Tree>) -> Vec<Morphism> {
    let mut out = Vec::new();
    for_each_hom(s, t, |m| out.push(Morphism { source: s.clone(), target: t.clone(), edge_map: m.to_vec() }));
    out
}

/// Number of morphisms `s → t`.
pub fn hom_count(s: &Tree, t: &Tree) -> usize {
    let mut n = 0;
    for_each_hom(s, t, |_| n += 1);
    n
}

/// Calls `visit` with the edge map of every morphism `s → t`, in
/// increasing order of the root image, then of the remaining choices.
pub fn for_each_hom(s: &Tree, t: &Tree, mut visit: impl FnMut(&[EdgeId])) {
    let order = s.vertices_from_root();
    let cuts: Vec<Vec<Vec<EdgeId>>> = (0..t.edge_count()).map(|e| t.cuts(e)).collect();
    let mut map = alloc::vec![0; s.edge_count()];
    for r in 0..t.edge_count() {
        map[s.root()] = r;
        extend(s, &order, &cuts, 0, &mut map, &mut visit);
    }
}

fn extend(
    s: &Tree,
    order: &[VertexId],
    cuts: &[Vec<Vec<EdgeId>>],
    k: usize,
    map: &mut Vec<EdgeId>,
    visit: &mut impl FnMut(&[EdgeId]),
) {
    let Some(&v) = order.get(k) else {
        visit(map);
        return;
    };
    let vertex = s.vertex(v);
    let n = vertex.arity();
    for cut in cuts[map[vertex.output()]].iter().filter(|c| c.len() == n) {
        for perm in cut.iter().copied().permutations(n) {
            for (&i, e) in vertex.inputs().iter().zip(perm) {
                map[i] = e;
            }
            extend(s, order, cuts, k + 1, map, visit);
        }
    }
}
