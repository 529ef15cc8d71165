//! Finite subpresheaves of representables and of tensor products of trees.
//!
//! A [`SubPresheaf`] of an [`Ambient`] is stored by its maximal
//! nondegenerate elements, as [`Cell`]s. An arbitrary element of shape `U`
//! (an edge labelling of `U` by ambient points) belongs to it when the
//! labelling is a morphism from `U` into one of the generating cells; this
//! is the degeneracy-then-face factorisation read off directly, since the
//! image of the element is a face of that cell.

mod category;
mod cell;
mod presheaf;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use category::{category_of_elements, Arrow, SmallCategory};
pub use cell::{maximal, tree_cell, Cell, Point};
pub use presheaf::{
    automorphisms, is_degenerate, is_face_of, is_normal, is_normal_mono, nondegenerate_elements, product, ElementClass,
    Empty, FinitePresheaf, GeneratedPresheaf, Label, Product,
};

use crate::omega::{for_each_hom, Morphism};
use crate::tensor::{TensorAmbient, VertexTag};
use crate::tree::{EdgeId, Tree};
use crate::{Error, Result};

/// The dendroidal set inside which subpresheaves live.
#[derive(Clone, Debug)]
pub struct Ambient(Arc<AmbientData>);

#[derive(Debug)]
enum AmbientData {
    Representable { tree: Arc<Tree>, cell: Cell },
    Tensor(TensorAmbient),
}

#[derive(Clone, Copy, Debug)]
pub enum AmbientKind<'a> {
    Representable(&'a Arc<Tree>),
    Tensor(&'a TensorAmbient),
}

impl Ambient {
    /// The representable on `t`; its points are the edge ids of `t`.
    pub fn representable(t: Arc<Tree>) -> Ambient {
        let cell = tree_cell(&t);
        Ambient(Arc::new(AmbientData::Representable { tree: t, cell }))
    }

    /// `S ⊗ T` as the union of its shuffles; its points are pairs of edges.
    pub fn tensor(s: Arc<Tree>, t: Arc<Tree>) -> Ambient {
        Ambient::from_tensor(TensorAmbient::new(s, t))
    }

    pub fn from_tensor(t: TensorAmbient) -> Ambient {
        Ambient(Arc::new(AmbientData::Tensor(t)))
    }

    pub fn kind(&self) -> AmbientKind<'_> {
        match &*self.0 {
            AmbientData::Representable { tree, .. } => AmbientKind::Representable(tree),
            AmbientData::Tensor(t) => AmbientKind::Tensor(t),
        }
    }

    /// The maximal nondegenerate elements of the ambient.
    pub fn generators(&self) -> &[Cell] {
        match &*self.0 {
            AmbientData::Representable { cell, .. } => core::slice::from_ref(cell),
            AmbientData::Tensor(t) => t.generators(),
        }
    }

    pub fn point_count(&self) -> usize {
        match &*self.0 {
            AmbientData::Representable { tree, .. } => tree.edge_count(),
            AmbientData::Tensor(t) => t.point_count(),
        }
    }

    pub fn point_name(&self, p: Point) -> String {
        match &*self.0 {
            AmbientData::Representable { tree, .. } => String::from(tree.edge_name(p as EdgeId)),
            AmbientData::Tensor(t) => t.point_name(p),
        }
    }

    /// The point with the given name, by search.
    pub fn point(&self, name: &str) -> Option<Point> {
        (0..self.point_count() as Point).find(|&p| self.point_name(p) == name)
    }

    fn vertex_name(&self, c: &Cell, o: usize) -> String {
        let out = c.points()[o];
        match &*self.0 {
            AmbientData::Representable { tree, .. } => {
                let v = tree.above(out as EdgeId).expect("cell outputs carry vertices");
                String::from(tree.vertex(v).name())
            }
            AmbientData::Tensor(t) => {
                let ins: Vec<Point> = c.inputs_above(o).expect("a vertex").iter().map(|&i| c.points()[i]).collect();
                let (a, b) = t.pair(out);
                let (s, tt) = (t.left(), t.right());
                let as_s = s.above(a).filter(|&u| {
                    let mut want: Vec<Point> = s.vertex(u).inputs().iter().map(|&i| t.point(i, b)).collect();
                    want.sort_unstable();
                    want == ins
                });
                let as_t = tt.above(b).filter(|&w| {
                    let mut want: Vec<Point> = tt.vertex(w).inputs().iter().map(|&j| t.point(a, j)).collect();
                    want.sort_unstable();
                    want == ins
                });
                match (as_s, as_t) {
                    (Some(u), _) => crate::tensor::tag_name(s, tt, VertexTag::S { vertex: u, edge: b }),
                    (None, Some(w)) => crate::tensor::tag_name(s, tt, VertexTag::T { edge: a, vertex: w }),
                    (None, None) => format!("{}*", t.point_name(out)),
                }
            }
        }
    }

    /// The cell as a tree with edges named by points.
    pub fn cell_tree(&self, c: &Cell) -> Tree {
        let names: Vec<String> = (0..c.edge_count()).map(|o| self.vertex_name_or_blank(c, o)).collect();
        c.to_tree(|p| self.point_name(p), |p| names[c.index_of(p).expect("own point")].clone())
    }

    fn vertex_name_or_blank(&self, c: &Cell, o: usize) -> String {
        if c.inputs_above(o).is_some() {
            self.vertex_name(c, o)
        } else {
            String::new()
        }
    }

    /// The cell as an element: its tree and the labels of its edges.
    pub fn cell_element(&self, c: &Cell) -> Element {
        let tree = self.cell_tree(c);
        let labels = tree.edge_names().iter().map(|n| self.point(n).expect("named by points")).collect();
        Element { shape: Arc::new(tree), labels }
    }

    /// The image of an element, when it is an element of the ambient.
    pub fn image(&self, shape: &Tree, labels: &[Point]) -> Option<Cell> {
        if !self.generators().iter().any(|g| g.admits(shape, labels)) {
            return None;
        }
        // Collapse unary vertices with equal labels, then read off the tree.
        let mut shape = shape.clone();
        let mut labels = labels.to_vec();
        while let Some(v) = shape
            .vertices()
            .iter()
            .position(|x| x.arity() == 1 && labels[x.output()] == labels[x.inputs()[0]])
        {
            let (smaller, map) = shape.collapse_unary(v).expect("unary");
            let mut next = alloc::vec![0; smaller.edge_count()];
            for (e, &to) in map.iter().enumerate() {
                next[to] = labels[e];
            }
            shape = smaller;
            labels = next;
        }
        Cell::from_tree(&shape, &labels)
    }
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Ambient) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || match (self.kind(), other.kind()) {
                (AmbientKind::Representable(a), AmbientKind::Representable(b)) => a == b,
                (AmbientKind::Tensor(a), AmbientKind::Tensor(b)) => a.left() == b.left() && a.right() == b.right(),
                _ => false,
            }
    }
}

impl Eq for Ambient {}

/// An element of an ambient: a shape and a point for each of its edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Element {
    pub shape: Arc<Tree>,
    pub labels: Vec<Point>,
}

impl Element {
    /// For a representable ambient, the element as a morphism of Ω.
    pub fn as_morphism(&self, ambient: &Ambient) -> Option<Morphism> {
        match ambient.kind() {
            AmbientKind::Representable(t) => Morphism::new(
                self.shape.clone(),
                t.clone(),
                self.labels.iter().map(|&p| p as EdgeId).collect(),
            )
            .ok(),
            AmbientKind::Tensor(_) => None,
        }
    }
}

/// Maps from `shape` into a cell, as labellings by the cell's points.
fn labellings_into(shape: &Tree, c: &Cell, out: &mut BTreeSet<Vec<Point>>) {
    // Zero-padded names keep edge ids in the order of points.
    let t = c.to_tree(|p| format!("{p:010}"), |p| format!("v{p:010}"));
    for_each_hom(shape, &t, |m| {
        out.insert(m.iter().map(|&e| c.points()[e]).collect());
    });
}

/// Every element of the given shape.
pub fn elements_of(ambient: &Ambient, shape: &Arc<Tree>) -> Vec<Element> {
    SubPresheaf::full(ambient)
        .elements(shape)
        .into_iter()
        .map(|labels| Element { shape: shape.clone(), labels })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubPresheaf {
    ambient: Ambient,
    /// Sorted, and no generator is a face of another.
    generators: Vec<Cell>,
}

impl SubPresheaf {
    pub fn full(ambient: &Ambient) -> SubPresheaf {
        SubPresheaf { ambient: ambient.clone(), generators: ambient.generators().to_vec() }
    }

    pub fn empty(ambient: &Ambient) -> SubPresheaf {
        SubPresheaf { ambient: ambient.clone(), generators: Vec::new() }
    }

    /// The subpresheaf generated by some nondegenerate elements of the
    /// ambient.
    pub fn generated(ambient: &Ambient, cells: Vec<Cell>) -> Result<SubPresheaf> {
        for c in &cells {
            if !ambient.generators().iter().any(|g| c.is_face_of(g)) {
                return Err(Error::NotASubobject);
            }
        }
        Ok(SubPresheaf { ambient: ambient.clone(), generators: maximal(cells) })
    }

    /// The image of an element.
    pub fn of_element(ambient: &Ambient, e: &Element) -> Result<SubPresheaf> {
        let c = ambient.image(&e.shape, &e.labels).ok_or(Error::NotASubobject)?;
        Ok(SubPresheaf { ambient: ambient.clone(), generators: alloc::vec![c] })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Cell] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The η-elements.
    pub fn points(&self) -> BTreeSet<Point> {
        self.generators.iter().flat_map(|g| g.points().iter().copied()).collect()
    }

    /// Every nondegenerate element up to isomorphism.
    pub fn cells(&self) -> BTreeSet<Cell> {
        let mut all = BTreeSet::new();
        for g in &self.generators {
            if !all.contains(g) {
                all.extend(g.all_faces());
            }
        }
        all
    }

    pub fn contains_cell(&self, c: &Cell) -> bool {
        self.generators.iter().any(|g| c.is_face_of(g))
    }

    pub fn contains_element(&self, e: &Element) -> bool {
        self.contains(&e.shape, &e.labels)
    }

    pub fn is_subobject_of(&self, other: &SubPresheaf) -> bool {
        self.ambient == other.ambient && self.generators.iter().all(|g| other.contains_cell(g))
    }

    /// The generators as elements.
    pub fn generator_elements(&self) -> Vec<Element> {
        self.generators.iter().map(|g| self.ambient.cell_element(g)).collect()
    }
}

impl FinitePresheaf for SubPresheaf {
    fn label_count(&self) -> usize {
        self.ambient.point_count()
    }

    fn label_name(&self, l: Label) -> String {
        self.ambient.point_name(l)
    }

    fn elements(&self, shape: &Tree) -> Vec<Vec<Label>> {
        let mut out = BTreeSet::new();
        for g in &self.generators {
            labellings_into(shape, g, &mut out);
        }
        out.into_iter().collect()
    }

    fn contains(&self, shape: &Tree, labels: &[Label]) -> bool {
        self.generators.iter().any(|g| g.admits(shape, labels))
    }

    fn shape_bound(&self) -> (usize, usize) {
        let v = self.generators.iter().map(Cell::vertex_count).max().unwrap_or(0);
        // Inner faces merge vertices. The inputs of any operation form a
        // cut, with at most one edge per leaf or nullary vertex.
        let a = self
            .generators
            .iter()
            .map(|g| (0..g.edge_count()).filter(|&e| g.inputs_above(e).is_none_or(|k| k.is_empty())).count())
            .max()
            .unwrap_or(0);
        (v, a)
    }
}

fn tree_ambient(t: &Arc<Tree>) -> Ambient {
    Ambient::representable(t.clone())
}

/// The union of the elementary faces of `t`.
pub fn boundary(t: &Arc<Tree>) -> SubPresheaf {
    let a = tree_ambient(t);
    let faces = a.generators()[0].elementary_faces();
    SubPresheaf { generators: maximal(faces), ambient: a }
}

/// The union of the elementary faces of `t` other than the contraction of
/// the inner edge `e`.
pub fn inner_horn(t: &Arc<Tree>, e: EdgeId) -> Result<SubPresheaf> {
    if !t.is_inner(e) {
        return Err(Error::NotInnerEdge(t.edge_name(e).into()));
    }
    let a = tree_ambient(t);
    let top = &a.generators()[0];
    let missing = top.contract(e).expect("inner");
    let faces = top.elementary_faces().into_iter().filter(|f| *f != missing).collect();
    Ok(SubPresheaf { generators: maximal(faces), ambient: a })
}

/// The corolla of each vertex of `t`, as a cell over the edges of `t`.
pub fn corolla_cells(t: &Tree) -> Vec<Cell> {
    t.vertices()
        .iter()
        .map(|v| {
            let ins = v.inputs().iter().map(|&i| i as Point).collect();
            Cell::new(v.output() as Point, &[(v.output() as Point, ins)]).expect("corollas are cells")
        })
        .collect()
}

/// The union of the corollas of `t`. For `η`, which has no vertices, this
/// is `η` itself by convention.
pub fn segal_core(t: &Arc<Tree>) -> SubPresheaf {
    let a = tree_ambient(t);
    let mut cells = corolla_cells(t);
    if cells.is_empty() {
        cells.push(Cell::eta(t.root() as Point));
    }
    SubPresheaf { generators: maximal(cells), ambient: a }
}

fn same_ambient(xs: &[SubPresheaf]) -> Result<&Ambient> {
    let (first, rest) = xs.split_first().ok_or(Error::EmptyIndexSet)?;
    if rest.iter().any(|x| x.ambient != first.ambient) {
        return Err(Error::AmbientMismatch);
    }
    Ok(&first.ambient)
}

pub fn union(xs: &[SubPresheaf]) -> Result<SubPresheaf> {
    let ambient = same_ambient(xs)?.clone();
    let cells = xs.iter().flat_map(|x| x.generators.iter().cloned()).collect();
    Ok(SubPresheaf { ambient, generators: maximal(cells) })
}

/// Common elements of all of `xs`. Inside each generator of the first, the
/// maximal faces on the shared points are kept when every other subobject
/// contains them, and are otherwise cut down face by face.
pub fn intersection(xs: &[SubPresheaf]) -> Result<SubPresheaf> {
    let ambient = same_ambient(xs)?.clone();
    let mut shared = xs[0].points();
    for x in &xs[1..] {
        let p = x.points();
        shared.retain(|q| p.contains(q));
    }
    let mut gens = Vec::new();
    for g in &xs[0].generators {
        for c in g.maximal_faces_within(|p| shared.contains(&p)) {
            if xs[1..].iter().all(|x| x.contains_cell(&c)) {
                gens.push(c);
                continue;
            }
            let mut part = alloc::vec![c];
            for x in &xs[1..] {
                let mut next = Vec::new();
                for a in &part {
                    for b in &x.generators {
                        next.extend(a.common_faces(b));
                    }
                }
                part = maximal(next);
            }
            gens.extend(part);
        }
    }
    Ok(SubPresheaf { ambient, generators: maximal(gens) })
}

/// Whether `x` is full in `y`: an element of `y` belongs to `x` as soon as
/// all of its η-faces do.
///
/// It is enough to look, inside each generator of `y`, at the maximal faces
/// whose points all lie in `x`.
pub fn is_full(x: &SubPresheaf, y: &SubPresheaf) -> Result<bool> {
    if !x.is_subobject_of(y) {
        return Err(Error::NotASubobject);
    }
    let points = x.points();
    Ok(y.generators
        .iter()
        .all(|g| g.maximal_faces_within(|p| points.contains(&p)).iter().all(|c| x.contains_cell(c))))
}

/// A representing tree and generator, when `x` has a single maximal
/// nondegenerate element. Elements of the ambients are injective on the
/// points of their nondegenerate part, so that element then induces a
/// bijection from the representable.
pub fn is_representable(x: &SubPresheaf) -> Option<(Tree, Element)> {
    match x.generators.as_slice() {
        [g] => {
            let e = x.ambient.cell_element(g);
            Some(((*e.shape).clone(), e))
        }
        _ => None,
    }
}

/// Representability by counting: takes a largest nondegenerate element
/// `x₀ : U → x` and checks that precomposition with `x₀` is a bijection from
/// maps `V → U` to elements of `x` of shape `V`, for every shape `V` with at
/// most as many vertices as `U` and vertices of arity below the number of
/// edges of `U`.
pub fn representable_by_counting(x: &SubPresheaf) -> Option<(Tree, Element)> {
    let top = x.generators.iter().max_by_key(|g| (g.vertex_count(), g.edge_count()))?;
    let e = x.ambient.cell_element(top);
    let u = &e.shape;
    let arity = u.edge_count().saturating_sub(1).max(1);
    for v in crate::tree::enumerate_trees(u.vertex_count(), arity) {
        let mut via_yoneda = BTreeSet::new();
        let mut count = 0usize;
        for_each_hom(&v, u, |m| {
            count += 1;
            via_yoneda.insert(m.iter().map(|&i| e.labels[i]).collect::<Vec<Point>>());
        });
        let actual: BTreeSet<Vec<Point>> = x.elements(&v).into_iter().collect();
        if via_yoneda.len() != count || via_yoneda != actual {
            return None;
        }
    }
    Some(((**u).clone(), e))
}

/// Every subobject of the representable on `t`, as a down-closed set of
/// faces. Refuses face posets with more than 24 elements.
pub fn sieves(t: &Arc<Tree>) -> Result<Vec<SubPresheaf>> {
    let a = tree_ambient(t);
    let mut faces: Vec<Cell> = a.generators()[0].all_faces().into_iter().collect();
    if faces.len() > 24 {
        return Err(Error::TooLarge { what: "face poset", limit: 24 });
    }
    faces.sort_by_key(|c| (c.vertex_count() + c.edge_count(), c.clone()));
    let below: Vec<Vec<usize>> = faces
        .iter()
        .map(|c| c.elementary_faces().iter().map(|f| faces.iter().position(|x| x == f).expect("closed")).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = alloc::vec![false; faces.len()];
    fn go(k: usize, below: &[Vec<usize>], chosen: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if k == below.len() {
            out.push(chosen.clone());
            return;
        }
        go(k + 1, below, chosen, out);
        if below[k].iter().all(|&f| chosen[f]) {
            chosen[k] = true;
            go(k + 1, below, chosen, out);
            chosen[k] = false;
        }
    }
    go(0, &below, &mut chosen, &mut out);
    Ok(out
        .into_iter()
        .map(|set| {
            let cells = faces.iter().zip(&set).filter(|(_, &c)| c).map(|(f, _)| f.clone()).collect();
            SubPresheaf { ambient: a.clone(), generators: maximal(cells) }
        })
        .collect())
}
