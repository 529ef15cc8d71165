//! Finite dendroidal sets given by labelled elements.
//!
//! Every presheaf handled here has its elements of shape `U` determined by
//! a labelling of the edges of `U` (the η-faces of the element), and acts
//! by precomposition on labellings. This covers subobjects of
//! representables and of tensor products, quotients presented by
//! non-injective labellings, and finite products of these.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::omega::{for_each_hom, hom};
use crate::tree::{enumerate_trees, EdgeId, Tree};

pub type Label = u32;

pub trait FinitePresheaf {
    /// Labels are `0..label_count()`.
    fn label_count(&self) -> usize;

    fn label_name(&self, l: Label) -> String;

    /// All elements of the given shape, sorted.
    fn elements(&self, shape: &Tree) -> Vec<Vec<Label>>;

    fn contains(&self, shape: &Tree, labels: &[Label]) -> bool;

    /// `(vertices, arity)` bounding the shapes of nondegenerate elements,
    /// faces included.
    fn shape_bound(&self) -> (usize, usize);
}

/// Whether the element factors through a degeneracy: some unary vertex has
/// the same label on both sides and the labelling with that vertex
/// collapsed is still an element.
pub fn is_degenerate<P: FinitePresheaf + ?Sized>(p: &P, shape: &Tree, labels: &[Label]) -> bool {
    shape.vertices().iter().enumerate().any(|(v, vertex)| {
        vertex.arity() == 1 && labels[vertex.output()] == labels[vertex.inputs()[0]] && {
            let (smaller, map) = shape.collapse_unary(v).expect("unary");
            let mut collapsed = alloc::vec![0; smaller.edge_count()];
            for (e, &to) in map.iter().enumerate() {
                collapsed[to] = labels[e];
            }
            p.contains(&smaller, &collapsed)
        }
    })
}

/// Automorphisms of a tree, as edge maps.
pub fn automorphisms(t: &Tree) -> Vec<Vec<EdgeId>> {
    let mut out = Vec::new();
    for_each_hom(t, t, |m| {
        let mut seen = alloc::vec![false; m.len()];
        if m.iter().all(|&e| !core::mem::replace(&mut seen[e], true)) {
            out.push(m.to_vec());
        }
    });
    out
}

/// A nondegenerate element, with the labelling chosen least among those of
/// its isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ElementClass {
    pub shape: Arc<Tree>,
    pub labels: Vec<Label>,
}

fn canonical_labels(labels: &[Label], autos: &[Vec<EdgeId>]) -> Vec<Label> {
    autos
        .iter()
        .map(|a| a.iter().map(|&e| labels[e]).collect::<Vec<Label>>())
        .min()
        .expect("the identity is an automorphism")
}

/// One representative per isomorphism class of nondegenerate elements.
pub fn nondegenerate_elements<P: FinitePresheaf + ?Sized>(p: &P) -> Vec<ElementClass> {
    let (v, a) = p.shape_bound();
    let mut out = BTreeSet::new();
    for shape in enumerate_trees(v, a) {
        let autos = automorphisms(&shape);
        let shape = Arc::new(shape);
        for labels in p.elements(&shape) {
            if !is_degenerate(p, &shape, &labels) {
                out.insert(ElementClass { shape: shape.clone(), labels: canonical_labels(&labels, &autos) });
            }
        }
    }
    out.into_iter().collect()
}

/// Whether `x` is a face of `y`: some monomorphism into the shape of `y`
/// pulls `y` back to `x`.
pub fn is_face_of(x: &ElementClass, y: &ElementClass) -> bool {
    if x.shape.edge_count() > y.shape.edge_count() {
        return false;
    }
    let mut found = false;
    for_each_hom(&x.shape, &y.shape, |m| {
        if !found {
            let mut seen = alloc::vec![false; y.shape.edge_count()];
            let injective = m.iter().all(|&e| !core::mem::replace(&mut seen[e], true));
            found = injective && m.iter().zip(&x.labels).all(|(&e, &l)| y.labels[e] == l);
        }
    });
    found
}

/// Whether automorphisms of shapes act freely on the nondegenerate
/// elements of `y` that are not in `x`.
pub fn is_normal_mono<X, Y>(x: &X, y: &Y) -> bool
where
    X: FinitePresheaf + ?Sized,
    Y: FinitePresheaf + ?Sized,
{
    let (v, a) = y.shape_bound();
    enumerate_trees(v, a).iter().all(|shape| {
        let autos: Vec<Vec<EdgeId>> =
            automorphisms(shape).into_iter().filter(|m| m.iter().enumerate().any(|(i, &e)| i != e)).collect();
        y.elements(shape).iter().all(|labels| {
            x.contains(shape, labels)
                || is_degenerate(y, shape, labels)
                || !autos.iter().any(|a| a.iter().enumerate().all(|(i, &e)| labels[e] == labels[i]))
        })
    })
}

pub fn is_normal<P: FinitePresheaf + ?Sized>(p: &P) -> bool {
    is_normal_mono(&Empty, p)
}

/// The empty presheaf.
#[derive(Clone, Copy, Debug, Default)]
pub struct Empty;

impl FinitePresheaf for Empty {
    fn label_count(&self) -> usize {
        0
    }

    fn label_name(&self, _: Label) -> String {
        unreachable!("the empty presheaf has no labels")
    }

    fn elements(&self, _: &Tree) -> Vec<Vec<Label>> {
        Vec::new()
    }

    fn contains(&self, _: &Tree, _: &[Label]) -> bool {
        false
    }

    fn shape_bound(&self) -> (usize, usize) {
        (0, 0)
    }
}

/// The presheaf generated by labelled trees: its elements of shape `U` are
/// the labellings `ℓ ∘ f` for a generator `(G, ℓ)` and a map `f : U → G`.
/// Labels need not be injective, so this presents quotients.
#[derive(Clone, Debug)]
pub struct GeneratedPresheaf {
    generators: Vec<(Arc<Tree>, Vec<Label>)>,
    names: Vec<String>,
}

impl GeneratedPresheaf {
    /// Labels used by the generators must be below `names.len()`.
    pub fn new(generators: Vec<(Arc<Tree>, Vec<Label>)>, names: Vec<String>) -> GeneratedPresheaf {
        for (g, l) in &generators {
            assert_eq!(g.edge_count(), l.len(), "one label per edge");
            assert!(l.iter().all(|&x| (x as usize) < names.len()), "labels are named");
        }
        GeneratedPresheaf { generators, names }
    }

    /// The quotient of a corolla `C_2` identifying its two leaves, so that
    /// the swap fixes its top element.
    pub fn corolla_mod_swap() -> GeneratedPresheaf {
        let c2 = Arc::new(Tree::corolla(2));
        let labels = (0..3).map(|e| if e == c2.root() { 0 } else { 1 }).collect();
        GeneratedPresheaf::new(alloc::vec![(c2, labels)], alloc::vec!["root".into(), "leaf".into()])
    }
}

impl FinitePresheaf for GeneratedPresheaf {
    fn label_count(&self) -> usize {
        self.names.len()
    }

    fn label_name(&self, l: Label) -> String {
        self.names[l as usize].clone()
    }

    fn elements(&self, shape: &Tree) -> Vec<Vec<Label>> {
        let mut out = BTreeSet::new();
        for (g, l) in &self.generators {
            for_each_hom(shape, g, |m| {
                out.insert(m.iter().map(|&e| l[e]).collect::<Vec<_>>());
            });
        }
        out.into_iter().collect()
    }

    fn contains(&self, shape: &Tree, labels: &[Label]) -> bool {
        let mut found = false;
        for (g, l) in &self.generators {
            for_each_hom(shape, g, |m| found |= m.iter().zip(labels).all(|(&e, &x)| l[e] == x));
            if found {
                return true;
            }
        }
        false
    }

    fn shape_bound(&self) -> (usize, usize) {
        let v = self.generators.iter().map(|(g, _)| g.vertex_count()).max().unwrap_or(0);
        let tips = |g: &Tree| (0..g.edge_count()).filter(|&e| g.above(e).is_none_or(|v| g.vertex(v).arity() == 0)).count();
        let a = self.generators.iter().map(|(g, _)| tips(g)).max().unwrap_or(0);
        (v, a)
    }
}

/// `X × Y`, with labels the pairs `x * |Y| + y`.
#[derive(Clone, Debug)]
pub struct Product<A, B> {
    left: A,
    right: B,
}

pub fn product<A: FinitePresheaf, B: FinitePresheaf>(left: A, right: B) -> Product<A, B> {
    Product { left, right }
}

impl<A: FinitePresheaf, B: FinitePresheaf> Product<A, B> {
    pub fn left(&self) -> &A {
        &self.left
    }

    pub fn right(&self) -> &B {
        &self.right
    }

    pub fn pair(&self, a: Label, b: Label) -> Label {
        (a as usize * self.right.label_count() + b as usize) as Label
    }

    pub fn split(&self, l: Label) -> (Label, Label) {
        let n = self.right.label_count();
        ((l as usize / n) as Label, (l as usize % n) as Label)
    }
}

impl<A: FinitePresheaf, B: FinitePresheaf> FinitePresheaf for Product<A, B> {
    fn label_count(&self) -> usize {
        self.left.label_count() * self.right.label_count()
    }

    fn label_name(&self, l: Label) -> String {
        let (a, b) = self.split(l);
        format!("({}, {})", self.left.label_name(a), self.right.label_name(b))
    }

    fn elements(&self, shape: &Tree) -> Vec<Vec<Label>> {
        let xs = self.left.elements(shape);
        let ys = self.right.elements(shape);
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for x in &xs {
            for y in &ys {
                out.push(x.iter().zip(y).map(|(&a, &b)| self.pair(a, b)).collect());
            }
        }
        out.sort();
        out
    }

    fn contains(&self, shape: &Tree, labels: &[Label]) -> bool {
        let (xs, ys): (Vec<Label>, Vec<Label>) = labels.iter().map(|&l| self.split(l)).unzip();
        self.left.contains(shape, &xs) && self.right.contains(shape, &ys)
    }

    /// A nondegenerate pair is degenerate in each factor only along
    /// disjoint sets of unary vertices, so its shape has at most the sum of
    /// the factors' vertex bounds.
    fn shape_bound(&self) -> (usize, usize) {
        let (v1, a1) = self.left.shape_bound();
        let (v2, a2) = self.right.shape_bound();
        (v1 + v2, a1.max(a2).max(1))
    }
}

/// Elements of `p` of every shape in `shapes`, keyed by shape index.
pub(crate) fn elements_by_shape<P: FinitePresheaf + ?Sized>(
    p: &P,
    shapes: &[Arc<Tree>],
) -> BTreeMap<(usize, Vec<Label>), usize> {
    let mut index = BTreeMap::new();
    for (i, s) in shapes.iter().enumerate() {
        for labels in p.elements(s) {
            let n = index.len();
            index.insert((i, labels), n);
        }
    }
    index
}

/// The maps between two shapes, as edge maps.
pub(crate) fn hom_maps(s: &Arc<Tree>, t: &Arc<Tree>) -> Vec<Vec<EdgeId>> {
    hom(s, t).into_iter().map(|m| m.edge_map().to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_times_corolla() {
        let eta = GeneratedPresheaf::new(alloc::vec![(Arc::new(Tree::eta()), alloc::vec![0])], alloc::vec!["*".into()]);
        let c2 = Arc::new(Tree::corolla(2));
        let c2p = GeneratedPresheaf::new(alloc::vec![(c2, alloc::vec![0, 1, 2])], (0..3).map(|i| format!("{i}")).collect());
        let p = product(eta, c2p);
        assert_eq!(p.elements(&Tree::eta()).len(), 3);
        let nd = nondegenerate_elements(&p);
        assert_eq!(nd.len(), 3);
        assert!(nd.iter().all(|c| c.shape.edge_count() == 1));
        assert!(is_normal(&p));
    }

    #[test]
    fn swap_quotient_is_not_normal() {
        let q = GeneratedPresheaf::corolla_mod_swap();
        assert!(!is_normal(&q));
        assert!(is_normal_mono(&q, &q));
        let nd = nondegenerate_elements(&q);
        // The root, the identified leaf, and the corolla.
        assert_eq!(nd.len(), 3);
    }

    #[test]
    fn faces_between_classes() {
        let q = GeneratedPresheaf::corolla_mod_swap();
        let nd = nondegenerate_elements(&q);
        let top = nd.iter().find(|c| c.shape.vertex_count() == 1).unwrap();
        for c in &nd {
            assert!(is_face_of(c, top));
        }
    }

    #[test]
    fn degeneracy_detection() {
        let l1 = Tree::linear(1);
        let eta = GeneratedPresheaf::new(alloc::vec![(Arc::new(Tree::eta()), alloc::vec![0])], alloc::vec!["*".into()]);
        assert!(is_degenerate(&eta, &l1, &[0, 0]));
        assert_eq!(automorphisms(&Tree::corolla(3)).len(), 6);
    }
}
