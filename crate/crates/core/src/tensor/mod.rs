//! Tensor products of trees as unions of shuffles, the shuffles of two
//! simplices, and the cylinder on a tree.

mod shuffle;
mod simplex;

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use shuffle::{pair_name, pair_point, point_pair, shuffles, tag_name, ShuffleTree, TensorAmbient, VertexTag};
pub use simplex::{binomial, simplex_shuffle_intersection, simplex_shuffles, ChainIntersection, SimplexShuffle};

use crate::dendro::{Ambient, AmbientKind, Cell, Element, Point, SubPresheaf};
use crate::tree::{EdgeId, Tree};
use crate::{Error, Result};

pub fn tensor_ambient(s: &Arc<Tree>, t: &Arc<Tree>) -> Ambient {
    Ambient::tensor(s.clone(), t.clone())
}

/// `F_σ`, the image of a shuffle in its ambient.
pub fn shuffle_subobject(ambient: &Ambient, sigma: &ShuffleTree) -> Result<SubPresheaf> {
    SubPresheaf::generated(ambient, alloc::vec![sigma.cell().clone()])
}

/// For linear factors with edges named by integers, the lattice path of a
/// shuffle, read from the top pair `(0, 0)` down to the root.
pub fn linear_shuffle_path(s: &Tree, t: &Tree, sigma: &ShuffleTree) -> Option<SimplexShuffle> {
    let num = |name: &str| name.parse::<usize>().ok();
    let mut points = sigma
        .labels()
        .iter()
        .map(|&(a, b)| Some((num(s.edge_name(a))?, num(t.edge_name(b))?)))
        .collect::<Option<Vec<_>>>()?;
    points.sort_unstable();
    SimplexShuffle::from_points(&points)
}

/// Contractions of inner edges leading from `from` down to `to`, when `to`
/// is an iterated inner face of `from`.
///
/// The edges to contract are forced (those of `from` missing from `to`),
/// contracting inner edges keeps the others inner, and contractions
/// commute, so the path is any ordering of them.
pub fn inner_face_path(from: &Cell, to: &Cell) -> Option<Vec<Point>> {
    if !to.points().iter().all(|&p| from.contains_point(p)) {
        return None;
    }
    let path: Vec<Point> = from.points().iter().copied().filter(|&p| !to.contains_point(p)).collect();
    (from.contract_all(&path)? == *to).then_some(path)
}

/// A set of points `Q` obtained by intersecting the point sets of some of
/// the given cells, with every index `j` whose cell contains `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionClass {
    pub points: Vec<Point>,
    pub containing: Vec<usize>,
}

/// The distinct nonempty intersections of point sets of nonempty subfamilies
/// of `cells`. For a family `J` with intersection `Q`, `J` lies inside the
/// `containing` set of the class of `Q`. Points must be below 128.
///
/// When the subobjects generated by the cells are full, a subfamily's
/// intersection only depends on `Q`, so one representative per class
/// covers every subfamily.
pub fn intersection_classes(cells: &[Cell]) -> Result<Vec<IntersectionClass>> {
    let mut sets = Vec::with_capacity(cells.len());
    for c in cells {
        let mut m = 0u128;
        for &p in c.points() {
            if p >= 128 {
                return Err(Error::TooLarge { what: "points for intersection classes", limit: 128 });
            }
            m |= 1 << p;
        }
        sets.push(m);
    }
    let mut classes: BTreeSet<u128> = BTreeSet::new();
    for &p in &sets {
        let met: Vec<u128> = classes.iter().map(|&c| c & p).filter(|&c| c != 0).collect();
        classes.extend(met);
        classes.insert(p);
    }
    Ok(classes
        .into_iter()
        .map(|q| IntersectionClass {
            points: (0..128).filter(|&i| q & (1 << i) != 0).collect(),
            containing: (0..sets.len()).filter(|&j| sets[j] & q == q).collect(),
        })
        .collect())
}

/// The maps `X ⨿ X → Δ_1 ⊗ X → X` on the elements of a tree `X`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    x: Arc<Tree>,
    base: Ambient,
    ambient: Ambient,
}

/// The cylinder on a tree, with `Δ_1` the linear tree with leaf `0` and
/// root `1`.
pub fn cylinder_maps(x: &Arc<Tree>) -> Cylinder {
    Cylinder {
        x: x.clone(),
        base: Ambient::representable(x.clone()),
        ambient: Ambient::tensor(Arc::new(Tree::linear(1)), x.clone()),
    }
}

impl Cylinder {
    pub fn tree(&self) -> &Arc<Tree> {
        &self.x
    }

    /// The representable on `X`.
    pub fn base(&self) -> &Ambient {
        &self.base
    }

    /// `Δ_1 ⊗ X`.
    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    /// `∂^end` on an element of `X`, for `end` 0 or 1.
    pub fn inclusion(&self, end: EdgeId, e: &Element) -> Element {
        let AmbientKind::Tensor(t) = self.ambient.kind() else { unreachable!("a tensor ambient") };
        Element { shape: e.shape.clone(), labels: e.labels.iter().map(|&p| t.point(end, p as EdgeId)).collect() }
    }

    /// `σ`, projecting the labels to `X`.
    pub fn projection(&self, e: &Element) -> Element {
        let AmbientKind::Tensor(t) = self.ambient.kind() else { unreachable!("a tensor ambient") };
        Element { shape: e.shape.clone(), labels: e.labels.iter().map(|&p| t.pair(p).1 as Point).collect() }
    }
}
