//! Face posets of nondegenerate elements.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::dendro::{is_face_of, nondegenerate_elements, Cell, FinitePresheaf, SubPresheaf};

/// A finite poset, stored as the strict down-set of every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    names: Vec<String>,
    /// Sorted indices strictly below each node.
    below: Vec<Vec<usize>>,
}

impl FacePoset {
    /// The poset on `names` with `leq(a, b)` the order. The relation is
    /// taken as given; see [`FacePoset::is_partial_order`].
    pub fn new(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> FacePoset {
        let n = names.len();
        let below = (0..n).map(|b| (0..n).filter(|&a| a != b && leq(a, b)).collect()).collect();
        FacePoset { names, below }
    }

    /// The cells ordered by the face relation, using the faces of each
    /// cell.
    pub fn of_cells(cells: &[Cell], name: impl Fn(&Cell) -> String) -> FacePoset {
        let index: BTreeMap<&Cell, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let below = cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut b: Vec<usize> = c.all_faces().iter().filter_map(|f| index.get(f).copied()).filter(|&j| j != i).collect();
                b.sort_unstable();
                b
            })
            .collect();
        FacePoset { names: cells.iter().map(name).collect(), below }
    }

    /// The nondegenerate elements of a subpresheaf, named by their labelled
    /// shapes.
    pub fn of_subpresheaf(x: &SubPresheaf) -> FacePoset {
        let cells: Vec<Cell> = x.cells().into_iter().collect();
        FacePoset::of_cells(&cells, |c| x.ambient().cell_tree(c).to_string())
    }

    /// The nondegenerate elements of a finite presheaf up to isomorphism,
    /// ordered by factoring through monomorphisms.
    pub fn of_presheaf<P: FinitePresheaf + ?Sized>(p: &P) -> FacePoset {
        let classes = nondegenerate_elements(p);
        let names = classes
            .iter()
            .map(|c| {
                let labels: Vec<String> = c.labels.iter().map(|&l| p.label_name(l)).collect();
                alloc::format!("{} : {}", c.shape, labels.join(" "))
            })
            .collect();
        FacePoset::new(names, |a, b| is_face_of(&classes[a], &classes[b]))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Strictly below.
    pub fn below(&self, b: usize) -> &[usize] {
        &self.below[b]
    }

    pub fn is_below(&self, a: usize, b: usize) -> bool {
        self.below[b].binary_search(&a).is_ok()
    }

    /// Irreflexive, transitive and antisymmetric strict order.
    pub fn is_partial_order(&self) -> bool {
        (0..self.len()).all(|b| {
            self.below[b].iter().all(|&a| a != b && !self.is_below(b, a) && self.below[a].iter().all(|&z| self.is_below(z, b)))
        })
    }

    /// A node above every other node.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&b| self.below[b].len() + 1 == self.len())
    }

    /// Pairs `(a, b)` with `b` covering `a`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            for &a in &self.below[b] {
                if !self.below[b].iter().any(|&m| self.is_below(a, m)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Components of the comparability graph.
    pub fn components(&self) -> usize {
        let mut comp: Vec<usize> = (0..self.len()).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for b in 0..self.len() {
            for &a in &self.below[b] {
                let (x, y) = (find(&mut comp, a), find(&mut comp, b));
                comp[x] = y;
            }
        }
        (0..self.len()).filter(|&x| find(&mut comp, x) == x).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendro::{boundary, Ambient};
    use crate::tree::Tree;
    use alloc::sync::Arc;

    #[test]
    fn representable_posets() {
        let eta = FacePoset::of_subpresheaf(&SubPresheaf::full(&Ambient::representable(Arc::new(Tree::eta()))));
        assert_eq!(eta.len(), 1);
        let l2 = FacePoset::of_subpresheaf(&SubPresheaf::full(&Ambient::representable(Arc::new(Tree::linear(2)))));
        assert_eq!(l2.len(), 7);
        assert!(l2.is_partial_order());
        assert!(l2.top().is_some());
        // Faces of a triangle: 3 vertices below 3 edges below the triangle.
        assert_eq!(l2.covers().len(), 6 + 3);
    }

    #[test]
    fn boundary_of_a_corolla_is_discrete() {
        let p = FacePoset::of_subpresheaf(&boundary(&Arc::new(Tree::corolla(2))));
        assert_eq!(p.len(), 3);
        assert_eq!(p.components(), 3);
        assert!(p.covers().is_empty());
    }

    #[test]
    fn cell_and_class_routes_agree() {
        for t in crate::tree::enumerate_trees(3, 2) {
            let t = Arc::new(t);
            let x = SubPresheaf::full(&Ambient::representable(t.clone()));
            let a = FacePoset::of_subpresheaf(&x);
            let b = FacePoset::of_presheaf(&x);
            assert_eq!(a.len(), b.len(), "{t}");
            assert_eq!(a.covers().len(), b.covers().len(), "{t}");
            assert!(b.is_partial_order());
        }
    }
}
