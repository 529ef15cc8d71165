//! Trees whose edges are labelled by distinct points of an ambient
//! presheaf.
//!
//! In the ambients used here (representables and tensor products of trees)
//! an element is determined by the labels of its edges, and a nondegenerate
//! element is injective on edges. A nondegenerate element up to
//! isomorphism of its shape is therefore a [`Cell`]: a tree whose edges are
//! ambient points. A cell `a` is a face of a cell `b` when every point of
//! `a` is a point of `b` and every vertex of `a` is an operation of `b`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::tree::{EdgeId, Tree};
use crate::{Error, Result};

pub type Point = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    /// Sorted; an edge index is a position in this list.
    points: Vec<Point>,
    root: usize,
    /// For each edge, the inputs of the vertex above it, sorted.
    above: Vec<Option<Vec<usize>>>,
}

impl Cell {
    /// A single edge.
    pub fn eta(p: Point) -> Cell {
        Cell { points: alloc::vec![p], root: 0, above: alloc::vec![None] }
    }

    /// Builds a cell from a root point and vertices given as
    /// `(output, inputs)` over points.
    pub fn new(root: Point, vertices: &[(Point, Vec<Point>)]) -> Result<Cell> {
        let mut points: Vec<Point> = alloc::vec![root];
        for (o, ins) in vertices {
            points.push(*o);
            points.extend_from_slice(ins);
        }
        points.sort_unstable();
        points.dedup();
        let idx = |p: Point| points.binary_search(&p).expect("collected");
        let mut above = alloc::vec![None; points.len()];
        let mut has_parent = alloc::vec![false; points.len()];
        for (o, ins) in vertices {
            let mut kids: Vec<usize> = ins.iter().map(|&p| idx(p)).collect();
            kids.sort_unstable();
            if kids.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidTree("a vertex repeats an input".into()));
            }
            for &k in &kids {
                if core::mem::replace(&mut has_parent[k], true) {
                    return Err(Error::InvalidTree("a point is an input of two vertices".into()));
                }
            }
            if above[idx(*o)].replace(kids).is_some() {
                return Err(Error::InvalidTree("a point is the output of two vertices".into()));
            }
        }
        let root = idx(root);
        let cell = Cell { points, root, above };
        // Every point must be reached exactly once from the root.
        let mut seen = alloc::vec![false; cell.points.len()];
        let mut stack = alloc::vec![root];
        while let Some(e) = stack.pop() {
            if core::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidTree("the incidence graph has a cycle".into()));
            }
            if let Some(kids) = &cell.above[e] {
                stack.extend_from_slice(kids);
            }
        }
        if seen.iter().any(|&s| !s) || has_parent[root] {
            return Err(Error::InvalidTree("points are disconnected from the root".into()));
        }
        Ok(cell)
    }

    /// The cell of a tree with injective edge labels, or `None` when two
    /// edges share a label.
    pub fn from_tree(t: &Tree, label: &[Point]) -> Option<Cell> {
        let vertices: Vec<(Point, Vec<Point>)> = t
            .vertices()
            .iter()
            .map(|v| (label[v.output()], v.inputs().iter().map(|&i| label[i]).collect()))
            .collect();
        let mut seen: Vec<Point> = label.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != label.len() {
            return None;
        }
        Some(Cell::new(label[t.root()], &vertices).expect("labels of a tree"))
    }

    /// The underlying tree, with edges and vertices named by the callbacks.
    /// The vertex callback receives the output point.
    pub fn to_tree(&self, edge_name: impl Fn(Point) -> String, vertex_name: impl Fn(Point) -> String) -> Tree {
        let edges = self.points.iter().map(|&p| edge_name(p)).collect();
        let raw = self.vertices().map(|(o, kids)| (vertex_name(self.points[o]), o, kids.to_vec())).collect();
        Tree::assemble(edges, self.root, raw).expect("cells are trees")
    }

    /// Points in increasing order; edge indices refer to this list.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn edge_count(&self) -> usize {
        self.points.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.above.iter().flatten().count()
    }

    pub fn root(&self) -> Point {
        self.points[self.root]
    }

    pub fn root_index(&self) -> usize {
        self.root
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    pub fn contains_point(&self, p: Point) -> bool {
        self.index_of(p).is_some()
    }

    pub fn inputs_above(&self, e: usize) -> Option<&[usize]> {
        self.above[e].as_deref()
    }

    /// Vertices as `(output index, input indices)`.
    pub fn vertices(&self) -> impl Iterator<Item = (usize, &[usize])> + '_ {
        self.above.iter().enumerate().filter_map(|(o, k)| k.as_deref().map(|k| (o, k)))
    }

    pub fn leaves(&self) -> Vec<Point> {
        (0..self.points.len()).filter(|&e| self.above[e].is_none()).map(|e| self.points[e]).collect()
    }

    fn parents(&self) -> Vec<Option<usize>> {
        let mut parent = alloc::vec![None; self.points.len()];
        for (o, kids) in self.vertices() {
            for &k in kids {
                parent[k] = Some(o);
            }
        }
        parent
    }

    pub fn inner_points(&self) -> Vec<Point> {
        let parent = self.parents();
        (0..self.points.len())
            .filter(|&e| parent[e].is_some() && self.above[e].is_some())
            .map(|e| self.points[e])
            .collect()
    }

    /// Whether the edge indices `inputs` are the inputs of an operation of
    /// the free operad on this cell with output `output`.
    pub fn is_operation(&self, output: usize, inputs: &[usize]) -> bool {
        let mut marked = alloc::vec![false; self.points.len()];
        for &i in inputs {
            if core::mem::replace(&mut marked[i], true) {
                return false;
            }
        }
        let mut reached = 0;
        let mut stack = alloc::vec![output];
        while let Some(e) = stack.pop() {
            if marked[e] {
                reached += 1;
            } else if let Some(kids) = &self.above[e] {
                stack.extend_from_slice(kids);
            } else {
                return false;
            }
        }
        reached == inputs.len()
    }

    /// Whether the labelled shape `shape → self` is a morphism, i.e. the
    /// element with these labels factors through this cell.
    pub fn admits(&self, shape: &Tree, labels: &[Point]) -> bool {
        let Some(idx) = labels.iter().map(|&p| self.index_of(p)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        shape.vertices().iter().all(|v| {
            let ins: Vec<usize> = v.inputs().iter().map(|&i| idx[i]).collect();
            self.is_operation(idx[v.output()], &ins)
        })
    }

    pub fn is_face_of(&self, other: &Cell) -> bool {
        if self.points.len() > other.points.len() {
            return false;
        }
        let Some(idx) = self.points.iter().map(|&p| other.index_of(p)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        self.vertices().all(|(o, kids)| {
            let ins: Vec<usize> = kids.iter().map(|&k| idx[k]).collect();
            other.is_operation(idx[o], &ins)
        })
    }

    fn rebuild(&self, root: usize, vertices: impl Iterator<Item = (usize, Vec<usize>)>) -> Cell {
        let vs: Vec<(Point, Vec<Point>)> =
            vertices.map(|(o, k)| (self.points[o], k.into_iter().map(|i| self.points[i]).collect())).collect();
        Cell::new(self.points[root], &vs).expect("faces of cells are cells")
    }

    /// Contracts the inner edge with index `e`.
    pub fn contract(&self, e: usize) -> Option<Cell> {
        let parent = self.parents();
        let lower = parent[e]?;
        let upper = self.above[e].clone()?;
        let vertices = self.vertices().filter(|&(o, _)| o != e).map(|(o, kids)| {
            if o == lower {
                let mut k: Vec<usize> = kids.iter().copied().filter(|&i| i != e).collect();
                k.extend_from_slice(&upper);
                (o, k)
            } else {
                (o, kids.to_vec())
            }
        });
        Some(self.rebuild(self.root, vertices))
    }

    /// Contracts several inner edges at once; `None` if one of them is not
    /// an inner edge. The result does not depend on the order.
    pub fn contract_all(&self, points: &[Point]) -> Option<Cell> {
        let parent = self.parents();
        let mut gone = alloc::vec![false; self.points.len()];
        for &p in points {
            let e = self.index_of(p)?;
            if parent[e].is_none() || self.above[e].is_none() {
                return None;
            }
            gone[e] = true;
        }
        let vertices = self.vertices().filter(|&(o, _)| !gone[o]).map(|(o, kids)| {
            let mut k = Vec::new();
            let mut stack: Vec<usize> = kids.iter().rev().copied().collect();
            while let Some(i) = stack.pop() {
                match &self.above[i] {
                    Some(up) if gone[i] => stack.extend(up.iter().rev()),
                    _ => k.push(i),
                }
            }
            (o, k)
        });
        Some(self.rebuild(self.root, vertices))
    }

    /// Removes the vertex above edge `o` if it is outer.
    pub fn chop(&self, o: usize) -> Option<Cell> {
        let parent = self.parents();
        let kids = self.above[o].as_ref()?;
        let inner = |e: usize| parent[e].is_some() && self.above[e].is_some();
        let adjacent = core::iter::once(o).chain(kids.iter().copied()).filter(|&e| inner(e)).count();
        if self.vertex_count() < 2 || adjacent != 1 {
            return None;
        }
        if inner(o) {
            let vertices = self.vertices().filter(|&(x, _)| x != o).map(|(x, k)| (x, k.to_vec()));
            Some(self.rebuild(self.root, vertices))
        } else {
            let keep = kids.iter().copied().find(|&e| inner(e)).expect("one inner input");
            let mut alive = alloc::vec![false; self.points.len()];
            let mut stack = alloc::vec![keep];
            while let Some(e) = stack.pop() {
                alive[e] = true;
                if let Some(k) = &self.above[e] {
                    stack.extend_from_slice(k);
                }
            }
            let vertices = self.vertices().filter(|&(x, _)| alive[x]).map(|(x, k)| (x, k.to_vec()));
            Some(self.rebuild(keep, vertices))
        }
    }

    /// The elementary faces: inner, then outer, then η-edges of a corolla.
    pub fn elementary_faces(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        let parent = self.parents();
        for e in 0..self.points.len() {
            if parent[e].is_some() && self.above[e].is_some() {
                out.push(self.contract(e).expect("inner"));
            }
        }
        for (o, _) in self.vertices() {
            if let Some(c) = self.chop(o) {
                out.push(c);
            }
        }
        if self.vertex_count() == 1 {
            out.extend(self.points.iter().map(|&p| Cell::eta(p)));
        }
        out
    }

    /// Every face, including the cell itself.
    pub fn all_faces(&self) -> BTreeSet<Cell> {
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![self.clone()];
        while let Some(c) = stack.pop() {
            if seen.contains(&c) {
                continue;
            }
            stack.extend(c.elementary_faces());
            seen.insert(c);
        }
        seen
    }

    /// The maximal faces all of whose points satisfy `allowed`.
    ///
    /// For each allowed point `x` this grows the largest face rooted at `x`:
    /// the vertex above an edge `y` has as inputs the nearest allowed edges
    /// above `y`, when those form an operation, and otherwise `y` is a leaf.
    pub fn maximal_faces_within(&self, allowed: impl Fn(Point) -> bool) -> Vec<Cell> {
        let ok: Vec<bool> = self.points.iter().map(|&p| allowed(p)).collect();
        let mut found = Vec::new();
        for x in (0..self.points.len()).filter(|&x| ok[x]) {
            let mut vertices = Vec::new();
            let mut stack = alloc::vec![x];
            while let Some(y) = stack.pop() {
                if self.above[y].is_none() {
                    continue;
                }
                let mut nearest = Vec::new();
                let mut cut = true;
                let mut walk: Vec<usize> = self.above[y].clone().unwrap_or_default();
                while let Some(z) = walk.pop() {
                    if ok[z] {
                        nearest.push(z);
                    } else if let Some(k) = &self.above[z] {
                        walk.extend_from_slice(k);
                    } else {
                        cut = false;
                        break;
                    }
                }
                if cut {
                    nearest.sort_unstable();
                    stack.extend_from_slice(&nearest);
                    vertices.push((y, nearest));
                }
            }
            found.push(self.rebuild(x, vertices.into_iter()));
        }
        maximal(found)
    }

    /// The maximal common faces of two cells.
    pub fn common_faces(&self, other: &Cell) -> Vec<Cell> {
        let mut result = Vec::new();
        let mut seen = BTreeSet::new();
        let mut queue = self.maximal_faces_within(|p| other.contains_point(p));
        while let Some(c) = queue.pop() {
            if !seen.insert(c.clone()) {
                continue;
            }
            if c.is_face_of(other) {
                result.push(c);
            } else {
                queue.extend(c.elementary_faces());
            }
        }
        maximal(result)
    }
}

/// Sorts, deduplicates and keeps only the cells that are not proper faces
/// of others.
pub fn maximal(mut cells: Vec<Cell>) -> Vec<Cell> {
    cells.sort();
    cells.dedup();
    // Larger cells first so that a face is always compared with its cofaces.
    let mut by_size: Vec<&Cell> = cells.iter().collect();
    by_size.sort_by(|a, b| (b.edge_count(), b.vertex_count()).cmp(&(a.edge_count(), a.vertex_count())));
    let mut keep: Vec<Cell> = Vec::new();
    for c in by_size {
        if !keep.iter().any(|k| c.is_face_of(k)) {
            keep.push(c.clone());
        }
    }
    keep.sort();
    keep
}

/// A tree with its edges labelled by their own ids.
pub fn tree_cell(t: &Tree) -> Cell {
    let label: Vec<Point> = (0..t.edge_count() as EdgeId).map(|e| e as Point).collect();
    Cell::from_tree(t, &label).expect("edge ids are distinct")
}
