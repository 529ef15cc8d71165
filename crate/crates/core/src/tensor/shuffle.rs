//! Shuffles of two trees by percolation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::dendro::{maximal, Cell, Point};
use crate::tree::{fresh_name, EdgeId, Tree, VertexId};

/// Which factor a vertex of a shuffle comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexTag {
    /// A vertex of `S` tensored with an edge of `T`.
    S { vertex: VertexId, edge: EdgeId },
    /// An edge of `S` tensored with a vertex of `T`.
    T { edge: EdgeId, vertex: VertexId },
}

#[derive(Clone, Debug)]
pub struct ShuffleTree {
    tree: Tree,
    /// Pair of edges of `S` and `T` for each edge of `tree`.
    labels: Vec<(EdgeId, EdgeId)>,
    /// Tag for each vertex of `tree`.
    tags: Vec<VertexTag>,
    cell: Cell,
}

impl ShuffleTree {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn labels(&self) -> &[(EdgeId, EdgeId)] {
        &self.labels
    }

    pub fn tags(&self) -> &[VertexTag] {
        &self.tags
    }

    /// The shuffle as a cell over the points of `S ⊗ T`.
    pub fn cell(&self) -> &Cell {
        &self.cell
    }
}

/// The point of `S ⊗ T` for a pair of edges.
pub fn pair_point(t: &Tree, s_edge: EdgeId, t_edge: EdgeId) -> Point {
    (s_edge * t.edge_count() + t_edge) as Point
}

pub fn point_pair(t: &Tree, p: Point) -> (EdgeId, EdgeId) {
    let n = t.edge_count();
    (p as usize / n, p as usize % n)
}

pub fn pair_name(s: &Tree, t: &Tree, p: Point) -> String {
    let (a, b) = point_pair(t, p);
    format!("{}|{}", s.edge_name(a), t.edge_name(b))
}

/// `u|b` for a vertex `u` of `S` at an edge `b` of `T`, `a|w` dually.
pub fn tag_name(s: &Tree, t: &Tree, tag: VertexTag) -> String {
    match tag {
        VertexTag::S { vertex, edge } => format!("{}|{}", s.vertex(vertex).name(), t.edge_name(edge)),
        VertexTag::T { edge, vertex } => format!("{}|{}", s.edge_name(edge), t.vertex(vertex).name()),
    }
}

type Raw = Vec<(Point, VertexTag, Vec<Point>)>;

fn percolate(s: &Tree, t: &Tree, pending: &mut Vec<Point>, chosen: &mut Raw, out: &mut Vec<Raw>) {
    let Some(p) = pending.pop() else {
        out.push(chosen.clone());
        return;
    };
    let (a, b) = point_pair(t, p);
    let mut options = Vec::new();
    if let Some(u) = s.above(a) {
        let ins = s.vertex(u).inputs().iter().map(|&i| pair_point(t, i, b)).collect::<Vec<_>>();
        options.push((VertexTag::S { vertex: u, edge: b }, ins));
    }
    if let Some(w) = t.above(b) {
        let ins = t.vertex(w).inputs().iter().map(|&j| pair_point(t, a, j)).collect::<Vec<_>>();
        options.push((VertexTag::T { edge: a, vertex: w }, ins));
    }
    if options.is_empty() {
        percolate(s, t, pending, chosen, out);
    } else {
        for (tag, ins) in options {
            let before = pending.len();
            pending.extend_from_slice(&ins);
            chosen.push((p, tag, ins));
            percolate(s, t, pending, chosen, out);
            chosen.pop();
            pending.truncate(before);
        }
    }
    pending.push(p);
}

fn build(s: &Tree, t: &Tree, raw: &Raw) -> ShuffleTree {
    let root = pair_point(t, s.root(), t.root());
    let vertices: Vec<(Point, Vec<Point>)> = raw.iter().map(|(o, _, ins)| (*o, ins.clone())).collect();
    let cell = Cell::new(root, &vertices).expect("percolation builds trees");
    let tag_of: BTreeMap<Point, VertexTag> = raw.iter().map(|(o, tag, _)| (*o, *tag)).collect();
    let mut names: BTreeMap<Point, String> = BTreeMap::new();
    for (o, tag, _) in raw {
        let name = fresh_name(&tag_name(s, t, *tag), |n| names.values().any(|x| x == n));
        names.insert(*o, name);
    }
    let tree = cell.to_tree(|p| pair_name(s, t, p), |p| names[&p].clone());
    let labels = tree
        .edge_names()
        .iter()
        .map(|n| {
            let (x, y) = n.split_once('|').expect("pair names");
            // Edge names of the factors may themselves contain `|`; fall
            // back to a search when the split is ambiguous.
            match (s.edge_id(x), t.edge_id(y)) {
                (Some(a), Some(b)) => (a, b),
                _ => find_pair(s, t, n),
            }
        })
        .collect::<Vec<_>>();
    let tags = tree
        .vertices()
        .iter()
        .map(|v| {
            let (a, b) = labels[v.output()];
            tag_of[&pair_point(t, a, b)]
        })
        .collect();
    ShuffleTree { tree, labels, tags, cell }
}

fn find_pair(s: &Tree, t: &Tree, name: &str) -> (EdgeId, EdgeId) {
    for a in 0..s.edge_count() {
        for b in 0..t.edge_count() {
            if pair_name(s, t, pair_point(t, a, b)) == name {
                return (a, b);
            }
        }
    }
    unreachable!("names come from pairs")
}

/// All shuffles of `s` and `t`, without repetition, sorted by their cells.
///
/// Starting from the pair of roots, every pair `(a, b)` not yet processed
/// is either topped by the vertex of `S` above `a` (with inputs the inputs
/// of that vertex paired with `b`) or by the vertex of `T` above `b`, and a
/// pair of leaves stays a leaf. Two shuffles with the same labelled tree
/// are the same element of `S ⊗ T` and are kept once; this only happens
/// with nullary vertices on both sides.
pub fn shuffles(s: &Tree, t: &Tree) -> Vec<ShuffleTree> {
    let mut raws = Vec::new();
    let root = pair_point(t, s.root(), t.root());
    percolate(s, t, &mut alloc::vec![root], &mut Vec::new(), &mut raws);
    let mut by_cell: BTreeMap<Cell, ShuffleTree> = BTreeMap::new();
    for raw in &raws {
        let sh = build(s, t, raw);
        by_cell.entry(sh.cell.clone()).or_insert(sh);
    }
    by_cell.into_values().collect()
}

/// `S ⊗ T` as the union of its shuffles.
#[derive(Clone, Debug)]
pub struct TensorAmbient {
    s: Arc<Tree>,
    t: Arc<Tree>,
    shuffles: Vec<ShuffleTree>,
    generators: Vec<Cell>,
}

impl TensorAmbient {
    pub fn new(s: Arc<Tree>, t: Arc<Tree>) -> TensorAmbient {
        let shuffles = shuffles(&s, &t);
        let generators = maximal(shuffles.iter().map(|sh| sh.cell.clone()).collect());
        TensorAmbient { s, t, shuffles, generators }
    }

    pub fn left(&self) -> &Arc<Tree> {
        &self.s
    }

    pub fn right(&self) -> &Arc<Tree> {
        &self.t
    }

    pub fn shuffles(&self) -> &[ShuffleTree] {
        &self.shuffles
    }

    /// The shuffles that are not faces of other shuffles.
    pub fn generators(&self) -> &[Cell] {
        &self.generators
    }

    pub fn point(&self, s_edge: EdgeId, t_edge: EdgeId) -> Point {
        pair_point(&self.t, s_edge, t_edge)
    }

    pub fn pair(&self, p: Point) -> (EdgeId, EdgeId) {
        point_pair(&self.t, p)
    }

    pub fn point_name(&self, p: Point) -> String {
        pair_name(&self.s, &self.t, p)
    }

    pub fn point_count(&self) -> usize {
        self.s.edge_count() * self.t.edge_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_trees;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;

    /// Every labelled tree built from the candidate vertices `(u, b)` and
    /// `(a, w)`, found by trying all subsets of candidates.
    fn brute_force(s: &Tree, t: &Tree) -> Option<BTreeSet<Cell>> {
        let mut candidates: Vec<(Point, Vec<Point>)> = Vec::new();
        for u in s.vertices() {
            for b in 0..t.edge_count() {
                candidates.push((pair_point(t, u.output(), b), u.inputs().iter().map(|&i| pair_point(t, i, b)).collect()));
            }
        }
        for a in 0..s.edge_count() {
            for w in t.vertices() {
                candidates.push((pair_point(t, a, w.output()), w.inputs().iter().map(|&j| pair_point(t, a, j)).collect()));
            }
        }
        if candidates.len() > 16 {
            return None;
        }
        let root = pair_point(t, s.root(), t.root());
        let mut found = BTreeSet::new();
        for mask in 0u32..(1 << candidates.len()) {
            let chosen: Vec<&(Point, Vec<Point>)> =
                (0..candidates.len()).filter(|&i| mask & (1 << i) != 0).map(|i| &candidates[i]).collect();
            let mut outputs: Vec<Point> = chosen.iter().map(|c| c.0).collect();
            outputs.sort_unstable();
            if outputs.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            // Walk from the root; pairs without a vertex must be leaf pairs.
            let mut seen = BTreeSet::new();
            let mut stack = alloc::vec![root];
            let mut ok = true;
            let mut used = 0;
            while let Some(p) = stack.pop() {
                if !seen.insert(p) {
                    ok = false;
                    break;
                }
                match chosen.iter().find(|c| c.0 == p) {
                    Some(c) => {
                        used += 1;
                        stack.extend_from_slice(&c.1);
                    }
                    None => {
                        let (a, b) = point_pair(t, p);
                        if !(s.is_leaf(a) && t.is_leaf(b)) {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if ok && used == chosen.len() {
                let vs: Vec<(Point, Vec<Point>)> = chosen.into_iter().cloned().collect();
                found.insert(Cell::new(root, &vs).unwrap());
            }
        }
        Some(found)
    }

    #[test]
    fn percolation_matches_brute_force() {
        let trees = enumerate_trees(2, 2);
        let mut compared = 0;
        for s in &trees {
            for t in &trees {
                if let Some(expected) = brute_force(s, t) {
                    let got: BTreeSet<Cell> = shuffles(s, t).into_iter().map(|sh| sh.cell).collect();
                    assert_eq!(got, expected, "{s} ⊗ {t}");
                    compared += 1;
                }
            }
        }
        assert!(compared >= 60, "{compared}");
    }

    #[test]
    fn linear_shuffles_are_lattice_paths() {
        for m in 0..=4 {
            for n in 0..=4 {
                let count = shuffles(&Tree::linear(m), &Tree::linear(n)).len();
                assert_eq!(count, crate::tensor::binomial(m + n, m), "{m} {n}");
            }
        }
    }

    #[test]
    fn small_shuffle_counts() {
        let l1 = Tree::linear(1);
        let c2 = Tree::corolla(2);
        // Frozen from the brute-force search above.
        assert_eq!(shuffles(&l1, &c2).len(), 2);
        assert_eq!(shuffles(&c2, &c2).len(), 2);
        let c0 = Tree::corolla(0);
        assert_eq!(shuffles(&c0, &c0).len(), 1);
        assert_eq!(shuffles(&Tree::eta(), &c2).len(), 1);
    }

    #[test]
    fn unit_law() {
        for t in enumerate_trees(3, 3) {
            let sh = shuffles(&Tree::eta(), &t);
            assert_eq!(sh.len(), 1);
            assert!(crate::tree::is_isomorphic(sh[0].tree(), &t));
        }
    }

    #[test]
    fn shuffle_labels_and_tags() {
        let s = Tree::linear(1);
        let t = Tree::corolla(2);
        for sh in shuffles(&s, &t) {
            let tree = sh.tree();
            assert_eq!(sh.labels()[tree.root()], (s.root(), t.root()));
            for (v, tag) in tree.vertices().iter().zip(sh.tags()) {
                let (a, b) = sh.labels()[v.output()];
                match *tag {
                    VertexTag::S { vertex, edge } => {
                        assert_eq!((s.vertex(vertex).output(), edge), (a, b));
                    }
                    VertexTag::T { edge, vertex } => {
                        assert_eq!((edge, t.vertex(vertex).output()), (a, b));
                    }
                }
            }
            assert!(tree.to_string().starts_with("1|0["));
        }
    }
}
