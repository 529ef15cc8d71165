//! Exhaustive generation of trees up to isomorphism.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::canon::canonical_code;
use super::Tree;

/// Every tree with at most `max_vertices` vertices, each of arity at most
/// `max_arity`, one per isomorphism class, sorted by canonical code.
pub fn enumerate_trees(max_vertices: usize, max_arity: usize) -> Vec<Tree> {
    // by_size[k] holds the codes of trees with exactly k vertices.
    let mut by_size: Vec<Vec<String>> = alloc::vec![alloc::vec![String::from("|")]];
    for k in 1..=max_vertices {
        let mut found = BTreeSet::new();
        for arity in 0..=max_arity {
            let mut chosen = Vec::new();
            children(&by_size, k - 1, arity, (0, 0), &mut chosen, &mut found);
        }
        by_size.push(found.into_iter().collect());
    }
    let mut codes: Vec<String> = by_size.into_iter().flatten().collect();
    codes.sort();
    codes.iter().map(|c| Tree::from_code(c)).collect()
}

/// Chooses `slots` more children, as a non-decreasing sequence of
/// `(size, index)` pairs starting at `min`, using exactly `budget` vertices.
fn children(
    by_size: &[Vec<String>],
    budget: usize,
    slots: usize,
    min: (usize, usize),
    chosen: &mut Vec<(usize, usize)>,
    found: &mut BTreeSet<String>,
) {
    if slots == 0 {
        if budget == 0 {
            let mut kids: Vec<&str> = chosen.iter().map(|&(s, i)| by_size[s][i].as_str()).collect();
            kids.sort_unstable();
            found.insert(format!("({})", kids.concat()));
        }
        return;
    }
    for size in min.0..=budget {
        let start = if size == min.0 { min.1 } else { 0 };
        for idx in start..by_size[size].len() {
            chosen.push((size, idx));
            children(by_size, budget - size, slots - 1, (size, idx), chosen, found);
            chosen.pop();
        }
    }
}

impl Tree {
    /// Builds a tree from a canonical code. Edges are numbered in preorder
    /// from `0` at the root; the vertex above edge `i` is named `v{i}`.
    pub fn from_code(code: &str) -> Tree {
        fn walk(
            bytes: &[u8],
            pos: &mut usize,
            edges: &mut Vec<String>,
            vertices: &mut Vec<(String, usize, Vec<usize>)>,
        ) -> usize {
            let id = edges.len();
            edges.push(format!("{id}"));
            if bytes[*pos] == b'|' {
                *pos += 1;
                return id;
            }
            *pos += 1;
            let mut inputs = Vec::new();
            while bytes[*pos] != b')' {
                inputs.push(walk(bytes, pos, edges, vertices));
            }
            *pos += 1;
            vertices.push((format!("v{id}"), id, inputs));
            id
        }
        let (mut edges, mut vertices, mut pos) = (Vec::new(), Vec::new(), 0);
        let root = walk(code.as_bytes(), &mut pos, &mut edges, &mut vertices);
        let t = Tree::assemble(edges, root, vertices).expect("codes describe trees");
        debug_assert_eq!(canonical_code(&t).as_str(), code);
        t
    }
}
