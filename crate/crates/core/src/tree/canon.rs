//! Canonical codes for isomorphism classes of trees.
//!
//! A leaf is encoded as `|` and a vertex as `(` followed by the sorted codes
//! of its inputs and `)`. Names play no part, so two trees have the same
//! code exactly when they are isomorphic.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{EdgeId, Tree};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Codes of every edge, indexed by edge id.
pub(crate) fn edge_codes(t: &Tree) -> Vec<String> {
    let mut codes = alloc::vec![String::new(); t.edge_count()];
    // Children come after parents in breadth-first order.
    for &e in t.edges_from_root().iter().rev() {
        codes[e] = match t.above(e) {
            None => String::from("|"),
            Some(v) => {
                let mut kids: Vec<&str> =
                    t.vertex(v).inputs().iter().map(|&i| codes[i].as_str()).collect();
                kids.sort_unstable();
                let mut s = String::from("(");
                for k in kids {
                    s.push_str(k);
                }
                s.push(')');
                s
            }
        };
    }
    codes
}

pub fn canonical_code(t: &Tree) -> CanonicalCode {
    let mut codes = edge_codes(t);
    CanonicalCode(core::mem::take(&mut codes[t.root()]))
}

pub fn is_isomorphic(s: &Tree, t: &Tree) -> bool {
    canonical_code(s) == canonical_code(t)
}

/// An isomorphism `s → t` as an edge map, if one exists.
pub fn isomorphism(s: &Tree, t: &Tree) -> Option<Vec<EdgeId>> {
    let cs = edge_codes(s);
    let ct = edge_codes(t);
    if cs[s.root()] != ct[t.root()] {
        return None;
    }
    let mut map = alloc::vec![usize::MAX; s.edge_count()];
    let mut stack = alloc::vec![(s.root(), t.root())];
    while let Some((a, b)) = stack.pop() {
        map[a] = b;
        if let (Some(va), Some(vb)) = (s.above(a), t.above(b)) {
            let mut ia: Vec<EdgeId> = s.vertex(va).inputs().to_vec();
            let mut ib: Vec<EdgeId> = t.vertex(vb).inputs().to_vec();
            ia.sort_by(|&x, &y| cs[x].cmp(&cs[y]));
            ib.sort_by(|&x, &y| ct[x].cmp(&ct[y]));
            stack.extend(ia.into_iter().zip(ib));
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_codes() {
        assert_eq!(canonical_code(&Tree::eta()).as_str(), "|");
        assert_eq!(canonical_code(&Tree::corolla(0)).as_str(), "()");
        assert_eq!(canonical_code(&Tree::corolla(2)).as_str(), "(||)");
        assert_eq!(canonical_code(&Tree::linear(1)), canonical_code(&Tree::corolla(1)));
    }

    #[test]
    fn codes_ignore_names_and_input_order() {
        let a: Tree = "r[x](p[y](q), s)".parse().unwrap();
        let b: Tree = "0[a](9, 1[b](2))".parse().unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
        let c: Tree = "r[x](p[y](q,s))".parse().unwrap();
        assert_ne!(canonical_code(&a), canonical_code(&c));
    }

    #[test]
    fn isomorphism_respects_structure() {
        let a: Tree = "a[u](b[v](c,d), e[w](), f)".parse().unwrap();
        let b: Tree = "z[q](y, x[r](), w[s](v,u))".parse().unwrap();
        let m = isomorphism(&a, &b).unwrap();
        assert_eq!(b.edge_name(m[a.edge_id("b").unwrap()]), "w");
        assert_eq!(b.edge_name(m[a.edge_id("e").unwrap()]), "x");
        assert_eq!(b.edge_name(m[a.root()]), "z");
        assert!(isomorphism(&a, &Tree::corolla(3)).is_none());
    }
}
