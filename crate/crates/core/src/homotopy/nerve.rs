//! Normalized nerves of finite categories.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::homology::{ChainComplex, Column};
use crate::dendro::SmallCategory;

/// Nondegenerate simplices of the nerve: in degree 0 the objects, in
/// degree `k ≥ 1` the composable strings `(f_1, …, f_k)` of non-identity
/// arrows (`f_1` applied first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nerve {
    pub objects: usize,
    pub strings: Vec<Vec<Vec<usize>>>,
}

impl Nerve {
    pub fn counts(&self) -> Vec<usize> {
        let mut c = alloc::vec![self.objects];
        c.extend(self.strings.iter().skip(1).map(|s| s.len()));
        c
    }
}

/// Strings of length up to `dim_bound`.
pub fn nerve(c: &SmallCategory, dim_bound: usize) -> Nerve {
    let arrows: Vec<usize> = (0..c.arrows().len()).filter(|&a| !c.is_identity(a)).collect();
    let mut strings: Vec<Vec<Vec<usize>>> = alloc::vec![Vec::new()];
    let mut last: Vec<Vec<usize>> = arrows.iter().map(|&a| alloc::vec![a]).collect();
    for _ in 1..=dim_bound {
        if last.is_empty() {
            break;
        }
        let next = last
            .iter()
            .flat_map(|s| {
                let end = c.arrows()[*s.last().expect("nonempty")].target;
                arrows.iter().filter(move |&&g| c.arrows()[g].source == end).map(move |&g| {
                    let mut t = s.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
        strings.push(core::mem::replace(&mut last, next));
    }
    Nerve { objects: c.objects().len(), strings }
}

/// The normalized chain complex of the nerve in degrees `0..=dim_bound`.
/// Faces that compose to an identity are degenerate and dropped.
pub fn nerve_chain_complex(c: &SmallCategory, dim_bound: usize) -> ChainComplex {
    let n = nerve(c, dim_bound);
    let index: Vec<BTreeMap<&[usize], usize>> =
        n.strings.iter().map(|g| g.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();
    let mut ranks = n.counts();
    let mut boundaries = Vec::new();
    for k in 1..n.strings.len() {
        let d: Vec<Column> = n.strings[k]
            .iter()
            .map(|s| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                let mut add = |face: Option<usize>, sign: i64| {
                    if let Some(f) = face {
                        *acc.entry(f).or_insert(0) += sign;
                    }
                };
                let face = |t: Vec<usize>| -> Option<usize> {
                    if t.is_empty() {
                        None
                    } else {
                        Some(index[t.len()][t.as_slice()])
                    }
                };
                if k == 1 {
                    let a = &c.arrows()[s[0]];
                    add(Some(a.target), 1);
                    add(Some(a.source), -1);
                } else {
                    add(face(s[1..].to_vec()), 1);
                    for i in 1..k {
                        let g = c.compose(s[i], s[i - 1]).expect("composable");
                        if !c.is_identity(g) {
                            let mut t = s[..i - 1].to_vec();
                            t.push(g);
                            t.extend_from_slice(&s[i + 1..]);
                            add(face(t), if i % 2 == 0 { 1 } else { -1 });
                        }
                    }
                    add(face(s[..k - 1].to_vec()), if k % 2 == 0 { 1 } else { -1 });
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        boundaries.push(d);
    }
    ranks.truncate(boundaries.len() + 1);
    ChainComplex::new(ranks, boundaries).expect("nerve boundaries match the counts")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendro::{category_of_elements, Ambient, Arrow, SubPresheaf};
    use crate::homotopy::homology::homology;
    use crate::tree::Tree;
    use alloc::string::String;
    use alloc::sync::Arc;

    #[test]
    fn terminal_category_is_a_point() {
        let n = nerve(&SmallCategory::terminal(), 4);
        assert_eq!(n.counts(), [1]);
        let h = homology(&nerve_chain_complex(&SmallCategory::terminal(), 4), None).unwrap();
        assert!(h.is_reduced_trivial());
    }

    /// The poset `[n]` as a category.
    fn ordinal(n: usize) -> SmallCategory {
        let mut arrows = Vec::new();
        let mut id = BTreeMap::new();
        for i in 0..=n {
            for j in i..=n {
                id.insert((i, j), arrows.len());
                arrows.push(Arrow { source: i, target: j, name: String::new() });
            }
        }
        let mut comp = BTreeMap::new();
        for (&(i, j), &f) in &id {
            for (&(k, l), &g) in &id {
                if j == k {
                    comp.insert((g, f), id[&(i, l)]);
                }
            }
        }
        let identities = (0..=n).map(|i| id[&(i, i)]).collect();
        SmallCategory::new((0..=n).map(|_| String::new()).collect(), arrows, identities, comp).unwrap()
    }

    #[test]
    fn nerve_of_an_ordinal_is_a_simplex() {
        for n in 0..5 {
            let c = nerve_chain_complex(&ordinal(n), n + 1);
            // Nondegenerate k-simplices of Δ_n.
            let expected: Vec<usize> = (0..=n).map(|k| crate::tensor::binomial(n + 1, k + 1)).collect();
            assert_eq!(c.ranks(), expected.as_slice());
            assert!(c.squares_to_zero());
            assert!(homology(&c, None).unwrap().is_reduced_trivial());
        }
    }

    #[test]
    fn representable_element_categories_are_contractible() {
        for t in ["a", "a[u](b)", "a[u](b,c)"] {
            let x = SubPresheaf::full(&Ambient::representable(Arc::new(t.parse().unwrap())));
            let cat = category_of_elements(&x, 1);
            let c = nerve_chain_complex(&cat, 3);
            assert!(c.squares_to_zero());
            let h = homology(&c, Some(2)).unwrap();
            assert!(h.is_reduced_trivial(), "{t}: {h:?}");
        }
        let eta = SubPresheaf::full(&Ambient::representable(Arc::new(Tree::eta())));
        assert_eq!(category_of_elements(&eta, 0).objects().len(), 1);
    }
}
