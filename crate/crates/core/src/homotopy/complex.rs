//! Finite abstract simplicial complexes and order complexes.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::homology::{ChainComplex, Column};
use super::poset::FacePoset;
use crate::{Error, Result};

pub type Simplex = Vec<u32>;

/// Simplices grouped by dimension, each simplex a sorted vertex list and
/// each group sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// The downward closure of `facets`; refuses more than `limit`
    /// simplices.
    pub fn from_facets(vertex_count: usize, facets: &[Simplex], limit: usize) -> Result<SimplicialComplex> {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.iter().any(|&v| v as usize >= vertex_count) {
                return Err(Error::InvalidTree("simplex vertex out of range".into()));
            }
            if f.len() >= 32 {
                return Err(Error::TooLarge { what: "facet dimension", limit: 31 });
            }
            for mask in 1u32..(1 << f.len()) {
                all.insert((0..f.len()).filter(|&i| mask & (1 << i) != 0).map(|i| f[i]).collect());
                if all.len() > limit {
                    return Err(Error::TooLarge { what: "simplices", limit });
                }
            }
        }
        Ok(SimplicialComplex::from_closed(vertex_count, all))
    }

    fn from_closed(vertex_count: usize, all: impl IntoIterator<Item = Simplex>) -> SimplicialComplex {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in all {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for g in &mut by_dim {
            g.sort_unstable();
        }
        SimplicialComplex { vertex_count, by_dim }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.by_dim.get(dim).map_or(&[], |g| g.as_slice())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(|g| g.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(|g| g.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        self.by_dim.get(s.len().checked_sub(1)?)?.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index_of(s).is_some()
    }

    /// Alternating count of simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(d, g)| if d % 2 == 0 { g.len() as i64 } else { -(g.len() as i64) }).sum()
    }

    /// Whether every face of a simplex is present.
    pub fn is_closed(&self) -> bool {
        self.by_dim.iter().skip(1).flatten().all(|s| (0..s.len()).all(|i| self.contains(&without(s, i))))
    }

    /// A vertex `v` such that `σ ∪ {v}` is a simplex for every simplex `σ`.
    pub fn apex(&self) -> Option<u32> {
        let used: BTreeSet<u32> = self.simplices(0).iter().map(|s| s[0]).collect();
        used.into_iter().find(|&v| self.by_dim.iter().flatten().all(|s| self.contains(&with(s, v))))
    }

    /// Simplicial chains with the alternating-sum boundary.
    pub fn chain_complex(&self) -> ChainComplex {
        let ranks = self.counts();
        let boundaries = (1..self.by_dim.len())
            .map(|d| {
                self.by_dim[d]
                    .iter()
                    .map(|s| {
                        let mut col: Column = (0..s.len())
                            .map(|i| {
                                let f = self.index_of(&without(s, i)).expect("closed under faces");
                                (f, if i % 2 == 0 { 1 } else { -1 })
                            })
                            .collect();
                        col.sort_unstable();
                        col
                    })
                    .collect()
            })
            .collect();
        ChainComplex::new(ranks, boundaries).expect("simplicial boundaries match the counts")
    }
}

pub(crate) fn without(s: &[u32], i: usize) -> Simplex {
    s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect()
}

pub(crate) fn with(s: &[u32], v: u32) -> Simplex {
    let mut t = s.to_vec();
    if let Err(i) = t.binary_search(&v) {
        t.insert(i, v);
    }
    t
}

/// Chains of the poset as simplices; refuses more than `limit` of them.
pub fn order_complex(p: &FacePoset, limit: usize) -> Result<SimplicialComplex> {
    let mut all = Vec::new();
    let mut stack: Vec<Simplex> = (0..p.len() as u32).map(|v| alloc::vec![v]).collect();
    while let Some(chain) = stack.pop() {
        let least = chain[0] as usize;
        for &a in p.below(least) {
            let mut longer = alloc::vec![a as u32];
            longer.extend_from_slice(&chain);
            stack.push(longer);
        }
        all.push(chain);
        if all.len() > limit {
            return Err(Error::TooLarge { what: "order complex simplices", limit });
        }
    }
    // Chains are listed from the least element up; sort vertex ids.
    for s in &mut all {
        s.sort_unstable();
    }
    Ok(SimplicialComplex::from_closed(p.len(), all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::homology::homology;
    use alloc::string::String;

    fn antichain(n: usize) -> FacePoset {
        FacePoset::new((0..n).map(|_| String::new()).collect(), |_, _| false)
    }

    #[test]
    fn order_complexes_of_small_posets() {
        assert_eq!(order_complex(&antichain(1), 10).unwrap().counts(), [1]);
        assert_eq!(order_complex(&antichain(3), 10).unwrap().counts(), [3]);
        // Two endpoints below an interval: a path with two edges.
        let interval = FacePoset::new(alloc::vec![String::new(); 3], |a, b| a == b || b == 2);
        let c = order_complex(&interval, 10).unwrap();
        assert_eq!(c.counts(), [3, 2]);
        assert!(c.is_closed());
        assert_eq!(c.apex(), Some(2));
        assert!(order_complex(&interval, 4).is_err());
    }

    #[test]
    fn circle_and_disc() {
        let circle = SimplicialComplex::from_facets(3, &[alloc::vec![0, 1], alloc::vec![1, 2], alloc::vec![0, 2]], 100).unwrap();
        let h = homology(&circle.chain_complex(), None).unwrap();
        assert_eq!(h.reduced_betti(), [0, 1]);
        assert!(h.euler_consistent());
        assert_eq!(circle.apex(), None);
        let disc = SimplicialComplex::from_facets(3, &[alloc::vec![0, 1, 2]], 100).unwrap();
        assert_eq!(disc.counts(), [3, 3, 1]);
        assert!(homology(&disc.chain_complex(), None).unwrap().is_reduced_trivial());
        assert!(disc.apex().is_some());
        assert!(disc.chain_complex().squares_to_zero());
    }

    #[test]
    fn point_and_points() {
        let pt = SimplicialComplex::from_facets(1, &[alloc::vec![0]], 10).unwrap();
        assert!(homology(&pt.chain_complex(), None).unwrap().is_reduced_trivial());
        let three = SimplicialComplex::from_facets(3, &[alloc::vec![0], alloc::vec![1], alloc::vec![2]], 10).unwrap();
        assert_eq!(homology(&three.chain_complex(), None).unwrap().reduced_betti(), [2]);
        let empty = SimplicialComplex::default();
        assert!(!homology(&empty.chain_complex(), None).unwrap().is_reduced_trivial());
    }
}
