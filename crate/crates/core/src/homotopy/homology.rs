//! Integral homology of finite chain complexes by Smith normal form.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::{Error, Result};

/// A sparse column: `(row, coefficient)` pairs with nonzero coefficients.
pub type Column = Vec<(usize, i64)>;

/// Free abelian groups `C_0, …, C_n` with boundaries `d_k : C_k → C_{k-1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    /// `boundaries[k]` has one column per basis element of `C_k`; entry 0
    /// is empty.
    boundaries: Vec<Vec<Column>>,
}

impl ChainComplex {
    /// `boundaries[k - 1]` is `d_k` for `k ≥ 1`, given by columns.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Vec<Column>>) -> Result<ChainComplex> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvalidMorphism("one boundary per positive degree".into()));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.len() != ranks[k + 1] || d.iter().flatten().any(|&(r, c)| r >= ranks[k] || c == 0) {
                return Err(Error::InvalidMorphism("boundary does not match the ranks".into()));
            }
        }
        let mut all = alloc::vec![Vec::new()];
        all.extend(boundaries);
        Ok(ChainComplex { ranks, boundaries: all })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, k: usize) -> &[Column] {
        self.boundaries.get(k).map_or(&[], |d| d.as_slice())
    }

    /// Alternating sum of the ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// Whether `d_{k-1} ∘ d_k = 0` everywhere.
    pub fn squares_to_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|k| {
            self.boundaries[k].iter().all(|col| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(r, c) in col {
                    for &(s, e) in &self.boundaries[k - 1][r] {
                        *acc.entry(s).or_insert(0) += c * e;
                    }
                }
                acc.values().all(|&v| v == 0)
            })
        })
    }
}

/// Homology groups `H_k ≅ Z^{betti[k]} ⊕ ⨁ Z/torsion[k][i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub ranks: Vec<usize>,
    /// Unreduced Betti numbers, degrees `0..=max_degree`.
    pub betti: Vec<usize>,
    /// Invariant factors above 1, each list dividing upwards.
    pub torsion: Vec<Vec<u64>>,
    /// Whether every degree of the complex was covered.
    pub complete: bool,
}

impl HomologyReport {
    /// Betti numbers of the augmented complex.
    pub fn reduced_betti(&self) -> Vec<usize> {
        let mut b = self.betti.clone();
        if let Some(b0) = b.first_mut() {
            *b0 = b0.saturating_sub(1);
        }
        b
    }

    /// Reduced homology vanishes, torsion included. The empty complex has
    /// reduced homology `Z` in degree -1 and does not count.
    pub fn is_reduced_trivial(&self) -> bool {
        self.ranks.first().is_some_and(|&r| r > 0)
            && self.reduced_betti().iter().all(|&b| b == 0)
            && self.torsion.iter().all(|t| t.is_empty())
    }

    pub fn betti_euler(&self) -> i64 {
        self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    pub fn chain_euler(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// The Euler characteristic read from the homology equals the one read
    /// from the chain groups. Only meaningful when `complete`.
    pub fn euler_consistent(&self) -> bool {
        !self.complete || self.betti_euler() == self.chain_euler()
    }
}

/// Homology in degrees `0..=max_degree`; `None` means every degree of the
/// complex.
pub fn homology(c: &ChainComplex, max_degree: Option<usize>) -> Result<HomologyReport> {
    if c.ranks.is_empty() {
        return Ok(HomologyReport { ranks: Vec::new(), betti: Vec::new(), torsion: Vec::new(), complete: true });
    }
    let top = c.ranks.len().saturating_sub(1);
    let max = max_degree.unwrap_or(top);
    let mut rank = alloc::vec![0usize; c.ranks.len() + 1];
    let mut factors = alloc::vec![Vec::new(); c.ranks.len() + 1];
    for k in 1..c.ranks.len().min(max + 2) {
        let (r, f) = smith(c.ranks[k - 1], &c.boundaries[k])?;
        rank[k] = r;
        factors[k] = f;
    }
    let degrees = max.min(top) + 1;
    let betti = (0..degrees).map(|k| c.ranks[k] - rank[k] - rank[k + 1]).collect();
    let torsion = (0..degrees).map(|k| factors[k + 1].clone()).collect();
    let complete = c.ranks.is_empty() || max >= top;
    Ok(HomologyReport { ranks: c.ranks.clone(), betti, torsion, complete })
}

fn sub_mul(x: i64, f: i64, y: i64) -> Result<i64> {
    f.checked_mul(y).and_then(|p| x.checked_sub(p)).ok_or(Error::Overflow)
}

/// Rank and invariant factors above 1 of a sparse matrix with `rows` rows.
///
/// Unit pivots are eliminated sparsely first. What remains is usually
/// small and goes through a dense Smith reduction.
pub fn smith(rows: usize, columns: &[Column]) -> Result<(usize, Vec<u64>)> {
    let mut row: Vec<BTreeMap<usize, i64>> = alloc::vec![BTreeMap::new(); rows];
    let mut col: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); columns.len()];
    for (j, c) in columns.iter().enumerate() {
        for &(i, v) in c {
            if v != 0 {
                *row[i].entry(j).or_insert(0) += v;
                col[j].insert(i);
            }
        }
    }
    let mut rank = 0;
    loop {
        let mut progress = false;
        for j in 0..columns.len() {
            let pick = col[j].iter().copied().filter(|&i| row[i][&j].unsigned_abs() == 1).min_by_key(|&i| row[i].len());
            let Some(i) = pick else { continue };
            let a = row[i][&j];
            let pivot: Vec<(usize, i64)> = row[i].iter().map(|(&c, &v)| (c, v)).collect();
            let others: Vec<usize> = col[j].iter().copied().filter(|&r| r != i).collect();
            for r in others {
                let f = row[r][&j] * a;
                for &(c, v) in &pivot {
                    let e = row[r].entry(c).or_insert(0);
                    *e = sub_mul(*e, f, v)?;
                    if *e == 0 {
                        row[r].remove(&c);
                        col[c].remove(&r);
                    } else {
                        col[c].insert(r);
                    }
                }
            }
            for &(c, _) in &pivot {
                col[c].remove(&i);
            }
            row[i].clear();
            rank += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..rows).filter(|&i| !row[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..columns.len()).filter(|&j| !col[j].is_empty()).collect();
    let mut dense: Vec<Vec<i64>> = live_rows
        .iter()
        .map(|&i| live_cols.iter().map(|j| row[i].get(j).copied().unwrap_or(0)).collect())
        .collect();
    let diag = dense_smith(&mut dense)?;
    rank += diag.len();
    Ok((rank, diag.into_iter().filter(|&d| d > 1).collect()))
}

/// Nonzero diagonal of the Smith normal form, each entry dividing the next.
pub fn dense_smith(a: &mut [Vec<i64>]) -> Result<Vec<u64>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        // Bring a smallest nonzero entry to (t, t).
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
        else {
            break;
        };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..n {
                        a[i][j] = sub_mul(a[i][j], q, a[t][j])?;
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = sub_mul(row[j], q, row[t])?;
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // Divisibility: fold a row holding a non-multiple into row t.
                match (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0)) {
                    Some(i) => {
                        for j in t..n {
                            a[t][j] = a[t][j].checked_add(a[i][j]).ok_or(Error::Overflow)?;
                        }
                    }
                    None => break,
                }
            }
            // Move a smaller remainder into the pivot position.
            let (bi, bj) = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| (i == t || j == t) && a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
                .expect("the pivot is nonzero");
            a.swap(t, bi);
            for r in a.iter_mut() {
                r.swap(t, bj);
            }
        }
        diag.push(a[t][t].unsigned_abs());
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};

    fn determinant(a: &[Vec<i64>]) -> i64 {
        // Laplace expansion; only used on tiny matrices.
        let n = a.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * determinant(&minor)
            })
            .sum()
    }

    #[test]
    fn small_normal_forms() {
        let mut a = alloc::vec![alloc::vec![2, 4, 4], alloc::vec![-6, 6, 12], alloc::vec![10, -4, -16]];
        assert_eq!(dense_smith(&mut a).unwrap(), [2, 6, 12]);
        let mut b = alloc::vec![alloc::vec![2, 0], alloc::vec![0, 3]];
        assert_eq!(dense_smith(&mut b).unwrap(), [1, 6]);
        let mut z = alloc::vec![alloc::vec![0, 0], alloc::vec![0, 0]];
        assert!(dense_smith(&mut z).unwrap().is_empty());
    }

    #[test]
    fn diagonal_product_is_the_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = 1 + (rng.next_u32() % 4) as usize;
            let a: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| (rng.next_u32() % 9) as i64 - 4).collect()).collect();
            let det = determinant(&a);
            let d = dense_smith(&mut a.clone()).unwrap();
            for w in d.windows(2) {
                assert_eq!(w[1] % w[0], 0);
            }
            if det == 0 {
                assert!(d.len() < n);
            } else {
                assert_eq!(d.len(), n);
                assert_eq!(d.iter().product::<u64>(), det.unsigned_abs());
            }
            // The sparse route agrees with the dense one.
            let cols: Vec<Column> =
                (0..n).map(|j| (0..n).filter(|&i| a[i][j] != 0).map(|i| (i, a[i][j])).collect()).collect();
            let (r, f) = smith(n, &cols).unwrap();
            assert_eq!(r, d.len());
            assert_eq!(f, d.iter().copied().filter(|&x| x > 1).collect::<Vec<_>>());
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(sub_mul(i64::MIN, 2, i64::MAX), Err(Error::Overflow));
        let cols = alloc::vec![alloc::vec![(0, 1), (1, 1)], alloc::vec![(0, i64::MAX), (1, i64::MIN)]];
        assert_eq!(smith(2, &cols), Err(Error::Overflow));
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // A chain complex Z --2--> Z --0--> Z, the cellular complex of RP².
        let c = ChainComplex::new(
            alloc::vec![1, 1, 1],
            alloc::vec![alloc::vec![Vec::new()], alloc::vec![alloc::vec![(0, 2)]]],
        )
        .unwrap();
        assert!(c.squares_to_zero());
        let h = homology(&c, None).unwrap();
        assert_eq!(h.betti, [1, 0, 0]);
        assert_eq!(h.torsion, [Vec::new(), alloc::vec![2], Vec::new()]);
        assert!(!h.is_reduced_trivial());
        assert!(h.euler_consistent());
    }

    #[test]
    fn rejects_mismatched_boundaries() {
        assert!(ChainComplex::new(alloc::vec![1, 1], Vec::new()).is_err());
        assert!(ChainComplex::new(alloc::vec![1, 1], alloc::vec![alloc::vec![alloc::vec![(1, 1)]]]).is_err());
    }
}
