//! Shuffles of two simplices as lattice paths in `[m] × [n]`.

use alloc::vec::Vec;

use crate::{Error, Result};

/// A maximal chain of `[m] × [n]`, stored as its steps: `true` raises the
/// first coordinate, `false` the second.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexShuffle {
    steps: Vec<bool>,
}

impl SimplexShuffle {
    pub fn steps(&self) -> &[bool] {
        &self.steps
    }

    /// The `m + n + 1` points of the chain, from `(0, 0)`.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut p = (0, 0);
        let mut out = alloc::vec![p];
        for &first in &self.steps {
            if first {
                p.0 += 1;
            } else {
                p.1 += 1;
            }
            out.push(p);
        }
        out
    }

    pub fn from_points(points: &[(usize, usize)]) -> Option<SimplexShuffle> {
        if points.first() != Some(&(0, 0)) {
            return None;
        }
        let steps = points
            .windows(2)
            .map(|w| match (w[1].0.checked_sub(w[0].0), w[1].1.checked_sub(w[0].1)) {
                (Some(1), Some(0)) => Some(true),
                (Some(0), Some(1)) => Some(false),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SimplexShuffle { steps })
    }
}

pub fn simplex_shuffles(m: usize, n: usize) -> Vec<SimplexShuffle> {
    fn go(m: usize, n: usize, steps: &mut Vec<bool>, out: &mut Vec<SimplexShuffle>) {
        if m == 0 && n == 0 {
            out.push(SimplexShuffle { steps: steps.clone() });
            return;
        }
        if m > 0 {
            steps.push(true);
            go(m - 1, n, steps, out);
            steps.pop();
        }
        if n > 0 {
            steps.push(false);
            go(m, n - 1, steps, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    go(m, n, &mut Vec::new(), &mut out);
    out
}

/// The common points of several chains, with the facts about them that the
/// product-of-simplices argument needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainIntersection {
    /// Sorted.
    pub points: Vec<(usize, usize)>,
    pub nonempty: bool,
    pub contains_origin: bool,
    /// Totally ordered by the product order.
    pub linear: bool,
}

pub fn simplex_shuffle_intersection(shuffles: &[SimplexShuffle]) -> Result<ChainIntersection> {
    let (first, rest) = shuffles.split_first().ok_or(Error::EmptyIndexSet)?;
    let mut points = first.points();
    for sh in rest {
        let other = sh.points();
        points.retain(|p| other.contains(p));
    }
    points.sort_unstable();
    let linear = points
        .iter()
        .enumerate()
        .all(|(i, a)| points[i + 1..].iter().all(|b| (a.0 <= b.0 && a.1 <= b.1) || (b.0 <= a.0 && b.1 <= a.1)));
    Ok(ChainIntersection {
        nonempty: !points.is_empty(),
        contains_origin: points.contains(&(0, 0)),
        linear,
        points,
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Lattice paths counted by the recurrence `p(m, n) = p(m-1, n) + p(m, n-1)`.
    fn paths(m: usize, n: usize) -> usize {
        if m == 0 || n == 0 {
            1
        } else {
            paths(m - 1, n) + paths(m, n - 1)
        }
    }

    #[test]
    fn counts() {
        for m in 0..=8 {
            for n in 0..=8 - m {
                let sh = simplex_shuffles(m, n);
                assert_eq!(sh.len(), paths(m, n));
                assert_eq!(sh.len(), binomial(m + n, m));
                for s in &sh {
                    assert_eq!(s.steps().len(), m + n);
                    assert_eq!(*s.points().last().unwrap(), (m, n));
                    assert_eq!(SimplexShuffle::from_points(&s.points()).as_ref(), Some(s));
                }
            }
        }
        assert_eq!(simplex_shuffles(2, 2).len(), 6);
    }

    #[test]
    fn the_two_squares_meet_in_the_diagonal() {
        let sh = simplex_shuffles(1, 1);
        let i = simplex_shuffle_intersection(&sh).unwrap();
        assert_eq!(i.points, [(0, 0), (1, 1)]);
        assert!(i.linear && i.contains_origin);
        assert!(matches!(simplex_shuffle_intersection(&[]), Err(Error::EmptyIndexSet)));
    }

    #[test]
    fn every_subset_meets_in_a_chain_through_the_origin() {
        let sh = simplex_shuffles(2, 2);
        for mask in 1u32..(1 << sh.len()) {
            let j: Vec<SimplexShuffle> =
                (0..sh.len()).filter(|&i| mask & (1 << i) != 0).map(|i| sh[i].clone()).collect();
            let i = simplex_shuffle_intersection(&j).unwrap();
            assert!(i.nonempty && i.contains_origin && i.linear);
            assert!(i.points.contains(&(2, 2)));
        }
    }
}
