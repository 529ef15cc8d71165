//! Elementary collapses down to a point.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::complex::{with, without, Simplex, SimplicialComplex};

/// Removal of a free face together with its unique proper coface.
pub type Collapse = (Simplex, Simplex);

/// Collapses of a cone onto its apex: every simplex missing the apex goes
/// together with its cone, top dimension first.
pub fn cone_collapse(c: &SimplicialComplex, apex: u32) -> Vec<Collapse> {
    let mut out = Vec::new();
    for d in (0..=c.dimension().unwrap_or(0)).rev() {
        for s in c.simplices(d) {
            if s.binary_search(&apex).is_err() {
                out.push((s.clone(), with(s, apex)));
            }
        }
    }
    out
}

struct Indexed {
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    simplices: Vec<Simplex>,
}

fn index(c: &SimplicialComplex) -> Indexed {
    let mut offset = alloc::vec![0];
    let mut simplices = Vec::new();
    for d in 0..=c.dimension().unwrap_or(0) {
        simplices.extend(c.simplices(d).iter().cloned());
        offset.push(simplices.len());
    }
    let mut facets = alloc::vec![Vec::new(); simplices.len()];
    let mut cofacets = alloc::vec![Vec::new(); simplices.len()];
    for (id, s) in simplices.iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        for i in 0..s.len() {
            let f = offset[s.len() - 2] + c.index_of(&without(s, i)).expect("closed under faces");
            facets[id].push(f);
            cofacets[f].push(id);
        }
    }
    Indexed { facets, cofacets, simplices }
}

fn attempt(ix: &Indexed, mut rng: Option<&mut ChaCha8Rng>) -> Option<Vec<Collapse>> {
    let n = ix.simplices.len();
    let mut alive = alloc::vec![true; n];
    let mut cocount: Vec<usize> = ix.cofacets.iter().map(|c| c.len()).collect();
    let mut remaining = n;
    let mut candidates: Vec<usize> = (0..n).filter(|&i| cocount[i] == 1).collect();
    let mut out = Vec::new();
    while remaining > 1 {
        if candidates.is_empty() {
            return None;
        }
        let k = match rng.as_deref_mut() {
            Some(r) => (r.next_u64() % candidates.len() as u64) as usize,
            None => candidates.len() - 1,
        };
        let sigma = candidates.swap_remove(k);
        if !alive[sigma] || cocount[sigma] != 1 {
            continue;
        }
        let tau = *ix.cofacets[sigma].iter().find(|&&t| alive[t]).expect("one live coface");
        alive[sigma] = false;
        alive[tau] = false;
        remaining -= 2;
        for &f in ix.facets[tau].iter().chain(&ix.facets[sigma]) {
            if f != sigma {
                cocount[f] -= 1;
                if cocount[f] == 1 {
                    candidates.push(f);
                }
            }
        }
        out.push((ix.simplices[sigma].clone(), ix.simplices[tau].clone()));
    }
    (remaining == 1).then_some(out)
}

/// Greedy free-face collapses until a single vertex is left: one pass in a
/// fixed order, then `restarts` passes choosing free faces at random from
/// `seed`. `None` is inconclusive.
pub fn collapse_to_point(c: &SimplicialComplex, restarts: usize, seed: u64) -> Option<Vec<Collapse>> {
    if c.is_empty() {
        return None;
    }
    let ix = index(c);
    if let Some(seq) = attempt(&ix, None) {
        return Some(seq);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..restarts).find_map(|_| attempt(&ix, Some(&mut rng)))
}

/// Replays `seq` on `c`: each step removes a face whose only live proper
/// coface is the given one, and one vertex is left at the end.
pub fn verify_collapse(c: &SimplicialComplex, seq: &[Collapse]) -> bool {
    let mut alive: BTreeSet<Simplex> = (0..=c.dimension().unwrap_or(0)).flat_map(|d| c.simplices(d).iter().cloned()).collect();
    let vertices: Vec<u32> = c.simplices(0).iter().map(|s| s[0]).collect();
    let live_cofacets = |alive: &BTreeSet<Simplex>, s: &Simplex| {
        vertices.iter().filter(|v| s.binary_search(v).is_err()).filter(|&&v| alive.contains(&with(s, v))).count()
    };
    for (sigma, tau) in seq {
        let ok = tau.len() == sigma.len() + 1
            && sigma.iter().all(|v| tau.binary_search(v).is_ok())
            && alive.contains(sigma)
            && alive.contains(tau)
            && live_cofacets(&alive, sigma) == 1
            && live_cofacets(&alive, tau) == 0;
        if !ok {
            return false;
        }
        alive.remove(sigma);
        alive.remove(tau);
    }
    alive.len() == 1 && alive.iter().all(|s| s.len() == 1)
}
