//! Filtered Morse-style cancellation.
//!
//! A boundary entry `u -> v` between generators of equal alex2 is cancelled by
//! deleting both and setting `d'a = d a + <d a, v> d u` on the survivors. The
//! result is filtered chain homotopy equivalent to the input, so subquotient
//! homology questions have the same answers once the queried chains are
//! pushed through the projection `f(z) = z + <z, v> d u` (with `u`, `v`
//! dropped).

use super::chain::sym_diff;
use super::{F2Chain, FilteredComplex};

/// A reduced complex together with the images of the chains passed in.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub complex: FilteredComplex,
    pub chains: Vec<F2Chain>,
    pub cancelled_pairs: usize,
}

pub fn reduce(c: &FilteredComplex) -> FilteredComplex {
    reduce_with(c, Vec::new()).complex
}

pub fn reduce_with(c: &FilteredComplex, chains: Vec<F2Chain>) -> Reduction {
    let n = c.len();
    let b = c.basis();
    let mut bd: Vec<Vec<u32>> = (0..n as u32).map(|i| c.boundary(i).to_vec()).collect();
    let mut cobd: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, col) in bd.iter().enumerate() {
        for &t in col {
            cobd[t as usize].push(i as u32);
        }
    }
    let mut alive = vec![true; n];
    let mut chains: Vec<Vec<u32>> = chains.into_iter().map(|z| z.into_support()).collect();
    let mut pairs = 0usize;
    let alex = |i: u32| b.grading(i).alex2;

    loop {
        let mut changed = false;
        for u in 0..n as u32 {
            if !alive[u as usize] || !c.has_boundary(u) {
                continue;
            }
            let au = alex(u);
            // cheapest equal-filtration partner
            let mut best: Option<(usize, u32)> = None;
            for &v in &bd[u as usize] {
                if alex(v) == au {
                    let cost = cobd[v as usize].len();
                    if best.is_none_or(|(bc, _)| cost < bc) {
                        best = Some((cost, v));
                    }
                }
            }
            let Some((_, v)) = best else { continue };
            let du = std::mem::take(&mut bd[u as usize]);
            let users = std::mem::take(&mut cobd[v as usize]);
            for a in users {
                if a == u || !alive[a as usize] {
                    continue;
                }
                if bd[a as usize].binary_search(&v).is_err() {
                    continue;
                }
                let before = std::mem::take(&mut bd[a as usize]);
                let after = sym_diff(&before, &du);
                for &t in &after {
                    if before.binary_search(&t).is_err() {
                        cobd[t as usize].push(a);
                    }
                }
                bd[a as usize] = after;
            }
            for bi in std::mem::take(&mut cobd[u as usize]) {
                if alive[bi as usize] {
                    if let Ok(p) = bd[bi as usize].binary_search(&u) {
                        bd[bi as usize].remove(p);
                    }
                }
            }
            for z in chains.iter_mut() {
                if z.binary_search(&v).is_ok() {
                    *z = sym_diff(z, &du);
                }
                if let Ok(p) = z.binary_search(&u) {
                    z.remove(p);
                }
            }
            alive[u as usize] = false;
            alive[v as usize] = false;
            bd[v as usize].clear();
            pairs += 1;
            changed = true;
        }
        if !changed {
            break;
        }
    }

    let keep: Vec<u32> = (0..n as u32).filter(|&i| alive[i as usize]).collect();
    let (basis, new_index) = b.restrict(&keep);
    let remap = |v: &[u32]| -> Vec<u32> {
        // survivors keep their relative order, so the image stays sorted
        v.iter().map(|&t| new_index[t as usize]).collect()
    };
    let cols: Vec<Vec<u32>> = keep.iter().map(|&i| remap(&bd[i as usize])).collect();
    let has_boundary: Vec<bool> = keep.iter().map(|&i| c.has_boundary(i)).collect();
    let complex = FilteredComplex::from_parts(c, basis, cols, has_boundary);
    let chains = chains.iter().map(|z| F2Chain::from_sorted(remap(z))).collect();
    Reduction { complex, chains, cancelled_pairs: pairs }
}
