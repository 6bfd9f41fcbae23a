use std::collections::BTreeMap;

use super::linalg::rank_of;
use super::FilteredComplex;

/// Dimensions of the homology of the associated graded complex, keyed by
/// `(maslov, alex2)`. Zero entries are omitted.
pub fn graded_homology_dims(c: &FilteredComplex) -> BTreeMap<(i32, i32), usize> {
    let b = c.basis();
    let mut rank: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for ((mas, a), range) in b.buckets() {
        let cols = range
            .filter(|&i| c.has_boundary(i as u32))
            .map(|i| c.boundary(i as u32).iter().copied().filter(|&t| b.grading(t).alex2 == a).collect::<Vec<u32>>());
        rank.insert((mas, a), rank_of(cols));
    }
    let mut dims = BTreeMap::new();
    for ((mas, a), range) in b.buckets() {
        let out = rank.get(&(mas, a)).copied().unwrap_or(0);
        let inc = rank.get(&(mas + 1, a)).copied().unwrap_or(0);
        let d = range.len() - out - inc;
        if d > 0 {
            dims.insert((mas, a), d);
        }
    }
    dims
}
