//! Sparse column echelon form over F2.

use rustc_hash::FxHashMap;

use super::chain::sym_diff;

/// Columns kept reduced so that their largest indices are distinct.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: FxHashMap<u32, Vec<u32>>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` against the stored columns; returns the remainder.
    pub fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        while let Some(&top) = v.last() {
            match self.pivots.get(&top) {
                Some(col) => v = sym_diff(&v, col),
                None => break,
            }
        }
        v
    }

    /// Insert a column; returns false if it was already in the span.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let r = self.reduce(v);
        match r.last() {
            Some(&top) => {
                self.pivots.insert(top, r);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: Vec<u32>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Stored (reduced) columns with their pivots.
    pub fn columns(&self) -> impl Iterator<Item = (u32, &Vec<u32>)> {
        self.pivots.iter().map(|(&k, v)| (k, v))
    }
}

/// Rank of a set of sparse F2 columns.
pub fn rank_of(cols: impl IntoIterator<Item = Vec<u32>>) -> usize {
    let mut e = Echelon::new();
    for c in cols {
        e.insert(c);
    }
    e.rank()
}
