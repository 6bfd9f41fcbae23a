use serde::{Deserialize, Serialize};

/// An element of an F2 vector space given by its support (sorted indices).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct F2Chain {
    support: Vec<u32>,
}

impl F2Chain {
    pub fn zero() -> Self {
        F2Chain { support: Vec::new() }
    }

    pub fn single(i: u32) -> Self {
        F2Chain { support: vec![i] }
    }

    /// Build from indices in any order; repeated indices cancel in pairs.
    pub fn from_indices(mut v: Vec<u32>) -> Self {
        v.sort_unstable();
        F2Chain { support: cancel_pairs(v) }
    }

    /// Caller guarantees `v` is strictly increasing.
    pub fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        F2Chain { support: v }
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn into_support(self) -> Vec<u32> {
        self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.support.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.support.iter().copied()
    }

    pub fn add(&self, other: &F2Chain) -> F2Chain {
        F2Chain { support: sym_diff(&self.support, &other.support) }
    }

    pub fn add_assign(&mut self, other: &F2Chain) {
        self.support = sym_diff(&self.support, &other.support);
    }
}

pub(crate) fn cancel_pairs(v: Vec<u32>) -> Vec<u32> {
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(v[i]);
        }
        i = j;
    }
    out
}

/// Symmetric difference of two strictly increasing sequences.
pub(crate) fn sym_diff(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
