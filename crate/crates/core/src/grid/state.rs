use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GridError;

/// A grid state: `st[c]` is the row of the point on vertical circle `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridState {
    st: Vec<u8>,
}

impl GridState {
    pub fn new(st: Vec<u8>) -> Result<Self, GridError> {
        let m = st.len();
        let mut seen = vec![false; m];
        for &r in &st {
            let r = r as usize;
            if r >= m || seen[r] {
                return Err(GridError::BadState);
            }
            seen[r] = true;
        }
        Ok(GridState { st })
    }

    pub(crate) fn from_vec_unchecked(st: Vec<u8>) -> Self {
        GridState { st }
    }

    pub fn rows(&self) -> &[u8] {
        &self.st
    }

    pub fn row(&self, c: usize) -> usize {
        self.st[c] as usize
    }

    pub fn len(&self) -> usize {
        self.st.len()
    }

    pub fn is_empty(&self) -> bool {
        self.st.is_empty()
    }

    pub fn contains_point(&self, col: usize, row: usize) -> bool {
        self.st[col] as usize == row
    }

    /// 4 bits per entry, column 0 in the lowest nibble. Requires `m <= 16`.
    pub fn pack(&self) -> u64 {
        pack_rows(&self.st)
    }

    pub fn unpack(key: u64, m: usize) -> Self {
        GridState { st: unpack_rows(key, m) }
    }

    /// The inverse permutation, i.e. the state of the transposed grid.
    pub fn transposed(&self) -> GridState {
        let mut inv = vec![0u8; self.st.len()];
        for (c, &r) in self.st.iter().enumerate() {
            inv[r as usize] = c as u8;
        }
        GridState { st: inv }
    }
}

impl fmt::Display for GridState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.st.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

pub fn pack_rows(st: &[u8]) -> u64 {
    debug_assert!(st.len() <= 16);
    st.iter().enumerate().fold(0u64, |k, (c, &r)| k | ((r as u64) << (4 * c)))
}

pub fn unpack_rows(key: u64, m: usize) -> Vec<u8> {
    (0..m).map(|c| ((key >> (4 * c)) & 0xf) as u8).collect()
}

#[inline]
pub fn key_row(key: u64, c: usize) -> usize {
    ((key >> (4 * c)) & 0xf) as usize
}

/// Exchange the rows at columns `a` and `b` of a packed state.
#[inline]
pub fn key_swap(key: u64, a: usize, b: usize) -> u64 {
    let ra = (key >> (4 * a)) & 0xf;
    let rb = (key >> (4 * b)) & 0xf;
    let d = ra ^ rb;
    key ^ (d << (4 * a)) ^ (d << (4 * b))
}
