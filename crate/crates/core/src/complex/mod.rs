//! The filtered tilde grid complex over F2.

mod chain;
mod enumerate;
mod homology;
pub mod linalg;
mod quotient;
mod reduce;

pub use chain::F2Chain;
pub use homology::graded_homology_dims;
pub use quotient::{is_boundary_in_quotient, QuotientWindow};
pub use reduce::{reduce, reduce_with, Reduction};

use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ComplexError;
use crate::grid::rectangle_sweep;
use crate::grid::state::{key_row, key_swap, unpack_rows};
use crate::grid::{Bigrading, GradingTables, GridDiagram, GridState};

pub const DEFAULT_MAX_STATES: u64 = 50_000_000;
pub const DEFAULT_REDUCE_THRESHOLD: usize = 200_000;

/// Which generators to materialize: every state whose Maslov grading lies in
/// `maslov_lo..=maslov_hi`. The Alexander range is always complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub maslov_lo: i32,
    pub maslov_hi: i32,
}

impl Window {
    /// The three Maslov levels needed for questions about a class in degree `d`.
    pub fn around(d: i32) -> Self {
        Window { maslov_lo: d - 1, maslov_hi: d + 1 }
    }

    pub fn contains(&self, maslov: i32) -> bool {
        self.maslov_lo <= maslov && maslov <= self.maslov_hi
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub window: Option<Window>,
    pub max_states: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { window: None, max_states: DEFAULT_MAX_STATES }
    }
}

/// Generators indexed contiguously by `(maslov, alex2, packed state)`.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    m: usize,
    keys: Vec<u64>,
    gradings: Vec<Bigrading>,
    buckets: BTreeMap<(i32, i32), Range<usize>>,
}

impl GradedBasis {
    fn from_buckets(m: usize, buckets: BTreeMap<(i32, i32), Vec<u64>>) -> Self {
        let total = buckets.values().map(|v| v.len()).sum();
        let mut keys = Vec::with_capacity(total);
        let mut gradings = Vec::with_capacity(total);
        let mut ranges = BTreeMap::new();
        for ((mas, a), mut v) in buckets {
            v.sort_unstable();
            let start = keys.len();
            gradings.extend(std::iter::repeat_n(Bigrading { maslov: mas, alex2: a }, v.len()));
            keys.extend(v);
            ranges.insert((mas, a), start..keys.len());
        }
        GradedBasis { m, keys, gradings, buckets: ranges }
    }

    /// Keep only the listed indices (ascending), preserving order.
    pub(crate) fn restrict(&self, keep: &[u32]) -> (GradedBasis, Vec<u32>) {
        let mut new_index = vec![u32::MAX; self.keys.len()];
        let mut keys = Vec::with_capacity(keep.len());
        let mut gradings = Vec::with_capacity(keep.len());
        let mut buckets: BTreeMap<(i32, i32), Range<usize>> = BTreeMap::new();
        for &i in keep {
            let g = self.gradings[i as usize];
            new_index[i as usize] = keys.len() as u32;
            let e = buckets.entry((g.maslov, g.alex2)).or_insert(keys.len()..keys.len());
            e.end = keys.len() + 1;
            keys.push(self.keys[i as usize]);
            gradings.push(g);
        }
        (GradedBasis { m: self.m, keys, gradings, buckets }, new_index)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn key(&self, i: u32) -> u64 {
        self.keys[i as usize]
    }

    pub fn state(&self, i: u32) -> GridState {
        GridState::new(unpack_rows(self.keys[i as usize], self.m)).expect("stored keys are permutations")
    }

    pub fn grading(&self, i: u32) -> Bigrading {
        self.gradings[i as usize]
    }

    pub fn bucket(&self, maslov: i32, alex2: i32) -> Range<usize> {
        self.buckets.get(&(maslov, alex2)).cloned().unwrap_or(0..0)
    }

    pub fn buckets(&self) -> impl Iterator<Item = ((i32, i32), Range<usize>)> + '_ {
        self.buckets.iter().map(|(&k, r)| (k, r.clone()))
    }

    /// Indices of all generators in Maslov degree `maslov`, in ascending alex2.
    pub fn level(&self, maslov: i32) -> Range<usize> {
        let mut it = self.buckets.range((maslov, i32::MIN)..=(maslov, i32::MAX)).map(|(_, r)| r.clone());
        match it.next() {
            None => 0..0,
            Some(first) => {
                let end = it.next_back().map(|r| r.end).unwrap_or(first.end);
                first.start..end
            }
        }
    }

    pub fn index_of_key(&self, key: u64, g: Bigrading) -> Option<u32> {
        let r = self.buckets.get(&(g.maslov, g.alex2))?;
        self.keys[r.clone()].binary_search(&key).ok().map(|p| (r.start + p) as u32)
    }

    pub fn maslov_levels(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.buckets.keys().map(|k| k.0).collect();
        v.dedup();
        v
    }
}

/// The filtered complex of a grid, possibly restricted to a window of
/// Maslov degrees. Boundaries are stored only for generators whose targets
/// are materialized.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    grid: GridDiagram,
    tables: GradingTables,
    basis: GradedBasis,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    has_boundary: Vec<bool>,
    window: Option<Window>,
    alex_min: i32,
    alex_max: i32,
    reduced: bool,
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

impl FilteredComplex {
    pub fn grid(&self) -> &GridDiagram {
        &self.grid
    }

    pub fn tables(&self) -> &GradingTables {
        &self.tables
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn window(&self) -> Option<Window> {
        self.window
    }

    pub fn alex_min(&self) -> i32 {
        self.alex_min
    }

    pub fn alex_max(&self) -> i32 {
        self.alex_max
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Number of pages after which the spectral sequence is constant.
    pub fn filtration_width(&self) -> usize {
        ((self.alex_max - self.alex_min) / 2 + 1) as usize
    }

    pub fn has_boundary(&self, i: u32) -> bool {
        self.has_boundary[i as usize]
    }

    /// Boundary of generator `i` as sorted indices.
    pub fn boundary(&self, i: u32) -> &[u32] {
        let i = i as usize;
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn num_boundary_entries(&self) -> usize {
        self.targets.len()
    }

    /// Whether every generator of Maslov degree `maslov` is present.
    pub fn materializes(&self, maslov: i32) -> bool {
        self.window.is_none_or(|w| w.contains(maslov))
    }

    pub fn index_of(&self, x: &GridState) -> Option<u32> {
        if x.len() != self.grid.m() {
            return None;
        }
        self.basis.index_of_key(x.pack(), self.tables.bigrading(x.rows()))
    }

    pub fn chain_of(&self, states: &[GridState]) -> Result<F2Chain, ComplexError> {
        let mut v = Vec::with_capacity(states.len());
        for s in states {
            v.push(self.index_of(s).ok_or(ComplexError::UnknownGenerator)?);
        }
        Ok(F2Chain::from_indices(v))
    }

    /// Apply the differential to a chain.
    pub fn apply(&self, z: &F2Chain) -> Result<F2Chain, ComplexError> {
        let mut v = Vec::new();
        for i in z.iter() {
            if !self.has_boundary(i) {
                return Err(ComplexError::WindowTooNarrow);
            }
            v.extend_from_slice(self.boundary(i));
        }
        Ok(F2Chain::from_indices(v))
    }

    pub(crate) fn from_parts(
        source: &FilteredComplex,
        basis: GradedBasis,
        cols: Vec<Vec<u32>>,
        has_boundary: Vec<bool>,
    ) -> FilteredComplex {
        let mut offsets = Vec::with_capacity(cols.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(cols.iter().map(|c| c.len()).sum());
        for c in cols {
            targets.extend(c);
            offsets.push(targets.len());
        }
        FilteredComplex {
            grid: source.grid.clone(),
            tables: source.tables.clone(),
            basis,
            offsets,
            targets,
            has_boundary,
            window: source.window,
            alex_min: source.alex_min,
            alex_max: source.alex_max,
            reduced: true,
        }
    }
}

/// Build the full complex of `g`.
pub fn build_complex(g: &GridDiagram) -> Result<FilteredComplex, ComplexError> {
    build_complex_with(g, BuildOptions::default())
}

pub fn build_complex_with(g: &GridDiagram, opts: BuildOptions) -> Result<FilteredComplex, ComplexError> {
    let m = g.m();
    if m > 16 {
        return Err(ComplexError::TooLarge(m));
    }
    let total = factorial(m);
    if opts.window.is_none() && total > opts.max_states as u128 {
        return Err(ComplexError::Capacity { states: total, cap: opts.max_states as u128 });
    }
    let tables = g.tables();
    let window = opts.window;
    let keep = |mas: i32| window.is_none_or(|w| w.contains(mas));
    let en = enumerate::enumerate(&tables, &keep, opts.max_states);
    if en.overflow {
        return Err(ComplexError::Capacity { states: en.stored as u128, cap: opts.max_states as u128 });
    }
    let buckets: BTreeMap<(i32, i32), Vec<u64>> = en.buckets.into_iter().collect();
    let basis = GradedBasis::from_buckets(m, buckets);

    let xs: Vec<u8> = g.xs().iter().map(|&r| r as u8).collect();
    let os: Vec<u8> = g.os().iter().map(|&r| r as u8).collect();
    let delta: Vec<i32> = tables.cnt_x.iter().zip(&tables.cnt_o).map(|(x, o)| x - o).collect();
    let lower_present = |mas: i32| window.is_none_or(|w| w.contains(mas - 1));

    let cols: Vec<Option<Vec<u32>>> = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let gr = basis.gradings[i];
            if !lower_present(gr.maslov) {
                return None;
            }
            let key = basis.keys[i];
            let st = unpack_rows(key, m);
            let mut out = Vec::new();
            rectangle_sweep(m, &xs, &os, &st, false, |a, b| {
                let ra = key_row(key, a);
                let rb = key_row(key, b);
                let da = delta[a * m + rb] + delta[b * m + ra] - delta[a * m + ra] - delta[b * m + rb];
                let y = key_swap(key, a, b);
                let target = Bigrading { maslov: gr.maslov - 1, alex2: gr.alex2 + da };
                let j = basis.index_of_key(y, target).expect("rectangle target must be a materialized state");
                out.push(j);
            });
            Some(F2Chain::from_indices(out).into_support())
        })
        .collect();

    let mut offsets = Vec::with_capacity(cols.len() + 1);
    let mut has_boundary = Vec::with_capacity(cols.len());
    offsets.push(0);
    let mut targets = Vec::new();
    for c in cols {
        has_boundary.push(c.is_some());
        if let Some(c) = c {
            targets.extend(c);
        }
        offsets.push(targets.len());
    }
    Ok(FilteredComplex {
        grid: g.clone(),
        tables,
        basis,
        offsets,
        targets,
        has_boundary,
        window,
        alex_min: en.alex_min,
        alex_max: en.alex_max,
        reduced: false,
    })
}

/// The tilde differential of a single state, optionally also blocking X's.
pub fn differential(g: &GridDiagram, x: &GridState, block_x: bool) -> Vec<GridState> {
    crate::grid::differential_states(g, x, block_x)
}
