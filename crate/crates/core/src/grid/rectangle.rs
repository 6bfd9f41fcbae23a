use super::{GridDiagram, GridState};

/// A rectangle on the torus from `from` to `to`.
///
/// Its lower-left corner is `(c1, r1)` and its upper-right corner `(c2, r2)`,
/// both points of `from`; it spans columns `c1..c2` and rows `r1..r2`
/// cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectangle {
    pub from: GridState,
    pub to: GridState,
    pub c1: usize,
    pub c2: usize,
    pub r1: usize,
    pub r2: usize,
    pub n_x: usize,
    pub n_o: usize,
    pub interior_hits: usize,
}

impl Rectangle {
    pub fn is_empty(&self) -> bool {
        self.interior_hits == 0
    }
}

/// Marker and interior-point counts of the rectangle with corners at the
/// points of `st` on columns `c1` and `c2`.
pub(crate) fn rect_counts(g: &GridDiagram, st: &[u8], c1: usize, c2: usize) -> (usize, usize, usize) {
    let m = g.m();
    let base = st[c1] as usize;
    let rel = |r: usize| (r + m - base) % m;
    let h = rel(st[c2] as usize);
    let w = (c2 + m - c1) % m;
    let (mut nx, mut no, mut hits) = (0, 0, 0);
    for k in 0..w {
        let u = (c1 + k) % m;
        if rel(g.xs()[u]) < h {
            nx += 1;
        }
        if rel(g.os()[u]) < h {
            no += 1;
        }
        if k > 0 {
            let t = rel(st[u] as usize);
            if t > 0 && t < h {
                hits += 1;
            }
        }
    }
    (nx, no, hits)
}

fn make(g: &GridDiagram, x: &GridState, c1: usize, c2: usize) -> Rectangle {
    let mut st = x.rows().to_vec();
    let (n_x, n_o, interior_hits) = rect_counts(g, &st, c1, c2);
    st.swap(c1, c2);
    Rectangle {
        from: x.clone(),
        to: GridState::from_vec_unchecked(st),
        c1,
        c2,
        r1: x.row(c1),
        r2: x.row(c2),
        n_x,
        n_o,
        interior_hits,
    }
}

/// Every rectangle starting at `x`, empty or not.
pub fn rectangles_from(g: &GridDiagram, x: &GridState) -> Vec<Rectangle> {
    let m = g.m();
    let mut out = Vec::with_capacity(m * (m - 1));
    for c1 in 0..m {
        for c2 in 0..m {
            if c1 != c2 {
                out.push(make(g, x, c1, c2));
            }
        }
    }
    out
}

/// `Rect(x, y)`: empty unless the states differ in exactly two columns,
/// otherwise the two complementary rectangles.
pub fn rectangles_between(g: &GridDiagram, x: &GridState, y: &GridState) -> Vec<Rectangle> {
    let diff: Vec<usize> = (0..g.m()).filter(|&c| x.row(c) != y.row(c)).collect();
    if diff.len() != 2 {
        return Vec::new();
    }
    let (a, b) = (diff[0], diff[1]);
    if x.row(a) != y.row(b) || x.row(b) != y.row(a) {
        return Vec::new();
    }
    vec![make(g, x, a, b), make(g, x, b, a)]
}

/// Calls `f(c1, c2)` for every empty rectangle from `st` that avoids the O's
/// (and the X's when `block_x`). O(m^2) sweep.
#[inline]
pub(crate) fn for_each_empty_rect(
    m: usize,
    xs: &[u8],
    os: &[u8],
    st: &[u8],
    block_x: bool,
    mut f: impl FnMut(usize, usize),
) {
    for c1 in 0..m {
        let base = st[c1] as usize;
        let rel = |r: u8| (r as usize + m - base) % m;
        // heights allowed so far: a corner at relative height h is fine
        // while h <= bound
        let mut bound = rel(os[c1]);
        if block_x {
            bound = bound.min(rel(xs[c1]));
        }
        if bound == 0 {
            continue;
        }
        let mut u = c1 + 1;
        if u == m {
            u = 0;
        }
        while u != c1 {
            let h = rel(st[u]);
            if h <= bound {
                f(c1, u);
            }
            bound = bound.min(h).min(rel(os[u]));
            if block_x {
                bound = bound.min(rel(xs[u]));
            }
            if bound == 0 {
                break;
            }
            u += 1;
            if u == m {
                u = 0;
            }
        }
    }
}

/// The tilde differential of `x` as a sorted list of states.
pub fn differential_states(g: &GridDiagram, x: &GridState, block_x: bool) -> Vec<GridState> {
    let xs: Vec<u8> = g.xs().iter().map(|&r| r as u8).collect();
    let os: Vec<u8> = g.os().iter().map(|&r| r as u8).collect();
    let mut out: Vec<Vec<u8>> = Vec::new();
    for_each_empty_rect(g.m(), &xs, &os, x.rows(), block_x, |a, b| {
        let mut y = x.rows().to_vec();
        y.swap(a, b);
        out.push(y);
    });
    out.sort_unstable();
    let mut res = Vec::new();
    let mut i = 0;
    while i < out.len() {
        let mut j = i;
        while j < out.len() && out[j] == out[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            res.push(GridState::from_vec_unchecked(out[i].clone()));
        }
        i = j;
    }
    res
}
