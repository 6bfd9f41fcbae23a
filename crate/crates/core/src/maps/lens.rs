//! Pentagons and triangles in a combined diagram.
//!
//! Everything here is in column form: the source and target grids agree
//! except in cell columns `line - 1` and `line`, and the combined diagram
//! draws two versions of vertical line `line` that cross twice. Markers that
//! change sides sit in the thin lens between the two curves. Heights are
//! measured in quarter units: horizontal line `k` is at `4k`, a marker in
//! row `t` at `4t + 2`.
//!
//! Below the crossing used by the maps the target curve runs west of the
//! source curve, so that crossing sits at the top of the arc of markers
//! moving east. Within the gap above that arc it can hug the top eastward
//! marker or the bottom westward one.

use serde::{Deserialize, Serialize};

use crate::grid::GridDiagram;

/// Where the crossing sits inside the gap between the two lens arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Placement {
    /// Just above the top marker moving east.
    HugEast,
    /// Just below the bottom marker moving west.
    HugWest,
}

#[derive(Clone, Debug)]
pub(crate) struct Lens {
    m: usize,
    line: usize,
    /// Crossing height in quarter units.
    cross: usize,
    /// Height in quarter units of the other crossing, just below the lowest
    /// eastward marker.
    upper: usize,
    /// Markers of cell columns `line - 1` and `line`, source then target.
    src_west: (usize, usize),
    src_east: (usize, usize),
    tgt_west: (usize, usize),
    tgt_east: (usize, usize),
    xs: Vec<usize>,
    os: Vec<usize>,
    west: Vec<usize>,
}

/// Marker counts of a candidate polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Hits {
    pub n_x: usize,
    pub n_o: usize,
}

/// The rows of the markers moving east and west across `line`.
fn movers(src: &GridDiagram, tgt: &GridDiagram, line: usize) -> (Vec<usize>, Vec<usize>) {
    let m = src.m();
    let w = (line + m - 1) % m;
    let e = line % m;
    let east = [src.xs()[w], src.os()[w]].into_iter().filter(|&r| r == tgt.xs()[e] || r == tgt.os()[e]).collect();
    let west = [src.xs()[e], src.os()[e]].into_iter().filter(|&r| r == tgt.xs()[w] || r == tgt.os()[w]).collect();
    (east, west)
}

impl Lens {
    /// `src` and `tgt` must agree outside cell columns `line - 1`, `line`,
    /// and at least one marker must move each way.
    pub(crate) fn new(src: &GridDiagram, tgt: &GridDiagram, line: usize, placement: Placement) -> Lens {
        let m = src.m();
        let w = (line + m - 1) % m;
        let e = line % m;
        let (east, west) = movers(src, tgt, e);
        let moving = |r: &usize| east.contains(r) || west.contains(r);
        let above = |t: usize| (1..m).map(|d| (t + d) % m).find(moving);
        let below = |t: usize| (1..m).map(|d| (t + m - d) % m).find(moving);
        let east_top = east
            .iter()
            .copied()
            .find(|&t| above(t).is_some_and(|r| west.contains(&r)))
            .expect("markers move both ways");
        let west_low = above(east_top).unwrap_or(east_top);
        let east_low = east.iter().copied().find(|&t| below(t).is_some_and(|r| west.contains(&r))).unwrap_or(east_top);
        let cross = match placement {
            Placement::HugEast => 4 * east_top + 3,
            Placement::HugWest => 4 * west_low + 1,
        };
        Lens {
            m,
            line: e,
            cross,
            upper: 4 * east_low + 1,
            src_west: (src.xs()[w], src.os()[w]),
            src_east: (src.xs()[e], src.os()[e]),
            tgt_west: (tgt.xs()[w], tgt.os()[w]),
            tgt_east: (tgt.xs()[e], tgt.os()[e]),
            xs: src.xs().to_vec(),
            os: src.os().to_vec(),
            west,
        }
    }

    fn count(markers: (usize, usize), keep: impl Fn(usize) -> bool, h: &mut Hits) {
        if keep(4 * markers.0 + 2) {
            h.n_x += 1;
        }
        if keep(4 * markers.1 + 2) {
            h.n_o += 1;
        }
    }

    /// Quarter-unit height relative to horizontal line `base`.
    fn rel4(&self, base: usize) -> impl Fn(usize) -> usize {
        let n = 4 * self.m;
        let b = 4 * base;
        move |v: usize| (v + n - b) % n
    }

    /// The pentagon west of the line with corners on vertical line `j`.
    pub(crate) fn west(&self, x: &[u8], j: usize) -> Option<Hits> {
        let m = self.m;
        let l = self.line;
        let rel = self.rel4(x[j] as usize);
        let top = rel(4 * x[l] as usize);
        let rc = rel(self.cross);
        if rc >= top {
            return None;
        }
        let mut h = Hits { n_x: 0, n_o: 0 };
        let last = (l + m - 1) % m;
        let mut u = j;
        loop {
            if u != j {
                let r = rel(4 * x[u] as usize);
                if r > 0 && r < top {
                    return None;
                }
            }
            if u == last {
                break;
            }
            Self::count((self.xs[u], self.os[u]), |t| rel(t) < top, &mut h);
            u = (u + 1) % m;
        }
        Self::count(self.tgt_west, |t| rel(t) < rc, &mut h);
        Self::count(self.src_west, |t| rel(t) > rc && rel(t) < top, &mut h);
        Some(h)
    }

    /// The pentagon east of the line with corners on vertical line `j`.
    pub(crate) fn east(&self, x: &[u8], j: usize) -> Option<Hits> {
        let m = self.m;
        let l = self.line;
        let rel = self.rel4(x[l] as usize);
        let top = rel(4 * x[j] as usize);
        let rc = rel(self.cross);
        if rc >= top {
            return None;
        }
        let mut h = Hits { n_x: 0, n_o: 0 };
        Self::count(self.src_east, |t| rel(t) < rc, &mut h);
        Self::count(self.tgt_east, |t| rel(t) > rc && rel(t) < top, &mut h);
        let mut u = (l + 1) % m;
        while u != j {
            let r = rel(4 * x[u] as usize);
            if r > 0 && r < top {
                return None;
            }
            Self::count((self.xs[u], self.os[u]), |t| rel(t) < top, &mut h);
            u = (u + 1) % m;
        }
        Some(h)
    }

    /// Empty pentagons from `x` through the crossing, as `(y, hits)`.
    pub(crate) fn pentagons(&self, x: &[u8]) -> Vec<(Vec<u8>, Hits)> {
        let mut out = Vec::new();
        for j in 0..self.m {
            if j == self.line {
                continue;
            }
            for h in [self.west(x, j), self.east(x, j)].into_iter().flatten() {
                let mut y = x.to_vec();
                y.swap(j, self.line);
                out.push((y, h));
            }
        }
        out
    }

    /// The triangle from `x` to itself with its base on the horizontal line
    /// through `x[line]`, inside the arc of westward markers, and its apex at
    /// the crossing above that arc; `None` if the line misses the arc.
    pub(crate) fn triangle(&self, x: &[u8]) -> Option<Hits> {
        let rel = self.rel4(0);
        let n = 4 * self.m;
        let from_cross = |v: usize| (rel(v) + n - self.cross) % n;
        let h = from_cross(4 * x[self.line] as usize);
        let apex = from_cross(self.upper);
        if h >= apex {
            return None;
        }
        let inside = |v: usize| self.west.contains(&(v / 4)) && (h..apex).contains(&from_cross(v));
        let mut hits = Hits { n_x: 0, n_o: 0 };
        Self::count(self.src_east, inside, &mut hits);
        Some(hits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Axis;

    #[test]
    fn crossing_sits_above_eastward_arc() {
        // columns 1 and 2 hold X1 O0 and X2 O3; rows 0, 1 move east
        let src = GridDiagram::new(vec![0, 1, 2, 3], vec![1, 0, 3, 2]).unwrap();
        let tgt = src.commute(Axis::Column, 1).unwrap();
        let east = Lens::new(&src, &tgt, 2, Placement::HugEast);
        let west = Lens::new(&src, &tgt, 2, Placement::HugWest);
        assert_eq!((east.cross, west.cross), (7, 9));
        assert_eq!(east.upper, 1);
    }
}
