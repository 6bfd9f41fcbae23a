//! Snail domains around the distinguished point of a stabilization.
//!
//! A domain from `x` to `y` is a multiplicity per cell whose corner jumps are
//! `+1` at points of `x` and `-1` at points of `y`. Two domains with the same
//! ends differ by whole rows and columns, so a domain is a fixed particular
//! solution plus row and column offsets. Each prescribed cell value becomes a
//! difference equation between a row offset and a column offset, solved with
//! a weighted union-find.

use serde::{Deserialize, Serialize};

use crate::grid::{GridDiagram, GridState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SnailKind {
    /// Out of the left: `c` is a corner of the source, the southeast square
    /// at `c` has multiplicity `k - 1`.
    #[serde(rename = "oL")]
    OutLeft,
    /// Into the left: `c` is a corner of the target, the northeast square
    /// at `c` has multiplicity `k - 1`.
    #[serde(rename = "iL")]
    IntoLeft,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnailDomain {
    /// `2k + 1`, or 1 for the trivial domain.
    pub complexity: usize,
    /// Multiplicity of cell `(c, r)` at index `c * m + r`.
    pub multiplicities: Vec<u32>,
    pub n_x: usize,
    pub n_o: usize,
}

impl SnailDomain {
    pub fn multiplicity(&self, m: usize, col: usize, row: usize) -> u32 {
        self.multiplicities[col * m + row]
    }

    /// The four squares around the lattice point `(l, r)`: NE, NW, SW, SE.
    pub fn around(&self, m: usize, l: usize, r: usize) -> [u32; 4] {
        let lw = (l + m - 1) % m;
        let rs = (r + m - 1) % m;
        [
            self.multiplicity(m, l, r),
            self.multiplicity(m, lw, r),
            self.multiplicity(m, lw, rs),
            self.multiplicity(m, l, rs),
        ]
    }
}

#[derive(Clone)]
struct Potentials {
    parent: Vec<usize>,
    diff: Vec<i32>,
}

impl Potentials {
    fn new(n: usize) -> Self {
        Potentials { parent: (0..n).collect(), diff: vec![0; n] }
    }

    fn find(&mut self, v: usize) -> (usize, i32) {
        let p = self.parent[v];
        if p == v {
            return (v, 0);
        }
        let (root, d) = self.find(p);
        self.parent[v] = root;
        self.diff[v] += d;
        (root, self.diff[v])
    }

    /// Impose `pot(a) - pot(b) = w`; false on contradiction.
    fn relate(&mut self, a: usize, b: usize, w: i32) -> bool {
        let (ra, da) = self.find(a);
        let (rb, db) = self.find(b);
        if ra == rb {
            return da - db == w;
        }
        self.parent[ra] = rb;
        self.diff[ra] = w - da + db;
        true
    }

    /// `pot(a) - pot(b)` if determined.
    fn known(&mut self, a: usize, b: usize) -> Option<i32> {
        let (ra, da) = self.find(a);
        let (rb, db) = self.find(b);
        (ra == rb).then_some(da - db)
    }
}

struct Solver<'a> {
    m: usize,
    os: &'a [usize],
    /// Particular domain from `x` to `y`.
    base: Vec<i32>,
    /// Cell allowed to carry an O.
    free_o: (usize, usize),
}

#[derive(Clone, Copy)]
enum Pattern {
    Fixed([i32; 4]),
    /// A moved source point: NE or SW carries 1.
    Source,
    /// A moved target point: NW or SE carries 1.
    Target,
}

const NE_ONE: [i32; 4] = [1, 0, 0, 0];
const SW_ONE: [i32; 4] = [0, 0, 1, 0];
const NW_ONE: [i32; 4] = [0, 1, 0, 0];
const SE_ONE: [i32; 4] = [0, 0, 0, 1];

impl Solver<'_> {
    fn cells(&self, l: usize, r: usize) -> [(usize, usize); 4] {
        let m = self.m;
        let lw = (l + m - 1) % m;
        let rs = (r + m - 1) % m;
        [(l, r), (lw, r), (lw, rs), (l, rs)]
    }

    fn impose(&self, p: &mut Potentials, cell: (usize, usize), v: i32) -> bool {
        let (c, r) = cell;
        p.relate(r, self.m + c, v - self.base[c * self.m + r])
    }

    fn value(&self, p: &mut Potentials, cell: (usize, usize)) -> Option<i32> {
        let (c, r) = cell;
        p.known(r, self.m + c).map(|d| d + self.base[c * self.m + r])
    }

    fn impose_all(&self, p: &mut Potentials, l: usize, r: usize, vals: [i32; 4]) -> bool {
        self.cells(l, r).iter().zip(vals).all(|(&cell, v)| self.impose(p, cell, v))
    }

    fn search(&self, p: Potentials, mut todo: Vec<(usize, usize, Pattern)>, out: &mut Vec<Vec<i32>>) {
        let mut p = p;
        loop {
            let mut progressed = false;
            let mut i = 0;
            while i < todo.len() {
                let (l, r, pat) = todo[i];
                let cells = self.cells(l, r);
                let vals: Vec<Option<i32>> = cells.iter().map(|&c| self.value(&mut p, c)).collect();
                if vals.iter().all(|v| v.is_some()) {
                    let v: Vec<i32> = vals.into_iter().flatten().collect();
                    let v = [v[0], v[1], v[2], v[3]];
                    let ok = match pat {
                        Pattern::Fixed(f) => f == v,
                        Pattern::Source => v == NE_ONE || v == SW_ONE,
                        Pattern::Target => v == NW_ONE || v == SE_ONE,
                    };
                    if !ok {
                        return;
                    }
                    todo.swap_remove(i);
                    progressed = true;
                } else if let Pattern::Fixed(f) = pat {
                    if !self.impose_all(&mut p, l, r, f) {
                        return;
                    }
                    todo.swap_remove(i);
                    progressed = true;
                } else {
                    i += 1;
                }
            }
            if todo.is_empty() {
                break;
            }
            if !progressed {
                let (l, r, pat) = todo.pop().unwrap();
                let options = match pat {
                    Pattern::Source => [NE_ONE, SW_ONE],
                    Pattern::Target => [NW_ONE, SE_ONE],
                    Pattern::Fixed(f) => [f, f],
                };
                for vals in options {
                    let mut q = p.clone();
                    if self.impose_all(&mut q, l, r, vals) {
                        self.search(q, todo.clone(), out);
                    }
                }
                return;
            }
        }
        let m = self.m;
        let mut d = vec![0i32; m * m];
        for c in 0..m {
            for r in 0..m {
                match self.value(&mut p, (c, r)) {
                    Some(v) => d[c * m + r] = v,
                    None => return,
                }
            }
        }
        if d.iter().any(|&v| v < 0) {
            return;
        }
        for c in 0..m {
            if (c, self.os[c]) != self.free_o && d[c * m + self.os[c]] != 0 {
                return;
            }
        }
        out.push(d);
    }
}

/// A domain from `x` to `y` with multiplicity 0 on row 0, for use as the
/// particular solution.
fn particular(m: usize, x: &[u8], y: &[u8]) -> Vec<i32> {
    let mut xcol = vec![0usize; m];
    let mut ycol = vec![0usize; m];
    for c in 0..m {
        xcol[x[c] as usize] = c;
        ycol[y[c] as usize] = c;
    }
    let mut d = vec![0i32; m * m];
    for r in 1..m {
        let (a, b) = (xcol[r], ycol[r]);
        let w = (b + m - a) % m;
        for c in 0..m {
            let inside = (c + m - a) % m < w;
            d[c * m + r] = d[c * m + r - 1] + inside as i32;
        }
    }
    d
}

/// All snail domains of `kind` from `x` to `y` around the lattice point `c`
/// of a grid in X:SE position, with complexity at most `max_complexity`.
pub fn snail_domains_between(
    g: &GridDiagram,
    c: (usize, usize),
    x: &GridState,
    y: &GridState,
    kind: SnailKind,
    max_complexity: usize,
) -> Vec<SnailDomain> {
    let m = g.m();
    let (xr, yr) = (x.rows(), y.rows());
    let (cl, cr) = c;
    let moved = (0..m).filter(|&i| xr[i] != yr[i]).count();
    let c_in = |s: &[u8]| s[cl] as usize == cr;
    if moved == 0 {
        if !c_in(xr) {
            return Vec::new();
        }
        return vec![SnailDomain { complexity: 1, multiplicities: vec![0; m * m], n_x: 0, n_o: 0 }];
    }
    if moved < 3 || moved % 2 == 0 || moved > max_complexity {
        return Vec::new();
    }
    let (from_ok, to_ok) = match kind {
        SnailKind::OutLeft => (c_in(xr), !c_in(yr)),
        SnailKind::IntoLeft => (!c_in(xr), c_in(yr)),
    };
    if !from_ok || !to_ok {
        return Vec::new();
    }
    let k = ((moved - 1) / 2) as i32;
    let profile = match kind {
        SnailKind::OutLeft => [k, k, k, k - 1],
        SnailKind::IntoLeft => [k - 1, k, k, k],
    };
    let solver = Solver { m, os: g.os(), base: particular(m, xr, yr), free_o: ((cl + m - 1) % m, cr) };
    let mut todo = Vec::with_capacity(2 * m);
    for i in 0..m {
        let (a, b) = (xr[i] as usize, yr[i] as usize);
        if i == cl && (a == cr || b == cr) {
            let other = if a == cr { b } else { a };
            todo.push((i, cr, Pattern::Fixed(profile)));
            if other != cr {
                let pat = if a == cr { Pattern::Target } else { Pattern::Source };
                todo.push((i, other, pat));
            }
            continue;
        }
        if a == b {
            todo.push((i, a, Pattern::Fixed([0; 4])));
        } else {
            todo.push((i, a, Pattern::Source));
            todo.push((i, b, Pattern::Target));
        }
    }
    let mut found = Vec::new();
    solver.search(Potentials::new(2 * m), todo, &mut found);
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|d| {
            let n_x = (0..m).filter(|&i| d[i * m + g.xs()[i]] > 0).map(|i| d[i * m + g.xs()[i]] as usize).sum();
            let n_o = (0..m).filter(|&i| d[i * m + g.os()[i]] > 0).map(|i| d[i * m + g.os()[i]] as usize).sum();
            SnailDomain { complexity: moved, multiplicities: d.into_iter().map(|v| v as u32).collect(), n_x, n_o }
        })
        .collect()
}

/// Every snail domain of `kind` starting at `x`, paired with its target.
pub fn enumerate_snail_domains(
    g: &GridDiagram,
    c: (usize, usize),
    x: &GridState,
    kind: SnailKind,
    max_complexity: usize,
) -> Vec<(GridState, SnailDomain)> {
    let mut out = Vec::new();
    for y in all_states(g.m()) {
        for d in snail_domains_between(g, c, x, &y, kind, max_complexity) {
            out.push((y.clone(), d));
        }
    }
    out
}

/// All `m!` states in lexicographic order.
pub(crate) fn all_states(m: usize) -> Vec<GridState> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..m as u8).collect();
    loop {
        out.push(GridState::from_vec_unchecked(cur.clone()));
        // next permutation
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
