//! The birth map `e ∘ ψ ∘ Π`.
//!
//! In `G+` the new unknot is the 2x2 block directly southeast of an O,
//! called `O_1`, sitting in cell `(col, row)`: `O_2` at `(col + 1, row - 1)`,
//! `X_3` at `(col + 2, row - 1)`, `X_2` at `(col + 1, row - 2)` and `O_3` at
//! `(col + 2, row - 2)`, all indices mod `m`. The lattice points are
//! `a = (col + 1, row)` and `b = (col + 2, row - 1)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::isotopy::odd_terms;
use super::{assemble, ChainMapRecord, ImageContract, MapKind, Shift};
use crate::complex::FilteredComplex;
use crate::error::{GridError, MapError};
use crate::grid::{GridDiagram, GridState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BirthPattern {
    /// Cell of `O_1`.
    pub col: usize,
    pub row: usize,
    pub m: usize,
}

impl BirthPattern {
    fn c(&self, k: usize) -> usize {
        (self.col + k) % self.m
    }

    fn r(&self, k: usize) -> usize {
        (self.row + self.m - k) % self.m
    }

    /// The point `a`, as (vertical line, horizontal line).
    pub fn a(&self) -> (usize, usize) {
        (self.c(1), self.row)
    }

    pub fn b(&self) -> (usize, usize) {
        (self.c(2), self.r(1))
    }

    /// Index in `G-` of a surviving cell column or vertical line of `G+`.
    fn col_index(&self, u: usize) -> usize {
        let (m, n) = (self.m as i64, self.m as i64 - 2);
        let f = (u as i64 - self.col as i64 - 3).rem_euclid(m);
        (f + self.col as i64 + 1).rem_euclid(n) as usize
    }

    /// Index in `G-` of a surviving cell row or horizontal line of `G+`.
    fn row_index(&self, t: usize) -> usize {
        let (m, n) = (self.m as i64, self.m as i64 - 2);
        let f = (t as i64 - self.row as i64).rem_euclid(m);
        (f + self.row as i64 - 2).rem_euclid(n) as usize
    }

    /// `G-`: delete cell columns `col + 1`, `col + 2` and cell rows
    /// `row - 2`, `row - 1`.
    pub fn apply(&self, g: &GridDiagram) -> GridDiagram {
        let n = self.m - 2;
        let (mut xs, mut os) = (vec![0; n], vec![0; n]);
        for u in 0..self.m {
            if u == self.c(1) || u == self.c(2) {
                continue;
            }
            xs[self.col_index(u)] = self.row_index(g.xs()[u]);
            os[self.col_index(u)] = self.row_index(g.os()[u]);
        }
        GridDiagram::new(xs, os).expect("deleting the block keeps a grid")
    }

    /// `e`: remove `a` and `b` from a state that contains both.
    pub fn e(&self, x: &[u8]) -> GridState {
        let mut st = vec![0u8; self.m - 2];
        for u in 0..self.m {
            if u == self.c(1) || u == self.c(2) {
                continue;
            }
            st[self.col_index(u)] = self.row_index(x[u] as usize) as u8;
        }
        GridState::from_vec_unchecked(st)
    }

    fn has(&self, x: &[u8], p: (usize, usize)) -> bool {
        x[p.0] as usize == p.1
    }

    /// `ψ(x)` for `x ∈ NB`, before cancellation.
    fn psi(&self, g: &GridDiagram, x: &[u8]) -> Vec<Vec<u8>> {
        let m = self.m;
        let a = self.a();
        let b = self.b();
        let o_in = [(self.c(1), self.r(1)), (self.c(2), self.r(2))];
        let x_in = [(self.c(1), self.r(2)), (self.c(2), self.r(1))];
        let mut out = Vec::new();
        for c1 in 0..m {
            for c2 in 0..m {
                if c1 == c2 {
                    continue;
                }
                let mut y = x.to_vec();
                y.swap(c1, c2);
                if !self.has(&y, a) {
                    continue;
                }
                let base = x[c1] as usize;
                let rel = |t: usize| (t + m - base) % m;
                let h = rel(x[c2] as usize);
                let w = (c2 + m - c1) % m;
                let cell_in = |(u, t): (usize, usize)| (u + m - c1) % m < w && rel(t) < h;
                let pt_in = |(u, t): (usize, usize)| {
                    let du = (u + m - c1) % m;
                    du > 0 && du < w && rel(t) > 0 && rel(t) < h
                };
                let inner: Vec<usize> = (0..m).filter(|&u| pt_in((u, x[u] as usize))).collect();
                if inner.len() != 1 || (inner[0], x[inner[0]] as usize) != b {
                    continue;
                }
                let os: Vec<(usize, usize)> = (0..m).map(|u| (u, g.os()[u])).filter(|&p| cell_in(p)).collect();
                if os.len() != 2 || !o_in.iter().all(|p| os.contains(p)) {
                    continue;
                }
                if !x_in.iter().all(|&p| cell_in(p)) {
                    continue;
                }
                out.push(y);
            }
        }
        out
    }
}

/// The birth block whose `O_1` sits in cell `(col, row)` of `g`.
pub fn find_birth(g: &GridDiagram, row: usize, col: usize) -> Result<BirthPattern, GridError> {
    let m = g.m();
    let missing = || GridError::PatternNotFound(format!("no birth block southeast of cell ({col}, {row})"));
    if m < 4 || row >= m || col >= m {
        return Err(missing());
    }
    let p = BirthPattern { col, row, m };
    let ok = g.os()[col] == row
        && g.os()[p.c(1)] == p.r(1)
        && g.xs()[p.c(2)] == p.r(1)
        && g.xs()[p.c(1)] == p.r(2)
        && g.os()[p.c(2)] == p.r(2);
    if ok {
        Ok(p)
    } else {
        Err(missing())
    }
}

/// The birth map `C(G+) -> C(G-)` for the block southeast of the O in
/// cell `(col, row)`.
pub fn birth_map(
    source: Arc<FilteredComplex>,
    target: Arc<FilteredComplex>,
    row: usize,
    col: usize,
) -> Result<ChainMapRecord, MapError> {
    let gp = source.grid().clone();
    let p = find_birth(&gp, row, col)?;
    if target.grid() != &p.apply(&gp) {
        return Err(MapError::Unrelated("target is not the diagram with the birth block removed".into()));
    }
    let shift = Shift { maslov: -1, alex2: 0 };
    assemble(MapKind::Birth, source, target, shift, ImageContract::Exact, |x| {
        let st = x.rows();
        if !p.has(st, p.b()) || p.has(st, p.a()) {
            return Vec::new();
        }
        odd_terms(p.psi(&gp, st).iter().map(|y| p.e(y)).collect())
    })
}
