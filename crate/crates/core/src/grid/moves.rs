//! Cromwell moves and the symmetries of the torus used to reduce one move to another.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{inverse, GridDiagram, GridState};
use crate::error::GridError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    Row,
    Column,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Row => "row",
            Axis::Column => "col",
        }
    }
}

/// Legendrian stabilizations: the 2x2 block gets two X's and one O, with the
/// empty cell at the named corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabKind {
    #[serde(rename = "X:SE")]
    XSE,
    #[serde(rename = "X:NW")]
    XNW,
}

impl fmt::Display for StabKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabKind::XSE => "X:SE",
            StabKind::XNW => "X:NW",
        })
    }
}

impl FromStr for StabKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "X:SE" => Ok(StabKind::XSE),
            "X:NW" => Ok(StabKind::XNW),
            _ => Err(format!("unknown stabilization kind `{s}`")),
        }
    }
}

fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |t: usize| lo < t && t < hi;
    inside(b.0) != inside(b.1)
}

impl GridDiagram {
    fn from_parts(xs: Vec<usize>, os: Vec<usize>) -> GridDiagram {
        GridDiagram { m: xs.len(), xs, os }
    }

    /// Reflection in the diagonal: rows become columns.
    pub fn transpose(&self) -> GridDiagram {
        Self::from_parts(inverse(&self.xs), inverse(&self.os))
    }

    /// Rotation by pi about the centre of the grid.
    pub fn rotate(&self) -> GridDiagram {
        let m = self.m;
        let mut xs = vec![0; m];
        let mut os = vec![0; m];
        for u in 0..m {
            xs[m - 1 - u] = m - 1 - self.xs[u];
            os[m - 1 - u] = m - 1 - self.os[u];
        }
        Self::from_parts(xs, os)
    }

    /// Cyclic translation of the torus by `dc` columns and `dr` rows.
    pub fn translate(&self, dc: usize, dr: usize) -> GridDiagram {
        let m = self.m;
        let mut xs = vec![0; m];
        let mut os = vec![0; m];
        for u in 0..m {
            xs[(u + dc) % m] = (self.xs[u] + dr) % m;
            os[(u + dc) % m] = (self.os[u] + dr) % m;
        }
        Self::from_parts(xs, os)
    }

    /// Whether lines `index` and `index + 1 (mod m)` may be commuted: the four
    /// marker heights are distinct and the two marker pairs do not interleave.
    pub fn commutation_eligible(&self, axis: Axis, index: usize) -> bool {
        match axis {
            Axis::Row => self.transpose().commutation_eligible(Axis::Column, index),
            Axis::Column => {
                let m = self.m;
                if index >= m {
                    return false;
                }
                let j = (index + 1) % m;
                let a = (self.xs[index], self.os[index]);
                let b = (self.xs[j], self.os[j]);
                if a.0 == b.1 || a.1 == b.0 {
                    return false;
                }
                !interleaved(a, b)
            }
        }
    }

    /// Exchange lines `index` and `index + 1 (mod m)`.
    pub fn commute(&self, axis: Axis, index: usize) -> Result<GridDiagram, GridError> {
        let m = self.m;
        if !self.commutation_eligible(axis, index) {
            return Err(GridError::IneligibleCommutation { axis: axis.name(), index, next: (index + 1) % m.max(1) });
        }
        Ok(self.swap_lines(axis, index))
    }

    /// Exchange two adjacent lines without any eligibility check.
    pub(crate) fn swap_lines(&self, axis: Axis, index: usize) -> GridDiagram {
        match axis {
            Axis::Row => self.transpose().swap_lines(Axis::Column, index).transpose(),
            Axis::Column => {
                let j = (index + 1) % self.m;
                let mut g = self.clone();
                g.xs.swap(index, j);
                g.os.swap(index, j);
                g
            }
        }
    }

    /// Stabilize at the X in column `col`. The new 2x2 block occupies columns
    /// `col, col + 1`.
    pub fn stabilize(&self, col: usize, kind: StabKind) -> Result<GridDiagram, GridError> {
        if col >= self.m {
            return Err(GridError::PatternNotFound(format!("no column {col}")));
        }
        if self.m >= 255 {
            return Err(GridError::BadSize(self.m + 1));
        }
        Ok(match kind {
            StabKind::XSE => self.stabilize_se(col),
            StabKind::XNW => self.rotate().stabilize_se(self.m - 1 - col).rotate(),
        })
    }

    fn stabilize_se(&self, col: usize) -> GridDiagram {
        let m = self.m;
        let r = self.xs[col];
        let up = |t: usize| if t > r { t + 1 } else { t };
        let mut xs = Vec::with_capacity(m + 1);
        let mut os = Vec::with_capacity(m + 1);
        for c in 0..m {
            if c == col {
                xs.push(r);
                os.push(r + 1);
                xs.push(r + 1);
                os.push(up(self.os[c]));
            } else {
                xs.push(up(self.xs[c]));
                os.push(up(self.os[c]));
            }
        }
        Self::from_parts(xs, os)
    }

    /// The kind of destabilizable block in columns `col, col + 1`, if any.
    pub fn destab_kind(&self, col: usize) -> Option<StabKind> {
        if self.m < 3 || col + 1 >= self.m {
            return None;
        }
        if self.is_se_block(col) {
            return Some(StabKind::XSE);
        }
        let rot = self.rotate();
        if rot.is_se_block(self.m - 2 - col) {
            return Some(StabKind::XNW);
        }
        None
    }

    fn is_se_block(&self, col: usize) -> bool {
        let r = self.xs[col];
        col + 1 < self.m
            && r + 1 < self.m
            && self.xs[col + 1] == r + 1
            && self.os[col] == r + 1
            && self.os[col + 1] != r
    }

    pub fn destabilize(&self, col: usize, kind: StabKind) -> Result<GridDiagram, GridError> {
        let missing =
            || GridError::PatternNotFound(format!("no {kind} destabilization block at columns {col}, {}", col + 1));
        if self.m < 3 || col + 1 >= self.m {
            return Err(missing());
        }
        match kind {
            StabKind::XSE => {
                if !self.is_se_block(col) {
                    return Err(missing());
                }
                Ok(self.destabilize_se(col))
            }
            StabKind::XNW => {
                let rot = self.rotate();
                let rc = self.m - 2 - col;
                if !rot.is_se_block(rc) {
                    return Err(missing());
                }
                Ok(rot.destabilize_se(rc).rotate())
            }
        }
    }

    fn destabilize_se(&self, col: usize) -> GridDiagram {
        let m = self.m;
        let r = self.xs[col];
        let down = |t: usize| if t > r + 1 { t - 1 } else { t };
        let mut xs = Vec::with_capacity(m - 1);
        let mut os = Vec::with_capacity(m - 1);
        for c in 0..m {
            if c == col {
                xs.push(r);
                os.push(down(self.os[col + 1]));
            } else if c != col + 1 {
                xs.push(down(self.xs[c]));
                os.push(down(self.os[c]));
            }
        }
        Self::from_parts(xs, os)
    }

    /// Distinguished lattice point `(col + 1, r + 1)` at the centre of the
    /// block created by `stabilize(col, X:SE)`, in the stabilized grid.
    pub fn se_block_center(&self, col: usize) -> (usize, usize) {
        (col + 1, self.xs[col] + 1)
    }
}

impl GridState {
    /// Image under the diagonal reflection.
    pub fn transpose(&self) -> GridState {
        self.transposed()
    }

    /// Image under the pi rotation: the point `(i, w)` goes to `(-i, -w)`.
    pub fn rotate(&self) -> GridState {
        let m = self.len();
        let mut st = vec![0u8; m];
        for i in 0..m {
            st[(m - i) % m] = ((m - self.row(i)) % m) as u8;
        }
        GridState::from_vec_unchecked(st)
    }

    pub fn translate(&self, dc: usize, dr: usize) -> GridState {
        let m = self.len();
        let mut st = vec![0u8; m];
        for i in 0..m {
            st[(i + dc) % m] = ((self.row(i) + dr) % m) as u8;
        }
        GridState::from_vec_unchecked(st)
    }
}
