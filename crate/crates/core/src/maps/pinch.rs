//! Pinch maps for X swaps and O swaps.
//!
//! A swap happens in rows `t` (lower) and `t + 1` (upper) of `G+`. For an X
//! swap the lower row carries an X in column `a` and an O to its right, the
//! upper row an O to the left and an X in column `b`, with the cyclic column
//! order `O_upper, a, b, O_lower`. `G-` exchanges the rows of the two X's.
//! An O swap is the same with the roles of X and O exchanged. The maps are
//! computed in column form on the transposed diagrams.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::isotopy::odd_terms;
use super::lens::{Lens, Placement};
use super::{assemble, placement_for, ChainMapRecord, ImageContract, MapKind, Shift};
use crate::complex::FilteredComplex;
use crate::error::{GridError, MapError};
use crate::grid::{inverse, GridDiagram, GridState, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SwapKind {
    X,
    O,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchPattern {
    pub kind: SwapKind,
    /// Lower of the two rows.
    pub row: usize,
    /// Column of the swapped marker in the lower row.
    pub a: usize,
    /// Column of the swapped marker in the upper row.
    pub b: usize,
}

impl PinchPattern {
    /// `G-`, given `G+`.
    pub fn apply(&self, g: &GridDiagram) -> GridDiagram {
        let m = g.m();
        let up = (self.row + 1) % m;
        let (mut xs, mut os) = (g.xs().to_vec(), g.os().to_vec());
        let v = match self.kind {
            SwapKind::X => &mut xs,
            SwapKind::O => &mut os,
        };
        v[self.a] = up;
        v[self.b] = self.row;
        GridDiagram::new(xs, os).expect("swapping two markers keeps a grid")
    }

    /// Number of vertical lines strictly between the swapped markers.
    pub fn separation(&self, m: usize) -> usize {
        (self.b + m - self.a) % m
    }
}

/// The swap of `kind` in rows `row`, `row + 1` of `g`, which plays `G+`.
/// Fails if the rows do not carry the pattern or the swapped markers are
/// separated by fewer than two vertical lines.
pub fn find_pinch(g: &GridDiagram, row: usize, kind: SwapKind) -> Result<PinchPattern, GridError> {
    let p = locate(g, row, kind)?;
    if p.separation(g.m()) < 2 {
        return Err(GridError::SwapSeparation { a: p.a, b: p.b });
    }
    Ok(p)
}

pub(crate) fn locate(g: &GridDiagram, row: usize, kind: SwapKind) -> Result<PinchPattern, GridError> {
    let m = g.m();
    let missing = || GridError::PatternNotFound(format!("no {kind:?} swap in rows {row}, {}", (row + 1) % m.max(1)));
    if row >= m || m < 3 {
        return Err(missing());
    }
    let (xi, oi) = (inverse(g.xs()), inverse(g.os()));
    let up = (row + 1) % m;
    let (swapped, other) = match kind {
        SwapKind::X => (&xi, &oi),
        SwapKind::O => (&oi, &xi),
    };
    let (a, b) = (swapped[row], swapped[up]);
    let (first, last) = (other[up], other[row]);
    let rel = |c: usize| (c + m - first) % m;
    if 0 < rel(a) && rel(a) < rel(b) && rel(b) < rel(last) {
        Ok(PinchPattern { kind, row, a, b })
    } else {
        Err(missing())
    }
}

fn column_lens(gp: &GridDiagram, gm: &GridDiagram, p: &PinchPattern, placement: Placement) -> Lens {
    let (tp, tm) = (gp.transpose(), gm.transpose());
    Lens::new(&tp, &tm, (p.row + 1) % gp.m(), placement)
}

fn check_target(target: &FilteredComplex, gm: &GridDiagram) -> Result<(), MapError> {
    if target.grid() != gm {
        return Err(MapError::Unrelated("target is not the result of the swap".into()));
    }
    Ok(())
}

fn pinch_shift(gp: &GridDiagram, gm: &GridDiagram) -> Shift {
    Shift { maslov: 1, alex2: gp.num_components() as i32 - gm.num_components() as i32 + 1 }
}

/// The pentagon map `C(G+) -> C(G-)` of the X swap in rows `row`, `row + 1`,
/// with the leading-term contract for `x^sign`.
pub fn pinch_map_x(
    source: Arc<FilteredComplex>,
    target: Arc<FilteredComplex>,
    row: usize,
    sign: Sign,
) -> Result<ChainMapRecord, MapError> {
    let gp = source.grid().clone();
    let p = find_pinch(&gp, row, SwapKind::X)?;
    let gm = p.apply(&gp);
    check_target(&target, &gm)?;
    let lens = column_lens(&gp, &gm, &p, placement_for(sign));
    let shift = pinch_shift(&gp, &gm);
    let mut rec = assemble(MapKind::PinchX, source, target, shift, ImageContract::LeadingTerm, |x| {
        let ys = lens
            .pentagons(x.transpose().rows())
            .into_iter()
            .filter(|(_, h)| h.n_o == 0)
            .map(|(y, _)| GridState::from_vec_unchecked(y).transpose())
            .collect();
        odd_terms(ys)
    })?;
    rec.signs = vec![sign];
    Ok(rec)
}

/// The triangle map `C(G+) -> C(G-)` of the O swap in rows `row`, `row + 1`.
pub fn pinch_map_o(
    source: Arc<FilteredComplex>,
    target: Arc<FilteredComplex>,
    row: usize,
) -> Result<ChainMapRecord, MapError> {
    let gp = source.grid().clone();
    let p = find_pinch(&gp, row, SwapKind::O)?;
    let gm = p.apply(&gp);
    check_target(&target, &gm)?;
    let lens = column_lens(&gp, &gm, &p, Placement::HugEast);
    let shift = pinch_shift(&gp, &gm);
    assemble(MapKind::PinchO, source, target, shift, ImageContract::Exact, |x| {
        match lens.triangle(x.transpose().rows()) {
            Some(h) if h.n_o == 0 => vec![x.clone()],
            _ => Vec::new(),
        }
    })
}
