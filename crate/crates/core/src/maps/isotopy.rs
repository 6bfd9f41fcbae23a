//! Commutation, stabilization and destabilization maps.

use std::collections::HashMap;
use std::sync::Arc;

use super::lens::Lens;
use super::snail::{all_states, snail_domains_between, SnailKind};
use super::{assemble, placement_for, ChainMapRecord, ImageContract, MapKind, Shift};
use crate::complex::FilteredComplex;
use crate::error::MapError;
use crate::grid::{Axis, GridDiagram, GridState, Sign, StabKind};

/// Keep the states that occur an odd number of times.
pub(crate) fn odd_terms(v: Vec<GridState>) -> Vec<GridState> {
    let mut count: HashMap<GridState, usize> = HashMap::new();
    for y in v {
        *count.entry(y).or_default() += 1;
    }
    let mut out: Vec<GridState> = count.into_iter().filter(|(_, k)| k % 2 == 1).map(|(y, _)| y).collect();
    out.sort();
    out
}

fn column_pentagons(
    g2: &GridDiagram,
    g1: &GridDiagram,
    index: usize,
    x: &[u8],
    block_x: bool,
    sign: Sign,
) -> Vec<GridState> {
    let m = g2.m();
    let line = (index + 1) % m;
    let lens = Lens::new(g2, g1, line, placement_for(sign));
    lens.pentagons(x)
        .into_iter()
        .filter(|(_, h)| h.n_o == 0 && (!block_x || h.n_x == 0))
        .map(|(y, _)| GridState::from_vec_unchecked(y))
        .collect()
}

/// Empty pentagons from `x` in `g2` to states of `g2.commute(axis, index)`,
/// avoiding the O's (and the X's when `block_x`). Repeats are kept. The
/// crossing is placed so that the map carries `x^sign` to `x^sign`.
pub fn commutation_pentagons(
    g2: &GridDiagram,
    axis: Axis,
    index: usize,
    x: &GridState,
    block_x: bool,
    sign: Sign,
) -> Result<Vec<GridState>, MapError> {
    let g1 = g2.commute(axis, index)?;
    Ok(match axis {
        Axis::Column => column_pentagons(g2, &g1, index, x.rows(), block_x, sign),
        Axis::Row => {
            let (t2, t1) = (g2.transpose(), g1.transpose());
            column_pentagons(&t2, &t1, index, x.transpose().rows(), block_x, sign)
                .into_iter()
                .map(|y| y.transpose())
                .collect()
        }
    })
}

/// The pentagon map from `source` (grid `G2`) to `target` (grid `G1`),
/// where `G1` is `G2` with lines `index`, `index + 1` of `axis` exchanged.
/// The leading-term contract holds for `x^sign`.
pub fn commutation_map(
    source: Arc<FilteredComplex>,
    target: Arc<FilteredComplex>,
    axis: Axis,
    index: usize,
    sign: Sign,
) -> Result<ChainMapRecord, MapError> {
    let g2 = source.grid().clone();
    let g1 = g2.commute(axis, index)?;
    if &g1 != target.grid() {
        return Err(MapError::Unrelated(format!("target is not the commutation of {} {index}", axis.name())));
    }
    let mut rec = assemble(MapKind::Commute, source, target, Shift::default(), ImageContract::LeadingTerm, |x| {
        odd_terms(commutation_pentagons(&g2, axis, index, x, false, sign).unwrap_or_default())
    })?;
    rec.signs = vec![sign];
    Ok(rec)
}

/// Line bookkeeping for an X:SE stabilization at column `col` of `g2`.
#[derive(Clone, Copy)]
struct SeBlock {
    col: usize,
    r: usize,
}

impl SeBlock {
    fn new(g2: &GridDiagram, col: usize) -> Self {
        SeBlock { col, r: g2.xs()[col] }
    }

    fn c(&self) -> (usize, usize) {
        (self.col + 1, self.r + 1)
    }

    /// `e'`: add the point `c`.
    fn lift(&self, x: &[u8]) -> GridState {
        let up = |t: u8| if t as usize > self.r { t + 1 } else { t };
        let mut y = Vec::with_capacity(x.len() + 1);
        for (i, &t) in x.iter().enumerate() {
            y.push(up(t));
            if i == self.col {
                y.push((self.r + 1) as u8);
            }
        }
        GridState::from_vec_unchecked(y)
    }

    /// `e`: drop the point `c` from a state that contains it.
    fn drop(&self, x: &[u8]) -> GridState {
        let down = |t: u8| if t as usize > self.r + 1 { t - 1 } else { t };
        let y = x.iter().enumerate().filter(|&(i, _)| i != self.col + 1).map(|(_, &t)| down(t)).collect();
        GridState::from_vec_unchecked(y)
    }

    fn contains_c(&self, x: &[u8]) -> bool {
        x[self.col + 1] as usize == self.r + 1
    }
}

fn stab_image_se(g1: &GridDiagram, b: SeBlock, x: &GridState, targets: &[GridState]) -> Vec<GridState> {
    let start = b.lift(x.rows());
    let max = 2 * g1.m() + 1;
    let mut out = vec![start.clone()];
    for y in targets {
        if y == &start {
            continue;
        }
        let k = snail_domains_between(g1, b.c(), &start, y, SnailKind::OutLeft, max).len();
        for _ in 0..k {
            out.push(y.clone());
        }
    }
    odd_terms(out)
}

fn destab_image_se(g1: &GridDiagram, b: SeBlock, x: &GridState, sources: &[GridState]) -> Vec<GridState> {
    if b.contains_c(x.rows()) {
        return vec![b.drop(x.rows())];
    }
    let max = 2 * g1.m() + 1;
    let mut out = Vec::new();
    for y in sources {
        let k = snail_domains_between(g1, b.c(), x, y, SnailKind::IntoLeft, max).len();
        for _ in 0..k {
            out.push(b.drop(y.rows()));
        }
    }
    odd_terms(out)
}

/// The oL snail map from `source` (grid `G2`) to `target`, the stabilization
/// of `G2` of the given kind at column `col`.
pub fn stabilization_map(
    source: Arc<FilteredComplex>,
    target: Arc<FilteredComplex>,
    col: usize,
    kind: StabKind,
) -> Result<ChainMapRecord, MapError> {
    let g2 = source.grid().clone();
    let g1 = g2.stabilize(col, kind)?;
    if &g1 != target.grid() {
        return Err(MapError::Unrelated(format!("target is not the {kind} stabilization at column {col}")));
    }
    let (frame2, frame_col) = match kind {
        StabKind::XSE => (g2.clone(), col),
        StabKind::XNW => (g2.rotate(), g2.m() - 1 - col),
    };
    let frame1 = frame2.stabilize(frame_col, StabKind::XSE)?;
    let b = SeBlock::new(&frame2, frame_col);
    let targets = all_states(frame1.m());
    let rotated = kind == StabKind::XNW;
    assemble(MapKind::StabOL, source, target, Shift::default(), ImageContract::LeadingTerm, |x| {
        if rotated {
            let mut v: Vec<GridState> =
                stab_image_se(&frame1, b, &x.rotate(), &targets).into_iter().map(|y| y.rotate()).collect();
            v.sort();
            v
        } else {
            stab_image_se(&frame1, b, x, &targets)
        }
    })
}

/// The iL snail map from `source` (grid `G1`) to `target`, the
/// destabilization of `G1` at the block in columns `col`, `col + 1`.
pub fn destabilization_map(
    source: Arc<FilteredComplex>,
    target: Arc<FilteredComplex>,
    col: usize,
) -> Result<ChainMapRecord, MapError> {
    let g1 = source.grid().clone();
    let kind = g1
        .destab_kind(col)
        .ok_or_else(|| MapError::Unrelated(format!("no destabilization block at columns {col}, {}", col + 1)))?;
    let g2 = g1.destabilize(col, kind)?;
    if &g2 != target.grid() {
        return Err(MapError::Unrelated(format!("target is not the destabilization at column {col}")));
    }
    let (frame1, frame_col) = match kind {
        StabKind::XSE => (g1.clone(), col),
        StabKind::XNW => (g1.rotate(), g1.m() - 2 - col),
    };
    let frame2 = frame1.destabilize(frame_col, StabKind::XSE)?;
    let b = SeBlock::new(&frame2, frame_col);
    let sources: Vec<GridState> = all_states(frame2.m()).iter().map(|s| b.lift(s.rows())).collect();
    let rotated = kind == StabKind::XNW;
    assemble(MapKind::DestabIL, source, target, Shift::default(), ImageContract::Exact, |x| {
        if rotated {
            let mut v: Vec<GridState> =
                destab_image_se(&frame1, b, &x.rotate(), &sources).into_iter().map(|y| y.rotate()).collect();
            v.sort();
            v
        } else {
            destab_image_se(&frame1, b, x, &sources)
        }
    })
}
