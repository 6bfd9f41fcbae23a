//! Spreading the two markers of a swap apart: stabilize at an X away from the
//! swap rows, then commute the column holding the new O into the gap between
//! the swapped markers.

use super::pinch::{find_pinch, locate, SwapKind};
use super::script::Move;
use crate::error::GridError;
use crate::grid::{Axis, GridDiagram, StabKind};

/// Where a cell `(col, row)` of `g` ends up after `stabilize(col0, kind)`.
fn stab_cell(g: &GridDiagram, col0: usize, kind: StabKind) -> impl Fn(usize, usize) -> (usize, usize) {
    let m = g.m();
    let se = |c0: usize, r0: usize| move |u: usize, t: usize| (u + usize::from(u > c0), t + usize::from(t > r0));
    let (c0, r0, flip) = match kind {
        StabKind::XSE => (col0, g.xs()[col0], false),
        StabKind::XNW => (m - 1 - col0, m - 1 - g.xs()[col0], true),
    };
    let f = se(c0, r0);
    move |u, t| {
        if flip {
            let (u, t) = f(m - 1 - u, m - 1 - t);
            (m - u, m - t)
        } else {
            f(u, t)
        }
    }
}

/// Cyclic "strictly between `a` and `b` going right from `a`".
fn between(u: usize, a: usize, b: usize, m: usize) -> bool {
    let d = (u + m - a) % m;
    d > 0 && d < (b + m - a) % m
}

/// A move list turning `g` into a diagram where the swap of `kind` in rows
/// `row`, `row + 1` has its markers at least two vertical lines apart, with
/// the diagram it ends at and the new lower row of the swap. Returns an empty
/// list when the swap is already separated.
pub fn separate_swap(
    g: &GridDiagram,
    row: usize,
    kind: SwapKind,
) -> Result<(Vec<Move>, GridDiagram, usize), GridError> {
    let p = locate(g, row, kind)?;
    let m = g.m();
    if p.separation(m) >= 2 {
        return Ok((Vec::new(), g.clone(), row));
    }
    for kind_s in [StabKind::XSE, StabKind::XNW] {
        for c in 0..m {
            if c == p.a || c == p.b || [row, (row + 1) % m].contains(&g.xs()[c]) {
                continue;
            }
            let g1 = g.stabilize(c, kind_s)?;
            let track = stab_cell(g, c, kind_s);
            let (a1, t1) = track(p.a, row);
            let (b1, _) = track(p.b, (row + 1) % m);
            let n = g1.m();
            for mover in [c, c + 1] {
                for step in [n - 1, 1] {
                    if let Some(found) =
                        slide(&g1, mover, step, (a1, b1, t1), kind, Move::Stab { kind: kind_s, col: c })
                    {
                        return Ok(found);
                    }
                }
            }
        }
    }
    Err(GridError::SwapSeparation { a: p.a, b: p.b })
}

/// Commute column `mover` one step at a time (`step` is `1` or `n - 1`) until
/// it lands between the tracked swap columns.
fn slide(
    g1: &GridDiagram,
    mover: usize,
    step: usize,
    (mut a, mut b, t): (usize, usize, usize),
    kind: SwapKind,
    stab: Move,
) -> Option<(Vec<Move>, GridDiagram, usize)> {
    let n = g1.m();
    let mut g = g1.clone();
    let mut cur = mover % n;
    let mut moves = vec![stab];
    for _ in 0..n {
        if between(cur, a, b, n) {
            let q = find_pinch(&g, t, kind).ok()?;
            return (q.a == a && q.b == b).then_some((moves, g, t));
        }
        let index = if step == 1 { cur } else { (cur + n - 1) % n };
        let next = (cur + step) % n;
        g = g.commute(Axis::Column, index).ok()?;
        moves.push(Move::Commute { axis: Axis::Column, index });
        for v in [&mut a, &mut b] {
            if *v == next {
                *v = cur;
            }
        }
        cur = next;
    }
    None
}
