#![allow(dead_code)]

use std::path::PathBuf;

use gridspectra::complex::build_complex;
use gridspectra::grid::{Axis, GridDiagram, GridState, Sign, StabKind};
use gridspectra::maps::{find_birth, find_pinch, Move, SwapKind};
use gridspectra::spectral::{compute_verdict, page_oracle, PageCount};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> GridDiagram {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    GridDiagram::parse(&text).unwrap()
}

/// All permutations of `0..m` in lexicographic order.
pub fn perms(m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Every valid `m x m` grid.
pub fn all_grids(m: usize) -> Vec<GridDiagram> {
    let ps = perms(m);
    let mut out = vec![];
    for xs in &ps {
        for os in &ps {
            if xs.iter().zip(os).all(|(a, b)| a != b) {
                out.push(GridDiagram::new(xs.clone(), os.clone()).unwrap());
            }
        }
    }
    out
}

pub fn all_states(m: usize) -> Vec<GridState> {
    perms(m).into_iter().map(|p| GridState::new(p.into_iter().map(|t| t as u8).collect()).unwrap()).collect()
}

pub fn random_grid<R: Rng>(rng: &mut R, m: usize) -> GridDiagram {
    loop {
        let mut xs: Vec<usize> = (0..m).collect();
        let mut os: Vec<usize> = (0..m).collect();
        xs.shuffle(rng);
        os.shuffle(rng);
        if let Ok(g) = GridDiagram::new(xs, os) {
            return g;
        }
    }
}

/// The standard unknot: X on the diagonal, O one row above.
pub fn unknot(m: usize) -> GridDiagram {
    GridDiagram::new((0..m).collect(), (0..m).map(|c| (c + 1) % m).collect()).unwrap()
}

/// `I(P, Q)`: pairs `p in P`, `q in Q` with `p` strictly southwest of `q`.
fn count_i(p: &[(i64, i64)], q: &[(i64, i64)]) -> i64 {
    let mut n = 0;
    for a in p {
        for b in q {
            if a.0 < b.0 && a.1 < b.1 {
                n += 1;
            }
        }
    }
    n
}

/// Doubled `J(P, Q) = (I(P, Q) + I(Q, P)) / 2`.
fn j2(p: &[(i64, i64)], q: &[(i64, i64)]) -> i64 {
    count_i(p, q) + count_i(q, p)
}

/// `M_S(x) = J(x - S, x - S) + 1` on doubled coordinates, where state points
/// sit at even and markers at odd coordinates.
fn maslov_wrt(x: &[(i64, i64)], s: &[(i64, i64)]) -> i64 {
    let twice = j2(x, x) - 2 * j2(x, s) + j2(s, s);
    twice / 2 + 1
}

/// `(M_O, M_X)` computed from the definition.
pub fn oracle_maslovs(g: &GridDiagram, x: &GridState) -> (i64, i64) {
    let pts: Vec<(i64, i64)> = (0..g.m()).map(|c| (2 * c as i64, 2 * x.row(c) as i64)).collect();
    let os: Vec<(i64, i64)> = (0..g.m()).map(|c| (2 * c as i64 + 1, 2 * g.os()[c] as i64 + 1)).collect();
    let xs: Vec<(i64, i64)> = (0..g.m()).map(|c| (2 * c as i64 + 1, 2 * g.xs()[c] as i64 + 1)).collect();
    (maslov_wrt(&pts, &os), maslov_wrt(&pts, &xs))
}

/// Cyclic `lo <= v < hi` on `0..m`, counting from `lo`.
fn in_arc(v: usize, lo: usize, hi: usize, m: usize) -> bool {
    (v + m - lo) % m < (hi + m - lo) % m
}

/// `(n_X, n_O, interior points)` of the rectangle from `x` with lower-left
/// corner in column `c1` and upper-right corner in column `c2`, by scanning
/// cells.
pub fn oracle_rect_counts(g: &GridDiagram, x: &GridState, c1: usize, c2: usize) -> (usize, usize, usize) {
    let m = g.m();
    let (r1, r2) = (x.row(c1), x.row(c2));
    let (mut nx, mut no, mut hits) = (0, 0, 0);
    for u in 0..m {
        if !in_arc(u, c1, c2, m) {
            continue;
        }
        if in_arc(g.xs()[u], r1, r2, m) {
            nx += 1;
        }
        if in_arc(g.os()[u], r1, r2, m) {
            no += 1;
        }
        let t = x.row(u);
        if u != c1 && t != r1 && in_arc(t, r1, r2, m) {
            hits += 1;
        }
    }
    (nx, no, hits)
}

/// All moves of a kind that apply to `g`.
pub fn commutations(g: &GridDiagram) -> Vec<Move> {
    let mut out = vec![];
    for index in 0..g.m() {
        for axis in [Axis::Column, Axis::Row] {
            if g.commutation_eligible(axis, index) {
                out.push(Move::Commute { axis, index });
            }
        }
    }
    out
}

pub fn stabilizations(g: &GridDiagram) -> Vec<Move> {
    let mut out = vec![];
    for col in 0..g.m() {
        for kind in [StabKind::XSE, StabKind::XNW] {
            out.push(Move::Stab { kind, col });
        }
    }
    out
}

pub fn destabilizations(g: &GridDiagram) -> Vec<Move> {
    (0..g.m()).filter(|&c| g.destab_kind(c).is_some()).map(|col| Move::Destab { col }).collect()
}

pub fn pinches(g: &GridDiagram) -> Vec<Move> {
    let mut out = vec![];
    for row in 0..g.m() {
        if find_pinch(g, row, SwapKind::X).is_ok() {
            out.push(Move::PinchX { row });
        }
        if find_pinch(g, row, SwapKind::O).is_ok() {
            out.push(Move::PinchO { row });
        }
    }
    out
}

pub fn births(g: &GridDiagram) -> Vec<Move> {
    let mut out = vec![];
    for row in 0..g.m() {
        for col in 0..g.m() {
            if find_birth(g, row, col).is_ok() {
                out.push(Move::Birth { row, col });
            }
        }
    }
    out
}

/// Legendrian moves that keep the grid at most `max_m` wide.
pub fn legendrian_moves(g: &GridDiagram, max_m: usize) -> Vec<Move> {
    let mut out = commutations(g);
    out.extend(destabilizations(g));
    if g.m() < max_m {
        out.extend(stabilizations(g));
    }
    out
}

/// Count disagreements between the engine and the brute-force pages.
pub fn oracle_disagreements(g: &GridDiagram, sign: Sign) -> usize {
    let v = compute_verdict(g, sign).unwrap();
    let c = build_complex(g).unwrap();
    let x = g.canonical(sign);
    let z = c.chain_of(std::slice::from_ref(&x)).unwrap();
    let p = g.bigrading(&x).alex2;
    let at = |r: usize| page_oracle(&c, &z, p, r).unwrap();
    let mut bad = 0;
    for rec in &v.pages {
        let o = at(rec.r);
        bad += usize::from(!o.class_in_zr);
        bad += usize::from(rec.lambda_vanishes != o.class_in_br);
        if !rec.lambda_vanishes {
            bad += usize::from(rec.d_r_vanishes != at(rec.r + 1).class_in_zr);
        }
    }
    let survives_all = (1..=v.width + 1).all(|r| at(r).class_in_zr);
    let first_b = (1..=v.width).find(|&r| at(r).class_in_br);
    let expect_n = if survives_all || first_b.is_some() {
        PageCount::Infinite
    } else {
        PageCount::Finite((1..=v.width + 1).take_while(|&r| at(r).class_in_zr).count())
    };
    bad += usize::from(v.n != expect_n);
    bad += usize::from(v.first_vanishing_page != first_b);
    bad
}
