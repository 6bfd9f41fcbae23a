mod common;

use std::sync::Arc;

use common::*;
use gridspectra::complex::{build_complex_with, BuildOptions, F2Chain, Window};
use gridspectra::grid::{GridDiagram, Sign, StabKind};
use gridspectra::maps::{
    full_complex, parse_script, run_script, separate_swap, stabilization_map, verify_map, ImageContract, MapKind, Move,
    Shift, SwapKind,
};
use gridspectra::{GridError, MapError};

fn check_all(g: &GridDiagram, moves: &[Move], signs: &[Sign]) {
    let src = full_complex(g).unwrap();
    for mv in moves {
        for &sign in signs {
            let rec = mv.map(src.clone(), sign).unwrap();
            let rep = verify_map(&rec);
            assert!(rep.passed(), "{g:?} {mv} {sign:?}: {rep:?}");
        }
    }
}

const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

#[test]
fn every_small_move_map_verifies() {
    for m in 2..=4 {
        for g in all_grids(m) {
            check_all(&g, &commutations(&g), &BOTH);
            check_all(&g, &destabilizations(&g), &[Sign::Plus]);
            if m <= 3 {
                check_all(&g, &stabilizations(&g), &[Sign::Plus]);
            }
            check_all(&g, &births(&g), &[Sign::Plus]);
        }
    }
}

#[test]
fn pinch_maps_verify_on_five_by_five_sample() {
    let mut seen = 0;
    for g in all_grids(5).into_iter().step_by(37) {
        let moves = pinches(&g);
        seen += moves.len();
        check_all(&g, &moves, &BOTH);
    }
    assert!(seen > 0);
}

/// `∂f = f∂` and homogeneity, checked column by column outside the library.
fn direct_check(rec: &gridspectra::ChainMapRecord) -> (bool, bool) {
    let (s, t) = (&rec.source, &rec.target);
    let mut chain = true;
    let mut homogeneous = true;
    for i in 0..s.len() as u32 {
        let lhs = t.apply(&rec.matrix[i as usize]).unwrap();
        let mut rhs = F2Chain::zero();
        for &b in s.boundary(i) {
            rhs = rhs.add(&rec.matrix[b as usize]);
        }
        chain &= lhs == rhs;
        let mi = s.basis().grading(i).maslov;
        homogeneous &= rec.matrix[i as usize].iter().all(|y| t.basis().grading(y).maslov == mi - rec.shift.maslov);
    }
    (chain, homogeneous)
}

#[test]
fn corrupted_matrix_fails_verification() {
    let g = fixture("unknot3.grid");
    let rec = Move::Stab { kind: StabKind::XSE, col: 0 }.map(full_complex(&g).unwrap(), Sign::Plus).unwrap();
    assert!(verify_map(&rec).passed());
    assert_eq!(direct_check(&rec), (true, true));
    let t = rec.target.len() as u32;
    let mut caught = 0;
    for i in 0..rec.source.len() {
        for j in 0..t {
            let mut bad = rec.clone();
            bad.matrix[i] = bad.matrix[i].add(&F2Chain::single(j));
            let rep = verify_map(&bad);
            let (chain, homogeneous) = direct_check(&bad);
            assert_eq!((rep.chain_map, rep.homogeneous), (chain, homogeneous), "entry ({i}, {j})");
            if !chain || !homogeneous {
                assert!(!rep.passed());
                caught += 1;
            }
        }
    }
    assert!(caught > 0);
}

#[test]
fn stabilization_remainder_drops_exactly_two() {
    let g = GridDiagram::new(vec![0, 1, 2], vec![1, 2, 0]).unwrap();
    let src = full_complex(&g).unwrap();
    let tgt = full_complex(&g.stabilize(0, StabKind::XSE).unwrap()).unwrap();
    let rec = stabilization_map(src, tgt, 0, StabKind::XSE).unwrap();
    assert_eq!(rec.contract, ImageContract::LeadingTerm);
    let rep = verify_map(&rec);
    assert!(rep.passed());
    let drops: Vec<i32> =
        rep.canonical.iter().filter_map(|c| c.remainder_max_alex2.map(|a| c.expected_alex2 - a)).collect();
    assert!(!drops.is_empty());
    assert!(drops.iter().all(|&d| d == 2), "{drops:?}");
}

#[test]
fn composite_shift_is_the_sum() {
    let g = fixture("trefoil_right5.grid");
    let moves = parse_script("pinchX 0\n").unwrap();
    let steps = run_script(&g, &moves, Sign::Minus).unwrap();
    assert!(steps.len() > 1);
    assert!(steps[..steps.len() - 1].iter().all(|s| s.inserted && s.line == 0));
    let last = steps.last().unwrap();
    let (gp, gm) = (last.record.source.grid(), last.record.target.grid());
    let expect = Shift { maslov: 1, alex2: gp.num_components() as i32 - gm.num_components() as i32 + 1 };
    assert_eq!(last.record.shift, expect);
    assert_eq!(gp.tb_rot().0, gm.tb_rot().0 + 1);
    let mut comp = steps[0].record.clone();
    let mut sum = comp.shift;
    for s in &steps[1..] {
        comp = comp.then(&s.record).unwrap();
        sum = sum + s.record.shift;
    }
    assert_eq!(comp.kind, MapKind::Composite);
    assert_eq!(comp.shift, sum);
    assert_eq!(comp.signs, vec![Sign::Minus]);
    assert!(verify_map(&comp).passed());
}

#[test]
fn birth_shift_and_sizes() {
    let grids: Vec<GridDiagram> =
        all_grids(4).into_iter().chain(all_grids(5)).filter(|g| !births(g).is_empty()).step_by(50).collect();
    assert!(!grids.is_empty());
    for g in &grids {
        check_birth(g);
    }
}

fn check_birth(g: &GridDiagram) {
    for mv in births(g) {
        let rec = mv.map(full_complex(g).unwrap(), Sign::Plus).unwrap();
        assert_eq!(rec.shift, Shift { maslov: -1, alex2: 0 });
        let h = rec.target.grid();
        assert_eq!(h.m() + 2, g.m());
        assert_eq!(h.num_components() + 1, g.num_components());
        assert!(verify_map(&rec).passed());
    }
}

#[test]
fn adjacent_swaps_separate_at_size_five() {
    let mut count = 0;
    for g in all_grids(5) {
        for row in 0..5 {
            for kind in [SwapKind::X, SwapKind::O] {
                if !matches!(gridspectra::maps::find_pinch(&g, row, kind), Err(GridError::SwapSeparation { .. })) {
                    continue;
                }
                count += 1;
                let (moves, h, t) = separate_swap(&g, row, kind).unwrap();
                assert!((2..=4).contains(&moves.len()), "{g:?} {row} {kind:?}");
                let mut cur = g.clone();
                for mv in &moves {
                    cur = mv.apply(&cur).unwrap();
                }
                assert_eq!(cur, h);
                assert!(gridspectra::maps::find_pinch(&h, t, kind).is_ok());
            }
        }
    }
    assert_eq!(count, 3600);
}

#[test]
fn inapplicable_step_reports_its_index() {
    let g = fixture("trefoil_right5.grid");
    let moves = parse_script("commute col 9\n").unwrap();
    let err = run_script(&g, &moves, Sign::Plus).unwrap_err();
    assert!(matches!(err, MapError::Step { step: 0, .. }));
    let moves = parse_script("stab X:SE 0\ndestab 0\ndestab 0\n").unwrap();
    match run_script(&g, &moves, Sign::Plus) {
        Err(MapError::Step { step, .. }) => assert_eq!(step, 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn maps_refuse_windowed_complexes() {
    let g = fixture("unknot3.grid");
    let opts = BuildOptions { window: Some(Window::around(0)), ..Default::default() };
    let windowed = Arc::new(build_complex_with(&g, opts).unwrap());
    let h = g.stabilize(0, StabKind::XSE).unwrap();
    let err = stabilization_map(windowed, full_complex(&h).unwrap(), 0, StabKind::XSE).unwrap_err();
    assert!(matches!(err, MapError::Unrelated(_)));
}
