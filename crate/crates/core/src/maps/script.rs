//! Move scripts: one move per line, applied from the top diagram down.
//!
//! ```text
//! commute row|col <i>
//! stab X:SE|X:NW <col>
//! destab <col>
//! pinchX <row>
//! pinchO <row>
//! birth <row> <col>
//! ```
//!
//! Blank lines and `#` comments are ignored.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    birth_map, commutation_map, destabilization_map, find_birth, find_pinch, full_complex, pinch_map_o, pinch_map_x,
    separate_swap, stabilization_map, ChainMapRecord, MapKind, SwapKind,
};
use crate::complex::FilteredComplex;
use crate::error::{GridError, MapError};
use crate::grid::{Axis, GridDiagram, Sign, StabKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    Commute { axis: Axis, index: usize },
    Stab { kind: StabKind, col: usize },
    Destab { col: usize },
    PinchX { row: usize },
    PinchO { row: usize },
    Birth { row: usize, col: usize },
}

impl Move {
    pub fn kind(&self) -> MapKind {
        match self {
            Move::Commute { .. } => MapKind::Commute,
            Move::Stab { .. } => MapKind::StabOL,
            Move::Destab { .. } => MapKind::DestabIL,
            Move::PinchX { .. } => MapKind::PinchX,
            Move::PinchO { .. } => MapKind::PinchO,
            Move::Birth { .. } => MapKind::Birth,
        }
    }

    /// The diagram after the move.
    pub fn apply(&self, g: &GridDiagram) -> Result<GridDiagram, GridError> {
        match *self {
            Move::Commute { axis, index } => g.commute(axis, index),
            Move::Stab { kind, col } => g.stabilize(col, kind),
            Move::Destab { col } => {
                let kind = g.destab_kind(col).ok_or_else(|| {
                    GridError::PatternNotFound(format!("no destabilization block at columns {col}, {}", col + 1))
                })?;
                g.destabilize(col, kind)
            }
            Move::PinchX { row } => Ok(find_pinch(g, row, SwapKind::X)?.apply(g)),
            Move::PinchO { row } => Ok(find_pinch(g, row, SwapKind::O)?.apply(g)),
            Move::Birth { row, col } => Ok(find_birth(g, row, col)?.apply(g)),
        }
    }

    /// The chain map of the move out of `source`, building the target complex.
    /// Commutations and X swaps are built to carry `x^sign`.
    pub fn map(&self, source: Arc<FilteredComplex>, sign: Sign) -> Result<ChainMapRecord, MapError> {
        let g = self.apply(source.grid())?;
        let target = full_complex(&g)?;
        self.map_between(source, target, sign)
    }

    pub fn map_between(
        &self,
        source: Arc<FilteredComplex>,
        target: Arc<FilteredComplex>,
        sign: Sign,
    ) -> Result<ChainMapRecord, MapError> {
        match *self {
            Move::Commute { axis, index } => commutation_map(source, target, axis, index, sign),
            Move::Stab { kind, col } => stabilization_map(source, target, col, kind),
            Move::Destab { col } => destabilization_map(source, target, col),
            Move::PinchX { row } => pinch_map_x(source, target, row, sign),
            Move::PinchO { row } => pinch_map_o(source, target, row),
            Move::Birth { row, col } => birth_map(source, target, row, col),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Commute { axis, index } => write!(f, "commute {} {index}", axis.name()),
            Move::Stab { kind, col } => write!(f, "stab {kind} {col}"),
            Move::Destab { col } => write!(f, "destab {col}"),
            Move::PinchX { row } => write!(f, "pinchX {row}"),
            Move::PinchO { row } => write!(f, "pinchO {row}"),
            Move::Birth { row, col } => write!(f, "birth {row} {col}"),
        }
    }
}

impl FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |w: &str| w.parse::<usize>().map_err(|_| format!("`{w}` is not a non-negative integer"));
        let arity = |n: usize| {
            if words.len() == n + 1 {
                Ok(())
            } else {
                Err(format!("`{}` takes {n} argument(s)", words[0]))
            }
        };
        let Some(&head) = words.first() else { return Err("empty move".into()) };
        match head {
            "commute" => {
                arity(2)?;
                let axis = match words[1] {
                    "row" => Axis::Row,
                    "col" => Axis::Column,
                    w => return Err(format!("expected `row` or `col`, found `{w}`")),
                };
                Ok(Move::Commute { axis, index: num(words[2])? })
            }
            "stab" => {
                arity(2)?;
                Ok(Move::Stab { kind: words[1].parse()?, col: num(words[2])? })
            }
            "destab" => {
                arity(1)?;
                Ok(Move::Destab { col: num(words[1])? })
            }
            "pinchX" => {
                arity(1)?;
                Ok(Move::PinchX { row: num(words[1])? })
            }
            "pinchO" => {
                arity(1)?;
                Ok(Move::PinchO { row: num(words[1])? })
            }
            "birth" => {
                arity(2)?;
                Ok(Move::Birth { row: num(words[1])?, col: num(words[2])? })
            }
            w => Err(format!("unknown move `{w}`")),
        }
    }
}

pub fn parse_script(text: &str) -> Result<Vec<Move>, GridError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(line.parse().map_err(|msg| GridError::Parse { line: i + 1, msg })?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ScriptStep {
    pub mv: Move,
    /// Index of the script move this step serves.
    pub line: usize,
    /// Inserted to spread the markers of the following swap apart.
    pub inserted: bool,
    pub record: ChainMapRecord,
}

/// Apply the moves in order starting from `g`, building the chain map of each
/// step. A swap whose markers are adjacent is preceded by the moves of
/// [`separate_swap`]. Failures carry the zero-based index of the offending
/// script move.
pub fn run_script(g: &GridDiagram, moves: &[Move], sign: Sign) -> Result<Vec<ScriptStep>, MapError> {
    let mut cur = full_complex(g).map_err(|e| MapError::Step { step: 0, source: Box::new(e.into()) })?;
    let mut out = Vec::with_capacity(moves.len());
    for (i, mv) in moves.iter().enumerate() {
        let fail = |e: MapError| MapError::Step { step: i, source: Box::new(e) };
        let mut last = *mv;
        if let Move::PinchX { row } | Move::PinchO { row } = *mv {
            let kind = if matches!(mv, Move::PinchX { .. }) { SwapKind::X } else { SwapKind::O };
            if let Err(GridError::SwapSeparation { .. }) = find_pinch(cur.grid(), row, kind) {
                let (pre, _, t) = separate_swap(cur.grid(), row, kind).map_err(|e| fail(e.into()))?;
                for p in pre {
                    let record = p.map(cur, sign).map_err(fail)?;
                    cur = record.target.clone();
                    out.push(ScriptStep { mv: p, line: i, inserted: true, record });
                }
                last = match kind {
                    SwapKind::X => Move::PinchX { row: t },
                    SwapKind::O => Move::PinchO { row: t },
                };
            }
        }
        let record = last.map(cur, sign).map_err(fail)?;
        cur = record.target.clone();
        out.push(ScriptStep { mv: last, line: i, inserted: false, record });
    }
    Ok(out)
}
