//! Grid diagrams, grid states and their gradings.
//!
//! Columns grow to the right and rows grow upward, row 0 at the bottom.
//! A state places one point on each vertical circle: `st[c]` is the height
//! of the point on vertical line `c`. Markers sit at cell centres, so in
//! doubled coordinates states live on even lattice points and markers on odd
//! ones.

mod moves;
mod rectangle;
pub(crate) mod state;

pub use moves::{Axis, StabKind};
pub(crate) use rectangle::for_each_empty_rect as rectangle_sweep;
pub use rectangle::{differential_states, rectangles_between, rectangles_from, Rectangle};
pub use state::GridState;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GridError;

/// An `m x m` toroidal grid with one X and one O in every row and column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridDiagram {
    m: usize,
    xs: Vec<usize>,
    os: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bigrading {
    pub maslov: i32,
    /// Twice the Alexander grading.
    pub alex2: i32,
}

fn is_permutation(v: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    for &r in v {
        if r >= m || seen[r] {
            return false;
        }
        seen[r] = true;
    }
    true
}

impl GridDiagram {
    pub fn new(xs: Vec<usize>, os: Vec<usize>) -> Result<Self, GridError> {
        Self::validate(xs, os, 0)
    }

    fn validate(xs: Vec<usize>, os: Vec<usize>, line: usize) -> Result<Self, GridError> {
        let m = xs.len();
        if os.len() != m {
            return Err(GridError::SizeMismatch { line, expected: m, found: os.len() });
        }
        if !(2..=255).contains(&m) {
            if m == 1 && xs[0] == os[0] {
                return Err(GridError::MarkerCollision { line, column: 0 });
            }
            return Err(GridError::BadSize(m));
        }
        if !is_permutation(&xs, m) {
            return Err(GridError::NotPermutation { line, what: "X", m });
        }
        if !is_permutation(&os, m) {
            return Err(GridError::NotPermutation { line, what: "O", m });
        }
        if let Some(c) = (0..m).find(|&c| xs[c] == os[c]) {
            return Err(GridError::MarkerCollision { line, column: c });
        }
        Ok(GridDiagram { m, xs, os })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn xs(&self) -> &[usize] {
        &self.xs
    }

    pub fn os(&self) -> &[usize] {
        &self.os
    }

    /// Parse the text grid format (`m:`, `X:`, `O:` lines, `#` comments).
    pub fn parse(text: &str) -> Result<Self, GridError> {
        let mut m: Option<(usize, usize)> = None;
        let mut xs: Option<(usize, Vec<usize>)> = None;
        let mut os: Option<(usize, Vec<usize>)> = None;
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, rest) = body
                .split_once(':')
                .ok_or_else(|| GridError::Parse { line, msg: format!("expected `key: value`, got `{body}`") })?;
            let nums = || -> Result<Vec<usize>, GridError> {
                rest.split_whitespace()
                    .map(|t| {
                        t.parse::<usize>().map_err(|_| GridError::Parse { line, msg: format!("bad integer `{t}`") })
                    })
                    .collect()
            };
            let slot_taken = |what: &str| GridError::Parse { line, msg: format!("duplicate `{what}` line") };
            match key.trim() {
                "m" => {
                    if m.is_some() {
                        return Err(slot_taken("m"));
                    }
                    let v = nums()?;
                    if v.len() != 1 {
                        return Err(GridError::Parse { line, msg: "expected a single size".into() });
                    }
                    m = Some((line, v[0]));
                }
                "X" => {
                    if xs.is_some() {
                        return Err(slot_taken("X"));
                    }
                    xs = Some((line, nums()?));
                }
                "O" => {
                    if os.is_some() {
                        return Err(slot_taken("O"));
                    }
                    os = Some((line, nums()?));
                }
                other => {
                    return Err(GridError::Parse { line, msg: format!("unknown key `{other}`") });
                }
            }
        }
        let missing = |k: &str| GridError::Parse { line: last_line, msg: format!("missing `{k}` line") };
        let (mline, m) = m.ok_or_else(|| missing("m"))?;
        let (xline, xs) = xs.ok_or_else(|| missing("X"))?;
        let (oline, os) = os.ok_or_else(|| missing("O"))?;
        if m < 2 {
            if m == 1 && xs.len() == 1 && os.len() == 1 && xs[0] == os[0] {
                return Err(GridError::MarkerCollision { line: oline, column: 0 });
            }
            return Err(GridError::Parse { line: mline, msg: format!("grid size {m} is unsupported") });
        }
        if xs.len() != m {
            return Err(GridError::SizeMismatch { line: xline, expected: m, found: xs.len() });
        }
        if os.len() != m {
            return Err(GridError::SizeMismatch { line: oline, expected: m, found: os.len() });
        }
        if !is_permutation(&xs, m) {
            return Err(GridError::NotPermutation { line: xline, what: "X", m });
        }
        Self::validate(xs, os, oline)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Cycles of the column permutation `os^-1 o xs`.
    pub fn num_components(&self) -> usize {
        let oinv = inverse(&self.os);
        let mut seen = vec![false; self.m];
        let mut cycles = 0;
        for start in 0..self.m {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = oinv[self.xs[c]];
            }
        }
        cycles
    }

    pub fn x_points(&self) -> Vec<(i64, i64)> {
        marker_points(&self.xs)
    }

    pub fn o_points(&self) -> Vec<(i64, i64)> {
        marker_points(&self.os)
    }

    /// Canonical generator at the northeast corners of the X's.
    pub fn x_plus(&self) -> GridState {
        let m = self.m;
        let mut st = vec![0u8; m];
        for c in 0..m {
            st[(c + 1) % m] = ((self.xs[c] + 1) % m) as u8;
        }
        GridState::from_vec_unchecked(st)
    }

    /// Canonical generator at the southwest corners of the X's.
    pub fn x_minus(&self) -> GridState {
        GridState::from_vec_unchecked(self.xs.iter().map(|&r| r as u8).collect())
    }

    pub fn canonical(&self, sign: Sign) -> GridState {
        match sign {
            Sign::Plus => self.x_plus(),
            Sign::Minus => self.x_minus(),
        }
    }

    pub fn tables(&self) -> GradingTables {
        GradingTables::new(self)
    }

    pub fn bigrading(&self, x: &GridState) -> Bigrading {
        self.tables().bigrading(x.rows())
    }

    /// Thurston-Bennequin and rotation numbers read off the canonical generators.
    pub fn tb_rot(&self) -> (i32, i32) {
        let t = self.tables();
        let mp = t.maslov(self.x_plus().rows());
        let mm = t.maslov(self.x_minus().rows());
        ((mp + mm) / 2 - 1, (mm - mp) / 2)
    }

    /// Swap the roles of X and O; reverses the orientation of every component.
    pub fn reversed(&self) -> GridDiagram {
        GridDiagram { m: self.m, xs: self.os.clone(), os: self.xs.clone() }
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "m: {}", self.m)?;
        writeln!(f, "X: {}", join(&self.xs))?;
        writeln!(f, "O: {}", join(&self.os))
    }
}

impl FromStr for GridDiagram {
    type Err = GridError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GridDiagram::parse(s)
    }
}

pub fn parse_grid(text: &str) -> Result<GridDiagram, GridError> {
    GridDiagram::parse(text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(format!("unknown sign `{s}`")),
        }
    }
}

pub(crate) fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

fn marker_points(rows: &[usize]) -> Vec<(i64, i64)> {
    rows.iter().enumerate().map(|(c, &r)| (2 * c as i64 + 1, 2 * r as i64 + 1)).collect()
}

/// Points of a state in doubled coordinates.
pub fn state_points(x: &GridState) -> Vec<(i64, i64)> {
    x.rows().iter().enumerate().map(|(c, &r)| (2 * c as i64, 2 * r as i64)).collect()
}

/// `I(P, Q)`: pairs `p in P`, `q in Q` with `p` strictly below and left of `q`.
/// Coordinates are doubled so that half-integer points stay integral.
pub fn count_i(p: &[(i64, i64)], q: &[(i64, i64)]) -> usize {
    p.iter().map(|&(a, b)| q.iter().filter(|&&(c, d)| a < c && b < d).count()).sum()
}

/// Precomputed marker counts turning gradings into table lookups.
///
/// `cnt_o[c*m + r]` is `I({p}, O) + I(O, {p})` for the point `p = (c, r)`,
/// which is twice `J({p}, O)`.
#[derive(Clone, Debug)]
pub struct GradingTables {
    pub m: usize,
    pub cnt_o: Vec<i32>,
    pub cnt_x: Vec<i32>,
    pub maslov_const: i32,
    pub alex_const: i32,
}

impl GradingTables {
    pub fn new(g: &GridDiagram) -> Self {
        let m = g.m;
        let table = |rows: &[usize]| {
            let mut t = vec![0i32; m * m];
            for c in 0..m {
                for r in 0..m {
                    let mut n = 0;
                    for (cc, &rr) in rows.iter().enumerate() {
                        if (cc >= c && rr >= r) || (cc < c && rr < r) {
                            n += 1;
                        }
                    }
                    t[c * m + r] = n;
                }
            }
            t
        };
        let self_pairs = |rows: &[usize]| {
            let mut n = 0;
            for a in 0..m {
                for b in a + 1..m {
                    if rows[a] < rows[b] {
                        n += 1;
                    }
                }
            }
            n
        };
        let ioo = self_pairs(&g.os);
        let ixx = self_pairs(&g.xs);
        let l = g.num_components() as i32;
        GradingTables {
            m,
            cnt_o: table(&g.os),
            cnt_x: table(&g.xs),
            maslov_const: ioo + 1,
            alex_const: ioo - ixx - (m as i32 - l),
        }
    }

    pub fn maslov(&self, st: &[u8]) -> i32 {
        let m = self.m;
        let mut inv = 0;
        let mut so = 0;
        for a in 0..m {
            for b in a + 1..m {
                if st[a] < st[b] {
                    inv += 1;
                }
            }
            so += self.cnt_o[a * m + st[a] as usize];
        }
        inv - so + self.maslov_const
    }

    pub fn alex2(&self, st: &[u8]) -> i32 {
        let m = self.m;
        let mut s = self.alex_const;
        for (c, &r) in st.iter().enumerate() {
            s += self.cnt_x[c * m + r as usize] - self.cnt_o[c * m + r as usize];
        }
        s
    }

    pub fn bigrading(&self, st: &[u8]) -> Bigrading {
        Bigrading { maslov: self.maslov(st), alex2: self.alex2(st) }
    }
}
