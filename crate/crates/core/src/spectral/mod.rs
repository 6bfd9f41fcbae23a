//! The invariants `n^±` and the vanishing pages of `λ^±_i`.
//!
//! Filtration levels are in alex2 units, so one filtration step is 2.
//! With `x = x^±` at level `p`:
//! * `λ_r = 0` iff `x` is a boundary in `F_{p+2(r-1)} / F_{p-2}`;
//! * `d_r λ_r = 0` iff `∂x` is a boundary in `F_{p-2} / F_{p-2-2r}`.

mod obstruction;
mod oracle;

pub use obstruction::{check_obstruction, Bullet, ClassicalCheck, ObstructionReport, Outcome};
pub use oracle::{page_oracle, PageOracleResult};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{
    build_complex_with, is_boundary_in_quotient, reduce_with, BuildOptions, F2Chain, FilteredComplex, QuotientWindow,
    Window, DEFAULT_MAX_STATES, DEFAULT_REDUCE_THRESHOLD,
};
use crate::error::ComplexError;
use crate::grid::{Bigrading, GridDiagram, Sign};

/// A page number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PageCount {
    Finite(usize),
    Infinite,
}

impl PageCount {
    pub fn is_infinite(self) -> bool {
        self == PageCount::Infinite
    }

    /// Whether page `i` lies within `1..=self`.
    pub fn admits(self, i: usize) -> bool {
        match self {
            PageCount::Finite(n) => i <= n,
            PageCount::Infinite => true,
        }
    }
}

impl fmt::Display for PageCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PageCount::Finite(n) => write!(f, "{n}"),
            PageCount::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for PageCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PageCount::Finite(n) => s.serialize_u64(*n as u64),
            PageCount::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PageCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(PageCount::Finite(n as usize)),
            Raw::S(s) if s == "inf" => Ok(PageCount::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad page count `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageRecord {
    pub r: usize,
    pub lambda_defined: bool,
    pub lambda_vanishes: bool,
    pub d_r_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralVerdict {
    pub sign: Sign,
    pub base_bigrading: Bigrading,
    pub n: PageCount,
    pub pages: Vec<PageRecord>,
    pub first_vanishing_page: Option<usize>,
    /// Filtration width: every page from this one on is the final page.
    pub width: usize,
    pub tb: i32,
    pub rot: i32,
    pub components: usize,
}

impl SpectralVerdict {
    /// `Some(vanishes)` if `λ_i` is defined, `None` past `n`.
    pub fn lambda(&self, i: usize) -> Option<bool> {
        if i == 0 || !self.n.admits(i) {
            return None;
        }
        Some(self.first_vanishing_page.is_some_and(|f| f <= i))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EngineOptions {
    pub max_states: u64,
    /// Reduce before solving once the complex has more generators than this.
    pub reduce_threshold: Option<usize>,
    /// Materialize every Maslov degree instead of the three that are needed.
    pub full: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { max_states: DEFAULT_MAX_STATES, reduce_threshold: Some(DEFAULT_REDUCE_THRESHOLD), full: false }
    }
}

/// A complex prepared for questions about one canonical generator.
#[derive(Clone, Debug)]
pub struct ClassProblem {
    pub complex: Arc<FilteredComplex>,
    pub z: F2Chain,
    pub grading: Bigrading,
}

impl ClassProblem {
    pub fn new(complex: Arc<FilteredComplex>, z: F2Chain, grading: Bigrading) -> Self {
        ClassProblem { complex, z, grading }
    }

    pub fn lambda_vanishes(&self, r: usize) -> Result<bool, ComplexError> {
        let p = self.grading.alex2;
        let w = QuotientWindow { hi: p + 2 * (r as i32 - 1), lo: p - 2 };
        is_boundary_in_quotient(&self.complex, &self.z, w)
    }

    pub fn d_r_vanishes(&self, r: usize) -> Result<bool, ComplexError> {
        let p = self.grading.alex2;
        let dz = self.complex.apply(&self.z)?;
        let w = QuotientWindow { hi: p - 2, lo: p - 2 - 2 * r as i32 };
        is_boundary_in_quotient(&self.complex, &dz, w)
    }
}

fn run_loop(prob: &ClassProblem, width: usize) -> Result<(PageCount, Vec<PageRecord>, Option<usize>), ComplexError> {
    let mut pages = Vec::new();
    for r in 1..=width {
        if prob.lambda_vanishes(r)? {
            for rr in r..=width {
                pages.push(PageRecord { r: rr, lambda_defined: true, lambda_vanishes: true, d_r_vanishes: true });
            }
            return Ok((PageCount::Infinite, pages, Some(r)));
        }
        let dv = prob.d_r_vanishes(r)?;
        pages.push(PageRecord { r, lambda_defined: true, lambda_vanishes: false, d_r_vanishes: dv });
        if !dv {
            return Ok((PageCount::Finite(r), pages, None));
        }
    }
    Ok((PageCount::Infinite, pages, None))
}

/// Complexes for the canonical generators of the requested signs, sharing
/// one build when the Maslov degrees allow it.
pub fn prepare(g: &GridDiagram, signs: &[Sign], opts: EngineOptions) -> Result<Vec<ClassProblem>, ComplexError> {
    let t = g.tables();
    let gens: Vec<_> = signs.iter().map(|&s| g.canonical(s)).collect();
    let grs: Vec<Bigrading> = gens.iter().map(|x| t.bigrading(x.rows())).collect();
    let lo = grs.iter().map(|b| b.maslov).min().unwrap_or(0) - 1;
    let hi = grs.iter().map(|b| b.maslov).max().unwrap_or(0) + 1;
    let window = if opts.full { None } else { Some(Window { maslov_lo: lo, maslov_hi: hi }) };
    let complex = build_complex_with(g, BuildOptions { window, max_states: opts.max_states })?;
    let chains: Vec<F2Chain> =
        gens.iter().map(|x| complex.chain_of(std::slice::from_ref(x))).collect::<Result<_, _>>()?;
    let (complex, chains) = match opts.reduce_threshold {
        Some(th) if complex.len() > th => {
            let red = reduce_with(&complex, chains);
            (red.complex, red.chains)
        }
        _ => (complex, chains),
    };
    let complex = Arc::new(complex);
    Ok(chains.into_iter().zip(grs).map(|(z, gr)| ClassProblem::new(complex.clone(), z, gr)).collect())
}

pub fn verdict_for(g: &GridDiagram, sign: Sign, prob: &ClassProblem) -> Result<SpectralVerdict, ComplexError> {
    let width = prob.complex.filtration_width();
    let (n, pages, first) = run_loop(prob, width)?;
    let (tb, rot) = g.tb_rot();
    Ok(SpectralVerdict {
        sign,
        base_bigrading: prob.grading,
        n,
        pages,
        first_vanishing_page: first,
        width,
        tb,
        rot,
        components: g.num_components(),
    })
}

pub fn compute_verdict(g: &GridDiagram, sign: Sign) -> Result<SpectralVerdict, ComplexError> {
    compute_verdict_with(g, sign, EngineOptions::default())
}

pub fn compute_verdict_with(g: &GridDiagram, sign: Sign, opts: EngineOptions) -> Result<SpectralVerdict, ComplexError> {
    let probs = prepare(g, &[sign], opts)?;
    verdict_for(g, sign, &probs[0])
}

/// Both verdicts `(+, -)` from a single complex build.
pub fn compute_verdicts(
    g: &GridDiagram,
    opts: EngineOptions,
) -> Result<(SpectralVerdict, SpectralVerdict), ComplexError> {
    let probs = prepare(g, &[Sign::Plus, Sign::Minus], opts)?;
    let (a, b) = rayon::join(|| verdict_for(g, Sign::Plus, &probs[0]), || verdict_for(g, Sign::Minus, &probs[1]));
    Ok((a?, b?))
}

pub fn lambda_vanishes(g: &GridDiagram, sign: Sign, r: usize) -> Result<bool, ComplexError> {
    let probs = prepare(g, &[sign], EngineOptions::default())?;
    probs[0].lambda_vanishes(r)
}

pub fn d_r_vanishes(g: &GridDiagram, sign: Sign, r: usize) -> Result<bool, ComplexError> {
    let probs = prepare(g, &[sign], EngineOptions::default())?;
    probs[0].d_r_vanishes(r)
}
