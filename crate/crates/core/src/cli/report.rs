//! Serializable command outputs and their table renderings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::grid::{Bigrading, GridDiagram, Sign};
use crate::maps::{MapKind, Shift, VerificationReport};
use crate::spectral::{ObstructionReport, PageCount, SpectralVerdict};

/// Names the Alexander convention of every `alex2` field: doubled integers.
pub const ALEXANDER_CONVENTION: &str = "alex2";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEcho {
    pub m: usize,
    #[serde(rename = "X")]
    pub xs: Vec<usize>,
    #[serde(rename = "O")]
    pub os: Vec<usize>,
}

impl From<&GridDiagram> for GridEcho {
    fn from(g: &GridDiagram) -> Self {
        GridEcho { m: g.m(), xs: g.xs().to_vec(), os: g.os().to_vec() }
    }
}

/// Wall-clock time; the only field allowed to differ between runs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub r: usize,
    pub lambda_vanishes: bool,
    pub d_r_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignReport {
    pub sign: Sign,
    pub base_bigrading: Bigrading,
    pub n: PageCount,
    pub first_vanishing_page: Option<usize>,
    pub pages: Vec<PageEntry>,
}

impl From<&SpectralVerdict> for SignReport {
    fn from(v: &SpectralVerdict) -> Self {
        SignReport {
            sign: v.sign,
            base_bigrading: v.base_bigrading,
            n: v.n,
            first_vanishing_page: v.first_vanishing_page,
            pages: v
                .pages
                .iter()
                .map(|p| PageEntry { r: p.r, lambda_vanishes: p.lambda_vanishes, d_r_vanishes: p.d_r_vanishes })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexStats {
    /// Generators of the complex the pages were computed on.
    pub generators: usize,
    pub reduced: bool,
    pub filtration_width: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub alexander: String,
    pub grid: GridEcho,
    pub components: usize,
    pub tb: i32,
    pub rot: i32,
    pub signs: Vec<SignReport>,
    pub complex: ComplexStats,
    pub timing: Timing,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_sign(f: &mut impl fmt::Write, s: &SignReport, indent: &str) -> fmt::Result {
    writeln!(
        f,
        "{indent}x{}  M={}  alex2={}  n={}",
        s.sign.symbol(),
        s.base_bigrading.maslov,
        s.base_bigrading.alex2,
        s.n
    )?;
    for p in &s.pages {
        writeln!(
            f,
            "{indent}  r={}  lambda_vanishes={}  d_r_vanishes={}",
            p.r,
            yes_no(p.lambda_vanishes),
            yes_no(p.d_r_vanishes)
        )?;
    }
    Ok(())
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={}  components={}  tb={}  rot={}", self.grid.m, self.components, self.tb, self.rot)?;
        writeln!(
            f,
            "generators={}  reduced={}  filtration_width={}",
            self.complex.generators,
            yes_no(self.complex.reduced),
            self.complex.filtration_width
        )?;
        for s in &self.signs {
            write_sign(f, s, "")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub maslov: i32,
    pub alex2: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub alexander: String,
    pub grid: GridEcho,
    pub components: usize,
    pub total: usize,
    pub entries: Vec<HomologyEntry>,
    pub timing: Timing,
}

/// `alex2 / 2`, written as a fraction when it is not an integer.
pub fn halves(alex2: i32) -> String {
    if alex2 % 2 == 0 {
        (alex2 / 2).to_string()
    } else {
        format!("{alex2}/2")
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={}  components={}  total={}", self.grid.m, self.components, self.total)?;
        writeln!(f, "{:>5} {:>6} {:>6}", "M", "A", "dim")?;
        for e in &self.entries {
            writeln!(f, "{:>5} {:>6} {:>6}", e.maslov, halves(e.alex2), e.dim)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndReport {
    pub grid: GridEcho,
    pub components: usize,
    pub tb: i32,
    pub rot: i32,
    pub signs: Vec<SignReport>,
}

impl EndReport {
    pub fn new(g: &GridDiagram, plus: &SpectralVerdict, minus: &SpectralVerdict) -> Self {
        EndReport {
            grid: g.into(),
            components: plus.components,
            tb: plus.tb,
            rot: plus.rot,
            signs: vec![plus.into(), minus.into()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructOutput {
    pub alexander: String,
    /// The bottom end `Λ₋`.
    pub minus: EndReport,
    /// The top end `Λ₊`.
    pub plus: EndReport,
    pub report: ObstructionReport,
    pub timing: Timing,
}

impl fmt::Display for ObstructOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outcome = serde_json::to_value(self.report.outcome).map_err(|_| fmt::Error)?;
        write!(f, "{}", outcome.as_str().unwrap_or_default())?;
        if let Some(b) = self.report.bullet {
            write!(f, " ({b:?})")?;
        }
        writeln!(f)?;
        if self.report.satisfied.len() > 1 {
            let all: Vec<String> = self.report.satisfied.iter().map(|b| format!("{b:?}")).collect();
            writeln!(f, "satisfied: {}", all.join(", "))?;
        }
        if self.report.lambda_minus_literal && !self.report.satisfied.contains(&crate::spectral::Bullet::LambdaMinus) {
            writeln!(f, "LambdaMinus holds under the bound min n+")?;
        }
        let c = &self.report.classical;
        write!(f, "rot_equal={}  chi={}", yes_no(c.rot_equal), c.chi)?;
        match c.connected_genus {
            Some(g) => writeln!(f, "  connected_genus={g}")?,
            None => writeln!(f, "  connected_genus=none")?,
        }
        for (name, end) in [("minus", &self.minus), ("plus", &self.plus)] {
            writeln!(f, "{name}: m={}  components={}  tb={}  rot={}", end.grid.m, end.components, end.tb, end.rot)?;
            for s in &end.signs {
                write_sign(f, s, "  ")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyStep {
    /// Zero-based index of the script move this step belongs to.
    pub step: usize,
    /// Added to separate the markers of a swap.
    pub inserted: bool,
    #[serde(rename = "move")]
    pub mv: String,
    pub kind: MapKind,
    pub shift: Shift,
    pub passed: bool,
    pub report: VerificationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRun {
    /// The canonical generator the sign-dependent maps were built for.
    pub sign: Sign,
    pub steps: Vec<VerifyStep>,
    pub composite: VerificationReport,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub alexander: String,
    pub grid: GridEcho,
    pub result: GridEcho,
    pub runs: Vec<VerifyRun>,
    pub passed: bool,
    pub timing: Timing,
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for VerifyOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for run in &self.runs {
            writeln!(f, "sign {}", run.sign.symbol())?;
            for s in &run.steps {
                let mut label = format!("[{}] {}", s.step, s.mv);
                if s.inserted {
                    label.push_str(" (inserted)");
                }
                writeln!(
                    f,
                    "  {label:<28} {:<10} shift=({},{})  {}",
                    format!("{:?}", s.kind),
                    s.shift.maslov,
                    s.shift.alex2,
                    pass(s.passed)
                )?;
            }
            let c = &run.composite;
            writeln!(f, "  composite shift=({},{})  {}", c.shift.maslov, c.shift.alex2, pass(c.passed()))?;
        }
        writeln!(f, "{}", pass(self.passed))
    }
}
