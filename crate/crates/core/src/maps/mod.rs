//! Filtered chain maps for grid moves, and their verification.
//!
//! Every map is stored as a sparse matrix between two fully built complexes.
//! A map with shift `(s_M, s_A2)` sends a generator of bigrading
//! `(M, A2)` to terms of Maslov grading `M - s_M` and alex2 at most
//! `A2 - s_A2`.

mod birth;
mod isotopy;
mod lens;
mod normalize;
mod pinch;
mod script;
mod snail;

pub use birth::{birth_map, find_birth, BirthPattern};
pub use isotopy::{commutation_map, commutation_pentagons, destabilization_map, stabilization_map};
pub use normalize::separate_swap;
pub use pinch::{find_pinch, pinch_map_o, pinch_map_x, PinchPattern, SwapKind};
pub use script::{parse_script, run_script, Move, ScriptStep};
pub use snail::{enumerate_snail_domains, snail_domains_between, SnailDomain, SnailKind};

use std::ops::Add;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{build_complex_with, BuildOptions, F2Chain, FilteredComplex};
use crate::error::{ComplexError, MapError};
use crate::grid::{GridDiagram, GridState, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapKind {
    #[serde(rename = "COMMUTE")]
    Commute,
    #[serde(rename = "STAB_OL")]
    StabOL,
    #[serde(rename = "DESTAB_IL")]
    DestabIL,
    #[serde(rename = "PINCH_X")]
    PinchX,
    #[serde(rename = "PINCH_O")]
    PinchO,
    #[serde(rename = "BIRTH")]
    Birth,
    #[serde(rename = "COMPOSITE")]
    Composite,
}

impl MapKind {
    /// Whether the move is an elementary cobordism rather than an isotopy.
    pub fn is_cobordism(self) -> bool {
        matches!(self, MapKind::PinchX | MapKind::PinchO | MapKind::Birth)
    }
}

/// `(s_M, s_A2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shift {
    pub maslov: i32,
    pub alex2: i32,
}

impl Add for Shift {
    type Output = Shift;
    fn add(self, o: Shift) -> Shift {
        Shift { maslov: self.maslov + o.maslov, alex2: self.alex2 + o.alex2 }
    }
}

/// What a map does to the canonical generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ImageContract {
    /// `x^±` goes to exactly `x^±`.
    Exact,
    /// `x^±` goes to `x^±` plus terms of strictly lower filtration.
    LeadingTerm,
}

#[derive(Clone, Debug)]
pub struct ChainMapRecord {
    pub kind: MapKind,
    pub source: Arc<FilteredComplex>,
    pub target: Arc<FilteredComplex>,
    /// Column `i` is the image of source generator `i`.
    pub matrix: Vec<F2Chain>,
    pub shift: Shift,
    pub contract: ImageContract,
    /// Canonical generators covered by `contract`.
    pub signs: Vec<Sign>,
}

impl ChainMapRecord {
    pub fn apply(&self, z: &F2Chain) -> F2Chain {
        let mut v = Vec::new();
        for i in z.iter() {
            v.extend_from_slice(self.matrix[i as usize].support());
        }
        F2Chain::from_indices(v)
    }

    pub fn image_of(&self, x: &GridState) -> Option<Vec<GridState>> {
        let i = self.source.index_of(x)?;
        Some(self.matrix[i as usize].iter().map(|t| self.target.basis().state(t)).collect())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMapRecord) -> Result<ChainMapRecord, MapError> {
        if self.target.grid() != next.source.grid() || self.target.len() != next.source.len() {
            return Err(MapError::Unrelated("composed maps do not share a complex".into()));
        }
        let matrix = self.matrix.par_iter().map(|col| next.apply(col)).collect();
        let contract = if self.contract == ImageContract::Exact && next.contract == ImageContract::Exact {
            ImageContract::Exact
        } else {
            ImageContract::LeadingTerm
        };
        Ok(ChainMapRecord {
            kind: MapKind::Composite,
            source: self.source.clone(),
            target: next.target.clone(),
            matrix,
            shift: self.shift + next.shift,
            contract,
            signs: self.signs.iter().copied().filter(|s| next.signs.contains(s)).collect(),
        })
    }
}

/// Where the crossing of a lens sits for maps built to carry `x^sign`.
pub(crate) fn placement_for(sign: Sign) -> lens::Placement {
    match sign {
        Sign::Plus => lens::Placement::HugWest,
        Sign::Minus => lens::Placement::HugEast,
    }
}

/// A full complex suitable as the source or target of a map.
pub fn full_complex(g: &GridDiagram) -> Result<Arc<FilteredComplex>, ComplexError> {
    build_complex_with(g, BuildOptions::default()).map(Arc::new)
}

fn require_full(c: &FilteredComplex) -> Result<(), MapError> {
    if c.window().is_some() || c.is_reduced() {
        return Err(MapError::Unrelated("maps need full, unreduced complexes".into()));
    }
    Ok(())
}

/// Assemble a record from a state-level image function. Repeated targets
/// cancel in pairs.
pub(crate) fn assemble(
    kind: MapKind,
    source: Arc<FilteredComplex>,
    target: Arc<FilteredComplex>,
    shift: Shift,
    contract: ImageContract,
    image: impl Fn(&GridState) -> Vec<GridState> + Sync,
) -> Result<ChainMapRecord, MapError> {
    require_full(&source)?;
    require_full(&target)?;
    let n = source.len() as u32;
    let matrix = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = source.basis().state(i);
            target.chain_of(&image(&x))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ChainMapRecord { kind, source, target, matrix, shift, contract, signs: vec![Sign::Plus, Sign::Minus] })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalImage {
    pub sign: Sign,
    pub expected: String,
    pub expected_alex2: i32,
    pub contains_expected: bool,
    /// Terms other than the expected one.
    pub remainder_terms: usize,
    pub remainder_max_alex2: Option<i32>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: MapKind,
    pub shift: Shift,
    pub source_generators: usize,
    pub target_generators: usize,
    /// Both complexes are full and unreduced.
    pub complete: bool,
    pub chain_map: bool,
    pub chain_map_failures: usize,
    pub homogeneous: bool,
    pub filtered: bool,
    pub canonical: Vec<CanonicalImage>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.complete && self.chain_map && self.homogeneous && self.filtered && self.canonical.iter().all(|c| c.ok)
    }
}

pub fn verify_map(rec: &ChainMapRecord) -> VerificationReport {
    let (s, t) = (&rec.source, &rec.target);
    let complete = require_full(s).is_ok() && require_full(t).is_ok();
    let n = s.len() as u32;
    let failures = (0..n)
        .into_par_iter()
        .filter(|&i| {
            let col = &rec.matrix[i as usize];
            let lhs = match t.apply(col) {
                Ok(c) => c,
                Err(_) => return true,
            };
            let mut rhs = Vec::new();
            for &b in s.boundary(i) {
                rhs.extend_from_slice(rec.matrix[b as usize].support());
            }
            lhs != F2Chain::from_indices(rhs)
        })
        .count();
    let (mut homogeneous, mut filtered) = (true, true);
    for i in 0..n {
        let g = s.basis().grading(i);
        for y in rec.matrix[i as usize].iter() {
            let h = t.basis().grading(y);
            homogeneous &= h.maslov == g.maslov - rec.shift.maslov;
            filtered &= h.alex2 <= g.alex2 - rec.shift.alex2;
        }
    }
    let canonical = rec.signs.iter().map(|&sign| canonical_image(rec, sign)).collect();
    VerificationReport {
        kind: rec.kind,
        shift: rec.shift,
        source_generators: s.len(),
        target_generators: t.len(),
        complete,
        chain_map: failures == 0,
        chain_map_failures: failures,
        homogeneous,
        filtered,
        canonical,
    }
}

fn canonical_image(rec: &ChainMapRecord, sign: Sign) -> CanonicalImage {
    let (s, t) = (&rec.source, &rec.target);
    let want = t.grid().canonical(sign);
    let want_alex2 = t.tables().bigrading(want.rows()).alex2;
    let img = s.index_of(&s.grid().canonical(sign)).map(|i| &rec.matrix[i as usize]);
    let want_idx = t.index_of(&want);
    let mut out = CanonicalImage {
        sign,
        expected: want.to_string(),
        expected_alex2: want_alex2,
        contains_expected: false,
        remainder_terms: 0,
        remainder_max_alex2: None,
        ok: false,
    };
    let (Some(img), Some(w)) = (img, want_idx) else { return out };
    out.contains_expected = img.contains(w);
    for y in img.iter().filter(|&y| y != w) {
        out.remainder_terms += 1;
        let a = t.basis().grading(y).alex2;
        out.remainder_max_alex2 = Some(out.remainder_max_alex2.map_or(a, |b: i32| b.max(a)));
    }
    out.ok = out.contains_expected
        && match rec.contract {
            ImageContract::Exact => out.remainder_terms == 0,
            ImageContract::LeadingTerm => out.remainder_max_alex2.is_none_or(|a| a < want_alex2),
        };
    out
}
