use serde::{Deserialize, Serialize};

use super::linalg::Echelon;
use super::{F2Chain, FilteredComplex};
use crate::error::ComplexError;

/// The subquotient `F_hi / F_lo` in alex2 units, `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientWindow {
    pub hi: i32,
    pub lo: i32,
}

/// Whether the chain `z` (homogeneous in Maslov degree) is the image of the
/// differential in `F_hi / F_lo`.
pub fn is_boundary_in_quotient(c: &FilteredComplex, z: &F2Chain, w: QuotientWindow) -> Result<bool, ComplexError> {
    let b = c.basis();
    let Some(first) = z.iter().next() else {
        return Ok(true);
    };
    let d = b.grading(first).maslov;
    if z.iter().any(|i| b.grading(i).maslov != d) {
        return Err(ComplexError::UnknownGenerator);
    }
    let upper = b.level(d + 1);
    if !c.materializes(d) || !c.materializes(d + 1) || upper.clone().any(|i| !c.has_boundary(i as u32)) {
        return Err(ComplexError::WindowTooNarrow);
    }
    let keep_row = |t: &u32| b.grading(*t).alex2 > w.lo;
    let mut e = Echelon::new();
    for i in upper {
        let i = i as u32;
        if b.grading(i).alex2 > w.hi {
            break;
        }
        let col: Vec<u32> = c.boundary(i).iter().copied().filter(keep_row).collect();
        if !col.is_empty() {
            e.insert(col);
        }
    }
    let target: Vec<u32> = z.iter().filter(keep_row).collect();
    Ok(e.contains(target))
}
