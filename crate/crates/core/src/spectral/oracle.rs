//! Brute-force `Z^r_p` and `B^r_p` from their definitions as subquotients
//! of `F_p / F_{p-1}` (alex2 units: `p - 1` is `p - 2`).

use serde::{Deserialize, Serialize};

use crate::complex::linalg::Echelon;
use crate::complex::{F2Chain, FilteredComplex};
use crate::error::ComplexError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageOracleResult {
    pub r: usize,
    pub p: i32,
    pub maslov: i32,
    pub dim_zr: usize,
    pub dim_br: usize,
    pub class_in_zr: bool,
    pub class_in_br: bool,
}

/// Collect the stored columns whose entries all lie below `top`.
fn low_part(e: &Echelon, top: u32) -> Echelon {
    let mut out = Echelon::new();
    for (piv, col) in e.columns() {
        if piv < top {
            out.insert(col.clone());
        }
    }
    out
}

/// `Z^r_p` and `B^r_p` in the Maslov degree of `z`, and membership of the
/// level-`p` part of `z`.
pub fn page_oracle(c: &FilteredComplex, z: &F2Chain, p: i32, r: usize) -> Result<PageOracleResult, ComplexError> {
    if c.window().is_some() {
        return Err(ComplexError::WindowTooNarrow);
    }
    let b = c.basis();
    let n = c.len() as u32;
    let maslov = match z.iter().next() {
        Some(i) => b.grading(i).maslov,
        None => return Err(ComplexError::UnknownGenerator),
    };
    let r = r.max(1) as i32;
    let alex = |i: u32| b.grading(i).alex2;
    let level = |i: &u32| alex(*i) == p;
    let zp: Vec<u32> = z.iter().filter(level).collect();

    // Z^r_p: chains c in F_p with dc in F_{p-2r}, seen at level p. Entries of
    // dc above p-2r are shifted past n so they are eliminated first.
    let mut ez = Echelon::new();
    for i in b.level(maslov) {
        let i = i as u32;
        if alex(i) > p {
            break;
        }
        let mut col: Vec<u32> = Vec::new();
        if alex(i) == p {
            col.push(i);
        }
        let mut top: Vec<u32> = c.boundary(i).iter().copied().filter(|&t| alex(t) > p - 2 * r).map(|t| n + t).collect();
        top.sort_unstable();
        col.extend(top);
        if !col.is_empty() {
            ez.insert(col);
        }
    }
    let zr = low_part(&ez, n);

    // B^r_p: boundaries of F_{p+2(r-1)} lying in F_p, seen at level p.
    let mut eb = Echelon::new();
    for i in b.level(maslov + 1) {
        let i = i as u32;
        if alex(i) > p + 2 * (r - 1) {
            break;
        }
        let mut col: Vec<u32> = c.boundary(i).iter().copied().filter(|t| level(t)).collect();
        let mut top: Vec<u32> = c.boundary(i).iter().copied().filter(|&t| alex(t) > p).map(|t| n + t).collect();
        top.sort_unstable();
        col.extend(top);
        if !col.is_empty() {
            eb.insert(col);
        }
    }
    let br = low_part(&eb, n);

    Ok(PageOracleResult {
        r: r as usize,
        p,
        maslov,
        dim_zr: zr.rank(),
        dim_br: br.rank(),
        class_in_zr: zr.contains(zp.clone()),
        class_in_br: br.contains(zp),
    })
}
