//! Depth-first enumeration of all grid states with their gradings.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::grid::GradingTables;

pub(crate) type Buckets = FxHashMap<(i32, i32), Vec<u64>>;

/// Result of one pass over the `m!` states.
#[derive(Debug, Default)]
pub(crate) struct Enumeration {
    pub buckets: Buckets,
    pub stored: u64,
    pub alex_min: i32,
    pub alex_max: i32,
    pub overflow: bool,
}

struct Ctx<'a, F: Fn(i32) -> bool> {
    t: &'a GradingTables,
    keep: &'a F,
    cap: u64,
}

#[allow(clippy::too_many_arguments)]
fn rec<F: Fn(i32) -> bool>(
    ctx: &Ctx<'_, F>,
    out: &mut Enumeration,
    c: usize,
    used: u32,
    key: u64,
    inv: i32,
    so: i32,
    sx: i32,
) {
    let t = ctx.t;
    let m = t.m;
    if c == m {
        let a = sx - so + t.alex_const;
        out.alex_min = out.alex_min.min(a);
        out.alex_max = out.alex_max.max(a);
        let mas = inv - so + t.maslov_const;
        if (ctx.keep)(mas) {
            out.stored += 1;
            if out.stored > ctx.cap {
                out.overflow = true;
                return;
            }
            out.buckets.entry((mas, a)).or_default().push(key);
        }
        return;
    }
    let base = c * m;
    let mut free = !used & ((1u32 << m) - 1);
    while free != 0 {
        let r = free.trailing_zeros() as usize;
        free &= free - 1;
        let below = (used & ((1u32 << r) - 1)).count_ones() as i32;
        rec(
            ctx,
            out,
            c + 1,
            used | (1 << r),
            key | ((r as u64) << (4 * c)),
            inv + below,
            so + t.cnt_o[base + r],
            sx + t.cnt_x[base + r],
        );
        if out.overflow {
            return;
        }
    }
}

/// Enumerate every state, storing the packed keys of those whose Maslov
/// grading passes `keep`. Stops early once more than `cap` keys are stored.
pub(crate) fn enumerate<F: Fn(i32) -> bool + Sync>(t: &GradingTables, keep: &F, cap: u64) -> Enumeration {
    let m = t.m;
    assert!(m <= 16);
    let ctx = Ctx { t, keep, cap };
    let empty = || Enumeration { alex_min: i32::MAX, alex_max: i32::MIN, ..Default::default() };
    let merge = |mut a: Enumeration, b: Enumeration| {
        a.stored += b.stored;
        a.overflow |= b.overflow || a.stored > cap;
        a.alex_min = a.alex_min.min(b.alex_min);
        a.alex_max = a.alex_max.max(b.alex_max);
        for (k, mut v) in b.buckets {
            a.buckets.entry(k).or_default().append(&mut v);
        }
        a
    };
    (0..m)
        .into_par_iter()
        .map(|r| {
            let mut out = empty();
            let below = 0;
            rec(&ctx, &mut out, 1, 1 << r, r as u64, below, t.cnt_o[r], t.cnt_x[r]);
            out
        })
        .reduce(empty, merge)
}
