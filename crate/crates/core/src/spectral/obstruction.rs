//! Obstructions to decomposable Lagrangian cobordisms from `Λ₋` to `Λ₊`.

use serde::{Deserialize, Serialize};

use super::{PageCount, SpectralVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bullet {
    /// `n⁺(Λ₊) > n⁺(Λ₋)`
    NPlus,
    /// `λ⁺_i(Λ₊) = 0`, `λ⁺_i(Λ₋) ≠ 0`, `i ≤ min n⁺`
    LambdaPlus,
    /// `n⁻(Λ₊) > n⁻(Λ₋)`
    NMinus,
    /// `λ⁻_i(Λ₊) = 0`, `λ⁻_i(Λ₋) ≠ 0`, `i ≤ min n⁻`
    LambdaMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "OBSTRUCTED")]
    Obstructed,
    #[serde(rename = "NO_OBSTRUCTION")]
    NoObstruction,
}

/// Classical constraints: `rot(Λ₊) = rot(Λ₋)` and `tb(Λ₊) - tb(Λ₋) = -χ(L)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalCheck {
    pub rot_equal: bool,
    /// Euler characteristic forced on any cobordism.
    pub chi: i32,
    /// Genus of a connected cobordism with that Euler characteristic, if one exists.
    pub connected_genus: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub outcome: Outcome,
    /// First satisfied hypothesis, in the order listed by [`Bullet`].
    pub bullet: Option<Bullet>,
    pub satisfied: Vec<Bullet>,
    /// The fourth hypothesis read literally, with `i ≤ min n⁺`; reported
    /// separately because it can differ from [`Bullet::LambdaMinus`].
    pub lambda_minus_literal: bool,
    pub pages_witness: Option<usize>,
    pub classical: ClassicalCheck,
}

fn lambda_bullet(plus_top: &SpectralVerdict, minus_bottom: &SpectralVerdict, bound: PageCount) -> Option<usize> {
    let last = plus_top.width.max(minus_bottom.width).max(1);
    (1..=last)
        .filter(|&i| bound.admits(i))
        .find(|&i| plus_top.lambda(i) == Some(true) && minus_bottom.lambda(i) == Some(false))
}

/// Arguments are the verdicts of `Λ₊` (signs + and -) and of `Λ₋`.
pub fn check_obstruction(
    v_plus_top: &SpectralVerdict,
    v_minus_top: &SpectralVerdict,
    v_plus_bottom: &SpectralVerdict,
    v_minus_bottom: &SpectralVerdict,
) -> ObstructionReport {
    let mut satisfied = Vec::new();
    let mut witness = None;
    if v_plus_top.n > v_plus_bottom.n {
        satisfied.push(Bullet::NPlus);
    }
    if let Some(i) = lambda_bullet(v_plus_top, v_plus_bottom, v_plus_bottom.n.min(v_plus_top.n)) {
        satisfied.push(Bullet::LambdaPlus);
        witness = witness.or(Some(i));
    }
    if v_minus_top.n > v_minus_bottom.n {
        satisfied.push(Bullet::NMinus);
    }
    if let Some(i) = lambda_bullet(v_minus_top, v_minus_bottom, v_minus_bottom.n.min(v_minus_top.n)) {
        satisfied.push(Bullet::LambdaMinus);
        witness = witness.or(Some(i));
    }
    let lambda_minus_literal = lambda_bullet(v_minus_top, v_minus_bottom, v_plus_bottom.n.min(v_plus_top.n)).is_some();

    let chi = v_plus_bottom.tb - v_plus_top.tb;
    let ends = (v_plus_top.components + v_plus_bottom.components) as i32;
    let twice_genus = 2 - ends - chi;
    let classical = ClassicalCheck {
        rot_equal: v_plus_top.rot == v_plus_bottom.rot,
        chi,
        connected_genus: (twice_genus >= 0 && twice_genus % 2 == 0).then_some(twice_genus / 2),
    };
    let bullet = satisfied.first().copied();
    ObstructionReport {
        outcome: if bullet.is_some() { Outcome::Obstructed } else { Outcome::NoObstruction },
        bullet,
        satisfied,
        lambda_minus_literal,
        pages_witness: witness,
        classical,
    }
}
