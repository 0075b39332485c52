//! The self-insertion of the eight-knot seed: drops across the central
//! nested intervals grow by `5/3` per level.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::ornstein::construct::lazy_eval;
use crate::ornstein::seed::{SeedFunction, SeedKind};
use crate::rat::{self, int, rat, Rat};

/// `I_1 = [3/7, 4/7]` and `I_k = [a_{k-1} + 3/7^k, a_{k-1} + 4/7^k]`, where
/// `a_k` is the left end of `I_k`.
pub fn nested_intervals_g(n: usize) -> Vec<Interval> {
    let mut out = Vec::with_capacity(n);
    let mut a = rat::zero();
    let mut w = rat::one();
    for _ in 0..n {
        w /= int(7);
        let lo = &a + &w * int(3);
        let hi = &a + &w * int(4);
        a = lo.clone();
        out.push(Interval::spanning(lo, hi));
    }
    out
}

/// `1 + Σ_{i=0}^{n} (1/3)(5/3)^i`.
pub fn partial_sum(n: usize) -> Rat {
    let r = rat(5, 3);
    let mut term = rat(1, 3);
    let mut total = rat::one();
    for _ in 0..=n {
        total += &term;
        term *= &r;
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivergenceLevel {
    pub n: usize,
    /// `I_{n+1}`, the central decreasing piece of level `n`.
    pub interval: Interval,
    /// Whether level `n` is linear on `interval`.
    pub linear: bool,
    /// `g_n(hi) - g_n(lo)` across `interval`.
    pub drop: Rat,
    /// `g_n(lo)`.
    pub left_value: Rat,
    /// `g_n` at the left end of `I_n` (the other indexing reading; `None` at level 0).
    pub left_value_current: Option<Rat>,
    /// `1 + Σ_{i=0}^{n} (1/3)(5/3)^i`.
    pub formula: Rat,
    /// `|drop_n| / |drop_{n-1}|`; `None` at level 0.
    pub ratio: Option<Rat>,
}

impl DivergenceLevel {
    pub fn drop_matches_power(&self) -> bool {
        self.drop == -rat::pow(&rat(5, 3), self.n as u32 + 1)
    }

    pub fn formula_matches_next(&self) -> bool {
        self.left_value == self.formula
    }

    pub fn formula_matches_current(&self) -> bool {
        self.left_value_current.as_ref() == Some(&self.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivergenceReport {
    pub levels: Vec<DivergenceLevel>,
    /// `g_n(1/2)` for `n = 0..=center_levels`.
    pub center_values: Vec<Rat>,
}

impl DivergenceReport {
    pub fn ratios_exact(&self) -> bool {
        self.levels.iter().skip(1).all(|l| l.ratio == Some(rat(5, 3)))
    }

    pub fn left_values_match(&self) -> bool {
        self.levels.iter().all(DivergenceLevel::formula_matches_next)
    }

    pub fn center_strictly_increasing(&self) -> bool {
        self.center_values.windows(2).all(|w| w[0] < w[1])
    }

    /// First `n` with `g_n(1/2) > bound`.
    pub fn center_exceeds(&self, bound: &Rat) -> Option<usize> {
        self.center_values.iter().position(|v| v > bound)
    }
}

pub const MAX_LEVELS: usize = 10_000;

/// Levels `0..=n_max` of the divergence table and `g_n(1/2)` for
/// `n = 0..=center_levels`, all by lazy evaluation.
pub fn divergence_report(n_max: usize, center_levels: usize) -> Result<DivergenceReport> {
    if n_max > MAX_LEVELS || center_levels > MAX_LEVELS {
        return Err(Error::Resource { projected: n_max.max(center_levels) as u128, cap: MAX_LEVELS as u128 });
    }
    let g = SeedFunction::of_kind(SeedKind::OrnsteinG);
    let intervals = nested_intervals_g(n_max + 1);
    let mut levels: Vec<DivergenceLevel> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let iv = intervals[n].clone();
        let lo = lazy_eval(&g, n, iv.lo())?;
        let hi = lazy_eval(&g, n, iv.hi())?;
        let mid = lazy_eval(&g, n, &iv.midpoint())?;
        let linear = mid == rat::midpoint(&lo, &hi);
        let left_value_current = match n {
            0 => None,
            _ => Some(lazy_eval(&g, n, intervals[n - 1].lo())?),
        };
        let drop = &hi - &lo;
        let ratio = levels.last().map(|p| drop.abs() / p.drop.abs());
        levels.push(DivergenceLevel {
            n,
            interval: iv,
            linear,
            drop,
            left_value: lo,
            left_value_current,
            formula: partial_sum(n),
            ratio,
        });
    }
    let half = rat::half();
    let center_values = (0..=center_levels).map(|n| lazy_eval(&g, n, &half)).collect::<Result<Vec<_>>>()?;
    Ok(DivergenceReport { levels, center_values })
}
