//! One application of the nested-component lemma to a PL function.
//!
//! Starting from `(a0, b0)` and a level `y0` below `sup f[a0, b0]`, the step
//! descends through components `(c_k, d_k)` of `G_ε(H_{r_k}, (c_{k-1}, d_{k-1}))`
//! with increasing levels `r_k`, stopping at the first component on which
//! `H_{y0}` has density above 1/2.

use num_traits::{Signed, Zero};

use crate::density::{density, superlevel_density};
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};
use crate::omalley::geps::{cumulative_measure, g_epsilon, max_straddling_density};
use crate::pl::{crossing, PLFunction, Point};
use crate::rat::{self, Rat};

const MAX_DESCENT: usize = 512;
const MAX_LEVEL_PROBES: usize = 4096;

/// One stage of the inner descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStage {
    pub level: Rat,
    pub component: Interval,
    pub alpha: Rat,
    pub delta: Rat,
}

/// The six checked conclusions of a step, each with both sides kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepWitness {
    /// (1) `[a1, b1] ⊂ (a0, b0)`.
    pub nested: bool,
    /// (2) `b1 - a1 < (b0 - a0)/2`, as (lhs, rhs).
    pub width: (Rat, Rat),
    /// (3) `max{f(a0), f(b0), y0} < y1`, as (lhs, rhs).
    pub level_rise: (Rat, Rat),
    /// (4) `max{f(a1), f(b1)} ≤ y1`, as (lhs, rhs).
    pub endpoint_cap: (Rat, Rat),
    /// (5) `Δ(H_{y0}, (a1, b1)) > 1/2`; the density.
    pub high_density: Rat,
    /// (6) largest `Δ(H_{y1}, J)` over open `J ⊆ (a0, b0)` through `a1` or `b1`;
    /// must be `≤ ε`.
    pub straddle_max: Rat,
}

impl StepWitness {
    /// Which of items (1)–(6) hold, in order.
    pub fn items(&self, eps: &Rat) -> [bool; 6] {
        [
            self.nested,
            self.width.0 < self.width.1,
            self.level_rise.0 < self.level_rise.1,
            self.endpoint_cap.0 <= self.endpoint_cap.1,
            self.high_density > rat::half(),
            &self.straddle_max <= eps,
        ]
    }

    pub fn all_hold(&self, eps: &Rat) -> bool {
        self.items(eps).iter().all(|&b| b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaStepResult {
    pub y1: Rat,
    pub a1: Rat,
    pub b1: Rat,
    pub eps: Rat,
    pub witness: StepWitness,
    pub descent: Vec<DescentStage>,
}

impl LemmaStepResult {
    pub fn interval(&self) -> Interval {
        Interval::spanning(self.a1.clone(), self.b1.clone())
    }
}

/// Rejects flat pieces of `f` inside `i`.
pub(crate) fn check_no_flats(f: &PLFunction, i: &Interval) -> Result<()> {
    if let Some((seg, y)) = f.flat_segments(i).into_iter().next() {
        return Err(Error::flat(seg.lo(), seg.hi(), &y));
    }
    Ok(())
}

/// Computes the conclusions (1)–(6) for a proposed `(y1, a1, b1)` from
/// scratch, using only density evaluations.
pub fn witness_for(f: &PLFunction, outer: &Interval, y0: &Rat, y1: &Rat, inner: &Interval) -> Result<StepWitness> {
    let (a0, b0) = (outer.lo(), outer.hi());
    let (a1, b1) = (inner.lo(), inner.hi());
    let fa0 = f.eval(a0)?;
    let fb0 = f.eval(b0)?;
    let fa1 = f.eval(a1)?;
    let fb1 = f.eval(b1)?;
    let h1 = f.superlevel(y1, outer)?;
    let s_a = max_straddling_density(&h1, outer, a1)?;
    let s_b = max_straddling_density(&h1, outer, b1)?;
    let straddle_max = [s_a, s_b].into_iter().flatten().max().unwrap_or_else(rat::zero);
    Ok(StepWitness {
        nested: outer.contains_strictly(inner),
        width: (inner.length(), outer.length() / rat::int(2)),
        level_rise: (rat::max(&rat::max(&fa0, &fb0), y0), y1.clone()),
        endpoint_cap: (rat::max(&fa1, &fb1), y1.clone()),
        high_density: superlevel_density(f, y0, inner)?,
        straddle_max,
    })
}

/// Largest `δ` with `λ(H ∩ [c, c + t]) < thr·t` for every `0 < t < δ`,
/// capped at the length of `i`. `H` must miss a neighbourhood of `c`.
fn anchored_delta(h: &IntervalSet, i: &Interval, thr: &Rat) -> Rat {
    let cum = cumulative_measure(h, i);
    let phi: Vec<Point> = cum.into_iter().map(|k| Point::new(&k.x - i.lo(), &k.y - thr * (&k.x - i.lo()))).collect();
    for w in phi.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        if !q.y.is_negative() && !q.x.is_zero() {
            if p.y.is_negative() {
                return crossing(p, q, &rat::zero());
            }
            return p.x.clone();
        }
    }
    i.length()
}

fn reflect(h: &IntervalSet) -> IntervalSet {
    IntervalSet::from_parts(h.parts().iter().map(|p| Interval::spanning(-p.hi(), -p.lo())).collect())
}

/// One constructive descent: level `r` in `(max{f(c), f(d), y}, sup f[c, d])`
/// and a component of `G_ε(H_r, (c, d))` nested inside `(c, d)`.
fn descend_once(f: &PLFunction, c: &Rat, d: &Rat, y: &Rat, eps: &Rat) -> Result<DescentStage> {
    let span = Interval::spanning(c.clone(), d.clone());
    let s = f.sup_on(&span)?;
    let base = rat::max(&rat::max(&f.eval(c)?, &f.eval(d)?), y);
    if s <= base {
        return Err(Error::pre(format!("sup {s} on {span} does not exceed {base}")));
    }
    let alpha = rat::midpoint(&base, &s);
    let thr = eps / rat::int(2);
    let h_alpha = f.superlevel(&alpha, &span)?;
    let from_left = anchored_delta(&h_alpha, &span, &thr);
    let mirrored = Interval::spanning(-d, -c);
    let from_right = anchored_delta(&reflect(&h_alpha), &mirrored, &thr);
    let delta = rat::min(&from_left, &from_right);
    let target = rat::min(&delta, &(span.length() / rat::int(2)));

    let mut level = rat::midpoint(&alpha, &s);
    for _ in 0..MAX_LEVEL_PROBES {
        let h = f.superlevel(&level, &span)?;
        let comps = g_epsilon(&h, &span, eps)?;
        if comps.total_measure() < target {
            // Largest component first, leftmost among equals.
            let component = comps
                .components
                .into_iter()
                .fold(None::<Interval>, |best, c| match best {
                    Some(b) if b.length() >= c.length() => Some(b),
                    _ => Some(c),
                })
                .ok_or_else(|| Error::SelfCheck(format!("no component of G_eps at level {level}")))?;
            return Ok(DescentStage { level, component, alpha, delta });
        }
        level = rat::midpoint(&level, &s);
    }
    Err(Error::SelfCheck(format!("level search on {span} did not terminate")))
}

/// Constructive step: `(y1, (a1, b1))` satisfying conclusions (1)–(6).
///
/// Preconditions: no flat pieces of `f` on `[a0, b0]`,
/// `sup f[a0, b0] > max{f(a0), f(b0)}`, `y0 < sup f[a0, b0]`, `0 < ε < 1`.
/// The result is re-verified before returning.
pub fn omalley_step(f: &PLFunction, a0: &Rat, b0: &Rat, y0: &Rat, eps: &Rat) -> Result<LemmaStepResult> {
    if !eps.is_positive() || eps >= &rat::one() {
        return Err(Error::param(format!("epsilon {eps} outside (0, 1)")));
    }
    let outer = Interval::new(a0.clone(), b0.clone())?;
    outer.nonzero_length()?;
    let s0 = f.sup_on(&outer)?;
    check_no_flats(f, &outer)?;
    let ends = rat::max(&f.eval(a0)?, &f.eval(b0)?);
    if s0 <= ends {
        return Err(Error::pre(format!("sup f on {outer} is {s0}, attained at an endpoint; f is monotone there")));
    }
    if y0 >= &s0 {
        return Err(Error::pre(format!("level {y0} not below sup {s0}")));
    }

    let mut descent = Vec::new();
    let (mut c, mut d, mut r) = (a0.clone(), b0.clone(), y0.clone());
    loop {
        if descent.len() >= MAX_DESCENT {
            return Err(Error::SelfCheck("descent did not reach density 1/2".into()));
        }
        let stage = descend_once(f, &c, &d, &r, eps)?;
        c = stage.component.lo().clone();
        d = stage.component.hi().clone();
        r = stage.level.clone();
        descent.push(stage);
        let h0 = f.superlevel(y0, &Interval::spanning(c.clone(), d.clone()))?;
        if density(&h0, &Interval::spanning(c.clone(), d.clone()))? > rat::half() {
            break;
        }
    }

    let inner = Interval::spanning(c.clone(), d.clone());
    let witness = witness_for(f, &outer, y0, &r, &inner)?;
    if !witness.all_hold(eps) {
        return Err(Error::SelfCheck(format!("step conclusions failed: {:?}", witness.items(eps))));
    }
    Ok(LemmaStepResult { y1: r, a1: c, b1: d, eps: eps.clone(), witness, descent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ornstein::seed::SeedFunction;
    use crate::rat::{int, rat};

    fn tent() -> PLFunction {
        PLFunction::from_pairs(&[(int(0), int(0)), (rat(1, 2), int(1)), (int(1), int(0))]).unwrap()
    }

    #[test]
    fn tent_step_brackets_peak() {
        let r = omalley_step(&tent(), &int(0), &int(1), &int(0), &rat(1, 10)).unwrap();
        assert!(r.y1 > int(0) && r.y1 < int(1));
        assert!(r.interval().contains(&rat(1, 2)));
        assert!(r.witness.all_hold(&rat(1, 10)));
    }

    #[test]
    fn ornstein_g_step() {
        let g = SeedFunction::ornstein_g().function().clone();
        let r = omalley_step(&g, &int(0), &int(1), &int(1), &rat(1, 4)).unwrap();
        let inner = r.interval();
        assert!(inner.contains(&rat(1, 7)) || inner.contains(&rat(3, 7)));
        assert!(r.witness.high_density > rat(1, 2));
    }

    #[test]
    fn monotone_input_is_rejected() {
        let id = PLFunction::identity_on(&Interval::unit()).unwrap();
        assert!(matches!(omalley_step(&id, &int(0), &int(1), &int(0), &rat(1, 4)), Err(Error::Precondition(_))));
    }

    #[test]
    fn flat_segment_is_named() {
        let f = PLFunction::from_pairs(&[(int(0), int(0)), (rat(1, 4), int(1)), (rat(1, 2), int(1)), (int(1), int(0))])
            .unwrap();
        let err = omalley_step(&f, &int(0), &int(1), &int(0), &rat(1, 4)).unwrap_err();
        assert_eq!(err, Error::flat(&rat(1, 4), &rat(1, 2), &int(1)));
    }

    #[test]
    fn anchored_delta_matches_hand_value() {
        // H = (1/2, 1) in [0, 1] with threshold 1/4: λ(H∩[0,t]) = t - 1/2 reaches t/4 at t = 2/3.
        let h = IntervalSet::from_interval(Interval::new(rat(1, 2), int(1)).unwrap());
        assert_eq!(anchored_delta(&h, &Interval::unit(), &rat(1, 4)), rat(2, 3));
        assert_eq!(anchored_delta(&IntervalSet::empty(), &Interval::unit(), &rat(1, 4)), int(1));
    }
}
