//! Components of `G_ε(H, I)`, the union of open subintervals of `I` on
//! which `H` has density above `ε`.
//!
//! With `F(t) = λ(H ∩ [lo, t]) - ε·t`, an open `J = (u, v)` has density
//! `> ε` iff `F(v) > F(u)`. A point `x` is covered iff the running minimum
//! of `F` on `[lo, x]` lies strictly below the running maximum of `F` on
//! `[x, hi]`. Both envelopes are piecewise linear with rational breakpoints,
//! so the components come out exact.

use num_traits::{Signed, Zero};

use crate::density::density;
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};
use crate::pl::{crossing, PLFunction, Point};
use crate::rat::{self, Rat};

/// Sorted disjoint components of `G_ε(H, I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentList {
    pub components: Vec<Interval>,
}

impl ComponentList {
    pub fn total_measure(&self) -> Rat {
        self.components.iter().map(Interval::length).sum()
    }

    pub fn as_set(&self) -> IntervalSet {
        IntervalSet::from_parts(self.components.clone())
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

fn check_eps(eps: &Rat) -> Result<()> {
    if !eps.is_positive() || eps >= &rat::one() {
        return Err(Error::param(format!("epsilon {eps} outside (0, 1)")));
    }
    Ok(())
}

/// Cumulative measure `G(t) = λ(H ∩ [lo, t])` on `i`, as a PL function.
pub(crate) fn cumulative_measure(h: &IntervalSet, i: &Interval) -> Vec<Point> {
    let mut knots = vec![Point::new(i.lo().clone(), rat::zero())];
    let mut acc = rat::zero();
    for p in h.intersect_interval(i).parts() {
        let last_x = knots.last().expect("seeded").x.clone();
        if p.lo() > &last_x {
            knots.push(Point::new(p.lo().clone(), acc.clone()));
        }
        acc += p.length();
        knots.push(Point::new(p.hi().clone(), acc.clone()));
    }
    if knots.last().expect("seeded").x < *i.hi() {
        knots.push(Point::new(i.hi().clone(), acc));
    }
    knots
}

/// Running minimum `m(x) = min F[lo, x]` of a PL knot list.
fn running_min(knots: &[Point]) -> Vec<Point> {
    let mut out = vec![knots[0].clone()];
    let mut cur = knots[0].y.clone();
    for w in knots.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        if q.y < cur {
            if p.y > cur {
                let xc = crossing(p, q, &cur);
                out.push(Point::new(xc, cur.clone()));
            }
            out.push(q.clone());
            cur = q.y.clone();
        } else {
            out.push(Point::new(q.x.clone(), cur.clone()));
        }
    }
    out.dedup_by(|b, a| a.x == b.x);
    out
}

/// Running maximum `M(x) = max F[x, hi]`, by reflecting through the origin.
fn suffix_max(knots: &[Point]) -> Vec<Point> {
    let reflected: Vec<Point> = knots.iter().rev().map(|k| Point::new(-&k.x, -&k.y)).collect();
    running_min(&reflected).into_iter().rev().map(|k| Point::new(-k.x, -k.y)).collect()
}

/// Exact components of `G_ε(H, I)`.
///
/// `I` is read as an open interval; empty `H ∩ I` gives an empty list.
pub fn g_epsilon(h: &IntervalSet, i: &Interval, eps: &Rat) -> Result<ComponentList> {
    check_eps(eps)?;
    i.nonzero_length()?;
    if h.measure_in(i).is_zero() {
        return Ok(ComponentList { components: Vec::new() });
    }
    let f: Vec<Point> = cumulative_measure(h, i)
        .into_iter()
        .map(|k| {
            let y = &k.y - eps * (&k.x - i.lo());
            Point::new(k.x, y)
        })
        .collect();
    let lower = PLFunction::from_knots_unchecked(running_min(&f));
    let upper = PLFunction::from_knots_unchecked(suffix_max(&f));
    let gap = upper.sub(&lower)?;
    let covered = gap.superlevel(&rat::zero(), i)?;
    Ok(ComponentList { components: covered.parts().to_vec() })
}

/// Both sides of the component measure bound `λ(G_ε) ≤ 2·λ(H ∩ I)/ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureBoundCheck {
    pub lhs: Rat,
    pub rhs: Rat,
    pub ok: bool,
}

pub fn g_epsilon_measure_bound_check(h: &IntervalSet, i: &Interval, eps: &Rat) -> Result<MeasureBoundCheck> {
    let comps = g_epsilon(h, i, eps)?;
    let lhs = comps.total_measure();
    let rhs = rat::int(2) * h.measure_in(i) / eps;
    let ok = lhs <= rhs;
    Ok(MeasureBoundCheck { lhs, rhs, ok })
}

/// Supremum of `Δ(H, J)` over open `J ⊆ I` that contain `p`.
///
/// The density of `(u, v)` is the chord slope of the cumulative measure,
/// which is monotone in each endpoint along a linear piece; so the
/// supremum is attained (in the limit) with both endpoints on breakpoints
/// of the cumulative measure or at `p` itself. Returns `None` when no such
/// `J` exists, i.e. when `p` is not interior to `I`.
pub fn max_straddling_density(h: &IntervalSet, i: &Interval, p: &Rat) -> Result<Option<Rat>> {
    if p <= i.lo() || p >= i.hi() {
        return Ok(None);
    }
    let cum = PLFunction::from_knots_unchecked(cumulative_measure(h, i));
    let mut left: Vec<Rat> = cum.knots().iter().map(|k| k.x.clone()).filter(|x| x < p).collect();
    left.push(p.clone());
    let mut right: Vec<Rat> = vec![p.clone()];
    right.extend(cum.knots().iter().map(|k| k.x.clone()).filter(|x| x > p));
    let lv = cum.eval_many_sorted(&left);
    let rv = cum.eval_many_sorted(&right);
    let mut best: Option<Rat> = None;
    for (u, gu) in left.iter().zip(&lv) {
        for (v, gv) in right.iter().zip(&rv) {
            if u == v {
                continue;
            }
            let d = (gv - gu) / (v - u);
            if best.as_ref().is_none_or(|b| &d > b) {
                best = Some(d);
            }
        }
    }
    Ok(best)
}

/// Per-component exact checks of the two component properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCheck {
    pub component: Interval,
    /// `Δ(H, C)`; must be at least `ε/2`.
    pub density: Rat,
    /// Largest density of an open subinterval of `I` through an endpoint;
    /// must not exceed `ε`.
    pub max_straddling: Option<Rat>,
}

impl ComponentCheck {
    pub fn holds(&self, eps: &Rat) -> bool {
        let half = eps / rat::int(2);
        self.density >= half && self.max_straddling.as_ref().is_none_or(|m| m <= eps)
    }
}

pub fn check_components(h: &IntervalSet, i: &Interval, eps: &Rat) -> Result<Vec<ComponentCheck>> {
    let comps = g_epsilon(h, i, eps)?;
    comps
        .components
        .into_iter()
        .map(|c| {
            let d = density(h, &c)?;
            let a = max_straddling_density(h, i, c.lo())?;
            let b = max_straddling_density(h, i, c.hi())?;
            let max_straddling = match (a, b) {
                (Some(a), Some(b)) => Some(rat::max(&a, &b)),
                (a, b) => a.or(b),
            };
            Ok(ComponentCheck { component: c, density: d, max_straddling })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn set(parts: &[(Rat, Rat)]) -> IntervalSet {
        IntervalSet::from_parts(parts.iter().map(|(a, b)| Interval::new(a.clone(), b.clone()).unwrap()).collect())
    }

    #[test]
    fn single_block_component() {
        let h = set(&[(rat(2, 5), rat(3, 5))]);
        let comps = g_epsilon(&h, &Interval::unit(), &rat(1, 2)).unwrap();
        assert_eq!(comps.components, vec![Interval::new(rat(1, 5), rat(4, 5)).unwrap()]);
        let check = g_epsilon_measure_bound_check(&h, &Interval::unit(), &rat(1, 2)).unwrap();
        assert_eq!((check.lhs, check.rhs, check.ok), (rat(3, 5), rat(4, 5), true));
    }

    #[test]
    fn full_and_empty_sets() {
        let u = Interval::unit();
        let full = set(&[(int(0), int(1))]);
        for eps in [rat(1, 2), rat(9, 10), rat(1, 100)] {
            assert_eq!(g_epsilon(&full, &u, &eps).unwrap().components, vec![u.clone()]);
        }
        let empty = IntervalSet::empty();
        assert!(g_epsilon(&empty, &u, &rat(1, 2)).unwrap().is_empty());
        let check = g_epsilon_measure_bound_check(&empty, &u, &rat(1, 2)).unwrap();
        assert_eq!((check.lhs, check.rhs, check.ok), (int(0), int(0), true));
    }

    #[test]
    fn rejects_bad_epsilon() {
        let u = Interval::unit();
        for eps in [int(0), int(1), rat(-1, 2), int(2)] {
            assert!(matches!(g_epsilon(&IntervalSet::empty(), &u, &eps), Err(Error::Parameter(_))));
        }
    }

    #[test]
    fn two_blocks_merge_or_split_with_eps() {
        let h = set(&[(rat(1, 10), rat(2, 10)), (rat(3, 10), rat(4, 10))]);
        let u = Interval::unit();
        // Density of (1/10, 4/10) is 2/3: one component for small eps.
        assert_eq!(g_epsilon(&h, &u, &rat(1, 2)).unwrap().components.len(), 1);
        // At eps = 9/10 the gap separates them.
        assert_eq!(g_epsilon(&h, &u, &rat(9, 10)).unwrap().components.len(), 2);
    }

    #[test]
    fn straddling_density_at_endpoints() {
        let h = set(&[(rat(2, 5), rat(3, 5))]);
        let u = Interval::unit();
        for c in check_components(&h, &u, &rat(1, 2)).unwrap() {
            assert!(c.holds(&rat(1, 2)));
            assert_eq!(c.max_straddling, Some(rat(1, 2)));
            assert_eq!(c.density, rat(1, 3));
        }
        assert_eq!(max_straddling_density(&h, &u, &int(0)).unwrap(), None);
        assert_eq!(max_straddling_density(&h, &u, &rat(1, 2)).unwrap(), Some(int(1)));
    }
}
