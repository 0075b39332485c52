//! Continuous piecewise-linear functions with exact rational knots.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }
}

/// Exact difference quotient `(y1 - y0) / (x1 - x0)` of two plane points.
pub fn dq(p0: &Point, p1: &Point) -> Result<Rat> {
    let dx = &p1.x - &p0.x;
    if dx.is_zero() {
        return Err(Error::param(format!("difference quotient with equal abscissae {}", p0.x)));
    }
    Ok((&p1.y - &p0.y) / dx)
}

/// Sign of a segment's slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Increasing,
    Decreasing,
    Flat,
}

/// The pair of affine maps `x ↦ t_scale·x + t_shift`, `y ↦ s_scale·y + s_shift`.
///
/// [`PLFunction::affine_transform`] moves every knot `(x, y)` to
/// `(T(x), S(y))`, producing `S ∘ f ∘ T⁻¹` on the image domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePair {
    pub t_scale: Rat,
    pub t_shift: Rat,
    pub s_scale: Rat,
    pub s_shift: Rat,
}

impl AffinePair {
    pub fn new(t_scale: Rat, t_shift: Rat, s_scale: Rat, s_shift: Rat) -> Result<Self> {
        if t_scale.is_zero() {
            return Err(Error::param("affine pair with zero horizontal scale"));
        }
        Ok(AffinePair { t_scale, t_shift, s_scale, s_shift })
    }

    pub fn identity() -> Self {
        AffinePair { t_scale: rat::one(), t_shift: rat::zero(), s_scale: rat::one(), s_shift: rat::zero() }
    }

    /// Places a unit-domain seed with `seed(0) = 1`, `seed(1) = 0` onto
    /// `[a, b]` so that it runs from `fa` down to `fb`:
    /// `T(t) = a + t(b - a)` and `S(y) = y·fa + (1 - y)·fb`.
    pub fn insertion(a: &Rat, b: &Rat, fa: &Rat, fb: &Rat) -> Result<Self> {
        AffinePair::new(b - a, a.clone(), fa - fb, fb.clone())
    }

    pub fn t(&self, x: &Rat) -> Rat {
        &self.t_scale * x + &self.t_shift
    }

    pub fn s(&self, y: &Rat) -> Rat {
        &self.s_scale * y + &self.s_shift
    }

    pub fn t_interval(&self, i: &Interval) -> Interval {
        Interval::spanning(self.t(i.lo()), self.t(i.hi()))
    }
}

/// Continuous piecewise-linear interpolant of a strictly x-sorted knot list.
///
/// Equality is pointwise: both sides are compared after removing collinear
/// interior knots.
#[derive(Debug, Clone, Eq)]
pub struct PLFunction {
    knots: Vec<Point>,
}

impl PartialEq for PLFunction {
    fn eq(&self, other: &Self) -> bool {
        self.simplify().knots == other.simplify().knots
    }
}

impl PLFunction {
    /// Validates knots: at least two distinct abscissae, strictly increasing
    /// after dropping exact duplicates.
    pub fn new(knots: Vec<Point>) -> Result<Self> {
        let mut out: Vec<Point> = Vec::with_capacity(knots.len());
        for k in knots {
            if let Some(last) = out.last() {
                match k.x.cmp(&last.x) {
                    Ordering::Less => {
                        return Err(Error::param(format!("knot abscissa {} after {}", k.x, last.x)));
                    }
                    Ordering::Equal if k.y == last.y => continue,
                    Ordering::Equal => {
                        return Err(Error::param(format!("two values at knot abscissa {}", k.x)));
                    }
                    Ordering::Greater => {}
                }
            }
            out.push(k);
        }
        if out.len() < 2 {
            return Err(Error::param("a piecewise-linear function needs at least two knots"));
        }
        Ok(PLFunction { knots: out })
    }

    /// Knots at `x_i = lo + i·(hi - lo)/(n - 1)` with the given values.
    pub fn uniform(lo: &Rat, hi: &Rat, values: &[Rat]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::param("a piecewise-linear function needs at least two knots"));
        }
        let steps = rat::int(values.len() as i64 - 1);
        let width = hi - lo;
        let knots = values
            .iter()
            .enumerate()
            .map(|(i, y)| Point::new(lo + &width * rat::int(i as i64) / &steps, y.clone()))
            .collect();
        PLFunction::new(knots)
    }

    pub fn from_pairs(pairs: &[(Rat, Rat)]) -> Result<Self> {
        PLFunction::new(pairs.iter().map(|(x, y)| Point::new(x.clone(), y.clone())).collect())
    }

    pub fn constant(i: &Interval, y: Rat) -> Result<Self> {
        i.nonzero_length()?;
        PLFunction::new(vec![Point::new(i.lo().clone(), y.clone()), Point::new(i.hi().clone(), y)])
    }

    pub fn identity_on(i: &Interval) -> Result<Self> {
        i.nonzero_length()?;
        PLFunction::new(vec![Point::new(i.lo().clone(), i.lo().clone()), Point::new(i.hi().clone(), i.hi().clone())])
    }

    pub(crate) fn from_knots_unchecked(knots: Vec<Point>) -> Self {
        debug_assert!(knots.len() >= 2);
        debug_assert!(knots.windows(2).all(|w| w[0].x < w[1].x));
        PLFunction { knots }
    }

    pub fn knots(&self) -> &[Point] {
        &self.knots
    }

    pub fn into_knots(self) -> Vec<Point> {
        self.knots
    }

    pub fn segment_count(&self) -> usize {
        self.knots.len() - 1
    }

    pub fn domain(&self) -> Interval {
        Interval::spanning(self.knots[0].x.clone(), self.knots[self.knots.len() - 1].x.clone())
    }

    pub fn first(&self) -> &Point {
        &self.knots[0]
    }

    pub fn last(&self) -> &Point {
        &self.knots[self.knots.len() - 1]
    }

    fn check_in_domain(&self, x: &Rat) -> Result<()> {
        let (lo, hi) = (&self.first().x, &self.last().x);
        if x < lo || x > hi {
            return Err(Error::domain(x, lo, hi));
        }
        Ok(())
    }

    fn check_interval(&self, i: &Interval) -> Result<()> {
        self.check_in_domain(i.lo())?;
        self.check_in_domain(i.hi())
    }

    /// Index `s` of the segment `[knots[s], knots[s+1]]` holding `x`.
    /// Knot abscissae resolve to the segment on their right, except the last.
    fn segment_index(&self, x: &Rat) -> usize {
        let idx = self.knots.partition_point(|k| &k.x <= x);
        idx.saturating_sub(1).min(self.knots.len() - 2)
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        self.check_in_domain(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &Rat) -> Rat {
        let s = self.segment_index(x);
        interpolate(&self.knots[s], &self.knots[s + 1], x)
    }

    pub fn slope(&self, segment: usize) -> Rat {
        let (p, q) = (&self.knots[segment], &self.knots[segment + 1]);
        (&q.y - &p.y) / (&q.x - &p.x)
    }

    pub fn trend(&self, segment: usize) -> Trend {
        let (p, q) = (&self.knots[segment], &self.knots[segment + 1]);
        match q.y.cmp(&p.y) {
            Ordering::Greater => Trend::Increasing,
            Ordering::Less => Trend::Decreasing,
            Ordering::Equal => Trend::Flat,
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        self.knots.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Slope of the segment immediately right of `x`. `None` at the right end.
    pub fn right_slope(&self, x: &Rat) -> Result<Option<Rat>> {
        self.check_in_domain(x)?;
        if x == &self.last().x {
            return Ok(None);
        }
        Ok(Some(self.slope(self.segment_index(x))))
    }

    /// Slope of the segment immediately left of `x`. `None` at the left end.
    pub fn left_slope(&self, x: &Rat) -> Result<Option<Rat>> {
        self.check_in_domain(x)?;
        if x == &self.first().x {
            return Ok(None);
        }
        let idx = self.knots.partition_point(|k| &k.x < x);
        Ok(Some(self.slope(idx - 1)))
    }

    /// `f` restricted to `i`, with knots added at the endpoints of `i`.
    pub fn restrict(&self, i: &Interval) -> Result<PLFunction> {
        self.check_interval(i)?;
        i.nonzero_length()?;
        let mut knots = vec![Point::new(i.lo().clone(), self.eval_unchecked(i.lo()))];
        knots.extend(self.knots.iter().filter(|k| &k.x > i.lo() && &k.x < i.hi()).cloned());
        knots.push(Point::new(i.hi().clone(), self.eval_unchecked(i.hi())));
        Ok(PLFunction { knots })
    }

    /// Knots of `f` on `i` (endpoints of `i` included), without building a
    /// new function. Degenerate intervals give a single point.
    fn knots_on(&self, i: &Interval) -> Vec<Point> {
        let mut pts = vec![Point::new(i.lo().clone(), self.eval_unchecked(i.lo()))];
        let start = self.knots.partition_point(|k| &k.x <= i.lo());
        for k in &self.knots[start..] {
            if &k.x >= i.hi() {
                break;
            }
            pts.push(k.clone());
        }
        if !i.is_degenerate() {
            pts.push(Point::new(i.hi().clone(), self.eval_unchecked(i.hi())));
        }
        pts
    }

    /// Exact maximum of `f` on `i`.
    pub fn sup_on(&self, i: &Interval) -> Result<Rat> {
        self.check_interval(i)?;
        Ok(self.knots_on(i).into_iter().map(|p| p.y).max().expect("non-empty"))
    }

    /// Exact minimum of `f` on `i`.
    pub fn inf_on(&self, i: &Interval) -> Result<Rat> {
        self.check_interval(i)?;
        Ok(self.knots_on(i).into_iter().map(|p| p.y).min().expect("non-empty"))
    }

    /// Leftmost point of `i` where `f` attains its maximum on `i`.
    pub fn argmax_on(&self, i: &Interval) -> Result<Rat> {
        self.check_interval(i)?;
        let pts = self.knots_on(i);
        let best = pts.iter().map(|p| &p.y).max().expect("non-empty").clone();
        Ok(pts.into_iter().find(|p| p.y == best).expect("attained").x)
    }

    /// `{x ∈ i : f(x) > y}` with exact crossing points.
    pub fn superlevel(&self, y: &Rat, i: &Interval) -> Result<IntervalSet> {
        self.check_interval(i)?;
        Ok(self.level_set(i, |v| v > y, y))
    }

    /// `{x ∈ i : f(x) < y}`.
    pub fn sublevel(&self, y: &Rat, i: &Interval) -> Result<IntervalSet> {
        self.check_interval(i)?;
        Ok(self.level_set(i, |v| v < y, y))
    }

    /// `{x ∈ i : f(x) ≥ y}`; flat parts at height `y` are included.
    pub fn superlevel_closed(&self, y: &Rat, i: &Interval) -> Result<IntervalSet> {
        self.check_interval(i)?;
        Ok(self.level_set(i, |v| v >= y, y))
    }

    /// `{x ∈ i : f(x) ≤ y}`.
    pub fn sublevel_closed(&self, y: &Rat, i: &Interval) -> Result<IntervalSet> {
        self.check_interval(i)?;
        Ok(self.level_set(i, |v| v <= y, y))
    }

    /// Sweep over the segments on `i`, keeping the parts where `keep` holds.
    /// `keep` must describe a half-line of heights bounded at `y`.
    fn level_set(&self, i: &Interval, keep: impl Fn(&Rat) -> bool, y: &Rat) -> IntervalSet {
        let pts = self.knots_on(i);
        let mut parts = Vec::new();
        for w in pts.windows(2) {
            let (p, q) = (&w[0], &w[1]);
            match (keep(&p.y), keep(&q.y)) {
                (true, true) => parts.push(Interval::spanning(p.x.clone(), q.x.clone())),
                (false, false) => {}
                (kp, _) => {
                    // Exactly one endpoint kept; the crossing lies strictly inside
                    // unless the kept side sits on the level itself.
                    let xc = crossing(p, q, y);
                    if kp {
                        parts.push(Interval::spanning(p.x.clone(), xc));
                    } else {
                        parts.push(Interval::spanning(xc, q.x.clone()));
                    }
                }
            }
        }
        IntervalSet::from_sorted(parts)
    }

    /// Total length of segments lying flat at height `y`.
    pub fn preimage_measure(&self, y: &Rat) -> Rat {
        self.segments().filter(|(p, q)| &p.y == y && &q.y == y).map(|(p, q)| &q.x - &p.x).sum()
    }

    /// Horizontal segments inside `i`, as (interval, height).
    pub fn flat_segments(&self, i: &Interval) -> Vec<(Interval, Rat)> {
        self.segments()
            .filter(|(p, q)| p.y == q.y)
            .filter_map(|(p, q)| {
                let seg = Interval::spanning(p.x.clone(), q.x.clone());
                let part = seg.intersect(i)?;
                (!part.is_degenerate()).then(|| (part, p.y.clone()))
            })
            .collect()
    }

    /// Every segment meeting `i` in positive length has positive slope.
    pub fn is_strictly_increasing_on(&self, i: &Interval) -> Result<bool> {
        self.check_interval(i)?;
        let pts = self.knots_on(i);
        Ok(pts.windows(2).all(|w| w[1].y > w[0].y))
    }

    /// Maximal runs of consecutive decreasing segments, as knot index ranges
    /// `(start, end)` with `start < end`.
    pub fn decreasing_runs(&self) -> Vec<(usize, usize)> {
        let mut runs = Vec::new();
        let mut start = None;
        for s in 0..self.segment_count() {
            let dec = self.trend(s) == Trend::Decreasing;
            match (dec, start) {
                (true, None) => start = Some(s),
                (false, Some(st)) => {
                    runs.push((st, s));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(st) = start {
            runs.push((st, self.segment_count()));
        }
        runs
    }

    pub fn negate(&self) -> PLFunction {
        PLFunction { knots: self.knots.iter().map(|k| Point::new(k.x.clone(), -&k.y)).collect() }
    }

    /// Knots mapped by `(x, y) ↦ (T(x), S(y))`; order is reversed when
    /// `T` is decreasing.
    pub fn affine_transform(&self, pair: &AffinePair) -> Result<PLFunction> {
        if pair.t_scale.is_zero() {
            return Err(Error::param("affine pair with zero horizontal scale"));
        }
        let mut knots: Vec<Point> = self.knots.iter().map(|k| Point::new(pair.t(&k.x), pair.s(&k.y))).collect();
        if pair.t_scale.is_negative() {
            knots.reverse();
        }
        Ok(PLFunction { knots })
    }

    /// Removes interior knots that lie on the line through their neighbours.
    pub fn simplify(&self) -> PLFunction {
        let mut out: Vec<Point> = Vec::with_capacity(self.knots.len());
        for k in &self.knots {
            while out.len() >= 2 {
                let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
                if (&b.y - &a.y) * (&k.x - &b.x) == (&k.y - &b.y) * (&b.x - &a.x) {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(k.clone());
        }
        PLFunction { knots: out }
    }

    /// Pointwise combination over the union of both breakpoint sets.
    pub fn combine(&self, other: &PLFunction, op: impl Fn(&Rat, &Rat) -> Rat) -> Result<PLFunction> {
        if self.domain() != other.domain() {
            return Err(Error::param(format!("domains differ: {} vs {}", self.domain(), other.domain())));
        }
        let xs = merged_abscissae(&self.knots, &other.knots);
        let a = self.eval_many_sorted(&xs);
        let b = other.eval_many_sorted(&xs);
        let knots = xs.into_iter().zip(a.iter().zip(&b)).map(|(x, (u, v))| Point::new(x, op(u, v))).collect();
        Ok(PLFunction { knots })
    }

    pub fn add(&self, other: &PLFunction) -> Result<PLFunction> {
        self.combine(other, |u, v| u + v)
    }

    pub fn sub(&self, other: &PLFunction) -> Result<PLFunction> {
        self.combine(other, |u, v| u - v)
    }

    /// Exact sup-metric distance on the shared domain.
    pub fn sup_distance(&self, other: &PLFunction) -> Result<Rat> {
        let d = self.sub(other)?;
        Ok(d.knots.iter().map(|k| k.y.abs()).max().expect("non-empty"))
    }

    /// Sup norm `max |f|`.
    pub fn sup_norm(&self) -> Rat {
        self.knots.iter().map(|k| k.y.abs()).max().expect("non-empty")
    }

    /// Evaluates at sorted abscissae inside the domain with a moving cursor.
    pub fn eval_many_sorted(&self, xs: &[Rat]) -> Vec<Rat> {
        let mut s = 0;
        let last = self.knots.len() - 2;
        xs.iter()
            .map(|x| {
                while s < last && &self.knots[s + 1].x <= x {
                    s += 1;
                }
                interpolate(&self.knots[s], &self.knots[s + 1], x)
            })
            .collect()
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.knots.iter().map(|k| format!("({}, {})", k.x, k.y)).collect();
        write!(f, "PL[{}]", items.join(", "))
    }
}

pub(crate) fn interpolate(p: &Point, q: &Point, x: &Rat) -> Rat {
    if x == &p.x {
        return p.y.clone();
    }
    if x == &q.x {
        return q.y.clone();
    }
    &p.y + (&q.y - &p.y) * (x - &p.x) / (&q.x - &p.x)
}

/// Abscissa where the segment `p`–`q` meets height `y`. Requires
/// `p.y != q.y` and `y` between them.
pub(crate) fn crossing(p: &Point, q: &Point, y: &Rat) -> Rat {
    &p.x + (y - &p.y) * (&q.x - &p.x) / (&q.y - &p.y)
}

fn merged_abscissae(a: &[Point], b: &[Point]) -> Vec<Rat> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(p), Some(q)) => match p.x.cmp(&q.x) {
                Ordering::Less => {
                    i += 1;
                    p.x.clone()
                }
                Ordering::Greater => {
                    j += 1;
                    q.x.clone()
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    p.x.clone()
                }
            },
            (Some(p), None) => {
                i += 1;
                p.x.clone()
            }
            (None, Some(q)) => {
                j += 1;
                q.x.clone()
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}
