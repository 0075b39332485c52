use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::ornstein::seed::SeedFunction;
use crate::pl::{interpolate, AffinePair, PLFunction, Point, Trend};
use crate::rat::{self, Rat};

pub const DEFAULT_CAP: u128 = 10_000_000;

/// Replaces every maximal decreasing run `[a, b]` of `f` by the seed placed
/// with `T(t) = a + t(b - a)`, `S(y) = y·f(a) + (1 - y)·f(b)`.
pub fn insert_seed(f: &PLFunction, seed: &SeedFunction) -> Result<PLFunction> {
    let runs = f.decreasing_runs();
    if runs.is_empty() {
        return Ok(f.clone());
    }
    let k = f.knots();
    let s = seed.function().knots();
    let mut out: Vec<Point> = Vec::with_capacity(k.len() + runs.len() * s.len());
    let mut next = 0;
    for (start, end) in runs {
        out.extend_from_slice(&k[next..start]);
        let pair = AffinePair::insertion(&k[start].x, &k[end].x, &k[start].y, &k[end].y)?;
        out.extend(s.iter().map(|p| Point::new(pair.t(&p.x), pair.s(&p.y))));
        next = end + 1;
    }
    out.extend_from_slice(&k[next..]);
    Ok(PLFunction::from_knots_unchecked(out))
}

/// Piece counts of a level: rising pieces, decreasing pieces, total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentCounts {
    pub increasing: u128,
    pub decreasing: u128,
    pub total: u128,
}

/// The seed inserted into itself `depth` times; level 0 is the seed.
#[derive(Debug, Clone, PartialEq)]
pub struct LazyConstruction {
    pub seed: SeedFunction,
    pub depth: usize,
}

impl LazyConstruction {
    pub fn new(seed: SeedFunction, depth: usize) -> Self {
        LazyConstruction { seed, depth }
    }

    /// Counts at level `n`, or `None` on overflow. Decreasing pieces never
    /// touch, so each one is a maximal run and is replaced whole.
    pub fn counts(&self, n: usize) -> Option<SegmentCounts> {
        let inc0 = self.seed.increasing_count() as u128;
        let dec0 = self.seed.decreasing_count() as u128;
        let (mut inc, mut dec) = (inc0, dec0);
        for _ in 0..n {
            inc = inc.checked_add(dec.checked_mul(inc0)?)?;
            dec = dec.checked_mul(dec0)?;
        }
        Some(SegmentCounts { increasing: inc, decreasing: dec, total: inc.checked_add(dec)? })
    }

    pub fn projected_segments(&self, n: usize) -> u128 {
        self.counts(n).map_or(u128::MAX, |c| c.total)
    }

    /// Materializes level `depth`, refusing when the projected piece count exceeds `cap`.
    pub fn materialize(&self, cap: u128) -> Result<PLFunction> {
        Ok(self.levels(cap)?.pop().expect("level 0"))
    }

    /// Levels `0..=depth` in order.
    pub fn levels(&self, cap: u128) -> Result<Vec<PLFunction>> {
        let projected = self.projected_segments(self.depth);
        if projected > cap {
            return Err(Error::Resource { projected, cap });
        }
        let mut out = vec![self.seed.function().clone()];
        for _ in 0..self.depth {
            let next = insert_seed(out.last().expect("non-empty"), &self.seed)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        lazy_eval(&self.seed, self.depth, x)
    }
}

/// Level `n` at `x` by descent through nested seed copies, in `O(n · |seed|)`.
pub fn lazy_eval(seed: &SeedFunction, n: usize, x: &Rat) -> Result<Rat> {
    let unit = Interval::unit();
    if !unit.contains(x) {
        return Err(Error::domain(x, &rat::zero(), &rat::one()));
    }
    let k = seed.function().knots();
    let trends = seed.trends();
    let (mut scale, mut shift) = (rat::one(), rat::zero());
    let mut t = x.clone();
    let mut level = n;
    loop {
        let seg = k.partition_point(|p| p.x <= t).clamp(1, k.len() - 1) - 1;
        let (p, q) = (&k[seg], &k[seg + 1]);
        if level == 0 || trends[seg] != Trend::Decreasing {
            return Ok(shift + scale * interpolate(p, q, &t));
        }
        shift += &scale * &q.y;
        scale *= &p.y - &q.y;
        t = (&t - &p.x) / (&q.x - &p.x);
        level -= 1;
    }
}
