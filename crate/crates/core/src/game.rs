//! Finite-precision Banach–Mazur play in `C[0, 1]` under the sup metric.
//!
//! P2 answers every ball by inserting a copy of the fourteen-knot seed into
//! each cell of a fine partition, then shrinks to a radius small enough that
//! difference quotients over the margin sets stay positive for every
//! function left in play.

use std::fmt::Write;

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::format::{read_pl_from, write_pl, Lines};
use crate::interval::{Interval, IntervalSet};
use crate::ornstein::seed::SeedFunction;
use crate::pl::{dq, AffinePair, PLFunction, Point, Trend};
use crate::rat::{self, fmt_exact, int, rat, Rat};

/// Default ceiling on knots of a P2 center.
pub const DEFAULT_KNOT_CAP: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: PLFunction,
    pub radius: Rat,
}

impl Ball {
    pub fn new(center: PLFunction, radius: Rat) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::param(format!("ball radius {radius} is not positive")));
        }
        if center.domain() != Interval::unit() {
            return Err(Error::param(format!("ball center lives on {}, not [0, 1]", center.domain())));
        }
        Ok(Ball { center, radius })
    }

    pub fn unit() -> Self {
        Ball { center: PLFunction::constant(&Interval::unit(), rat::zero()).expect("unit"), radius: rat::one() }
    }

    /// `d(center, other.center) + other.radius < radius`.
    pub fn strictly_contains(&self, other: &Ball) -> Result<bool> {
        Ok(self.center.sup_distance(&other.center)? + &other.radius < self.radius)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyParams {
    pub alpha: Rat,
    pub eta: Rat,
    pub delta: Rat,
    pub mu: Rat,
    pub partition: Vec<Interval>,
}

impl StrategyParams {
    /// `μ - 2δ > 0`, `η - 2δ > 0`, `α > 0`, `δ ≤ μ/4`, `δ ≤ η/4`.
    pub fn margins_hold(&self) -> bool {
        let two = int(2);
        let four = int(4);
        (&self.mu - &self.delta * &two).is_positive()
            && (&self.eta - &self.delta * &two).is_positive()
            && self.alpha.is_positive()
            && self.delta.is_positive()
            && self.delta <= &self.mu / &four
            && self.delta <= &self.eta / &four
    }

    pub fn partition_covers_unit(&self) -> bool {
        let p = &self.partition;
        !p.is_empty()
            && p[0].lo() == &rat::zero()
            && p[p.len() - 1].hi() == &rat::one()
            && p.windows(2).all(|w| w[0].hi() == w[1].lo())
            && p.iter().all(|j| !j.is_degenerate())
    }
}

/// `{x ∈ J, x ≥ x0 + η: g(x) ≥ g(x0) + μ} ∪ {x ∈ J, x ≤ x0 - η: g(x) ≤ g(x0) - μ}`.
pub fn margin_set(g: &PLFunction, j: &Interval, x0: &Rat, eta: &Rat, mu: &Rat) -> Result<IntervalSet> {
    let y0 = g.eval(x0)?;
    band_set(g, j, &(x0 - eta), &(x0 + eta), &(&y0 - mu), &(&y0 + mu))
}

/// Points of `J` at or right of `right` with `g ≥ hi`, and at or left of `left` with `g ≤ lo`.
fn band_set(g: &PLFunction, j: &Interval, left: &Rat, right: &Rat, lo: &Rat, hi: &Rat) -> Result<IntervalSet> {
    let mut parts = Vec::new();
    if right < j.hi() {
        let r = Interval::spanning(rat::max(right, j.lo()), j.hi().clone());
        parts.extend(g.superlevel_closed(hi, &r)?.parts().iter().cloned());
    }
    if left > j.lo() {
        let l = Interval::spanning(j.lo().clone(), rat::min(left, j.hi()));
        parts.extend(g.sublevel_closed(lo, &l)?.parts().iter().cloned());
    }
    Ok(IntervalSet::from_parts(parts))
}

const CELL_SPLIT: usize = 8;
const MAX_REFINE: usize = 8;

/// Lower bound on `min over x0 ∈ J of λ(margin_set(x0))/|J|`.
///
/// For `x0` in a cell `[p, q]` where `g` stays in `[gmin, gmax]`, the margin
/// set contains the band set built from `q + η`, `p - η`, `gmax + μ`,
/// `gmin - μ`. Cells whose bound vanishes are split further.
pub fn certify_cell_bound(g: &PLFunction, j: &Interval, eta: &Rat, mu: &Rat) -> Result<Rat> {
    let len = j.nonzero_length()?;
    let pts: Vec<Rat> = g.knots().iter().map(|k| k.x.clone()).filter(|x| j.contains(x)).collect();
    let mut stack: Vec<(Rat, Rat, usize)> = Vec::new();
    for w in pts.windows(2) {
        let step = (&w[1] - &w[0]) / int(CELL_SPLIT as i64);
        for i in 0..CELL_SPLIT {
            let p = &w[0] + &step * int(i as i64);
            stack.push((p.clone(), p + &step, 0));
        }
    }
    let mut best: Option<Rat> = None;
    while let Some((p, q, depth)) = stack.pop() {
        let (gp, gq) = (g.eval(&p)?, g.eval(&q)?);
        let (gmin, gmax) = (rat::min(&gp, &gq), rat::max(&gp, &gq));
        let set = band_set(g, j, &(&p - eta), &(&q + eta), &(&gmin - mu), &(&gmax + mu))?;
        let bound = set.measure() / &len;
        if bound.is_zero() && depth < MAX_REFINE {
            let m = rat::midpoint(&p, &q);
            stack.push((p, m.clone(), depth + 1));
            stack.push((m, q, depth + 1));
            continue;
        }
        if best.as_ref().is_none_or(|b| &bound < b) {
            best = Some(bound);
        }
    }
    Ok(best.unwrap_or_else(rat::zero))
}

fn knots_in<'a>(g: &'a PLFunction, j: &Interval) -> &'a [Point] {
    let k = g.knots();
    let a = k.partition_point(|p| &p.x < j.lo());
    let b = k.partition_point(|p| &p.x <= j.hi());
    &k[a..b]
}

/// P2's answer to `b`: a ball around the insertion of seed copies into a
/// partition of `[0, 1]` fine enough to stay within `r/2` of `b.center`.
///
/// Each cell `J = [u, v]` receives a ramp from `f(u)` to `f(v) + r/4` on its
/// left half and the seed copy falling from `f(v) + r/4` to `f(v)` on its
/// right half.
pub fn p2_move(b: &Ball, cap: u128) -> Result<(Ball, StrategyParams)> {
    let seed = SeedFunction::fixed_h();
    let f = &b.center;
    let r = &b.radius;
    let drop = r / int(4);
    let fine = r / int(8);

    let mut projected: u128 = 0;
    let mut counts = Vec::with_capacity(f.segment_count());
    for (p, q) in f.segments() {
        let rise = (&q.y - &p.y).abs();
        let m = ((rise / &fine).floor().to_integer() + 1u32).to_u128().unwrap_or(u128::MAX);
        projected = projected.saturating_add(m.saturating_mul(seed.function().knots().len() as u128));
        counts.push(m);
    }
    if projected > cap {
        return Err(Error::Resource { projected, cap });
    }

    let mut partition = Vec::new();
    for ((p, q), m) in f.segments().zip(counts) {
        let m = m as i64;
        let w = (&q.x - &p.x) / int(m);
        for i in 0..m {
            let u = &p.x + &w * int(i);
            let v = if i + 1 == m { q.x.clone() } else { &u + &w };
            partition.push(Interval::spanning(u, v));
        }
    }

    let sk = seed.function().knots();
    let mut knots: Vec<Point> = Vec::with_capacity(partition.len() * (sk.len() + 1) + 1);
    knots.push(Point::new(rat::zero(), f.eval(&rat::zero())?));
    for j in &partition {
        let mid = j.midpoint();
        let fv = f.eval(j.hi())?;
        let pair = AffinePair::new(j.hi() - &mid, mid.clone(), drop.clone(), fv)?;
        knots.extend(sk.iter().map(|s| Point::new(pair.t(&s.x), pair.s(&s.y))));
    }
    let g = PLFunction::new(knots)?;

    let mut shortest: Option<Rat> = None;
    for (s, (p, q)) in g.segments().enumerate() {
        if g.trend(s) == Trend::Increasing {
            let w = &q.x - &p.x;
            if shortest.as_ref().is_none_or(|b| &w < b) {
                shortest = Some(w);
            }
        }
    }
    let eta = shortest.ok_or_else(|| Error::SelfCheck("insertion has no rising piece".into()))? / int(4);
    let min_slope = (0..g.segment_count())
        .filter(|&s| g.trend(s) == Trend::Increasing)
        .map(|s| g.slope(s))
        .min()
        .expect("rising pieces exist");
    let mu = &min_slope * &eta / int(2);
    let delta = rat::min(&rat::min(&(r / int(2)), &(&mu / int(4))), &(&eta / int(4)));

    let dist = g.sup_distance(f)?;
    if &dist + &delta >= *r {
        return Err(Error::SelfCheck(format!("P2 ball not nested: {dist} + {delta} >= {r}")));
    }

    let mut alpha: Option<Rat> = None;
    let mut cache: Vec<(Rat, Rat, Rat)> = Vec::new();
    for j in &partition {
        // Cells with the same width and rise are translates of each other.
        let rise = f.eval(j.hi())? - f.eval(j.lo())?;
        let width = j.length();
        let bound = match cache.iter().find(|(w, r, _)| w == &width && r == &rise) {
            Some((_, _, b)) => b.clone(),
            None => {
                let local = PLFunction::new(knots_in(&g, j).to_vec())?;
                let b = certify_cell_bound(&local, j, &eta, &mu)?;
                cache.push((width, rise, b.clone()));
                b
            }
        };
        if alpha.as_ref().is_none_or(|a| &bound < a) {
            alpha = Some(bound);
        }
    }
    let alpha = alpha.expect("non-empty partition") / int(2);
    let params = StrategyParams { alpha, eta, delta: delta.clone(), mu, partition };
    if !params.margins_hold() {
        return Err(Error::SelfCheck(format!("strategy margins fail: {params:?}")));
    }
    Ok((Ball { center: g, radius: delta }, params))
}

/// P1 opponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adversary {
    /// Uniform random values at `k/8`, scaled into `[-r/4, r/4]`.
    Random,
    /// Adds the ramp from `-r/4` to `r/4`, pushing the center toward monotone.
    TowardMonotone,
}

fn perturbation(radius: &Rat, adversary: Adversary, rng: &mut ChaCha8Rng) -> PLFunction {
    let quarter = radius / int(4);
    let values: Vec<Rat> = (0..=8i64)
        .map(|k| match adversary {
            Adversary::Random => &quarter * rat(rng.gen_range(-1000..=1000), 1000),
            Adversary::TowardMonotone => &quarter * rat(k - 4, 4),
        })
        .collect();
    PLFunction::uniform(&rat::zero(), &rat::one(), &values).expect("nine knots")
}

/// A ball nested in `b`: center moved by at most `r/4`, radius `r/4`.
pub fn p1_random(b: &Ball, rng_seed: u64) -> Result<Ball> {
    p1_move(b, Adversary::Random, rng_seed)
}

pub fn p1_move(b: &Ball, adversary: Adversary, rng_seed: u64) -> Result<Ball> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let p = perturbation(&b.radius, adversary, &mut rng);
    Ball::new(b.center.add(&p)?.simplify(), &b.radius / int(4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    P1,
    P2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Play {
    pub role: Role,
    pub ball: Ball,
    pub params: Option<StrategyParams>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTranscript {
    pub start: Ball,
    pub plays: Vec<Play>,
}

pub fn simulate(rounds: usize, rng_seed: u64) -> Result<GameTranscript> {
    simulate_with(rounds, rng_seed, Adversary::Random, DEFAULT_KNOT_CAP)
}

pub fn simulate_with(rounds: usize, rng_seed: u64, adversary: Adversary, cap: u128) -> Result<GameTranscript> {
    if rounds == 0 {
        return Err(Error::param("rounds must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let start = Ball::unit();
    let mut plays: Vec<Play> = Vec::with_capacity(2 * rounds);
    let mut current = start.clone();
    for _ in 0..rounds {
        let b1 = p1_move(&current, adversary, rng.gen())?;
        plays.push(Play { role: Role::P1, ball: b1.clone(), params: None });
        let (b2, params) = p2_move(&b1, cap)?;
        plays.push(Play { role: Role::P2, ball: b2.clone(), params: Some(params) });
        current = b2;
    }
    Ok(GameTranscript { start, plays })
}

/// One sampled `x0` at one P2 scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleRecord {
    pub play: usize,
    pub x0: Rat,
    pub cell: Interval,
    pub density: Rat,
    pub alpha: Rat,
    /// `μ - 2δ`: the least rise of any function in the ball across the margin set.
    pub margin: Rat,
    pub dq_ok: bool,
}

impl ScaleRecord {
    pub fn holds(&self) -> bool {
        self.density > self.alpha && self.margin.is_positive() && self.dq_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptCheck {
    /// `d(c_k, c_{k+1}) + r_{k+1} < r_k`, as (lhs, rhs), from the start ball on.
    pub nesting: Vec<(Rat, Rat)>,
    pub margins: Vec<bool>,
    pub partitions: Vec<bool>,
    /// The final ball sits inside every P2 ball, as (lhs, rhs).
    pub final_inside: Vec<(Rat, Rat)>,
    /// Every P2 center decreases somewhere on every cell of its partition.
    pub nowhere_monotone: Vec<bool>,
    pub records: Vec<ScaleRecord>,
}

impl TranscriptCheck {
    pub fn all_hold(&self) -> bool {
        self.nesting.iter().all(|(l, r)| l < r)
            && self.margins.iter().all(|&b| b)
            && self.partitions.iter().all(|&b| b)
            && self.final_inside.iter().all(|(l, r)| l < r)
            && self.nowhere_monotone.iter().all(|&b| b)
            && self.records.iter().all(ScaleRecord::holds)
    }
}

/// The sixteen corner displacements of `(x0, g(x0))` and `(x1, g(x1))` by
/// `±δ` in each coordinate all keep a positive difference quotient.
pub fn dq_corners_positive(g: &PLFunction, x0: &Rat, x1: &Rat, delta: &Rat) -> Result<bool> {
    let (y0, y1) = (g.eval(x0)?, g.eval(x1)?);
    let signs = [-1i64, 1];
    for sx0 in signs {
        for sy0 in signs {
            for sx1 in signs {
                for sy1 in signs {
                    let p0 = Point::new(x0 + delta * int(sx0), &y0 + delta * int(sy0));
                    let p1 = Point::new(x1 + delta * int(sx1), &y1 + delta * int(sy1));
                    if !dq(&p0, &p1)?.is_positive() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// A point of the margin set farthest inside its largest part.
fn witness_point(set: &IntervalSet) -> Option<Rat> {
    set.parts().iter().max_by(|a, b| a.length().cmp(&b.length())).map(Interval::midpoint)
}

fn sample_points(partition: &[Interval], samples: usize) -> Vec<(usize, Rat)> {
    let n = partition.len();
    let fractions = [rat::zero(), rat(1, 3), rat(1, 2), rat(5, 6), rat::one()];
    (0..samples)
        .map(|s| {
            let idx = s * n / samples.max(1);
            let j = &partition[idx.min(n - 1)];
            let t = &fractions[s % fractions.len()];
            (idx.min(n - 1), j.lo() + j.length() * t)
        })
        .collect()
}

/// Re-checks a transcript from its stored balls and parameters alone.
///
/// For every P2 move, `samples` points `x0` are spread over its partition.
/// Each gets the exact margin-set density in its cell and a DQ check at a
/// witness point; every function of the final ball stays within `δ` of that
/// move's center, so rises of at least `μ` survive as rises of `μ - 2δ`.
pub fn verify_limit_scales(t: &GameTranscript, samples: usize) -> Result<TranscriptCheck> {
    let mut nesting = Vec::with_capacity(t.plays.len());
    let mut prev = &t.start;
    for play in &t.plays {
        let lhs = prev.center.sup_distance(&play.ball.center)? + &play.ball.radius;
        nesting.push((lhs, prev.radius.clone()));
        prev = &play.ball;
    }
    let last = t.plays.last().map(|p| &p.ball).unwrap_or(&t.start);
    let mut check = TranscriptCheck {
        nesting,
        margins: Vec::new(),
        partitions: Vec::new(),
        final_inside: Vec::new(),
        nowhere_monotone: Vec::new(),
        records: Vec::new(),
    };
    for (k, play) in t.plays.iter().enumerate() {
        let Some(params) = &play.params else { continue };
        let g = &play.ball.center;
        check.margins.push(params.margins_hold());
        check.partitions.push(params.partition_covers_unit());
        if !std::ptr::eq(last, &play.ball) {
            let lhs = g.sup_distance(&last.center)? + &last.radius;
            check.final_inside.push((lhs, play.ball.radius.clone()));
        }
        check
            .nowhere_monotone
            .push(params.partition.iter().all(|j| knots_in(g, j).windows(2).any(|w| w[1].y < w[0].y)));
        let margin = &params.mu - &params.delta * int(2);
        for (idx, x0) in sample_points(&params.partition, samples) {
            let cell = params.partition[idx].clone();
            let set = margin_set(g, &cell, &x0, &params.eta, &params.mu)?;
            let density = set.measure() / cell.length();
            let dq_ok = match witness_point(&set) {
                Some(x1) => dq_corners_positive(g, &x0, &x1, &params.delta)?,
                None => false,
            };
            check.records.push(ScaleRecord {
                play: k,
                x0,
                cell,
                density,
                alpha: params.alpha.clone(),
                margin: margin.clone(),
                dq_ok,
            });
        }
    }
    Ok(check)
}

/// Exact sampled DQ checks at one P2 move, `count` random `x0`.
pub fn dq_spot_check(g: &PLFunction, params: &StrategyParams, rng_seed: u64, count: usize) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut passed = 0;
    for _ in 0..count {
        let j = &params.partition[rng.gen_range(0..params.partition.len())];
        let x0 = j.lo() + j.length() * rat(rng.gen_range(0..=1000), 1000);
        let set = margin_set(g, j, &x0, &params.eta, &params.mu)?;
        if let Some(x1) = witness_point(&set) {
            if dq_corners_positive(g, &x0, &x1, &params.delta)? {
                passed += 1;
            }
        }
    }
    Ok(passed)
}

impl GameTranscript {
    pub fn radii(&self) -> Vec<Rat> {
        std::iter::once(&self.start).chain(self.plays.iter().map(|p| &p.ball)).map(|b| b.radius.clone()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("GAME v1 {}\n", self.plays.len());
        let _ = writeln!(out, "start {}", fmt_exact(&self.start.radius));
        out.push_str(&write_pl(&self.start.center));
        for play in &self.plays {
            let tag = match play.role {
                Role::P1 => "P1",
                Role::P2 => "P2",
            };
            let _ = writeln!(out, "play {tag} {}", fmt_exact(&play.ball.radius));
            if let Some(p) = &play.params {
                let _ = writeln!(
                    out,
                    "params {} {} {} {} {}",
                    fmt_exact(&p.alpha),
                    fmt_exact(&p.eta),
                    fmt_exact(&p.delta),
                    fmt_exact(&p.mu),
                    p.partition.len()
                );
                for j in &p.partition {
                    let _ = writeln!(out, "{} {}", fmt_exact(j.lo()), fmt_exact(j.hi()));
                }
            }
            out.push_str(&write_pl(&play.ball.center));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let n = lines.header("GAME")?;
        let radius = single_rat(&mut lines, "start")?;
        let center = read_pl_from(&mut lines)?;
        let start = Ball::new(center, radius).map_err(|e| lines.err(e.to_string()))?;
        let mut plays = Vec::with_capacity(n);
        for _ in 0..n {
            let toks = lines.tagged("play")?;
            let (role, radius) = match toks.as_slice() {
                ["P1", r] => (Role::P1, *r),
                ["P2", r] => (Role::P2, *r),
                _ => return Err(lines.err("expected `play P1|P2 <radius>`")),
            };
            let radius = rat::parse_rat(radius).map_err(|_| lines.err(format!("bad radius `{radius}`")))?;
            let params = match role {
                Role::P1 => None,
                Role::P2 => Some(read_params(&mut lines)?),
            };
            let center = read_pl_from(&mut lines)?;
            let ball = Ball::new(center, radius).map_err(|e| lines.err(e.to_string()))?;
            plays.push(Play { role, ball, params });
        }
        if !lines.peek_is_end() {
            return Err(Error::parse(lines.line() + 1, "trailing content after transcript"));
        }
        Ok(GameTranscript { start, plays })
    }
}

fn single_rat(lines: &mut Lines<'_>, tag: &str) -> Result<Rat> {
    let toks = lines.tagged(tag)?;
    match toks.as_slice() {
        [v] => rat::parse_rat(v).map_err(|_| lines.err(format!("bad rational `{v}`"))),
        _ => Err(lines.err(format!("expected `{tag} <rational>`"))),
    }
}

fn read_params(lines: &mut Lines<'_>) -> Result<StrategyParams> {
    let toks = lines.tagged("params")?;
    if toks.len() != 5 {
        return Err(lines.err("expected `params alpha eta delta mu count`"));
    }
    let vals = toks[..4]
        .iter()
        .map(|t| rat::parse_rat(t).map_err(|_| lines.err(format!("bad rational `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    let count: usize = toks[4].parse().map_err(|_| lines.err("bad partition count"))?;
    let mut partition = Vec::with_capacity(count);
    for _ in 0..count {
        let v = lines.rats(2)?;
        partition.push(Interval::new(v[0].clone(), v[1].clone()).map_err(|e| lines.err(e.to_string()))?);
    }
    let mut it = vals.into_iter();
    Ok(StrategyParams {
        alpha: it.next().unwrap(),
        eta: it.next().unwrap(),
        delta: it.next().unwrap(),
        mu: it.next().unwrap(),
        partition,
    })
}
