//! Certified lower bounds for the density of the non-negative
//! difference-quotient set at points that never leave decreasing pieces.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::format::Lines;
use crate::interval::{Interval, IntervalSet};
use crate::ornstein::construct::lazy_eval;
use crate::ornstein::converge::tail_bound;
use crate::ornstein::seed::SeedFunction;
use crate::pl::{AffinePair, PLFunction, Trend};
use crate::rat::{self, fmt_exact, rat, Rat};

/// The density threshold: half a unit of mass on the thirteen-unit scale.
pub fn threshold() -> Rat {
    rat(1, 26)
}

/// A periodic choice of decreasing pieces; digit `d` picks the `d`-th
/// decreasing piece of the seed, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedPath {
    pub digits: Vec<usize>,
}

impl SeedPath {
    /// `central`, `first`, `last`, or a string of digits.
    pub fn parse(s: &str, seed: &SeedFunction) -> Result<Self> {
        let count = seed.decreasing_count();
        let digits = match s {
            "central" => vec![(count - 1) / 2],
            "first" => vec![0],
            "last" => vec![count - 1],
            _ => s
                .chars()
                .filter(|c| *c != ',')
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::param(format!("path '{s}' is not a digit string")))?,
        };
        if digits.is_empty() || digits.iter().any(|&d| d >= count) {
            return Err(Error::param(format!("path '{s}' needs digits below {count}")));
        }
        Ok(SeedPath { digits })
    }

    pub fn digit(&self, level: usize) -> usize {
        self.digits[level % self.digits.len()]
    }
}

/// Composite `(T, S)` after following the first `n` digits.
fn composite(seed: &SeedFunction, path: &SeedPath, n: usize) -> AffinePair {
    let dec = seed.decreasing_segments();
    let mut acc = AffinePair::identity();
    for level in 0..n {
        let p = seed.insertion_pair(dec[path.digit(level)]);
        acc = AffinePair {
            t_shift: acc.t(&p.t_shift),
            t_scale: &acc.t_scale * &p.t_scale,
            s_shift: acc.s(&p.s_shift),
            s_scale: &acc.s_scale * &p.s_scale,
        };
    }
    acc
}

/// The point selected by the path and the exact limit value there: the
/// fixed points of one period of the composite maps.
pub fn path_point(seed: &SeedFunction, path: &SeedPath) -> (Rat, Rat) {
    let c = composite(seed, path, path.digits.len());
    let x0 = &c.t_shift / (rat::one() - &c.t_scale);
    let y0 = &c.s_shift / (rat::one() - &c.s_scale);
    (x0, y0)
}

/// `[h_N(x) - tail, h_N(x) + tail]`.
pub fn enclose_h_infinity(seed: &SeedFunction, x: &Rat, n: usize) -> Result<Interval> {
    let tail = tail_bound(seed, n)?;
    let v = lazy_eval(seed, n, x)?;
    Ok(Interval::spanning(&v - &tail, &v + &tail))
}

/// Mass of `{x ≥ x0 on rising pieces: f(x) ≥ hi} ∪ {x ≤ x0 on rising pieces: f(x) ≤ lo}`.
///
/// With `(lo, hi)` the ends of an enclosure of the value at `x0` this is
/// certainly inside the difference-quotient set; with `(hi, lo)` it contains
/// every point that possibly is.
pub fn rising_mass(f: &PLFunction, x0: &Rat, lo: &Rat, hi: &Rat) -> Result<Rat> {
    let mut parts = Vec::new();
    for (s, (p, q)) in f.segments().enumerate() {
        if f.trend(s) != Trend::Increasing {
            continue;
        }
        let seg = Interval::spanning(p.x.clone(), q.x.clone());
        let piece = f.restrict(&seg)?;
        if let Some(right) = seg.intersect(&Interval::spanning(x0.clone(), rat::max(x0, &q.x))) {
            if !right.is_degenerate() {
                parts.extend(piece.superlevel_closed(hi, &right)?.parts().iter().cloned());
            }
        }
        if let Some(left) = seg.intersect(&Interval::spanning(rat::min(x0, &p.x), x0.clone())) {
            if !left.is_degenerate() {
                parts.extend(piece.sublevel_closed(lo, &left)?.parts().iter().cloned());
            }
        }
    }
    Ok(IntervalSet::from_parts(parts).measure())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelStatus {
    Certified,
    Refuted,
    /// Undecided at this enclosure depth; the first deeper one that decides, if found.
    Inconclusive {
        needed_depth: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPrimeLevel {
    pub n: usize,
    pub interval: Interval,
    /// `13·|I_n|`: the length on the thirteen-unit scale.
    pub scaled_length: Rat,
    pub lower_bound: Rat,
    pub upper_bound: Rat,
    pub status: LevelStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPrimeCertificate {
    pub path: SeedPath,
    pub x0: Rat,
    pub y0: Rat,
    pub enclosure_depth: usize,
    pub enclosure: Interval,
    pub levels: Vec<BPrimeLevel>,
}

impl BPrimeCertificate {
    pub fn all_certified(&self) -> bool {
        self.levels.iter().all(|l| l.status == LevelStatus::Certified)
    }

    pub fn lengths_exact(&self) -> bool {
        self.levels.iter().all(|l| l.n == 0 || l.scaled_length == rat::pow(&rat(1, 13), l.n as u32 - 1))
    }

    pub fn to_text(&self) -> String {
        let digits: String = self.path.digits.iter().map(|d| d.to_string()).collect();
        let mut out = format!(
            "BPRIME v1 {}\npath {digits}\nx0 {}\ny0 {}\nenclosure {} {} {}\n",
            self.levels.len(),
            fmt_exact(&self.x0),
            fmt_exact(&self.y0),
            self.enclosure_depth,
            fmt_exact(self.enclosure.lo()),
            fmt_exact(self.enclosure.hi()),
        );
        for l in &self.levels {
            let status = match &l.status {
                LevelStatus::Certified => "certified".to_string(),
                LevelStatus::Refuted => "refuted".to_string(),
                LevelStatus::Inconclusive { needed_depth: Some(d) } => format!("inconclusive needs {d}"),
                LevelStatus::Inconclusive { needed_depth: None } => "inconclusive".to_string(),
            };
            let _ = writeln!(
                out,
                "{} {} {} {} {} {} {status}",
                l.n,
                fmt_exact(l.interval.lo()),
                fmt_exact(l.interval.hi()),
                fmt_exact(&l.scaled_length),
                fmt_exact(&l.lower_bound),
                fmt_exact(&l.upper_bound),
            );
        }
        out
    }
}

impl BPrimeCertificate {
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let n = lines.header("BPRIME")?;
        let digits = match lines.tagged("path")?.as_slice() {
            [d] => d
                .chars()
                .map(|c| c.to_digit(10).map(|v| v as usize))
                .collect::<Option<Vec<_>>>()
                .filter(|v| !v.is_empty())
                .ok_or_else(|| lines.err("bad path digits"))?,
            _ => return Err(lines.err("expected `path <digits>`")),
        };
        let x0 = one_rat(&mut lines, "x0")?;
        let y0 = one_rat(&mut lines, "y0")?;
        let toks = lines.tagged("enclosure")?;
        let [depth, lo, hi] = toks.as_slice() else {
            return Err(lines.err("expected `enclosure <depth> <lo> <hi>`"));
        };
        let enclosure_depth = depth.parse().map_err(|_| lines.err("bad enclosure depth"))?;
        let enclosure =
            Interval::new(tok_rat(&lines, lo)?, tok_rat(&lines, hi)?).map_err(|e| lines.err(e.to_string()))?;
        let mut levels = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines.next_line()?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 7 {
                return Err(lines.err("expected `n lo hi scaled lower upper status`"));
            }
            let level = toks[0].parse().map_err(|_| lines.err("bad level index"))?;
            let v = toks[1..6].iter().map(|t| tok_rat(&lines, t)).collect::<Result<Vec<_>>>()?;
            let status = match &toks[6..] {
                ["certified"] => LevelStatus::Certified,
                ["refuted"] => LevelStatus::Refuted,
                ["inconclusive"] => LevelStatus::Inconclusive { needed_depth: None },
                ["inconclusive", "needs", d] => LevelStatus::Inconclusive {
                    needed_depth: Some(d.parse().map_err(|_| lines.err("bad needed depth"))?),
                },
                _ => return Err(lines.err("unknown level status")),
            };
            let interval = Interval::new(v[0].clone(), v[1].clone()).map_err(|e| lines.err(e.to_string()))?;
            levels.push(BPrimeLevel {
                n: level,
                interval,
                scaled_length: v[2].clone(),
                lower_bound: v[3].clone(),
                upper_bound: v[4].clone(),
                status,
            });
        }
        if !lines.peek_is_end() {
            return Err(Error::parse(lines.line() + 1, "trailing content after certificate"));
        }
        Ok(BPrimeCertificate { path: SeedPath { digits }, x0, y0, enclosure_depth, enclosure, levels })
    }
}

fn tok_rat(lines: &Lines<'_>, t: &str) -> Result<Rat> {
    rat::parse_rat(t).map_err(|_| lines.err(format!("bad rational `{t}`")))
}

fn one_rat(lines: &mut Lines<'_>, tag: &str) -> Result<Rat> {
    match lines.tagged(tag)?.as_slice() {
        [v] => tok_rat(lines, v),
        _ => Err(lines.err(format!("expected `{tag} <rational>`"))),
    }
}

/// Seed copy on `I_n` and its density bounds for a given value enclosure.
fn level_bounds(
    seed: &SeedFunction,
    path: &SeedPath,
    n: usize,
    x0: &Rat,
    enc: &Interval,
) -> Result<(Interval, Rat, Rat)> {
    let pair = composite(seed, path, n);
    let copy = seed.function().affine_transform(&pair)?;
    let iv = copy.domain();
    let len = iv.length();
    let lower = rising_mass(&copy, x0, enc.lo(), enc.hi())? / &len;
    let upper = rising_mass(&copy, x0, enc.hi(), enc.lo())? / &len;
    Ok((iv, lower, upper))
}

const DEPTH_SEARCH: usize = 64;

/// Levels `0..=n_max` at the path point, deciding membership with the
/// depth-`enclosure_depth` enclosure of the limit value at `x0`.
pub fn bprime_check(
    seed: &SeedFunction,
    path: &SeedPath,
    n_max: usize,
    enclosure_depth: usize,
) -> Result<BPrimeCertificate> {
    let (x0, y0) = path_point(seed, path);
    let enclosure = enclose_h_infinity(seed, &x0, enclosure_depth)?;
    if !enclosure.contains(&y0) {
        return Err(Error::SelfCheck(format!("enclosure {enclosure} misses the fixed-point value {y0}")));
    }
    let thr = threshold();
    let mut levels = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let (interval, lower_bound, upper_bound) = level_bounds(seed, path, n, &x0, &enclosure)?;
        let status = if lower_bound >= thr {
            LevelStatus::Certified
        } else if upper_bound < thr {
            LevelStatus::Refuted
        } else {
            let mut needed = None;
            for d in enclosure_depth + 1..=enclosure_depth + DEPTH_SEARCH {
                let enc = enclose_h_infinity(seed, &x0, d)?;
                if level_bounds(seed, path, n, &x0, &enc)?.1 >= thr {
                    needed = Some(d);
                    break;
                }
            }
            LevelStatus::Inconclusive { needed_depth: needed }
        };
        let scaled_length = interval.length() * rat::int(13);
        levels.push(BPrimeLevel { n, interval, scaled_length, lower_bound, upper_bound, status });
    }
    Ok(BPrimeCertificate { path: path.clone(), x0, y0, enclosure_depth, enclosure, levels })
}
