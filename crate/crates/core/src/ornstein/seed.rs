use std::fmt;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::pl::{AffinePair, PLFunction, Trend};
use crate::rat::{self, int, rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedKind {
    /// Eight knots at `i/7`; inserting it into itself diverges.
    OrnsteinG,
    /// Fourteen knots at `i/13`; every decreasing piece drops by `3/4`.
    FixedH,
}

impl SeedKind {
    pub fn name(self) -> &'static str {
        match self {
            SeedKind::OrnsteinG => "ornstein-g",
            SeedKind::FixedH => "fixed-h",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ornstein-g" | "ornstein_g" | "g" => Ok(SeedKind::OrnsteinG),
            "fixed-h" | "fixed_h" | "h" => Ok(SeedKind::FixedH),
            _ => Err(Error::param(format!("unknown seed '{s}' (expected ornstein-g or fixed-h)"))),
        }
    }
}

impl fmt::Display for SeedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A PL function on `[0, 1]` with `f(0) = 1`, `f(1) = 0` and no flat pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedFunction {
    kind: SeedKind,
    base: PLFunction,
    trends: Vec<Trend>,
}

impl SeedFunction {
    pub fn new(kind: SeedKind, base: PLFunction) -> Result<Self> {
        if base.domain() != Interval::unit() {
            return Err(Error::param(format!("seed domain {} is not [0, 1]", base.domain())));
        }
        if base.first().y != rat::one() || base.last().y != rat::zero() {
            return Err(Error::param("seed must satisfy f(0) = 1 and f(1) = 0"));
        }
        let trends: Vec<Trend> = (0..base.segment_count()).map(|i| base.trend(i)).collect();
        if trends.contains(&Trend::Flat) {
            return Err(Error::param("seed has a flat piece"));
        }
        // Copies must start and end rising so that inserted runs never merge
        // with their neighbours.
        if trends[0] != Trend::Increasing || trends[trends.len() - 1] != Trend::Increasing {
            return Err(Error::param("seed must rise on its first and last pieces"));
        }
        Ok(SeedFunction { kind, base, trends })
    }

    pub fn ornstein_g() -> Self {
        let v = [int(1), rat(4, 3), rat(1, 3), rat(4, 3), rat(-1, 3), rat(2, 3), rat(-1, 3), int(0)];
        Self::new(SeedKind::OrnsteinG, PLFunction::uniform(&int(0), &int(1), &v).unwrap()).unwrap()
    }

    pub fn fixed_h() -> Self {
        let quarters = [4, 6, 3, 5, 2, 4, 1, 3, 0, 2, -1, 1, -2, 0];
        let v: Vec<Rat> = quarters.iter().map(|&q| rat(q, 4)).collect();
        Self::new(SeedKind::FixedH, PLFunction::uniform(&int(0), &int(1), &v).unwrap()).unwrap()
    }

    pub fn of_kind(kind: SeedKind) -> Self {
        match kind {
            SeedKind::OrnsteinG => Self::ornstein_g(),
            SeedKind::FixedH => Self::fixed_h(),
        }
    }

    pub fn kind(&self) -> SeedKind {
        self.kind
    }

    pub fn function(&self) -> &PLFunction {
        &self.base
    }

    pub fn trends(&self) -> &[Trend] {
        &self.trends
    }

    pub fn increasing_count(&self) -> usize {
        self.trends.iter().filter(|t| **t == Trend::Increasing).count()
    }

    pub fn decreasing_count(&self) -> usize {
        self.trends.iter().filter(|t| **t == Trend::Decreasing).count()
    }

    /// Knot indices of the decreasing pieces, left to right.
    pub fn decreasing_segments(&self) -> Vec<usize> {
        (0..self.trends.len()).filter(|&i| self.trends[i] == Trend::Decreasing).collect()
    }

    /// Maps the unit seed onto decreasing piece `seg`, running from its left
    /// value down to its right value.
    pub fn insertion_pair(&self, seg: usize) -> AffinePair {
        let k = self.base.knots();
        AffinePair::insertion(&k[seg].x, &k[seg + 1].x, &k[seg].y, &k[seg + 1].y).expect("distinct knots")
    }

    /// Largest drop `f(a) - f(b)` over decreasing pieces: the factor by which
    /// vertical scale shrinks per level.
    pub fn contraction(&self) -> Rat {
        let k = self.base.knots();
        self.decreasing_segments().into_iter().map(|s| &k[s].y - &k[s + 1].y).max().expect("seed decreases")
    }

    /// Whether consecutive decreasing pieces never touch, so each maximal
    /// decreasing run is a single piece.
    pub fn runs_are_single(&self) -> bool {
        self.trends.windows(2).all(|w| !(w[0] == Trend::Decreasing && w[1] == Trend::Decreasing))
    }
}
