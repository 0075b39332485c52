//! Nested approximate-maximum search and the monotonicity dichotomy.

use std::fmt::Write;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::format::{read_pl_from, write_pl, Lines};
use crate::interval::Interval;
use crate::omalley::step::{omalley_step, witness_for, StepWitness};
use crate::pl::{PLFunction, Trend};
use crate::rat::{self, fmt_exact, Rat};

/// One entry `(a_k, b_k, y_k)` of the nested sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertStage {
    pub a: Rat,
    pub b: Rat,
    pub y: Rat,
}

impl CertStage {
    pub fn interval(&self) -> Interval {
        Interval::spanning(self.a.clone(), self.b.clone())
    }
}

/// Nested intervals and levels; stage `k ≥ 1` was produced with `ε = 1/(k+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxSearchCertificate {
    pub function: PLFunction,
    pub stages: Vec<CertStage>,
    pub witnesses: Vec<StepWitness>,
}

/// Stage `k` uses `ε = 1/(k+1)`: with `ε = 1` no interval has density above
/// `ε`, so the first stage starts at `1/2`.
pub fn stage_epsilon(k: usize) -> Rat {
    rat::rat(1, k as i64 + 1)
}

impl MaxSearchCertificate {
    /// The final interval `[a_K, b_K]`, which contains the limit point.
    pub fn enclosure(&self) -> Interval {
        self.stages.last().expect("at least the initial stage").interval()
    }

    pub fn depth(&self) -> usize {
        self.stages.len() - 1
    }

    /// Recomputes every step's conclusions from the stored stages alone.
    pub fn verify(&self) -> Result<Vec<(usize, [bool; 6])>> {
        let mut out = Vec::with_capacity(self.depth());
        for k in 1..self.stages.len() {
            let (prev, cur) = (&self.stages[k - 1], &self.stages[k]);
            let eps = stage_epsilon(k);
            let w = witness_for(&self.function, &prev.interval(), &prev.y, &cur.y, &cur.interval())?;
            out.push((k, w.items(&eps)));
        }
        Ok(out)
    }

    pub fn verified(&self) -> Result<bool> {
        Ok(self.verify()?.iter().all(|(_, items)| items.iter().all(|&b| b)))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("CERT v1 {}\n", self.stages.len());
        for (k, s) in self.stages.iter().enumerate() {
            let _ = writeln!(out, "{k} {} {} {}", fmt_exact(&s.a), fmt_exact(&s.b), fmt_exact(&s.y));
        }
        out.push_str(&write_pl(&self.function));
        out
    }

    /// Parses a certificate; witnesses are recomputed, not trusted.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let n = lines.header("CERT")?;
        if n == 0 {
            return Err(lines.err("certificate without stages"));
        }
        let mut stages = Vec::with_capacity(n);
        for k in 0..n {
            let toks = lines.tagged(&k.to_string())?;
            if toks.len() != 3 {
                return Err(lines.err(format!("stage {k}: expected `k a b y`")));
            }
            let vals = toks
                .iter()
                .map(|t| rat::parse_rat(t).map_err(|_| lines.err(format!("bad rational `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            let mut it = vals.into_iter();
            let (a, b, y) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
            if a > b {
                return Err(lines.err(format!("stage {k}: {a} > {b}")));
            }
            stages.push(CertStage { a, b, y });
        }
        let function = read_pl_from(&mut lines)?;
        if !lines.peek_is_end() {
            return Err(Error::parse(lines.line() + 1, "trailing content after certificate"));
        }
        let mut witnesses = Vec::with_capacity(n - 1);
        for k in 1..n {
            let (p, c) = (&stages[k - 1], &stages[k]);
            witnesses.push(witness_for(&function, &p.interval(), &p.y, &c.y, &c.interval())?);
        }
        Ok(MaxSearchCertificate { function, stages, witnesses })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaxSearchOutcome {
    /// `f` is strictly increasing on `[a, b]`; there is nothing to find.
    NoMaxRequired,
    /// `f` attains its maximum over the initial search window at `a`.
    LeftEndpoint {
        x0: Rat,
    },
    /// `f` is constant on `segment`; its midpoint is a density point of the
    /// level set and hence an approximate maximum.
    Flat {
        x0: Rat,
        segment: Interval,
        level: Rat,
    },
    Certificate(MaxSearchCertificate),
}

impl MaxSearchOutcome {
    /// An interval known to contain the approximate maximum, if any.
    pub fn enclosure(&self) -> Option<Interval> {
        match self {
            MaxSearchOutcome::NoMaxRequired => None,
            MaxSearchOutcome::LeftEndpoint { x0 } | MaxSearchOutcome::Flat { x0, .. } => {
                Some(Interval::point(x0.clone()))
            }
            MaxSearchOutcome::Certificate(c) => Some(c.enclosure()),
        }
    }
}

/// Iterates the nested-component step `k_max` times from `[a, b']`, where `b'`
/// ends the first decreasing piece of `f` after `a`.
pub fn approx_max_search(f: &PLFunction, a: &Rat, b: &Rat, k_max: usize) -> Result<MaxSearchOutcome> {
    if k_max == 0 {
        return Err(Error::param("k_max must be positive"));
    }
    let span = Interval::new(a.clone(), b.clone())?;
    span.nonzero_length()?;
    let g = f.restrict(&span)?;
    let flats = g.flat_segments(&span);
    if !flats.is_empty() {
        let (segment, level) = flats
            .into_iter()
            .fold(None::<(Interval, Rat)>, |best, (s, y)| match best {
                Some(b) if b.0.length() >= s.length() => Some(b),
                _ => Some((s, y)),
            })
            .expect("non-empty");
        return Ok(MaxSearchOutcome::Flat { x0: segment.midpoint(), segment, level });
    }
    let first_dec = (0..g.segment_count()).find(|&s| g.trend(s) == Trend::Decreasing);
    let Some(seg) = first_dec else {
        return Ok(MaxSearchOutcome::NoMaxRequired);
    };
    let b1 = g.knots()[seg + 1].x.clone();
    let window = Interval::spanning(a.clone(), b1.clone());
    let s0 = g.sup_on(&window)?;
    let fa = g.eval(a)?;
    if fa >= s0 {
        return Ok(MaxSearchOutcome::LeftEndpoint { x0: a.clone() });
    }
    let y0 = rat::max(&fa, &g.eval(&b1)?);
    let mut stages = vec![CertStage { a: a.clone(), b: b1, y: y0 }];
    let mut witnesses = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let prev = stages.last().expect("initial stage");
        let step = omalley_step(&g, &prev.a, &prev.b, &prev.y, &stage_epsilon(k))?;
        witnesses.push(step.witness);
        stages.push(CertStage { a: step.a1, b: step.b1, y: step.y1 });
    }
    Ok(MaxSearchOutcome::Certificate(MaxSearchCertificate { function: g, stages, witnesses }))
}

/// The two sides of the monotonicity dichotomy on `[x1, x2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Monotonicity {
    StrictIncrease {
        f1: Rat,
        f2: Rat,
    },
    Witness {
        /// The exact local-maximum knot (or endpoint, or flat midpoint).
        x0: Rat,
        enclosure: Interval,
        /// Slope of `f` just to the right of `x0`; `None` when `x0 = x2`.
        right_slope: Option<Rat>,
    },
}

const WITNESS_DEPTH: usize = 12;

/// Either `f(x1) < f(x2)`, or a point of `[x1, x2]` where `f` has an
/// approximate maximum and does not increase to the right.
pub fn monotonicity_witness(f: &PLFunction, x1: &Rat, x2: &Rat) -> Result<Monotonicity> {
    if x1 >= x2 {
        return Err(Error::param(format!("need x1 < x2, got {x1} and {x2}")));
    }
    let f1 = f.eval(x1)?;
    let f2 = f.eval(x2)?;
    if f1 < f2 {
        return Ok(Monotonicity::StrictIncrease { f1, f2 });
    }
    let span = Interval::spanning(x1.clone(), x2.clone());
    let g = f.restrict(&span)?;
    let (x0, enclosure) = match approx_max_search(&g, x1, x2, WITNESS_DEPTH)? {
        MaxSearchOutcome::NoMaxRequired => {
            return Err(Error::SelfCheck(format!("f({x1}) >= f({x2}) yet f increases strictly")));
        }
        MaxSearchOutcome::LeftEndpoint { x0 } | MaxSearchOutcome::Flat { x0, .. } => (x0.clone(), Interval::point(x0)),
        MaxSearchOutcome::Certificate(c) => {
            let enc = c.enclosure();
            let x0 = local_max_knots(&g)
                .into_iter()
                .find(|x| enc.contains(x))
                .ok_or_else(|| Error::SelfCheck(format!("no local maximum knot in {enc}")))?;
            (x0, enc)
        }
    };
    let right_slope = g.right_slope(&x0)?;
    if right_slope.as_ref().is_some_and(|s| s.is_positive()) {
        return Err(Error::SelfCheck(format!("right slope {} at {x0} is positive", right_slope.unwrap())));
    }
    Ok(Monotonicity::Witness { x0, enclosure, right_slope })
}

/// Interior knots with a rising piece on the left and a falling piece on the right.
pub fn local_max_knots(f: &PLFunction) -> Vec<Rat> {
    let k = f.knots();
    (1..k.len() - 1).filter(|&i| k[i - 1].y < k[i].y && k[i + 1].y < k[i].y).map(|i| k[i].x.clone()).collect()
}
