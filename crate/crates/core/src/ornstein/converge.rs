//! The contracting seed: uniform convergence of its self-insertions.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::ornstein::construct::LazyConstruction;
use crate::ornstein::seed::SeedFunction;
use crate::pl::{interpolate, AffinePair, PLFunction, Point};
use crate::rat::{self, rat, Rat};

/// `max |f(x) - (1 - x)|` over the knots of the seed: its distance from the
/// chord joining `(0, 1)` and `(1, 0)`.
pub fn chord_deviation(seed: &SeedFunction) -> Rat {
    seed.function().knots().iter().map(|p| (&p.y - (rat::one() - &p.x)).abs()).max().expect("knots")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceLevel {
    pub n: usize,
    pub segments: usize,
    /// Largest `f(a) - f(b)` over decreasing pieces of level `n`.
    pub max_drop: Rat,
    /// `‖level_{n+1} - level_n‖_∞`.
    pub sup_diff: Rat,
    /// `ρ^{n+1}·C/ρ`, with `ρ` the seed's contraction.
    pub bound: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub c: Rat,
    pub contraction: Rat,
    pub levels: Vec<ConvergenceLevel>,
}

impl ConvergenceReport {
    pub fn drops_are_powers(&self) -> bool {
        self.levels.iter().all(|l| l.max_drop == rat::pow(&self.contraction, l.n as u32 + 1))
    }

    pub fn within_bounds(&self) -> bool {
        self.levels.iter().all(|l| l.sup_diff <= l.bound)
    }

    /// Each drop is no larger than `ρ^n`.
    pub fn within_loose_envelope(&self) -> bool {
        self.levels.iter().all(|l| l.max_drop <= rat::pow(&self.contraction, l.n as u32))
    }
}

/// `‖insert(f) - f‖_∞` computed one decreasing run at a time, without
/// building the next level.
fn insertion_distance(f: &PLFunction, seed: &SeedFunction) -> Result<Rat> {
    let k = f.knots();
    let c = chord_deviation(seed);
    let mut best = rat::zero();
    for (start, end) in f.decreasing_runs() {
        let (p, q) = (&k[start], &k[end]);
        if end == start + 1 {
            // A single piece is its own chord: the copy deviates by drop·C.
            let d = (&p.y - &q.y) * &c;
            if d > best {
                best = d;
            }
            continue;
        }
        let pair = AffinePair::insertion(&p.x, &q.x, &p.y, &q.y)?;
        for s in seed.function().knots() {
            let x = pair.t(&s.x);
            // The run may contain interior knots of f; interpolate on the right piece.
            let j = k[start..=end].partition_point(|r| r.x <= x).clamp(1, end - start) - 1 + start;
            let d = (pair.s(&s.y) - interpolate(&k[j], &k[j + 1], &x)).abs();
            if d > best {
                best = d;
            }
        }
    }
    Ok(best)
}

fn max_drop(f: &PLFunction) -> Rat {
    f.segments().map(|(p, q): (&Point, &Point)| &p.y - &q.y).filter(|d| d.is_positive()).max().unwrap_or_else(rat::zero)
}

/// Levels `0..=n_max`: exact largest drop and exact distance to the next level.
pub fn convergence_report(seed: &SeedFunction, n_max: usize, cap: u128) -> Result<ConvergenceReport> {
    let rho = seed.contraction();
    if rho >= rat::one() {
        return Err(Error::pre(format!("seed {} does not contract (largest drop {rho})", seed.kind())));
    }
    let c = chord_deviation(seed);
    let levels = LazyConstruction::new(seed.clone(), n_max).levels(cap)?;
    let mut out = Vec::with_capacity(levels.len());
    for (n, f) in levels.iter().enumerate() {
        let bound = rat::pow(&rho, n as u32 + 1) * &c / &rho;
        out.push(ConvergenceLevel {
            n,
            segments: f.segment_count(),
            max_drop: max_drop(f),
            sup_diff: insertion_distance(f, seed)?,
            bound,
        });
    }
    Ok(ConvergenceReport { c, contraction: rho, levels: out })
}

/// The tail `C·ρ^{N+1}/(1 - ρ)` bounding `|h_M(x) - h_N(x)|` for all `M ≥ N`.
pub fn tail_bound(seed: &SeedFunction, n: usize) -> Result<Rat> {
    let rho = seed.contraction();
    if rho >= rat::one() {
        return Err(Error::pre(format!("seed {} does not contract (largest drop {rho})", seed.kind())));
    }
    Ok(chord_deviation(seed) * rat::pow(&rho, n as u32 + 1) / (rat::one() - rho))
}

/// Exact `C` for the fourteen-knot seed.
pub fn fixed_h_c() -> Rat {
    rat(15, 26)
}
