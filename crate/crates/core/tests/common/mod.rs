//! Generators and brute-force oracles shared by the integration suites.
//!
//! Everything here works on raw knot lists and part lists so that the
//! oracles do not route through the library's own set algebra.
#![allow(dead_code)]

use num_traits::ToPrimitive;
use plreal::rat::{int, rat};
use plreal::{Interval, IntervalSet, PLFunction, Rat};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn f(q: &Rat) -> f64 {
    q.to_f64().unwrap()
}

/// `count` distinct multiples of `1/den` strictly inside `(lo, hi)`, sorted.
pub fn grid_points(r: &mut ChaCha8Rng, lo: &Rat, hi: &Rat, den: i64, count: usize) -> Vec<Rat> {
    let step = rat(1, den);
    let cells = ((hi - lo) / &step).floor().to_integer().to_i64().unwrap();
    let mut ks: Vec<i64> = (1..cells).collect();
    ks.shuffle(r);
    ks.truncate(count);
    ks.sort_unstable();
    ks.into_iter().map(|k| lo + &step * int(k)).collect()
}

/// Up to `max_parts` disjoint parts with endpoints on the `1/den` grid of `[0, 1]`.
pub fn random_parts(r: &mut ChaCha8Rng, max_parts: usize, den: i64) -> Vec<(Rat, Rat)> {
    let n = r.gen_range(0..=max_parts);
    let pts = grid_points(r, &int(0), &int(1), den, 2 * n);
    pts.chunks_exact(2).map(|c| (c[0].clone(), c[1].clone())).collect()
}

pub fn to_set(parts: &[(Rat, Rat)]) -> IntervalSet {
    IntervalSet::from_parts(parts.iter().map(|(a, b)| Interval::new(a.clone(), b.clone()).unwrap()).collect())
}

/// `λ(∪parts ∩ [u, v])`, parts assumed disjoint.
pub fn meas(parts: &[(Rat, Rat)], u: &Rat, v: &Rat) -> Rat {
    let mut total = int(0);
    for (a, b) in parts {
        let lo = if a > u { a } else { u };
        let hi = if b < v { b } else { v };
        if lo < hi {
            total += hi - lo;
        }
    }
    total
}

pub fn meas_f64(parts: &[(f64, f64)], u: f64, v: f64) -> f64 {
    parts.iter().map(|&(a, b)| (b.min(v) - a.max(u)).max(0.0)).sum()
}

/// Supremum of the density of `∪parts` over open `J ⊆ [lo, hi]` containing `p`,
/// by scanning every pair of candidate endpoints.
pub fn straddle_oracle(parts: &[(Rat, Rat)], lo: &Rat, hi: &Rat, p: &Rat) -> Option<Rat> {
    if p <= lo || p >= hi {
        return None;
    }
    let mut cands = vec![lo.clone(), hi.clone(), p.clone()];
    for (a, b) in parts {
        cands.push(a.clone());
        cands.push(b.clone());
    }
    cands.retain(|c| c >= lo && c <= hi);
    let mut best: Option<Rat> = None;
    for u in cands.iter().filter(|u| *u <= p) {
        for v in cands.iter().filter(|v| *v >= p) {
            if u == v {
                continue;
            }
            let d = meas(parts, u, v) / (v - u);
            if best.as_ref().is_none_or(|b| &d > b) {
                best = Some(d);
            }
        }
    }
    best
}

/// Random knot list on `[0, 1]`: `n` knots on the `1/den` grid, no flat
/// pieces, first piece rising. Values are multiples of `1/4`.
pub fn random_knots(r: &mut ChaCha8Rng, n: usize, den: i64) -> Vec<(Rat, Rat)> {
    let mut xs = vec![int(0)];
    xs.extend(grid_points(r, &int(0), &int(1), den, n - 2));
    xs.push(int(1));
    let mut ys: Vec<i64> = vec![r.gen_range(-20..20)];
    for i in 1..xs.len() {
        let prev = ys[i - 1];
        let y = loop {
            let y = if i == 1 { prev + r.gen_range(1..8) } else { r.gen_range(-24..24) };
            if y != prev {
                break y;
            }
        };
        ys.push(y);
    }
    xs.into_iter().zip(ys).map(|(x, y)| (x, rat(y, 4))).collect()
}

/// Random strictly increasing knot list on `[0, 1]`.
pub fn random_increasing(r: &mut ChaCha8Rng, n: usize, den: i64) -> Vec<(Rat, Rat)> {
    let mut xs = vec![int(0)];
    xs.extend(grid_points(r, &int(0), &int(1), den, n - 2));
    xs.push(int(1));
    let mut y = r.gen_range(-20..20);
    xs.into_iter()
        .map(|x| {
            y += r.gen_range(1..6);
            (x, rat(y, 4))
        })
        .collect()
}

pub fn pl(knots: &[(Rat, Rat)]) -> PLFunction {
    PLFunction::from_pairs(knots).unwrap()
}

/// Evaluation by linear interpolation on the raw knot list.
pub fn eval_knots(knots: &[(Rat, Rat)], x: &Rat) -> Rat {
    for w in knots.windows(2) {
        let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
        if x >= x0 && x <= x1 {
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
    }
    panic!("{x} outside knot range");
}

/// Exact `{x ∈ [lo, hi] : f(x) > y}` as raw parts, segment by segment.
pub fn superlevel_oracle(knots: &[(Rat, Rat)], y: &Rat, lo: &Rat, hi: &Rat) -> Vec<(Rat, Rat)> {
    let mut out: Vec<(Rat, Rat)> = Vec::new();
    for w in knots.windows(2) {
        let (x0, x1) = (&w[0].0, &w[1].0);
        let u = if x0 > lo { x0.clone() } else { lo.clone() };
        let v = if x1 < hi { x1.clone() } else { hi.clone() };
        if u >= v {
            continue;
        }
        let (fu, fv) = (eval_knots(knots, &u), eval_knots(knots, &v));
        let part = match (fu > *y, fv > *y) {
            (true, true) => Some((u, v)),
            (false, false) => None,
            (true, false) => Some((u.clone(), &u + (&v - &u) * (&fu - y) / (&fu - &fv))),
            (false, true) => Some((&u + (&v - &u) * (y - &fu) / (&fv - &fu), v)),
        };
        if let Some((a, b)) = part {
            if a < b {
                match out.last_mut() {
                    Some(last) if last.1 == a => last.1 = b,
                    _ => out.push((a, b)),
                }
            }
        }
    }
    out
}

/// Indices of interior knots strictly above both neighbours.
pub fn peak_indices(knots: &[(Rat, Rat)]) -> Vec<usize> {
    (1..knots.len() - 1).filter(|&i| knots[i - 1].1 < knots[i].1 && knots[i + 1].1 < knots[i].1).collect()
}

/// Slope of the knot list immediately right of `x`; `None` at the right end.
pub fn right_slope_oracle(knots: &[(Rat, Rat)], x: &Rat) -> Option<Rat> {
    knots.windows(2).find(|w| &w[0].0 <= x && x < &w[1].0).map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
}

/// Naive full self-insertion of a seed knot list, `n` times.
pub fn insert_oracle(seed: &[(Rat, Rat)], n: usize) -> Vec<(Rat, Rat)> {
    let mut cur = seed.to_vec();
    for _ in 0..n {
        let mut next = vec![cur[0].clone()];
        for w in cur.windows(2) {
            let ((a, fa), (b, fb)) = (&w[0], &w[1]);
            if fb < fa {
                for (sx, sy) in &seed[1..] {
                    next.push((a + (b - a) * sx, fb + (fa - fb) * sy));
                }
            } else {
                next.push(w[1].clone());
            }
        }
        cur = next;
    }
    cur
}

/// The three exact component properties, checked against raw-part oracles.
pub fn component_check(parts: &[(Rat, Rat)], i: &Interval, eps: &Rat) -> Result<(), String> {
    let comps = plreal::omalley::g_epsilon(&to_set(parts), i, eps).map_err(|e| e.to_string())?;
    let half = eps / int(2);
    let mut total = int(0);
    for c in &comps.components {
        let d = meas(parts, c.lo(), c.hi()) / c.length();
        if d < half {
            return Err(format!("component {c} density {d} below {half}"));
        }
        for p in [c.lo(), c.hi()] {
            if let Some(s) = straddle_oracle(parts, i.lo(), i.hi(), p) {
                if &s > eps {
                    return Err(format!("straddling density {s} at {p} exceeds {eps}"));
                }
            }
        }
        total += c.length();
    }
    let cap = int(2) * meas(parts, i.lo(), i.hi()) / eps;
    if total > cap {
        return Err(format!("component measure {total} exceeds {cap}"));
    }
    Ok(())
}

/// Compares `G_ε` membership with a floating brute-force scan of candidate
/// intervals on a `grid`-point lattice. Points within `1e-6` of a component
/// endpoint, or whose best density is within `1e-12` of `ε`, are skipped.
/// Returns the number of points actually compared.
pub fn geps_oracle_check(parts: &[(Rat, Rat)], i: &Interval, eps: &Rat, grid: usize) -> Result<usize, String> {
    let comps = plreal::omalley::g_epsilon(&to_set(parts), i, eps).map_err(|e| e.to_string())?;
    let ends: Vec<f64> = comps.components.iter().flat_map(|c| [f(c.lo()), f(c.hi())]).collect();
    let fparts: Vec<(f64, f64)> = parts.iter().map(|(a, b)| (f(a), f(b))).collect();
    let (lo, hi, e) = (f(i.lo()), f(i.hi()), f(eps));
    let mut cands = vec![lo, hi];
    cands.extend(fparts.iter().flat_map(|&(a, b)| [a, b]).filter(|&c| c > lo && c < hi));
    let mut compared = 0;
    for k in 0..grid {
        let x = lo + (hi - lo) * (k as f64 + 0.5) / grid as f64;
        if ends.iter().any(|&t| (t - x).abs() < 1e-6) {
            continue;
        }
        let mut best = f64::NEG_INFINITY;
        for &u in cands.iter().chain([x].iter()).filter(|&&u| u <= x) {
            for &v in cands.iter().chain([x].iter()).filter(|&&v| v >= x) {
                if v > u {
                    best = best.max(meas_f64(&fparts, u, v) / (v - u));
                }
            }
        }
        if (best - e).abs() < 1e-12 {
            continue;
        }
        let oracle = best > e;
        let exact = comps.components.iter().any(|c| f(c.lo()) < x && x < f(c.hi()));
        if oracle != exact {
            return Err(format!("x = {x}: oracle {oracle} (best {best}), envelope {exact}"));
        }
        compared += 1;
    }
    Ok(compared)
}

/// A window `[a0, b0]` whose interior rises above both ends, a level below
/// the window's maximum, and an `ε`.
pub struct StepCase {
    pub knots: Vec<(Rat, Rat)>,
    pub a0: Rat,
    pub b0: Rat,
    pub y0: Rat,
    pub eps: Rat,
}

pub fn random_step_case(r: &mut ChaCha8Rng) -> StepCase {
    loop {
        let n = r.gen_range(4..=20);
        let knots = random_knots(r, n, 256);
        let peaks = peak_indices(&knots);
        let Some(&p) = peaks.choose(r) else { continue };
        let li = r.gen_range(0..p);
        let ri = r.gen_range(p + 1..knots.len());
        let t = rat(r.gen_range(0..3), 3);
        let a0 = &knots[li].0 + (&knots[li + 1].0 - &knots[li].0) * &t;
        let b0 = &knots[ri].0 - (&knots[ri].0 - &knots[ri - 1].0) * &t;
        if a0 >= knots[p].0 || b0 <= knots[p].0 {
            continue;
        }
        let ends = eval_knots(&knots, &a0).max(eval_knots(&knots, &b0));
        let top = knots.iter().filter(|(x, _)| *x > a0 && *x < b0).map(|(_, y)| y.clone()).max().unwrap();
        if top <= ends {
            continue;
        }
        let y0 = &ends + (&top - &ends) * rat(r.gen_range(0..8), 8);
        let eps = rat(1, r.gen_range(2..=20));
        return StepCase { knots, a0, b0, y0, eps };
    }
}

/// Re-derives the six step conclusions from raw knots.
pub fn step_check(c: &StepCase, y1: &Rat, a1: &Rat, b1: &Rat) -> [bool; 6] {
    let k = &c.knots;
    let ev = |x: &Rat| eval_knots(k, x);
    let nested = &c.a0 < a1 && a1 < b1 && b1 < &c.b0;
    let width = b1 - a1 < (&c.b0 - &c.a0) / int(2);
    let rise = ev(&c.a0).max(ev(&c.b0)).max(c.y0.clone()) < *y1;
    let cap = ev(a1).max(ev(b1)) <= *y1;
    let h0 = superlevel_oracle(k, &c.y0, a1, b1);
    let dense = a1 < b1 && meas(&h0, a1, b1) / (b1 - a1) > rat(1, 2);
    let h1 = superlevel_oracle(k, y1, &c.a0, &c.b0);
    let straddle = [a1, b1].into_iter().filter_map(|p| straddle_oracle(&h1, &c.a0, &c.b0, p)).all(|s| s <= c.eps);
    [nested, width, rise, cap, dense, straddle]
}
