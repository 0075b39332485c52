//! Lebesgue density of interval sets and the difference-quotient sets of
//! piecewise-linear functions.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};
use crate::pl::PLFunction;
use crate::rat::Rat;

/// `λ(E ∩ I) / λ(I)`. Degenerate `I` is rejected.
pub fn density(e: &IntervalSet, i: &Interval) -> Result<Rat> {
    let len = i.nonzero_length()?;
    Ok(e.measure_in(i) / len)
}

/// Symmetric densities `Δ(E, (x - r, x + r))` for each radius in turn.
///
/// Radii must be positive and strictly decreasing. These finite-scale values
/// exhibit, but do not prove, the density of `E` at `x`.
pub fn density_sequence(e: &IntervalSet, x: &Rat, radii: &[Rat]) -> Result<Vec<Rat>> {
    for w in radii.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::param("radii must be strictly decreasing"));
        }
    }
    radii
        .iter()
        .map(|r| {
            if !r.is_positive() {
                return Err(Error::param(format!("radius {r} is not positive")));
            }
            density(e, &Interval::spanning(x - r, x + r))
        })
        .collect()
}

/// `{x ∈ I : (f(x) - f(x0)) / (x - x0) ≥ 0}` together with `x0` itself.
///
/// Uses the non-strict inequality; to the right of `x0` this is the closed
/// superlevel set of `f(x0)`, to the left the closed sublevel set.
pub fn diffquot_set(f: &PLFunction, x0: &Rat, i: &Interval) -> Result<IntervalSet> {
    if !i.contains(x0) {
        return Err(Error::domain(x0, i.lo(), i.hi()));
    }
    let y0 = f.eval(x0)?;
    let right = f.superlevel_closed(&y0, &Interval::spanning(x0.clone(), i.hi().clone()))?;
    let left = f.sublevel_closed(&y0, &Interval::spanning(i.lo().clone(), x0.clone()))?;
    Ok(left.union(&right))
}

/// `density(diffquot_set(f, x0, I), I)`.
pub fn diffquot_density(f: &PLFunction, x0: &Rat, i: &Interval) -> Result<Rat> {
    density(&diffquot_set(f, x0, i)?, i)
}

/// Density of `H_y = {f > y}` in `I`.
pub fn superlevel_density(f: &PLFunction, y: &Rat, i: &Interval) -> Result<Rat> {
    let len = i.nonzero_length()?;
    Ok(f.superlevel(y, i)?.measure() / len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ornstein::seed::SeedFunction;
    use crate::rat::{int, rat};

    type Frac = (i64, i64);

    fn set(parts: &[(Frac, Frac)]) -> IntervalSet {
        IntervalSet::from_parts(
            parts.iter().map(|(a, b)| Interval::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap()).collect(),
        )
    }

    #[test]
    fn density_examples() {
        let u = Interval::unit();
        assert_eq!(density(&set(&[((0, 1), (1, 2))]), &u).unwrap(), rat(1, 2));
        assert_eq!(density(&set(&[((0, 1), (1, 1))]), &u).unwrap(), int(1));
        assert!(matches!(density(&set(&[]), &Interval::point(int(0))), Err(Error::Degenerate(_))));
    }

    #[test]
    fn density_sequence_examples() {
        let e = set(&[((0, 1), (1, 1))]);
        let radii = [rat(1, 4), rat(1, 8)];
        assert_eq!(density_sequence(&e, &rat(1, 2), &radii).unwrap(), vec![int(1), int(1)]);
        assert_eq!(density_sequence(&e, &int(0), &radii).unwrap(), vec![rat(1, 2), rat(1, 2)]);
        let e = set(&[((3, 8), (5, 8))]);
        let radii = [rat(1, 4), rat(1, 8), rat(1, 16)];
        assert_eq!(density_sequence(&e, &rat(1, 2), &radii).unwrap(), vec![rat(1, 2), int(1), int(1)]);
        assert!(density_sequence(&e, &rat(1, 2), &[rat(1, 8), rat(1, 4)]).is_err());
        assert!(density_sequence(&e, &rat(1, 2), &[int(0)]).is_err());
    }

    #[test]
    fn diffquot_examples() {
        let u = Interval::unit();
        let id = PLFunction::identity_on(&u).unwrap();
        assert_eq!(diffquot_set(&id, &rat(1, 2), &u).unwrap(), set(&[((0, 1), (1, 1))]));
        let neg = id.negate();
        assert_eq!(diffquot_set(&neg, &rat(1, 2), &u).unwrap().measure(), int(0));

        let g = SeedFunction::ornstein_g().function().clone();
        let e = diffquot_set(&g, &int(0), &u).unwrap();
        let oracle = g.superlevel_closed(&int(1), &u).unwrap();
        assert_eq!(e, oracle);
        assert!(Interval::new(int(0), rat(1, 7)).map(|i| e.measure_in(&i) == rat(1, 7)).unwrap());
    }

    #[test]
    fn diffquot_rejects_outside_point() {
        let u = Interval::unit();
        let id = PLFunction::identity_on(&u).unwrap();
        assert!(diffquot_set(&id, &int(2), &u).is_err());
    }
}
