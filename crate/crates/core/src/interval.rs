//! Closed rational intervals and finite disjoint unions of them.
//!
//! Openness is not tracked: every set here differs from its closure by
//! finitely many points, which no measure or density can see.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if lo > hi {
            return Err(Error::param(format!("interval with lo {lo} > hi {hi}")));
        }
        Ok(Interval { lo, hi })
    }

    /// Like [`Interval::new`] but swaps reversed endpoints.
    pub fn spanning(a: Rat, b: Rat) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(x: Rat) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn unit() -> Self {
        Interval { lo: rat::zero(), hi: rat::one() }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn length(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        rat::midpoint(&self.lo, &self.hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `other` sits inside the open interior of `self`.
    pub fn contains_strictly(&self, other: &Interval) -> bool {
        self.lo < other.lo && other.hi < self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = rat::max(&self.lo, &other.lo);
        let hi = rat::min(&self.hi, &other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Length of the overlap; zero when disjoint.
    pub fn overlap(&self, other: &Interval) -> Rat {
        self.intersect(other).map(|i| i.length()).unwrap_or_else(rat::zero)
    }

    pub fn nonzero_length(&self) -> Result<Rat> {
        let len = self.length();
        if len.is_zero() {
            return Err(Error::Degenerate(self.lo.clone()));
        }
        Ok(len)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Sorted, pairwise disjoint intervals with strictly positive gaps.
///
/// Zero-length parts are dropped on construction since they carry no
/// measure; touching or overlapping parts are merged.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn from_interval(i: Interval) -> Self {
        Self::from_parts(vec![i])
    }

    /// Normalizes an arbitrary list of intervals.
    pub fn from_parts(mut parts: Vec<Interval>) -> Self {
        parts.retain(|p| !p.is_degenerate());
        parts.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            match out.last_mut() {
                Some(last) if p.lo <= last.hi => {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                }
                _ => out.push(p),
            }
        }
        IntervalSet { parts: out }
    }

    /// Builds from parts that are already sorted and separated; used by
    /// sweeps that emit in order. Adjacent touching parts are still merged.
    pub(crate) fn from_sorted(parts: Vec<Interval>) -> Self {
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts.into_iter().filter(|p| !p.is_degenerate()) {
            match out.last_mut() {
                Some(last) if p.lo <= last.hi => {
                    debug_assert!(p.lo == last.hi, "unsorted input to from_sorted");
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                }
                _ => out.push(p),
            }
        }
        IntervalSet { parts: out }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Lebesgue measure: the sum of part lengths.
    pub fn measure(&self) -> Rat {
        self.parts.iter().map(Interval::length).sum()
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let idx = self.parts.partition_point(|p| &p.hi < x);
        self.parts.get(idx).is_some_and(|p| p.contains(x))
    }

    pub fn intersect_interval(&self, i: &Interval) -> IntervalSet {
        let parts = self.parts.iter().filter_map(|p| p.intersect(i)).collect();
        IntervalSet::from_sorted(parts)
    }

    /// `measure(self ∩ i)` without allocating the intersection.
    pub fn measure_in(&self, i: &Interval) -> Rat {
        let start = self.parts.partition_point(|p| p.hi <= i.lo);
        let mut total = rat::zero();
        for p in &self.parts[start..] {
            if p.lo >= i.hi {
                break;
            }
            total += p.overlap(i);
        }
        total
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (&self.parts[i], &other.parts[j]);
            if let Some(x) = a.intersect(b) {
                out.push(x);
            }
            if a.hi < b.hi {
                i += 1
            } else {
                j += 1
            }
        }
        IntervalSet::from_sorted(out)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        IntervalSet::from_parts(parts)
    }

    /// Complement relative to `within`.
    pub fn complement_in(&self, within: &Interval) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = within.lo.clone();
        for p in self.parts.iter().filter_map(|p| p.intersect(within)) {
            if p.lo > cursor {
                out.push(Interval { lo: cursor.clone(), hi: p.lo.clone() });
            }
            cursor = rat::max(&cursor, &p.hi);
        }
        if cursor < within.hi {
            out.push(Interval { lo: cursor, hi: within.hi.clone() });
        }
        IntervalSet::from_sorted(out)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        let Some(hull) = self.hull() else { return IntervalSet::empty() };
        self.intersect(&other.complement_in(&hull))
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn hull(&self) -> Option<Interval> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval { lo: first.lo.clone(), hi: last.hi.clone() })
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let items: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap()
    }

    #[test]
    fn merges_touching_and_overlapping() {
        let s = IntervalSet::from_parts(vec![iv((1, 2), (1, 1)), iv((0, 1), (1, 2)), iv((2, 1), (3, 1))]);
        assert_eq!(s.parts(), &[iv((0, 1), (1, 1)), iv((2, 1), (3, 1))]);
    }

    #[test]
    fn measure_examples() {
        assert_eq!(IntervalSet::empty().measure(), int(0));
        let s = IntervalSet::from_parts(vec![iv((0, 1), (1, 3)), iv((1, 2), (1, 1))]);
        assert_eq!(s.measure(), rat(5, 6));
    }

    #[test]
    fn complement_and_difference() {
        let s = IntervalSet::from_parts(vec![iv((1, 4), (1, 2))]);
        let c = s.complement_in(&Interval::unit());
        assert_eq!(c.measure(), rat(3, 4));
        assert_eq!(c.parts().len(), 2);
        let u = IntervalSet::from_interval(Interval::unit());
        assert_eq!(u.difference(&s), c);
        assert!(s.is_subset_of(&u));
        assert!(!u.is_subset_of(&s));
    }

    #[test]
    fn measure_in_matches_intersection() {
        let s = IntervalSet::from_parts(vec![iv((0, 1), (1, 4)), iv((1, 2), (3, 4)), iv((7, 8), (1, 1))]);
        let i = iv((1, 8), (15, 16));
        assert_eq!(s.measure_in(&i), s.intersect_interval(&i).measure());
        assert_eq!(s.measure_in(&i), rat(1, 8) + rat(1, 4) + rat(1, 16));
    }

    #[test]
    fn rejects_reversed() {
        assert!(Interval::new(int(1), int(0)).is_err());
    }
}
