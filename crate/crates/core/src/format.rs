//! Line-oriented exact text formats shared by every subcommand.
//!
//! ```text
//! PL v1 <knot-count>          IS v1 <part-count>
//! <x> <y>                     <lo> <hi>
//! ```
//!
//! Rationals are written `num/den` in lowest terms, denominator always
//! present. Parsing accepts any literal of the form `-?[0-9]+(/[1-9][0-9]*)?`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};
use crate::pl::{PLFunction, Point};
use crate::rat::{fmt_exact, parse_rat, Rat};

pub fn write_pl(f: &PLFunction) -> String {
    let mut out = format!("PL v1 {}\n", f.knots().len());
    for k in f.knots() {
        let _ = writeln!(out, "{} {}", fmt_exact(&k.x), fmt_exact(&k.y));
    }
    out
}

pub fn write_is(s: &IntervalSet) -> String {
    let mut out = format!("IS v1 {}\n", s.len());
    for p in s.parts() {
        let _ = writeln!(out, "{} {}", fmt_exact(p.lo()), fmt_exact(p.hi()));
    }
    out
}

/// A cursor over non-empty lines, tracking 1-based line numbers for errors.
pub(crate) struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), last: 0 }
    }

    pub(crate) fn line(&self) -> usize {
        self.last
    }

    pub(crate) fn next_line(&mut self) -> Result<&'a str> {
        for (n, l) in self.inner.by_ref() {
            self.last = n + 1;
            let t = l.trim();
            if !t.is_empty() {
                return Ok(t);
            }
        }
        Err(Error::parse(self.last + 1, "unexpected end of input"))
    }

    pub(crate) fn peek_is_end(&self) -> bool {
        self.inner.clone().all(|(_, l)| l.trim().is_empty())
    }

    pub(crate) fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.last, msg)
    }

    /// Reads a header `<tag> v1 <count>`.
    pub(crate) fn header(&mut self, tag: &str) -> Result<usize> {
        let line = self.next_line()?;
        let mut it = line.split_whitespace();
        if it.next() != Some(tag) || it.next() != Some("v1") {
            return Err(self.err(format!("expected `{tag} v1 <count>` header")));
        }
        let count = it.next().and_then(|c| c.parse().ok()).ok_or_else(|| self.err("missing count"))?;
        if it.next().is_some() {
            return Err(self.err("trailing tokens in header"));
        }
        Ok(count)
    }

    /// Reads a line of exactly `n` rationals.
    pub(crate) fn rats(&mut self, n: usize) -> Result<Vec<Rat>> {
        let line = self.next_line()?;
        let vals: Vec<&str> = line.split_whitespace().collect();
        if vals.len() != n {
            return Err(self.err(format!("expected {n} rationals, found {}", vals.len())));
        }
        vals.into_iter().map(|v| parse_rat(v).map_err(|_| self.err(format!("bad rational `{v}`")))).collect()
    }

    /// Reads a line `<tag> <rest...>` and returns the rest tokens.
    pub(crate) fn tagged(&mut self, tag: &str) -> Result<Vec<&'a str>> {
        let line = self.next_line()?;
        let mut it = line.split_whitespace();
        if it.next() != Some(tag) {
            return Err(self.err(format!("expected `{tag}` line")));
        }
        Ok(it.collect())
    }
}

pub(crate) fn read_pl_from(lines: &mut Lines<'_>) -> Result<PLFunction> {
    let n = lines.header("PL")?;
    let mut knots = Vec::with_capacity(n);
    for _ in 0..n {
        let v = lines.rats(2)?;
        let mut it = v.into_iter();
        knots.push(Point::new(it.next().expect("x"), it.next().expect("y")));
    }
    let line = lines.line();
    PLFunction::new(knots).map_err(|e| Error::parse(line, e.to_string()))
}

pub fn read_pl(text: &str) -> Result<PLFunction> {
    let mut lines = Lines::new(text);
    let f = read_pl_from(&mut lines)?;
    if !lines.peek_is_end() {
        return Err(Error::parse(lines.line() + 1, "trailing content after PL block"));
    }
    Ok(f)
}

pub fn read_is(text: &str) -> Result<IntervalSet> {
    let mut lines = Lines::new(text);
    let n = lines.header("IS")?;
    let mut parts = Vec::with_capacity(n);
    for _ in 0..n {
        let v = lines.rats(2)?;
        let i = Interval::new(v[0].clone(), v[1].clone()).map_err(|e| lines.err(e.to_string()))?;
        parts.push(i);
    }
    if !lines.peek_is_end() {
        return Err(Error::parse(lines.line() + 1, "trailing content after IS block"));
    }
    Ok(IntervalSet::from_parts(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ornstein::seed::SeedFunction;
    use crate::rat::rat;

    #[test]
    fn pl_text_is_bit_exact() {
        let g = SeedFunction::ornstein_g().function().clone();
        let text = write_pl(&g);
        let expected = "PL v1 8\n0/1 1/1\n1/7 4/3\n2/7 1/3\n3/7 4/3\n4/7 -1/3\n5/7 2/3\n6/7 -1/3\n1/1 0/1\n";
        assert_eq!(text, expected);
        assert_eq!(read_pl(&text).unwrap(), g);
    }

    #[test]
    fn is_text_round_trip() {
        let s = IntervalSet::from_parts(vec![
            Interval::new(rat(0, 1), rat(4, 21)).unwrap(),
            Interval::new(rat(8, 21), rat(16, 35)).unwrap(),
        ]);
        let text = write_is(&s);
        assert_eq!(text, "IS v1 2\n0/1 4/21\n8/21 16/35\n");
        assert_eq!(read_is(&text).unwrap(), s);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = read_pl("PL v1 2\n0 1\n1 x\n").unwrap_err();
        assert_eq!(err, Error::parse(3, "bad rational `x`"));
        assert!(read_pl("PL v2 2\n0 1\n1 1\n").is_err());
        assert!(read_pl("PL v1 2\n1 1\n0 1\n").is_err());
        assert!(read_pl("PL v1 2\n0 1\n1 1\nextra\n").is_err());
        assert!(read_is("IS v1 1\n1 0\n").is_err());
    }
}
