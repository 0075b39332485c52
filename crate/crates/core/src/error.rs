use thiserror::Error;

use crate::rat::Rat;

/// Errors raised by the exact engine.
///
/// Each variant maps onto one CLI exit code class: precondition failures
/// (domain, parameter, degenerate inputs), resource caps, and parse errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {x} outside domain [{lo}, {hi}]")]
    Domain { x: Box<Rat>, lo: Box<Rat>, hi: Box<Rat> },
    #[error("degenerate interval [{0}, {0}] has zero length")]
    Degenerate(Rat),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("flat segment on [{lo}, {hi}] at height {y}")]
    FlatSegment { lo: Box<Rat>, hi: Box<Rat>, y: Box<Rat> },
    #[error("resource cap exceeded: projected {projected} exceeds cap {cap}")]
    Resource { projected: u128, cap: u128 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl Error {
    pub fn domain(x: &Rat, lo: &Rat, hi: &Rat) -> Self {
        Error::Domain { x: Box::new(x.clone()), lo: Box::new(lo.clone()), hi: Box::new(hi.clone()) }
    }

    pub fn flat(lo: &Rat, hi: &Rat, y: &Rat) -> Self {
        Error::FlatSegment { lo: Box::new(lo.clone()), hi: Box::new(hi.clone()), y: Box::new(y.clone()) }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
