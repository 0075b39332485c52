//! Exact rational engine for piecewise-linear real analysis: density of
//! level sets, the `G_ε` component machinery, approximate-maximum search,
//! self-affine insertion constructions and a Banach–Mazur game simulator.

pub mod cli;
pub mod density;
pub mod error;
pub mod format;
pub mod game;
pub mod interval;
pub mod omalley;
pub mod ornstein;
pub mod pl;
pub mod rat;

pub use error::{Error, Result};
pub use interval::{Interval, IntervalSet};
pub use pl::{AffinePair, PLFunction, Point, Trend};
pub use rat::Rat;
