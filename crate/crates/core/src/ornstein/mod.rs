//! Iterated insertion of a seed into its own decreasing pieces.

pub mod bprime;
pub mod construct;
pub mod converge;
pub mod diverge;
pub mod seed;

pub use bprime::{bprime_check, enclose_h_infinity, BPrimeCertificate, LevelStatus, SeedPath};
pub use construct::{insert_seed, lazy_eval, LazyConstruction};
pub use converge::{chord_deviation, convergence_report, tail_bound, ConvergenceReport};
pub use diverge::{divergence_report, nested_intervals_g, DivergenceReport};
pub use seed::{SeedFunction, SeedKind};
