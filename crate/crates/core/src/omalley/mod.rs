//! Components of `G_ε`, the nested-component step and the approximate
//! maximum search built from it.

pub mod geps;
pub mod search;
pub mod step;

pub use geps::{g_epsilon, g_epsilon_measure_bound_check, max_straddling_density, ComponentList};
pub use search::{approx_max_search, monotonicity_witness, MaxSearchCertificate, MaxSearchOutcome, Monotonicity};
pub use step::{omalley_step, LemmaStepResult, StepWitness};
