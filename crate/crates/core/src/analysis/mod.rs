//! Exact optima, coupling verification, guarantee calculators and Monte
//! Carlo estimators.

mod bounds;
mod coupling;
mod empirical;
mod opt;

pub use bounds::{
    intersection_bound, laminar_bound, linear_laminar_bound, transversal_bound, BoundReport,
};
pub use coupling::{verify_coupling, verify_coupling_with_tie_break, CouplingReport};
pub use empirical::{
    empirical_ratio, instance_opt, summarize, survival_probability, wilson_interval, RatioEstimate,
    SurvivalEstimate,
};
pub use opt::{brute_force_opt, brute_force_opt_matching, Optimum};
