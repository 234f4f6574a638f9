//! Instance-size caps shared by every module.

/// Largest ground set accepted by the simulation drivers.
pub const MAX_GROUND_SIZE: usize = 1024;
/// Largest ground set for brute-force optimum and independent-set enumeration.
pub const MAX_BRUTE_FORCE_N: usize = 20;
/// Largest edge count for brute-force enumeration of matchings.
pub const MAX_MATCHING_EDGES: usize = 18;
/// Largest ground set for exact coupling enumeration (n! orders).
pub const MAX_COUPLING_N: usize = 6;
/// Largest ground set for the exhaustive submodularity validator.
pub const MAX_VALIDATOR_N: usize = 12;
/// Largest `m + n` accepted by the closed-form index probability.
pub const MAX_GP_CLOSED: usize = 128;
/// Largest `m + n` accepted by the enumerated index probability.
pub const MAX_GP_ENUMERATED: usize = 16;
/// Above this `m + n` binomials are evaluated in log space.
pub const GP_EXACT_BINOMIAL_LIMIT: usize = 60;
/// Absolute tolerance for value comparisons in validators.
pub const VALUE_TOLERANCE: f64 = 1e-9;
/// Path-probability threshold below which exact process enumeration stops.
pub const ENUMERATION_CUTOFF: f64 = 1e-12;
