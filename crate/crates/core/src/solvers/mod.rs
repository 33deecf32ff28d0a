//! Exact oracles: brute-force enumeration, a rational simplex, and the
//! randomized extended-formulation verifier.

mod enumerate;
mod simplex;
mod verify;

pub use enumerate::{
    brute_force_solve, enumerate_pbs, pbs_coordinates, pbs_linear_max, BruteForceSolution, Objective,
    ENUMERATION_LIMIT,
};
pub use simplex::{lp_max, LpSolution, Simplex};
pub use verify::{
    binary_projection, ef_objective, integral_optimum, origin_start, solve_via_ef, verify_ef, EfSolution, TrialFailure, VerificationReport,
    OBJECTIVE_RANGE,
};
