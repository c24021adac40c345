//! Minimum guesswork of quantum ensembles.
//!
//! Bob receives a message `m` encoded in the state `rho_m` with prior `p(m)`
//! and guesses messages one at a time until he is right. Writing
//! `M(m) = p(m) rho_m`, the smallest achievable expected number of guesses is
//! `(|M| + 1)/2 - ||E_M(n*)||_1 / 2`, where
//! `E_M(n) = sum_t (2t - |M| - 1) M(n(t))` is the score operator of the
//! guessing order `n` and `n*` is any order whose `|E_M(n*)|` dominates every
//! `E_M(n)`. The optimal measurement then has just two outcomes, `n*` and its
//! reversal.
//!
//! ```
//! use guesswork::{solve, Ensemble, Method, SolveConfig, Status};
//!
//! let trine = Ensemble::polygon(3).unwrap();
//! let s = solve(&trine, Method::Auto, &SolveConfig::default()).unwrap();
//! assert_eq!(s.status, Status::Certified);
//! assert!((s.value - (2.0 - 3f64.sqrt() / 3.0)).abs() < 1e-12);
//! ```

pub mod closed_form;
pub mod ensemble;
mod enumerate;
pub mod error;
pub mod io;
pub mod operator;
pub mod score;
pub mod solver;

pub use closed_form::{
    polygon_optimal_ordering, polygon_score_matrix, polygon_trace_norm, polygon_value, polyhedron_reference,
};
pub use ensemble::{BlochVector, Ensemble, Measurement, Ordering, Polyhedron};
pub use enumerate::TIE_TOL;
pub use error::{Error, Result};
pub use operator::{ComplexMatrix, EigenCluster, HermitianOperator, SpectralSplit, Spectrum};
pub use score::{
    certified_value, check_condition, dual_lower_bound, evaluate_measurement, guesswork, helstrom_measurement,
    is_decreasing, marginal, score_operator,
};
pub use solver::{
    brute_force, direction_sweep, solve, symmetric_search, GuessworkSolution, Method, SearchResult, SolveConfig,
    Status,
};
