//! Search over orderings and assembly of a [`GuessworkSolution`].
//!
//! For qubit ensembles with uniform priors the trace-norm maximizer always
//! satisfies the certificate, so the answer is exact once the maximizer is
//! found. For everything else the maximizer is a candidate that is then
//! checked against every ordering.

mod exhaustive;
mod sweep;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use exhaustive::{brute_force, brute_force_with, symmetric_search, symmetric_search_with};
pub use sweep::{default_starts, direction_sweep, fibonacci_sphere, spot_certify};

use crate::ensemble::{Ensemble, Measurement, Ordering};
use crate::enumerate::TIE_TOL;
use crate::error::Result;
use crate::score::{
    check_condition, dual_lower_bound, evaluate_measurement, helstrom_measurement, is_decreasing, marginal,
    score_operator, value_from_trace_norm, DEFAULT_CAP, DEFAULT_CONDITION_TOL,
};

/// Tolerance for the decreasing-marginal flag.
pub const DECREASING_TOL: f64 = 1e-10;
/// Largest `|M|` for which `auto` confirms a sweep by pairing enumeration
/// without the long-running flag (`16!! / 2` is about 5 million).
pub const SYMMETRIC_AUTO_LIMIT: usize = 16;

/// Outcome of one search strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub ordering: Ordering,
    pub trace_norm: f64,
    pub evaluated: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Auto,
    Brute,
    Symmetric,
    Sweep,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Brute => "brute",
            Method::Symmetric => "symmetric",
            Method::Sweep => "sweep",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "brute" => Ok(Method::Brute),
            "symmetric" => Ok(Method::Symmetric),
            "sweep" => Ok(Method::Sweep),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// The value is the exact minimum guesswork.
    Certified,
    /// Only `[lower_bound, upper_bound]` is known.
    BoundsOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Certified => "Certified",
            Status::BoundsOnly => "BoundsOnly",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    /// Largest `|M|` for full `|M|!` enumeration.
    pub cap: usize,
    /// Sweep grid size; `None` uses [`default_starts`].
    pub starts: Option<usize>,
    /// PSD tolerance of the certificate check.
    pub tolerance: f64,
    /// Allow pairing enumeration beyond [`SYMMETRIC_AUTO_LIMIT`].
    pub long_running: bool,
    /// Random orderings compared against an unconfirmed sweep.
    pub spot_samples: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            starts: None,
            tolerance: DEFAULT_CONDITION_TOL,
            long_running: false,
            spot_samples: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchStats {
    pub method: String,
    pub orderings_evaluated: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GuessworkSolution {
    pub value: f64,
    pub status: Status,
    pub ordering: Ordering,
    pub measurement: Measurement,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// `||E_M(n*)||_1` at the returned ordering.
    pub trace_norm: f64,
    /// Rank marginal of the returned measurement.
    pub marginal: Vec<f64>,
    pub decreasing: bool,
    pub stats: SearchStats,
}

/// Computes the minimum guesswork of `ensemble`.
///
/// `Auto` runs the direction sweep on uniform qubit ensembles, confirmed by
/// exhaustive enumeration when `|M| <= cap` or by pairing enumeration for
/// centrally symmetric ensembles; any other ensemble is enumerated (up to
/// `cap`) and then certified or bounded.
pub fn solve(ensemble: &Ensemble, method: Method, config: &SolveConfig) -> Result<GuessworkSolution> {
    let started = Instant::now();
    let n = ensemble.len();
    let qubit_uniform = ensemble.uniform_bloch_vectors().is_some();
    let starts = config.starts.unwrap_or_else(|| default_starts(n));

    let (found, label) = match method {
        Method::Brute => (brute_force(ensemble, config.cap)?, "brute".to_string()),
        Method::Symmetric => (symmetric_search(ensemble)?, "symmetric".to_string()),
        Method::Sweep => {
            let s = direction_sweep(ensemble, starts)?;
            (spot_certify(ensemble, s, config.spot_samples)?.0, "sweep".to_string())
        }
        Method::Auto if qubit_uniform => {
            let s = direction_sweep(ensemble, starts)?;
            let confirmation = if n <= config.cap {
                Some((brute_force(ensemble, config.cap)?, "sweep+brute"))
            } else if ensemble.is_centrally_symmetric() && (n <= SYMMETRIC_AUTO_LIMIT || config.long_running) {
                Some((symmetric_search(ensemble)?, "sweep+symmetric"))
            } else {
                None
            };
            match confirmation {
                Some((exact, label)) => {
                    let evaluated = exact.evaluated + s.evaluated;
                    let pick = if s.trace_norm > exact.trace_norm + TIE_TOL { s } else { exact };
                    (
                        SearchResult {
                            evaluated,
                            ..pick
                        },
                        label.to_string(),
                    )
                }
                None => (spot_certify(ensemble, s, config.spot_samples)?.0, "sweep".to_string()),
            }
        }
        Method::Auto => (brute_force(ensemble, config.cap)?, "brute".to_string()),
    };

    let ordering = found.ordering;
    let trace_norm = score_operator(ensemble, &ordering)?.trace_norm();
    let measurement = helstrom_measurement(ensemble, &ordering)?;
    let q = marginal(ensemble, &measurement)?;
    let decreasing = is_decreasing(&q, DECREASING_TOL);

    let certified = qubit_uniform || check_condition(ensemble, &ordering, config.tolerance, config.cap)?;
    let (value, status, lower_bound, upper_bound) = if certified {
        let v = value_from_trace_norm(n, trace_norm);
        (v, Status::Certified, v, v)
    } else {
        let upper = evaluate_measurement(ensemble, &measurement)?;
        let lower = dual_lower_bound(ensemble, config.cap)?.min(upper);
        (upper, Status::BoundsOnly, lower, upper)
    };

    Ok(GuessworkSolution {
        value,
        status,
        ordering,
        measurement,
        lower_bound,
        upper_bound,
        trace_norm,
        marginal: q,
        decreasing,
        stats: SearchStats {
            method: label,
            orderings_evaluated: found.evaluated,
            elapsed: started.elapsed(),
        },
    })
}
