//! Ensemble files and machine-readable reports.
//!
//! An ensemble file is one JSON document:
//!
//! ```json
//! {
//!   "dim": 2,
//!   "states": [
//!     {"label": "plus",  "weight": 0.5, "bloch": [0, 0, 1]},
//!     {"label": "minus", "matrix": {"re": [[0, 0], [0, 0.5]], "im": [[0, 0], [0, 0]]}}
//!   ]
//! }
//! ```
//!
//! `bloch` records mean `weight * (I + r.sigma) / 2` and are only allowed
//! for `dim = 2`; `matrix` records carry the operator with the prior folded in.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ensemble::{BlochVector, Ensemble};
use crate::error::{Error, Result};
use crate::operator::{ComplexMatrix, HermitianOperator};
use crate::solver::GuessworkSolution;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleFile {
    pub dim: usize,
    pub states: Vec<StateRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateRecord {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRecord {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl EnsembleFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ensemble file serializes")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    /// Validates every record and builds the ensemble.
    pub fn to_ensemble(&self) -> Result<Ensemble> {
        let entries = self
            .states
            .iter()
            .map(|s| Ok((s.label.clone(), self.record_operator(s)?)))
            .collect::<Result<Vec<_>>>()?;
        Ensemble::new(self.dim, entries)
    }

    fn record_operator(&self, s: &StateRecord) -> Result<HermitianOperator> {
        let bad = |msg: &str| Error::Parse(format!("state {:?}: {msg}", s.label));
        match (&s.bloch, &s.matrix) {
            (Some(r), None) => {
                if self.dim != 2 {
                    return Err(bad("bloch form requires dim = 2"));
                }
                let weight = s.weight.ok_or_else(|| bad("bloch form requires a weight"))?;
                let v = BlochVector::new(r[0], r[1], r[2])?;
                Ok(HermitianOperator::from_bloch(weight, v.to_array()))
            }
            (None, Some(m)) => {
                if s.weight.is_some() {
                    return Err(bad("weight is only allowed with the bloch form"));
                }
                let matrix = ComplexMatrix::from_parts(&m.re, &m.im)?;
                if matrix.dim() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: matrix.dim(),
                    });
                }
                HermitianOperator::new(matrix)
            }
            _ => Err(bad("exactly one of bloch or matrix is required")),
        }
    }

    /// Matrix-form file describing `ensemble` exactly.
    pub fn from_ensemble(ensemble: &Ensemble) -> Self {
        let d = ensemble.dim();
        let states = ensemble
            .labels()
            .iter()
            .zip(ensemble.operators())
            .map(|(label, op)| StateRecord {
                label: label.clone(),
                weight: None,
                bloch: None,
                matrix: Some(MatrixRecord {
                    re: (0..d).map(|i| (0..d).map(|j| op.entry(i, j).re).collect()).collect(),
                    im: (0..d).map(|i| (0..d).map(|j| op.entry(i, j).im).collect()).collect(),
                }),
            })
            .collect();
        Self { dim: d, states }
    }
}

pub fn load_ensemble(path: &Path) -> Result<Ensemble> {
    EnsembleFile::read(path)?.to_ensemble()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub g_min: f64,
    pub status: String,
    pub ordering: Vec<String>,
    pub trace_norm: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub q_marginal: Vec<f64>,
    pub decreasing: bool,
    pub method: String,
    pub orderings_evaluated: u64,
    pub elapsed_ms: u64,
}

impl SolutionReport {
    pub fn new(ensemble: &Ensemble, solution: &GuessworkSolution) -> Self {
        Self {
            g_min: solution.value,
            status: solution.status.to_string(),
            ordering: ensemble.ordering_labels(&solution.ordering),
            trace_norm: solution.trace_norm,
            lower_bound: solution.lower_bound,
            upper_bound: solution.upper_bound,
            q_marginal: solution.marginal.clone(),
            decreasing: solution.decreasing,
            method: solution.stats.method.clone(),
            orderings_evaluated: solution.stats.orderings_evaluated,
            elapsed_ms: solution.stats.elapsed.as_millis() as u64,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k:<20}{v}\n"));
        line("g_min", sig12(self.g_min));
        line("status", self.status.clone());
        line("ordering", self.ordering.join(","));
        line("trace_norm", sig12(self.trace_norm));
        line("lower_bound", sig12(self.lower_bound));
        line("upper_bound", sig12(self.upper_bound));
        line("q_marginal", join_sig12(&self.q_marginal));
        line("decreasing", self.decreasing.to_string());
        line("method", self.method.clone());
        line("orderings_evaluated", self.orderings_evaluated.to_string());
        line("elapsed_ms", self.elapsed_ms.to_string());
        out
    }
}

/// Solver report for a regular polygon with the closed-form comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonReport {
    pub count: usize,
    #[serde(flatten)]
    pub solution: SolutionReport,
    pub closed_form: f64,
    pub difference: f64,
}

impl PolygonReport {
    pub fn to_text(&self) -> String {
        format!(
            "{}{:<20}{}\n{:<20}{}\n",
            self.solution.to_text(),
            "closed_form",
            sig12(self.closed_form),
            "difference",
            sig12(self.difference)
        )
    }
}

/// One row of the regular polyhedron table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyhedronRow {
    pub name: String,
    pub vertices: usize,
    pub reference: f64,
    pub difference: f64,
    pub matches: bool,
    #[serde(flatten)]
    pub solution: SolutionReport,
}

impl PolyhedronRow {
    /// Full report followed by the reference comparison.
    pub fn to_text_block(&self) -> String {
        format!(
            "{:<20}{}\n{}{:<20}{}\n{:<20}{}\n",
            "name",
            self.name,
            self.solution.to_text(),
            "reference",
            sig12(self.reference),
            "difference",
            sig12(self.difference)
        )
    }

    /// One table line.
    pub fn to_text(&self) -> String {
        format!(
            "{:<14}{:>4}  g_min {}  reference {}  diff {}  {}  [{} {}]",
            self.name,
            self.vertices,
            sig12(self.solution.g_min),
            sig12(self.reference),
            sig12(self.difference),
            if self.matches { "ok" } else { "MISMATCH" },
            self.solution.status,
            self.solution.method,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ordering: Vec<String>,
    pub condition_holds: bool,
    /// Exact minimum guesswork when the condition holds.
    pub certified_value: Option<f64>,
    /// Guesswork of the two-outcome measurement built from the ordering.
    pub upper_bound: f64,
    pub trace_norm: f64,
    pub q_marginal: Vec<f64>,
    pub decreasing: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| out.push_str(&format!("{k:<20}{v}\n"));
        line("ordering", self.ordering.join(","));
        line("condition", if self.condition_holds { "holds" } else { "fails" }.into());
        line(
            "certified_value",
            self.certified_value.map_or_else(|| "-".into(), sig12),
        );
        line("upper_bound", sig12(self.upper_bound));
        line("trace_norm", sig12(self.trace_norm));
        line("q_marginal", join_sig12(&self.q_marginal));
        line("decreasing", self.decreasing.to_string());
        out
    }
}

/// `x` with 12 significant digits, trailing zeros trimmed.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..12).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else {
        let p = point as usize;
        format!("{}.{}", &digits[..p], &digits[p..])
    };
    format!("{}{}", if negative { "-" } else { "" }, trim_zeros(&body))
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn join_sig12(values: &[f64]) -> String {
    values.iter().map(|&v| sig12(v)).collect::<Vec<_>>().join(",")
}
