//! Ensembles, orderings and measurements.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;

/// Positivity tolerance for ensemble and measurement elements.
pub const PSD_TOL: f64 = 1e-10;
/// Tolerance on `sum_m Tr M(m) = 1` and on POVM completeness.
pub const NORMALIZATION_TOL: f64 = 1e-9;
/// Tolerance for matching antipodal partners.
pub const PAIRING_TOL: f64 = 1e-9;

/// A qubit Bloch vector with norm at most one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if norm.is_nan() || norm > 1.0 + 1e-10 {
            return Err(Error::InvalidBloch { norm });
        }
        Ok(Self { x, y, z })
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// A bijection from ranks `1..=|M|` to message indices.
///
/// Stored 0-based: `as_slice()[t - 1]` is the message guessed at rank `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordering(Vec<usize>);

impl Ordering {
    pub fn new(ranks_to_messages: Vec<usize>) -> Result<Self> {
        let n = ranks_to_messages.len();
        let mut seen = vec![false; n];
        for &m in &ranks_to_messages {
            if m >= n {
                return Err(Error::InvalidOrdering(format!("message index {m} out of range for {n} messages")));
            }
            if std::mem::replace(&mut seen[m], true) {
                return Err(Error::InvalidOrdering(format!("message index {m} appears twice")));
            }
        }
        Ok(Self(ranks_to_messages))
    }

    pub(crate) fn from_vec_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(Self::new(v.clone()).is_ok());
        Self(v)
    }

    pub fn identity(len: usize) -> Self {
        Self((0..len).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Message guessed at 1-based rank `t`.
    pub fn message_at(&self, rank: usize) -> Result<usize> {
        if rank == 0 || rank > self.len() {
            return Err(Error::RankOutOfRange {
                rank,
                size: self.len(),
            });
        }
        Ok(self.0[rank - 1])
    }

    /// The rank-reversed ordering, `rev^{-1} = |M| + 1 - n^{-1}`.
    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }
}

/// A finite message set with one positive operator per message. Priors are
/// folded into the operators, so the traces sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    dim: usize,
    labels: Vec<String>,
    operators: Vec<HermitianOperator>,
}

impl Ensemble {
    pub fn new(dim: usize, entries: Vec<(String, HermitianOperator)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let mut seen = HashSet::new();
        let mut total = 0.0;
        for (label, op) in &entries {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
            if op.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: op.dim(),
                });
            }
            let min_eigenvalue = op.min_eigenvalue();
            if min_eigenvalue < -PSD_TOL {
                return Err(Error::NotPositive {
                    label: label.clone(),
                    min_eigenvalue,
                });
            }
            total += op.trace();
        }
        if total.is_nan() || (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Normalization { total });
        }
        let (labels, operators) = entries.into_iter().unzip();
        Ok(Self {
            dim,
            labels,
            operators,
        })
    }

    /// Equal-weight qubit ensemble `M(m) = (I + r_m.sigma) / (2|M|)`,
    /// labelled `m0, m1, ...`.
    pub fn uniform_qubit(vectors: &[BlochVector]) -> Result<Self> {
        let weight = 1.0 / vectors.len() as f64;
        let entries = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let v = BlochVector::new(v.x, v.y, v.z)?;
                Ok((format!("m{i}"), HermitianOperator::from_bloch(weight, v.to_array())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(2, entries)
    }

    /// Regular `count`-gon in the x-z plane of the Bloch ball, vertex `m` at
    /// angle `2 pi m / count`.
    pub fn polygon(count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::PolygonTooSmall(count));
        }
        let vectors: Vec<BlochVector> = (0..count)
            .map(|m| {
                let theta = 2.0 * PI * m as f64 / count as f64;
                BlochVector {
                    x: theta.cos(),
                    y: 0.0,
                    z: theta.sin(),
                }
            })
            .collect();
        Self::uniform_qubit(&vectors)
    }

    pub fn polyhedron(shape: Polyhedron) -> Self {
        Self::uniform_qubit(&shape.vertices()).expect("unit vertices form a valid ensemble")
    }

    /// `count` copies of the density operator `state`, each with prior
    /// `1/count`.
    pub fn identical_states(state: &HermitianOperator, count: usize) -> Result<Self> {
        let op = state * (1.0 / count as f64);
        Self::new(
            state.dim(),
            (0..count).map(|i| (format!("m{i}"), op.clone())).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, message: usize) -> &str {
        &self.labels[message]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn operator(&self, message: usize) -> &HermitianOperator {
        &self.operators[message]
    }

    pub fn operators(&self) -> &[HermitianOperator] {
        &self.operators
    }

    /// Whether every message has trace `1/|M|`.
    pub fn has_uniform_traces(&self, tol: f64) -> bool {
        let target = 1.0 / self.len() as f64;
        self.operators.iter().all(|op| (op.trace() - target).abs() <= tol)
    }

    /// Bloch vectors of a qubit ensemble with uniform traces; `None` for any
    /// other ensemble.
    pub fn uniform_bloch_vectors(&self) -> Option<Vec<[f64; 3]>> {
        if self.dim != 2 || !self.has_uniform_traces(NORMALIZATION_TOL) {
            return None;
        }
        self.operators.iter().map(|op| op.bloch().map(|(_, r)| r)).collect()
    }

    /// Antipodal pairing `partner[m]` with `M(m) + M(partner[m]) = I / |M|`,
    /// if it is a perfect matching.
    pub fn central_pairing(&self) -> Option<Vec<usize>> {
        let n = self.len();
        if n % 2 == 1 {
            return None;
        }
        let target = &HermitianOperator::identity(self.dim) * (1.0 / n as f64);
        let mut partner = vec![usize::MAX; n];
        for m in 0..n {
            if partner[m] != usize::MAX {
                continue;
            }
            let complement = &target - &self.operators[m];
            let found = ((m + 1)..n).find(|&k| {
                partner[k] == usize::MAX && self.operators[k].max_abs_diff(&complement) <= PAIRING_TOL
            })?;
            partner[m] = found;
            partner[found] = m;
        }
        Some(partner)
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.central_pairing().is_some()
    }

    /// Ordering from a list of message labels, rank 1 first.
    pub fn ordering_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Ordering> {
        if labels.len() != self.len() {
            return Err(Error::InvalidOrdering(format!(
                "expected {} labels, got {}",
                self.len(),
                labels.len()
            )));
        }
        let indices = labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| Error::InvalidOrdering(format!("unknown label {:?}", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ordering::new(indices).map_err(|_| Error::InvalidOrdering("labels are not a permutation".into()))
    }

    pub fn ordering_labels(&self, ordering: &Ordering) -> Vec<String> {
        ordering.as_slice().iter().map(|&m| self.labels[m].clone()).collect()
    }

    pub(crate) fn check_ordering(&self, ordering: &Ordering) -> Result<()> {
        if ordering.len() != self.len() {
            return Err(Error::InvalidOrdering(format!(
                "ordering has {} ranks but ensemble has {} messages",
                ordering.len(),
                self.len()
            )));
        }
        Ok(())
    }
}

/// The five regular polyhedra, vertices on the unit Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polyhedron {
    Tetrahedron,
    Octahedron,
    Cube,
    Icosahedron,
    Dodecahedron,
}

impl Polyhedron {
    pub const ALL: [Polyhedron; 5] = [
        Polyhedron::Tetrahedron,
        Polyhedron::Octahedron,
        Polyhedron::Cube,
        Polyhedron::Icosahedron,
        Polyhedron::Dodecahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Polyhedron::Tetrahedron => "tetrahedron",
            Polyhedron::Octahedron => "octahedron",
            Polyhedron::Cube => "cube",
            Polyhedron::Icosahedron => "icosahedron",
            Polyhedron::Dodecahedron => "dodecahedron",
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            Polyhedron::Tetrahedron => 4,
            Polyhedron::Octahedron => 6,
            Polyhedron::Cube => 8,
            Polyhedron::Icosahedron => 12,
            Polyhedron::Dodecahedron => 20,
        }
    }

    pub fn from_vertex_count(count: usize) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.vertex_count() == count)
            .ok_or(Error::UnsupportedCount(count))
    }

    /// Unit-norm vertex coordinates.
    pub fn vertices(self) -> Vec<BlochVector> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let raw: Vec<[f64; 3]> = match self {
            Polyhedron::Tetrahedron => vec![
                [1.0, 1.0, 1.0],
                [1.0, -1.0, -1.0],
                [-1.0, 1.0, -1.0],
                [-1.0, -1.0, 1.0],
            ],
            Polyhedron::Octahedron => vec![
                [1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, -1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0],
            ],
            Polyhedron::Cube => signs3().collect(),
            Polyhedron::Icosahedron => {
                let mut v = Vec::with_capacity(12);
                for (s1, s2) in signs2() {
                    v.push([0.0, s1, s2 * phi]);
                    v.push([s1, s2 * phi, 0.0]);
                    v.push([s2 * phi, 0.0, s1]);
                }
                v
            }
            Polyhedron::Dodecahedron => {
                let inv = 1.0 / phi;
                let mut v: Vec<[f64; 3]> = signs3().collect();
                for (s1, s2) in signs2() {
                    v.push([0.0, s1 * inv, s2 * phi]);
                    v.push([s1 * inv, s2 * phi, 0.0]);
                    v.push([s2 * phi, 0.0, s1 * inv]);
                }
                v
            }
        };
        raw.into_iter()
            .map(|[x, y, z]| {
                let n = (x * x + y * y + z * z).sqrt();
                BlochVector {
                    x: x / n,
                    y: y / n,
                    z: z / n,
                }
            })
            .collect()
    }
}

fn signs2() -> impl Iterator<Item = (f64, f64)> {
    [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)].into_iter()
}

fn signs3() -> impl Iterator<Item = [f64; 3]> {
    (0..8).map(|k| {
        let s = |bit: usize| if k >> bit & 1 == 0 { 1.0 } else { -1.0 };
        [s(2), s(1), s(0)]
    })
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Polyhedron {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownPolyhedron(s.to_string()))
    }
}

/// A POVM whose outcomes are orderings, stored sparsely.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    dim: usize,
    elements: Vec<(Ordering, HermitianOperator)>,
}

impl Measurement {
    pub fn new(dim: usize, elements: Vec<(Ordering, HermitianOperator)>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidMeasurement("no outcomes".into()));
        };
        let len = first.0.len();
        let mut sum = HermitianOperator::zeros(dim);
        let mut keys = HashSet::new();
        for (ordering, element) in &elements {
            if ordering.len() != len {
                return Err(Error::InvalidMeasurement("outcome orderings differ in length".into()));
            }
            if !keys.insert(ordering) {
                return Err(Error::InvalidMeasurement(format!("duplicate outcome {:?}", ordering.as_slice())));
            }
            if element.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: element.dim(),
                });
            }
            let min = element.min_eigenvalue();
            if min < -PSD_TOL {
                return Err(Error::InvalidMeasurement(format!("element not positive (min eigenvalue {min:e})")));
            }
            sum.add_scaled(1.0, element);
        }
        let deviation = sum.max_abs_diff(&HermitianOperator::identity(dim));
        if deviation > NORMALIZATION_TOL {
            return Err(Error::InvalidMeasurement(format!(
                "elements do not sum to the identity (deviation {deviation:e})"
            )));
        }
        Ok(Self { dim, elements })
    }

    /// Single-outcome measurement `N(n) = I`.
    pub fn trivial(dim: usize, ordering: Ordering) -> Self {
        Self {
            dim,
            elements: vec![(ordering, HermitianOperator::identity(dim))],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[(Ordering, HermitianOperator)] {
        &self.elements
    }

    pub fn element(&self, ordering: &Ordering) -> Option<&HermitianOperator> {
        self.elements.iter().find(|(o, _)| o == ordering).map(|(_, e)| e)
    }

    /// `max |sum_n N(n) - I|`, entrywise.
    pub fn completeness_deviation(&self) -> f64 {
        let mut sum = HermitianOperator::zeros(self.dim);
        for (_, e) in &self.elements {
            sum.add_scaled(1.0, e);
        }
        sum.max_abs_diff(&HermitianOperator::identity(self.dim))
    }

    /// Smallest eigenvalue over all elements.
    pub fn min_eigenvalue(&self) -> f64 {
        self.elements
            .iter()
            .map(|(_, e)| e.min_eigenvalue())
            .fold(f64::INFINITY, f64::min)
    }
}
