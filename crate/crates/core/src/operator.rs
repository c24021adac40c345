//! Small-dimension complex Hermitian linear algebra.
//!
//! Everything here works on dense `d x d` matrices with `d` in the single
//! digits. Qubit operators (`d = 2`) take a closed-form path through the
//! trace/determinant of the matrix; larger dimensions go through a Hermitian
//! eigensolver.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Max entrywise deviation `|A - A^dag|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues closer than this share one spectral projector.
pub const CLUSTER_TOL: f64 = 1e-9;
/// Default kernel threshold for [`HermitianOperator::spectral_projectors`].
pub const ZERO_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    row,
                    cols: r.len(),
                });
            }
        }
        Ok(Self {
            dim,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    /// Builds a matrix from separate real and imaginary parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch {
                expected: re.len(),
                found: im.len(),
            });
        }
        let rows = re
            .iter()
            .zip(im)
            .map(|(r, i)| {
                if r.len() != i.len() {
                    return Err(Error::DimensionMismatch {
                        expected: r.len(),
                        found: i.len(),
                    });
                }
                Ok(r.iter().zip(i).map(|(&a, &b)| Complex64::new(a, b)).collect())
            })
            .collect::<Result<Vec<Vec<Complex64>>>>()?;
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Matrix product. Panics if the dimensions differ.
    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let d = self.dim;
        Self::from_fn(d, |i, j| (0..d).map(|k| self.get(i, k) * other.get(k, j)).sum())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    fn symmetrized(mut self) -> Self {
        let d = self.dim;
        for i in 0..d {
            let k = i * d + i;
            self.entries[k] = Complex64::new(self.entries[k].re, 0.0);
            for j in (i + 1)..d {
                let avg = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                self.entries[i * d + j] = avg;
                self.entries[j * d + i] = avg.conj();
            }
        }
        self
    }
}

/// A Hermitian matrix. Construction checks Hermiticity to [`HERMITIAN_TOL`]
/// and stores the exactly symmetrized part.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator(ComplexMatrix);

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation.is_nan() || deviation > HERMITIAN_TOL {
            return Err(Error::NonHermitian { deviation });
        }
        Ok(Self(matrix.symmetrized()))
    }

    /// Wraps a matrix already known to be Hermitian up to rounding.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self(matrix.symmetrized())
    }

    pub fn zeros(dim: usize) -> Self {
        Self(ComplexMatrix::zeros(dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn diag(values: &[f64]) -> Self {
        Self(ComplexMatrix::from_fn(values.len(), |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                ZERO
            }
        }))
    }

    /// Real symmetric matrix from rows. Errors if the rows are not square or
    /// not symmetric.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let zeros: Vec<Vec<f64>> = rows.iter().map(|r| vec![0.0; r.len()]).collect();
        Self::new(ComplexMatrix::from_parts(rows, &zeros)?)
    }

    /// Qubit operator `weight * (I + r.sigma) / 2`.
    pub fn from_bloch(weight: f64, r: [f64; 3]) -> Self {
        let [x, y, z] = r;
        let h = 0.5 * weight;
        Self(ComplexMatrix {
            dim: 2,
            entries: vec![
                Complex64::new(h * (1.0 + z), 0.0),
                Complex64::new(h * x, -h * y),
                Complex64::new(h * x, h * y),
                Complex64::new(h * (1.0 - z), 0.0),
            ],
        })
    }

    /// Inverse of [`from_bloch`](Self::from_bloch): returns `(trace, r)` with
    /// the operator equal to `trace * (I + r.sigma) / 2`. `None` unless
    /// `d = 2` and the trace is nonzero.
    pub fn bloch(&self) -> Option<(f64, [f64; 3])> {
        if self.dim() != 2 {
            return None;
        }
        let w = self.trace();
        if w == 0.0 {
            return None;
        }
        let b = self.entry(0, 1);
        let v = [
            2.0 * b.re,
            -2.0 * b.im,
            self.entry(0, 0).re - self.entry(1, 1).re,
        ];
        Some((w, v.map(|c| c / w)))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0.get(i, j)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `Tr[self * other]`, real for Hermitian arguments.
    pub fn trace_product(&self, other: &HermitianOperator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let d = self.dim();
        let mut acc = 0.0;
        for i in 0..d {
            for k in 0..d {
                acc += (self.entry(i, k) * other.entry(k, i)).re;
            }
        }
        acc
    }

    /// In-place `self += coeff * other`.
    pub fn add_scaled(&mut self, coeff: f64, other: &HermitianOperator) {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        for (a, b) in self.0.entries.iter_mut().zip(&other.0.entries) {
            *a += b * coeff;
        }
    }

    /// `self = src + coeff * item` without reallocating.
    pub(crate) fn assign_add_scaled(&mut self, src: &HermitianOperator, coeff: f64, item: &HermitianOperator) {
        for ((d, s), i) in self.0.entries.iter_mut().zip(&src.0.entries).zip(&item.0.entries) {
            *d = s + i * coeff;
        }
    }

    pub fn max_abs_diff(&self, other: &HermitianOperator) -> f64 {
        self.0.max_abs_diff(&other.0)
    }

    /// Max entry of `|[self, other]|`.
    pub fn commutator_norm(&self, other: &HermitianOperator) -> f64 {
        let ab = self.0.matmul(&other.0);
        let ba = other.0.matmul(&self.0);
        ab.max_abs_diff(&ba)
    }

    fn check_dim(&self, other: &HermitianOperator) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn eig(&self) -> Spectrum {
        if self.dim() == 2 {
            self.eig_qubit()
        } else {
            self.eig_general()
        }
    }

    fn eig_qubit(&self) -> Spectrum {
        let q = Qubit2::of(self);
        let (mean, radius) = (q.mean(), q.radius());
        let eigenvalues = vec![mean - radius, mean + radius];
        if 2.0 * radius <= CLUSTER_TOL {
            return Spectrum {
                eigenvalues,
                clusters: vec![EigenCluster {
                    value: mean,
                    multiplicity: 2,
                    projector: Self::identity(2),
                }],
            };
        }
        let hd = 0.5 * (q.a - q.c) / radius;
        let off = q.b / (2.0 * radius);
        let plus = ComplexMatrix {
            dim: 2,
            entries: vec![
                Complex64::new(0.5 * (1.0 + hd), 0.0),
                off,
                off.conj(),
                Complex64::new(0.5 * (1.0 - hd), 0.0),
            ],
        };
        let minus = ComplexMatrix {
            dim: 2,
            entries: vec![
                Complex64::new(0.5 * (1.0 - hd), 0.0),
                -off,
                -off.conj(),
                Complex64::new(0.5 * (1.0 + hd), 0.0),
            ],
        };
        Spectrum {
            eigenvalues,
            clusters: vec![
                EigenCluster {
                    value: mean - radius,
                    multiplicity: 1,
                    projector: Self(minus),
                },
                EigenCluster {
                    value: mean + radius,
                    multiplicity: 1,
                    projector: Self(plus),
                },
            ],
        }
    }

    fn eig_general(&self) -> Spectrum {
        let d = self.dim();
        if d == 0 {
            return Spectrum {
                eigenvalues: Vec::new(),
                clusters: Vec::new(),
            };
        }
        let m = DMatrix::from_fn(d, d, |i, j| self.entry(i, j));
        let eig = m.symmetric_eigen();
        let mut idx: Vec<usize> = (0..d).collect();
        idx.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let eigenvalues: Vec<f64> = idx.iter().map(|&i| eig.eigenvalues[i]).collect();

        let mut clusters = Vec::new();
        let mut start = 0;
        while start < d {
            let mut end = start + 1;
            while end < d && eigenvalues[end] - eigenvalues[end - 1] <= CLUSTER_TOL {
                end += 1;
            }
            let members = &idx[start..end];
            let mut projector = ComplexMatrix::zeros(d);
            for &col in members {
                let v = eig.eigenvectors.column(col);
                for i in 0..d {
                    for j in 0..d {
                        projector.entries[i * d + j] += v[i] * v[j].conj();
                    }
                }
            }
            let value = eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64;
            clusters.push(EigenCluster {
                value,
                multiplicity: end - start,
                projector: Self::from_matrix_unchecked(projector),
            });
            start = end;
        }
        Spectrum {
            eigenvalues,
            clusters,
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        if self.dim() == 2 {
            let q = Qubit2::of(self);
            q.mean() - q.radius()
        } else {
            self.eig().eigenvalues.first().copied().unwrap_or(0.0)
        }
    }

    /// Operator absolute value `|A| = sum_k |lambda_k| P_k`.
    pub fn abs(&self) -> HermitianOperator {
        let spectrum = self.eig();
        let mut out = Self::zeros(self.dim());
        for c in &spectrum.clusters {
            out.add_scaled(c.value.abs(), &c.projector);
        }
        out
    }

    /// Sum of absolute eigenvalues.
    pub fn trace_norm(&self) -> f64 {
        if self.dim() == 2 {
            Qubit2::of(self).trace_norm()
        } else {
            self.eig().eigenvalues.iter().map(|l| l.abs()).sum()
        }
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    /// Whether `self - other` has no eigenvalue below `-tol`.
    pub fn psd_geq(&self, other: &HermitianOperator, tol: f64) -> Result<bool> {
        self.check_dim(other)?;
        Ok((self - other).is_psd(tol))
    }

    /// Splits the identity into the projectors onto the negative, kernel and
    /// positive eigenspaces. Eigenvalue clusters with `|lambda| <= zero_tol`
    /// count as kernel.
    pub fn spectral_projectors(&self, zero_tol: f64) -> SpectralSplit {
        let d = self.dim();
        let mut split = SpectralSplit {
            negative: Self::zeros(d),
            zero: Self::zeros(d),
            positive: Self::zeros(d),
        };
        for c in self.eig().clusters {
            let target = if c.value < -zero_tol {
                &mut split.negative
            } else if c.value <= zero_tol {
                &mut split.zero
            } else {
                &mut split.positive
            };
            target.add_scaled(1.0, &c.projector);
        }
        split
    }

    /// Pinching of `x` in the eigenbasis of `self`: `sum_k P_k x P_k`.
    pub fn pinch(&self, x: &HermitianOperator) -> Result<HermitianOperator> {
        self.check_dim(x)?;
        let mut out = ComplexMatrix::zeros(self.dim());
        for c in self.eig().clusters {
            let p = c.projector.matrix();
            let pxp = p.matmul(x.matrix()).matmul(p);
            for (o, v) in out.entries.iter_mut().zip(pxp.entries) {
                *o += v;
            }
        }
        Ok(Self::from_matrix_unchecked(out))
    }
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;

    fn add(self, rhs: &HermitianOperator) -> HermitianOperator {
        let mut out = self.clone();
        out.add_scaled(1.0, rhs);
        out
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;

    fn sub(self, rhs: &HermitianOperator) -> HermitianOperator {
        let mut out = self.clone();
        out.add_scaled(-1.0, rhs);
        out
    }
}

impl Neg for &HermitianOperator {
    type Output = HermitianOperator;

    fn neg(self) -> HermitianOperator {
        self * -1.0
    }
}

impl Mul<f64> for &HermitianOperator {
    type Output = HermitianOperator;

    fn mul(self, rhs: f64) -> HermitianOperator {
        let mut out = self.clone();
        for e in &mut out.0.entries {
            *e *= rhs;
        }
        out
    }
}

/// One eigenvalue cluster of a [`Spectrum`].
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCluster {
    /// Mean of the merged eigenvalues.
    pub value: f64,
    pub multiplicity: usize,
    pub projector: HermitianOperator,
}

/// Eigen-decomposition of a Hermitian operator: ascending eigenvalues (with
/// multiplicity) and one projector per cluster of nearly equal eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub clusters: Vec<EigenCluster>,
}

impl Spectrum {
    /// `sum_k value_k P_k`.
    pub fn reconstruct(&self) -> HermitianOperator {
        let d = self.eigenvalues.len();
        let mut out = HermitianOperator::zeros(d);
        for c in &self.clusters {
            out.add_scaled(c.value, &c.projector);
        }
        out
    }

    pub fn projectors(&self) -> impl Iterator<Item = &HermitianOperator> {
        self.clusters.iter().map(|c| &c.projector)
    }
}

/// Negative / kernel / positive spectral projectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSplit {
    pub negative: HermitianOperator,
    pub zero: HermitianOperator,
    pub positive: HermitianOperator,
}

/// The three independent real numbers of a 2x2 Hermitian matrix
/// `[[a, b], [conj(b), c]]`. Used on the enumeration hot path.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Qubit2 {
    pub a: f64,
    pub c: f64,
    pub b: Complex64,
}

impl Qubit2 {
    pub fn of(op: &HermitianOperator) -> Self {
        debug_assert_eq!(op.dim(), 2);
        Self {
            a: op.entry(0, 0).re,
            c: op.entry(1, 1).re,
            b: op.entry(0, 1),
        }
    }

    #[inline]
    pub fn mean(&self) -> f64 {
        0.5 * (self.a + self.c)
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        (0.5 * (self.a - self.c)).hypot(self.b.norm())
    }

    /// `|mean - r| + |mean + r| = 2 max(|mean|, r)`.
    #[inline]
    pub fn trace_norm(&self) -> f64 {
        2.0 * self.mean().abs().max(self.radius())
    }
}
