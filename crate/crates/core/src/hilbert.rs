//! Dense complex linear algebra on tensor-factored Hilbert spaces.
//!
//! Vectors and operators remember the dimensions of their tensor factors. Indices into
//! `H_1 ⊗ ... ⊗ H_m` are mixed-radix with the last factor fastest, matching
//! [`tensor`] and the group-element ranking in [`crate::abelian`].

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest tolerated `‖A - A†‖_max` when constructing an operator from raw entries.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Relative threshold of the positive-semidefiniteness test.
pub const PSD_TOLERANCE: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub(crate) fn product(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// Dimensions `N_1, ..., N_m` of a multipartite space, `m >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct TensorSpaceShape {
    dims: Vec<usize>,
    total: usize,
}

impl TensorSpaceShape {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::InvalidShape(format!(
                "a tensor space needs at least two factors, got {}",
                dims.len()
            )));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidShape(format!("factor dimensions must be positive: {dims:?}")));
        }
        Ok(TensorSpaceShape { dims: dims.to_vec(), total: product(dims) })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }
}

impl TryFrom<Vec<usize>> for TensorSpaceShape {
    type Error = Error;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        TensorSpaceShape::new(&dims)
    }
}

impl From<TensorSpaceShape> for Vec<usize> {
    fn from(shape: TensorSpaceShape) -> Self {
        shape.dims
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct Wire(pub f64, pub f64);

impl From<Complex64> for Wire {
    fn from(z: Complex64) -> Self {
        Wire(z.re, z.im)
    }
}

impl From<&Wire> for Complex64 {
    fn from(w: &Wire) -> Self {
        Complex64::new(w.0, w.1)
    }
}

/// A vector of `H_1 ⊗ ... ⊗ H_k`; a plain factor vector has a single dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VectorWire", into = "VectorWire")]
pub struct CVector {
    dims: Vec<usize>,
    entries: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct VectorWire {
    dims: Vec<usize>,
    entries: Vec<Wire>,
}

impl TryFrom<VectorWire> for CVector {
    type Error = Error;

    fn try_from(wire: VectorWire) -> Result<Self> {
        CVector::with_dims(wire.dims, wire.entries.iter().map(Complex64::from).collect())
    }
}

impl From<CVector> for VectorWire {
    fn from(v: CVector) -> Self {
        VectorWire { dims: v.dims, entries: v.entries.into_iter().map(Wire::from).collect() }
    }
}

impl CVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        CVector { dims: vec![entries.len()], entries }
    }

    pub fn from_real(entries: &[f64]) -> Self {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn with_dims(dims: Vec<usize>, entries: Vec<Complex64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidShape(format!("invalid vector dimensions {dims:?}")));
        }
        let expected = product(&dims);
        if expected != entries.len() {
            return Err(Error::DimensionMismatch { expected, found: entries.len() });
        }
        Ok(CVector { dims, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![ZERO; dim])
    }

    pub(crate) fn zeros_with_dims(dims: &[usize]) -> Self {
        CVector { dims: dims.to_vec(), entries: vec![ZERO; product(dims)] }
    }

    /// Standard basis vector `e_k` (zero-based).
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[k] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn scaled(&self, c: Complex64) -> CVector {
        CVector { dims: self.dims.clone(), entries: self.entries.iter().map(|&z| z * c).collect() }
    }

    pub fn add(&self, other: &CVector) -> Result<CVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(CVector {
            dims: self.dims.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &CVector) -> Result<CVector> {
        self.add(&other.scaled(Complex64::new(-1.0, 0.0)))
    }

    pub(crate) fn axpy(&mut self, c: Complex64, x: &CVector) {
        for (y, &xi) in self.entries.iter_mut().zip(&x.entries) {
            *y += c * xi;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| *z == ZERO)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `⟨v, w⟩ = Σ conj(v_i) w_i`, antilinear in the first slot.
pub fn inner(v: &CVector, w: &CVector) -> Result<Complex64> {
    check_dim(v.dim(), w.dim())?;
    Ok(v.entries.iter().zip(&w.entries).map(|(a, b)| a.conj() * b).sum())
}

/// Kronecker product `v^1 ⊗ ... ⊗ v^m`, last factor fastest.
pub fn tensor(vs: &[CVector]) -> Result<CVector> {
    let (first, rest) = vs
        .split_first()
        .ok_or_else(|| Error::InvalidShape("tensor product of zero vectors".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, v| kron_vec(&acc, v)))
}

/// [`tensor`] checked against the factor dimensions of `shape`.
pub fn tensor_in(shape: &TensorSpaceShape, vs: &[CVector]) -> Result<CVector> {
    check_dim(shape.num_factors(), vs.len())?;
    for (&d, v) in shape.dims().iter().zip(vs) {
        check_dim(d, v.dim())?;
    }
    let mut out = tensor(vs)?;
    out.dims = shape.dims().to_vec();
    Ok(out)
}

pub(crate) fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let mut entries = Vec::with_capacity(a.dim() * b.dim());
    for &x in &a.entries {
        entries.extend(b.entries.iter().map(|&y| x * y));
    }
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    CVector { dims, entries }
}

/// Dense Hermitian operator on a tensor-factored space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorWire", into = "OperatorWire")]
pub struct HermitianOperator {
    dims: Vec<usize>,
    matrix: DMatrix<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct OperatorWire {
    dims: Vec<usize>,
    matrix: Vec<Vec<Wire>>,
}

impl TryFrom<OperatorWire> for HermitianOperator {
    type Error = Error;

    fn try_from(wire: OperatorWire) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = wire
            .matrix
            .iter()
            .map(|row| row.iter().map(Complex64::from).collect())
            .collect();
        HermitianOperator::from_rows(wire.dims, &rows)
    }
}

impl From<HermitianOperator> for OperatorWire {
    fn from(op: HermitianOperator) -> Self {
        let n = op.dim();
        let matrix = (0..n).map(|i| (0..n).map(|j| Wire::from(op.matrix[(i, j)])).collect()).collect();
        OperatorWire { dims: op.dims, matrix }
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<CVector>,
}

impl HermitianOperator {
    /// Checks Hermiticity to [`HERMITIAN_TOLERANCE`] and then symmetrizes exactly.
    pub fn from_matrix(dims: Vec<usize>, matrix: DMatrix<Complex64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidShape(format!("invalid operator dimensions {dims:?}")));
        }
        let n = product(&dims);
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if matrix.nrows() != n { matrix.nrows() } else { matrix.ncols() },
            });
        }
        let deviation = (&matrix - matrix.adjoint()).iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if deviation.is_nan() || deviation > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::hermitized(dims, matrix))
    }

    pub fn from_rows(dims: Vec<usize>, rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        let matrix = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        Self::from_matrix(dims, matrix)
    }

    pub(crate) fn hermitized(dims: Vec<usize>, matrix: DMatrix<Complex64>) -> Self {
        let matrix = (&matrix + matrix.adjoint()).scale(0.5);
        HermitianOperator { dims, matrix }
    }

    pub fn zeros(dims: &[usize]) -> Self {
        let n = product(dims);
        HermitianOperator { dims: dims.to_vec(), matrix: DMatrix::zeros(n, n) }
    }

    pub fn identity(dims: &[usize]) -> Self {
        let n = product(dims);
        HermitianOperator { dims: dims.to_vec(), matrix: DMatrix::identity(n, n) }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn scaled(&self, c: f64) -> Self {
        HermitianOperator { dims: self.dims.clone(), matrix: self.matrix.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(HermitianOperator { dims: self.dims.clone(), matrix: &self.matrix + &other.matrix })
    }

    pub fn mul(&self, other: &Self) -> Result<DMatrix<Complex64>> {
        check_dim(self.dim(), other.dim())?;
        Ok(&self.matrix * &other.matrix)
    }

    /// `‖self - other‖_max`.
    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        Ok((&self.matrix - &other.matrix).iter().fold(0.0, |m, z| m.max(z.norm())))
    }

    /// `‖self - other‖_max / max(‖self‖_max, ‖other‖_max)`, or the plain difference
    /// when both operators are below `1e-12`.
    pub fn relative_diff(&self, other: &Self) -> Result<f64> {
        let diff = self.max_diff(other)?;
        let scale = self.max_abs().max(other.max_abs());
        Ok(if scale < 1e-12 { diff } else { diff / scale })
    }

    /// Adds `weight · P[v]`; `P[v] = |v⟩⟨v|`.
    pub(crate) fn add_projector(&mut self, v: &CVector, weight: f64) {
        let n = self.dim();
        debug_assert_eq!(v.dim(), n);
        let e = v.entries();
        for j in 0..n {
            let cj = e[j].conj() * weight;
            if cj == ZERO {
                continue;
            }
            for i in 0..j {
                let z = e[i] * cj;
                self.matrix[(i, j)] += z;
                self.matrix[(j, i)] += z.conj();
            }
            self.matrix[(j, j)] += Complex64::new(e[j].norm_sqr() * weight, 0.0);
        }
    }

    pub fn eig(&self) -> Result<Eigen> {
        let n = self.dim();
        let decomposition = SymmetricEigen::try_new(self.matrix.clone(), f64::EPSILON, 100_000)
            .ok_or(Error::EigenConvergence { dim: n })?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| decomposition.eigenvalues[a].total_cmp(&decomposition.eigenvalues[b]));
        let values = order.iter().map(|&k| decomposition.eigenvalues[k]).collect();
        let vectors = order
            .iter()
            .map(|&k| {
                CVector::with_dims(
                    self.dims.clone(),
                    decomposition.eigenvectors.column(k).iter().copied().collect(),
                )
                .expect("eigenvector length equals operator dimension")
            })
            .collect();
        Ok(Eigen { values, vectors })
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eig()?.values.first().copied().unwrap_or(0.0))
    }

    /// Threshold below which a negative eigenvalue still counts as zero.
    pub fn psd_threshold(&self) -> f64 {
        PSD_TOLERANCE * self.max_abs().max(1.0)
    }

    pub fn is_psd(&self) -> Result<bool> {
        Ok(self.min_eigenvalue()? >= -self.psd_threshold())
    }

    /// Reduced operator on factor `keep` (zero-based), tracing out every other factor.
    pub fn partial_trace(&self, keep: usize) -> Result<HermitianOperator> {
        let m = self.dims.len();
        if keep >= m {
            return Err(Error::InvalidFactor { index: keep, factors: m });
        }
        let before = product(&self.dims[..keep]);
        let kept = self.dims[keep];
        let after = product(&self.dims[keep + 1..]);
        let mut out = DMatrix::zeros(kept, kept);
        for a in 0..kept {
            for b in 0..kept {
                let mut s = ZERO;
                for x in 0..before {
                    for y in 0..after {
                        let i = (x * kept + a) * after + y;
                        let j = (x * kept + b) * after + y;
                        s += self.matrix[(i, j)];
                    }
                }
                out[(a, b)] = s;
            }
        }
        Ok(HermitianOperator::hermitized(vec![kept], out))
    }

    /// Transpose of the second block of the bipartition `{0..cut} | {cut..m}`.
    pub fn partial_transpose(&self, cut: usize) -> Result<HermitianOperator> {
        let m = self.dims.len();
        if cut == 0 || cut >= m {
            return Err(Error::InvalidCut { cut, factors: m });
        }
        let left = product(&self.dims[..cut]);
        let right = product(&self.dims[cut..]);
        let out = DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            let (ia, ib) = (i / right, i % right);
            let (ja, jb) = (j / right, j % right);
            self.matrix[(ia * right + jb, ja * right + ib)]
        });
        debug_assert_eq!(left * right, self.dim());
        Ok(HermitianOperator { dims: self.dims.clone(), matrix: out })
    }

    /// Transpose of the factors whose index appears in `factors`, in any order.
    pub fn partial_transpose_factors(&self, factors: &[usize]) -> Result<HermitianOperator> {
        let m = self.dims.len();
        if let Some(&bad) = factors.iter().find(|&&k| k >= m) {
            return Err(Error::InvalidFactor { index: bad, factors: m });
        }
        let digits = |mut i: usize| {
            let mut ds = vec![0; m];
            for k in (0..m).rev() {
                ds[k] = i % self.dims[k];
                i /= self.dims[k];
            }
            ds
        };
        let rank = |ds: &[usize]| ds.iter().zip(&self.dims).fold(0, |acc, (&d, &n)| acc * n + d);
        let out = DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            let (mut a, mut b) = (digits(i), digits(j));
            for &k in factors {
                std::mem::swap(&mut a[k], &mut b[k]);
            }
            self.matrix[(rank(&a), rank(&b))]
        });
        Ok(HermitianOperator { dims: self.dims.clone(), matrix: out })
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &HermitianOperator) -> HermitianOperator {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        HermitianOperator { dims, matrix: self.matrix.kronecker(&other.matrix) }
    }
}

pub fn projector(v: &CVector) -> HermitianOperator {
    let mut op = HermitianOperator::zeros(v.dims());
    op.add_projector(v, 1.0);
    op
}

pub fn eig_hermitian(a: &HermitianOperator) -> Result<Eigen> {
    a.eig()
}

pub fn partial_trace(a: &HermitianOperator, keep: usize) -> Result<HermitianOperator> {
    a.partial_trace(keep)
}

pub fn partial_transpose(a: &HermitianOperator, cut: usize) -> Result<HermitianOperator> {
    a.partial_transpose(cut)
}
