//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Matrices are square, row-major and stored as `Complex64` (a pair of reals).
//! Subsystem 0 is always the leftmost tensor factor.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{EurError, Result};

/// Default cap on the dimension produced by [`kron`].
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Tolerance on `‖a − a†‖_max` accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Convergence threshold on the off-diagonal Frobenius norm, relative to `‖a‖_F`.
pub const JACOBI_OFF_TOL: f64 = 1e-14;

/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries. Rejects wrong lengths and non-finite values.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(EurError::Dimension("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(EurError::Dimension(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(EurError::Domain(format!(
                "non-finite entry at ({}, {})",
                pos / dim,
                pos % dim
            )));
        }
        Ok(CMatrix { dim, entries })
    }

    /// Builds a matrix from rows; every row must have the same length as the row count.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(EurError::Dimension(format!(
                "row {i} has {} entries, expected {dim}",
                r.len()
            )));
        }
        Self::from_entries(dim, rows.iter().flatten().copied().collect())
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = Complex64::new(d, 0.0);
        }
        m
    }

    /// `|v⟩⟨w|`.
    pub fn outer(v: &CVector, w: &CVector) -> Result<Self> {
        if v.dim() != w.dim() {
            return Err(EurError::Dimension(format!(
                "outer product of vectors with dimensions {} and {}",
                v.dim(),
                w.dim()
            )));
        }
        let n = v.dim();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] = v.entries[i] * w.entries[j].conj();
            }
        }
        Ok(m)
    }

    /// Rank-one projector `|v⟩⟨v|`.
    pub fn projector(v: &CVector) -> Self {
        Self::outer(v, v).expect("same vector")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Matrix product. Panics on mismatched dimensions; see [`CMatrix::try_matmul`].
    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        self.try_matmul(other).expect("matmul dimension mismatch")
    }

    pub fn try_matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.dim != other.dim {
            return Err(EurError::Dimension(format!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.dim, other.dim
            )));
        }
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.entries[k * n..(k + 1) * n];
                for (o, b) in out[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(CMatrix { dim: n, entries: out })
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if v.dim() != self.dim {
            return Err(EurError::Dimension(format!(
                "cannot apply {0}x{0} matrix to vector of length {1}",
                self.dim,
                v.dim()
            )));
        }
        let n = self.dim;
        let entries = (0..n)
            .map(|i| {
                self.entries[i * n..(i + 1) * n]
                    .iter()
                    .zip(v.entries())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ok(CVector { entries })
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖a − a†‖_max`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &'a CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &'a CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &'a CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        CMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    entries: Vec<Complex64>,
}

impl CVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(EurError::Dimension("vector dimension must be positive".into()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(EurError::Domain("non-finite vector entry".into()));
        }
        Ok(CVector { entries })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Standard basis vector `|index⟩` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut entries = vec![ZERO; dim];
        entries[index] = ONE;
        CVector { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &CVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &CVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(EurError::Domain("cannot normalize the zero vector".into()));
        }
        Ok(CVector {
            entries: self.entries.iter().map(|z| z / n).collect(),
        })
    }

    /// Tensor product `|self⟩ ⊗ |other⟩`.
    pub fn kron(&self, other: &CVector) -> CVector {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        CVector { entries }
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<CVector>,
}

impl Spectrum {
    /// `‖a − VΛV†‖_max` against the matrix this spectrum was computed from.
    pub fn reconstruction_residual(&self, a: &CMatrix) -> f64 {
        let n = a.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
                    acc += v.entries[i] * v.entries[j].conj() * lambda;
                }
                worst = worst.max((a.get(i, j) - acc).norm());
            }
        }
        worst
    }

    /// `‖V†V − I‖_max`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, u) in self.eigenvectors.iter().enumerate() {
            for (j, v) in self.eigenvectors.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((u.inner(v) - target).norm());
            }
        }
        worst
    }
}

/// Kronecker product with the [`DEFAULT_DIM_CAP`].
pub fn kron(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    kron_with_cap(a, b, DEFAULT_DIM_CAP)
}

pub fn kron_with_cap(a: &CMatrix, b: &CMatrix, cap: usize) -> Result<CMatrix> {
    let dim = a
        .dim
        .checked_mul(b.dim)
        .filter(|&d| d <= cap)
        .ok_or_else(|| {
            EurError::Dimension(format!(
                "kron of {} and {} exceeds the dimension cap {cap}",
                a.dim, b.dim
            ))
        })?;
    let (na, nb) = (a.dim, b.dim);
    let mut out = CMatrix::zeros(dim);
    for i in 0..na {
        for j in 0..na {
            let x = a.entries[i * na + j];
            if x == ZERO {
                continue;
            }
            for k in 0..nb {
                for l in 0..nb {
                    out.entries[(i * nb + k) * dim + j * nb + l] = x * b.entries[k * nb + l];
                }
            }
        }
    }
    Ok(out)
}

/// Eigenvalues and orthonormal eigenvectors of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal unitary and then
/// applies the real symmetric Jacobi rotation that annihilates it. Eigenvalues are returned in
/// ascending order; the result is a deterministic function of the input.
pub fn hermitian_eig(a: &CMatrix) -> Result<Spectrum> {
    let herm_err = a.hermiticity_error();
    if herm_err > HERMITIAN_TOL {
        return Err(EurError::Contract(format!(
            "matrix is not Hermitian (max |a - a†| = {herm_err:e})"
        )));
    }
    let n = a.dim;
    // Work on the Hermitian part so that roundoff asymmetry cannot accumulate.
    let mut m = vec![ZERO; n * n];
    for i in 0..n {
        m[i * n + i] = Complex64::new(a.get(i, i).re, 0.0);
        for j in (i + 1)..n {
            let z = (a.get(i, j) + a.get(j, i).conj()) * 0.5;
            m[i * n + j] = z;
            m[j * n + i] = z.conj();
        }
    }
    let mut v = CMatrix::identity(n).entries;

    let scale = a.frobenius_norm();
    let off_norm = |m: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&m);
        if off <= JACOBI_OFF_TOL * scale {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(EurError::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let beta = m[p * n + q];
                let b = beta.norm();
                if b == 0.0 {
                    continue;
                }
                let phase = beta / b;
                let alpha = m[p * n + p].re;
                let gamma = m[q * n + q].re;
                let tau = (gamma - alpha) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + 1.0f64.hypot(tau))
                } else {
                    -1.0 / (-tau + 1.0f64.hypot(tau))
                };
                let c = 1.0 / 1.0f64.hypot(t);
                let s = t * c;
                let ph_conj = phase.conj();

                // Columns: A ← A G, V ← V G with G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]].
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = akp * c - akq * ph_conj * s;
                    m[k * n + q] = akp * s + akq * ph_conj * c;
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c - vkq * ph_conj * s;
                    v[k * n + q] = vkp * s + vkq * ph_conj * c;
                }
                // Rows: A ← G† A.
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = apk * c - aqk * phase * s;
                    m[q * n + k] = apk * s + aqk * phase * c;
                }
                m[p * n + q] = ZERO;
                m[q * n + p] = ZERO;
                m[p * n + p] = Complex64::new(alpha - t * b, 0.0);
                m[q * n + q] = Complex64::new(gamma + t * b, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].re.total_cmp(&m[j * n + j].re));
    let eigenvalues = order.iter().map(|&i| m[i * n + i].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&col| CVector {
            entries: (0..n).map(|row| v[row * n + col]).collect(),
        })
        .collect();
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Row-major strides for a list of subsystem dimensions.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Full-space index offsets of every multi-index over `subset`, enumerated row-major with the
/// first listed subsystem most significant.
pub(crate) fn subset_offsets(dims: &[usize], subset: &[usize]) -> Vec<usize> {
    let st = strides(dims);
    let mut offsets = vec![0usize];
    for &k in subset {
        let stride = st[k];
        offsets = offsets
            .iter()
            .flat_map(|&base| (0..dims[k]).map(move |i| base + i * stride))
            .collect();
    }
    offsets
}

pub(crate) fn check_dims(dim: usize, dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(EurError::Dimension(format!(
            "subsystem dimensions {dims:?} must be non-empty and positive"
        )));
    }
    let product: usize = dims.iter().product();
    if product != dim {
        return Err(EurError::Dimension(format!(
            "product of subsystem dimensions {dims:?} is {product}, matrix dimension is {dim}"
        )));
    }
    Ok(())
}

/// Normalizes an index set: sorted, deduplicated, every index below `n`.
pub(crate) fn normalize_subset(subset: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&k| k >= n) {
        return Err(EurError::Dimension(format!(
            "subsystem index {bad} out of range for {n} subsystems"
        )));
    }
    Ok(s)
}

/// Reduced operator on the `keep` subsystems, in their original order.
pub fn partial_trace(rho: &CMatrix, dims: &[usize], keep: &[usize]) -> Result<CMatrix> {
    check_dims(rho.dim, dims)?;
    let keep = normalize_subset(keep, dims.len())?;
    if keep.is_empty() {
        return Err(EurError::Contract("partial trace must keep at least one subsystem".into()));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let kept_off = subset_offsets(dims, &keep);
    let traced_off = subset_offsets(dims, &traced);
    let dk = kept_off.len();
    let n = rho.dim;
    let mut out = CMatrix::zeros(dk);
    for (r, &ro) in kept_off.iter().enumerate() {
        for (c, &co) in kept_off.iter().enumerate() {
            let mut acc = ZERO;
            for &t in &traced_off {
                acc += rho.entries[(ro + t) * n + co + t];
            }
            out.entries[r * dk + c] = acc;
        }
    }
    Ok(out)
}
