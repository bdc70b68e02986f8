//! Dense complex linear algebra for the small (2, 4, 8 dimensional) matrices
//! that describe three qubits.
//!
//! Basis convention: the computational state `|q0 q1 ... q_{n-1}>` sits at index
//! `sum_k q_k 2^(n-1-k)`, so qubit `A` is the most significant bit and `|abc>`
//! maps to `4a + 2b + c`.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::base::LogBase;
use crate::error::{Error, Result};

/// Entrywise tolerance on `|m - m^H|` accepted by [`eigh`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Off-diagonal Frobenius threshold that terminates the Jacobi sweeps.
pub const JACOBI_OFF_TOL: f64 = 1e-14;
/// Maximum number of cyclic Jacobi sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this are treated as one degenerate cluster.
pub const DEGENERACY_TOL: f64 = 1e-10;
/// Trace and positivity tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major entries; the length must be a perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() || dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    /// Real row-major entries, mostly for tests and literal matrices.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self {
            dim,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        })
    }

    /// Diagonal matrix with real entries.
    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// The projector-like outer product `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// `v^H M v`.
    pub fn quadratic_form(&self, v: &[Complex64]) -> Result<Complex64> {
        let mv = self.mat_vec(v)?;
        Ok(inner(v, &mv))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        Self::from_fn(n * m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    /// Largest entrywise `|m_ij - conj(m_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Largest entrywise `|a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// `<a|b>`, conjugate-linear in the first argument.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Kronecker product of two vectors.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Eigen-pairs of a Hermitian matrix, eigenvalues sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    vectors: Vec<Vec<Complex64>>,
}

impl EigenDecomposition {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvectors, in the same order as [`values`](Self::values).
    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same pairs in ascending eigenvalue order.
    pub fn reversed(&self) -> Self {
        Self {
            values: self.values.iter().rev().copied().collect(),
            vectors: self.vectors.iter().rev().cloned().collect(),
        }
    }

    /// `sum_k lambda_k v_k v_k^H`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut m = ComplexMatrix::zeros(n);
        for (lambda, v) in self.values.iter().zip(&self.vectors) {
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += v[i] * v[j].conj() * *lambda;
                }
            }
        }
        m
    }

    /// Largest `||A v_k - lambda_k v_k||_2` over all pairs.
    pub fn max_residual(&self, m: &ComplexMatrix) -> f64 {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(lambda, v)| {
                let mv = m.mat_vec(v).expect("dimension checked at construction");
                mv.iter()
                    .zip(v)
                    .map(|(a, b)| (a - b * *lambda).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Largest `|<v_j, v_k> - delta_jk|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (j, a) in self.vectors.iter().enumerate() {
            for (k, b) in self.vectors.iter().enumerate() {
                let target = if j == k { ONE } else { ZERO };
                worst = worst.max((inner(a, b) - target).norm());
            }
        }
        worst
    }

    /// Whether any two eigenvalues with value above `floor` form a degenerate pair.
    pub fn has_degeneracy_above(&self, floor: f64) -> bool {
        self.values
            .windows(2)
            .any(|w| w[0] - w[1] <= DEGENERACY_TOL && w[1] > floor)
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// The output is deterministic: eigenvalues are sorted descending, each
/// eigenvector's largest component is made real and positive, and inside a
/// degenerate cluster the basis is rebuilt by Gram-Schmidt over the projections
/// of the canonical basis vectors `e_0, e_1, ...` onto the cluster.
pub fn eigh(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim();
    // Exact Hermitian copy so the rotations see a real diagonal.
    let mut a = ComplexMatrix::from_fn(n, |i, j| {
        if i == j {
            Complex64::new(m[(i, i)].re, 0.0)
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_TOL * a.frobenius_norm().max(1.0);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if a.off_diagonal_norm() <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off_norm = a.off_diagonal_norm();
        if off_norm > threshold {
            return Err(Error::NoConvergence {
                sweeps: JACOBI_MAX_SWEEPS,
                off_norm,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable: ties keep their column order.
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
        .collect();

    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end - 1] - values[end] <= DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            canonicalize_cluster(&mut vectors[start..end]);
        } else {
            fix_phase(&mut vectors[start]);
        }
        start = end;
    }

    Ok(EigenDecomposition { values, vectors })
}

/// One two-sided rotation zeroing `a[p][q]`, accumulated into `v`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = a.dim();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Phase that makes the (p, q) entry real and positive.
    let d = (apq / r).conj();
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = d * (-s);
    let u_qq = d * c;

    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

fn fix_phase(v: &mut [Complex64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = v
        .iter()
        .position(|z| z.norm() >= max - 1e-12)
        .expect("max is attained");
    let phase = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
}

/// Replaces an orthonormal basis of a degenerate eigenspace by the
/// Gram-Schmidt orthonormalization of the projected canonical basis.
fn canonicalize_cluster(cluster: &mut [Vec<Complex64>]) {
    let size = cluster.len();
    let n = cluster[0].len();
    let mut chosen: Vec<Vec<Complex64>> = Vec::with_capacity(size);
    for k in 0..n {
        if chosen.len() == size {
            break;
        }
        // Projection of e_k onto span(cluster).
        let mut w = vec![ZERO; n];
        for b in cluster.iter() {
            let coeff = b[k].conj();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi += bi * coeff;
            }
        }
        // Two passes of classical Gram-Schmidt.
        for _ in 0..2 {
            for u in &chosen {
                let overlap = inner(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= ui * overlap;
                }
            }
        }
        let norm = vec_norm(&w);
        if norm > 1e-6 {
            for wi in w.iter_mut() {
                *wi /= norm;
            }
            chosen.push(w);
        }
    }
    // Numerically the loop always fills the cluster; keep the solver's
    // vectors for any slot it could not.
    for (slot, new) in cluster.iter_mut().zip(chosen) {
        *slot = new;
    }
}

/// Validated eigenvalue list of a density matrix: entries in `[0, 1]`, sum 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Accepts entries `>= -1e-12` summing to one within `1e-10`, then clamps
    /// each entry to `[0, 1]`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("empty".into()));
        }
        if let Some(bad) = values.iter().find(|x| !x.is_finite() || **x < -1e-12) {
            return Err(Error::InvalidSpectrum(format!("entry {bad} is negative")));
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidSpectrum(format!("entries sum to {total}")));
        }
        Ok(Self {
            values: values.into_iter().map(|x| x.clamp(0.0, 1.0)).collect(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `sum_i lambda_i log lambda_i` (non-positive; the negative of the entropy).
pub fn spectral_entropy_term(spectrum: &Spectrum, base: LogBase) -> f64 {
    spectrum.values().iter().map(|&p| base.plogp(p)).sum()
}

/// One of the three qubits, `A` being the most significant basis bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    A = 0,
    B = 1,
    C = 2,
}

impl Qubit {
    #[inline]
    pub fn position(self) -> usize {
        self as usize
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (`1e-12`), unit trace and positivity (`1e-10`).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.dim().is_power_of_two() || matrix.dim() < 2 {
            return Err(Error::NotQubitDimension(matrix.dim()));
        }
        let dev = matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {dev:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let eig = eigh(&matrix)?;
        let min = eig.values().last().copied().unwrap_or(0.0);
        if min < -DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { matrix })
    }

    /// `|psi><psi|` for a unit vector.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let norm = vec_norm(psi);
        if (norm - 1.0).abs() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("state norm {norm} is not 1")));
        }
        if !psi.len().is_power_of_two() || psi.len() < 2 {
            return Err(Error::NotQubitDimension(psi.len()));
        }
        Ok(Self {
            matrix: ComplexMatrix::outer(psi),
        })
    }

    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermitian_deviation() <= 1e-9);
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn num_qubits(&self) -> usize {
        self.matrix.dim().trailing_zeros() as usize
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.matrix[(i, j)] * self.matrix[(j, i)]).re;
            }
        }
        acc
    }

    pub fn eigh(&self) -> Result<EigenDecomposition> {
        eigh(&self.matrix)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        Spectrum::new(self.eigh()?.values().to_vec())
    }

    /// Reduced state on the `keep` qubits, kept in ascending position order.
    pub fn partial_trace(&self, keep: &[Qubit]) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }
}

/// Traces out every qubit not listed in `keep`.
///
/// `keep` must be a non-empty proper subset of the matrix's qubits; positions
/// refer to the input (so tracing `C` then `B` is `[A, B]` followed by `[A]`).
pub fn partial_trace(rho: &DensityMatrix, keep: &[Qubit]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    let mut kept: Vec<usize> = keep.iter().map(|q| q.position()).collect();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() {
        return Err(Error::InvalidSubsystems("duplicate qubit in keep-set".into()));
    }
    if kept.is_empty() {
        return Err(Error::InvalidSubsystems("keep-set is empty".into()));
    }
    if let Some(&bad) = kept.iter().find(|&&p| p >= n) {
        return Err(Error::InvalidSubsystems(format!(
            "qubit position {bad} out of range for {n} qubits"
        )));
    }
    if kept.len() == n {
        return Err(Error::InvalidSubsystems(
            "keep-set covers every qubit; nothing to trace".into(),
        ));
    }
    let traced: Vec<usize> = (0..n).filter(|p| !kept.contains(p)).collect();

    let bit = |pos: usize| 1usize << (n - 1 - pos);
    let embed = |positions: &[usize], local: usize| -> usize {
        let m = positions.len();
        positions
            .iter()
            .enumerate()
            .filter(|(k, _)| local & (1 << (m - 1 - k)) != 0)
            .map(|(_, &p)| bit(p))
            .sum()
    };

    let out_dim = 1usize << kept.len();
    let env_dim = 1usize << traced.len();
    let src = rho.matrix();
    let out = ComplexMatrix::from_fn(out_dim, |r, c| {
        let (row, col) = (embed(&kept, r), embed(&kept, c));
        (0..env_dim)
            .map(|e| {
                let env = embed(&traced, e);
                src[(row | env, col | env)]
            })
            .sum()
    });
    Ok(DensityMatrix::from_trusted(out))
}
