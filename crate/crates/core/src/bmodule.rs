//! The left `B`-module `Bⁿ ≅ R⁴ⁿ`: neutral metric, the structures
//! `λ(ξ) = ξ₁ I + ξ₂ S + ξ₃ T`, the 2-forms `ω_ξ` and the action of
//! `Sp(n,B) × Sp(1,B)`.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::splitquat::{mul, random_quat, ImSplit, SplitQuaternion, UNIT_TOL};

/// Tolerance of [`is_sp_matrix`].
pub const SP_TOL: f64 = 1e-10;

/// Element of `Bⁿ`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BVector<T> {
    pub entries: Vec<SplitQuaternion<T>>,
}

/// Signs `σ` applied to `(i, s, t)` when `λ(ξ)` acts by right multiplication
/// with `σ₁ξ₁ i + σ₂ξ₂ s + σ₃ξ₃ t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignTable {
    pub sigma: [i8; 3],
}

impl SignTable {
    pub const fn new(sigma: [i8; 3]) -> Self {
        Self { sigma }
    }

    /// All eight tables, in binary order with `+` before `-`.
    pub fn all() -> [SignTable; 8] {
        let mut out = [SignTable::new([1, 1, 1]); 8];
        for (k, t) in out.iter_mut().enumerate() {
            for b in 0..3 {
                if k >> (2 - b) & 1 == 1 {
                    t.sigma[b] = -1;
                }
            }
        }
        out
    }

    pub fn sign<T: Real>(&self, k: usize) -> T {
        T::lit(f64::from(self.sigma[k]))
    }

    /// The right multiplier representing `λ(ξ)`.
    pub fn multiplier<T: Real>(&self, xi: &ImSplit<T>) -> SplitQuaternion<T> {
        SplitQuaternion::new(T::zero(), self.sign::<T>(0) * xi.x, self.sign::<T>(1) * xi.y, self.sign::<T>(2) * xi.z)
    }
}

impl fmt::Display for SignTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |s: i8| if s > 0 { '+' } else { '-' };
        write!(f, "({},{},{})", c(self.sigma[0]), c(self.sigma[1]), c(self.sigma[2]))
    }
}

impl<T: Real> BVector<T> {
    pub fn new(entries: Vec<SplitQuaternion<T>>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![SplitQuaternion::zero(); n])
    }

    /// Number of `B` entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Real dimension `4n`.
    pub fn real_dim(&self) -> usize {
        4 * self.len()
    }

    /// Standard real basis vector `k` of `R⁴ⁿ` (entry `k / 4`, component `k % 4`).
    pub fn real_basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[k / 4] = SplitQuaternion::basis(k % 4);
        v
    }

    pub fn from_reals(xs: &[T]) -> Self {
        assert!(xs.len().is_multiple_of(4), "real coordinates must come in groups of four");
        Self::new(xs.chunks(4).map(|c| SplitQuaternion::new(c[0], c[1], c[2], c[3])).collect())
    }

    pub fn to_reals(&self) -> Vec<T> {
        self.entries.iter().flat_map(|q| q.to_array()).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.entries.iter().zip(&o.entries).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.entries.iter().zip(&o.entries).map(|(a, b)| *a - *b).collect())
    }

    pub fn scale(&self, a: T) -> Self {
        Self::new(self.entries.iter().map(|q| q.scale(a)).collect())
    }

    /// `self + a·o`.
    pub fn axpy(&self, a: T, o: &Self) -> Self {
        Self::new(self.entries.iter().zip(&o.entries).map(|(x, y)| *x + y.scale(a)).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-T::one())
    }

    /// Entrywise `α_k q`.
    pub fn right_mul(&self, q: &SplitQuaternion<T>) -> Self {
        Self::new(self.entries.iter().map(|a| mul(a, q)).collect())
    }

    /// Entrywise `q α_k`.
    pub fn left_mul(&self, q: &SplitQuaternion<T>) -> Self {
        Self::new(self.entries.iter().map(|a| mul(q, a)).collect())
    }

    pub fn max_abs(&self) -> T {
        self.entries.iter().fold(T::zero(), |m, q| m.max(q.max_abs()))
    }

    /// Euclidean norm of the real coordinates.
    pub fn euclid_norm(&self) -> T {
        self.entries.iter().map(|q| q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z).sum::<T>().sqrt()
    }

    pub fn norm_sq(&self) -> T {
        self.entries.iter().map(|q| q.norm_sq()).sum()
    }

    /// Gaussian coordinates.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::new((0..n).map(|_| random_quat(rng)).collect())
    }
}

/// `⟨α, β⟩ = Re(β ᾱᵀ) = Σ_k Re(β_k ᾱ_k)`.
pub fn metric<T: Real>(a: &BVector<T>, b: &BVector<T>) -> Result<T> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    Ok(metric_unchecked(a, b))
}

#[inline]
pub(crate) fn metric_unchecked<T: Real>(a: &BVector<T>, b: &BVector<T>) -> T {
    a.entries.iter().zip(&b.entries).map(|(x, y)| y.inner(*x)).sum()
}

/// `λ(ξ)α`, entrywise right multiplication by [`SignTable::multiplier`].
pub fn lambda_apply<T: Real>(xi: &ImSplit<T>, a: &BVector<T>, table: SignTable) -> BVector<T> {
    a.right_mul(&table.multiplier(xi))
}

/// `ω_ξ(X, Y) = ⟨λ(ξ)X, Y⟩`.
pub fn omega<T: Real>(xi: &ImSplit<T>, x: &BVector<T>, y: &BVector<T>, table: SignTable) -> T {
    metric_unchecked(&lambda_apply(xi, x, table), y)
}

/// Dense `n×n` matrix over `B`, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatMatrix<T> {
    pub n: usize,
    pub data: Vec<SplitQuaternion<T>>,
}

impl<T: Real> QuatMatrix<T> {
    pub fn new(n: usize, data: Vec<SplitQuaternion<T>>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: data.len() });
        }
        Ok(Self { n, data })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![SplitQuaternion::one(); n])
    }

    pub fn diagonal(d: &[SplitQuaternion<T>]) -> Self {
        let n = d.len();
        let mut data = vec![SplitQuaternion::zero(); n * n];
        for (k, q) in d.iter().enumerate() {
            data[k * n + k] = *q;
        }
        Self { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> SplitQuaternion<T> {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: SplitQuaternion<T>) {
        self.data[i * self.n + j] = q;
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = vec![SplitQuaternion::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = SplitQuaternion::zero();
                for k in 0..n {
                    acc += mul(&self.get(i, k), &o.get(k, j));
                }
                out[i * n + j] = acc;
            }
        }
        Self { n, data: out }
    }

    /// `Āᵀ`.
    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut out = vec![SplitQuaternion::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.get(i, j).conj();
            }
        }
        Self { n, data: out }
    }

    pub fn apply(&self, v: &BVector<T>) -> BVector<T> {
        let n = self.n;
        BVector::new(
            (0..n)
                .map(|i| {
                    let mut acc = SplitQuaternion::zero();
                    for j in 0..n {
                        acc += mul(&self.get(i, j), &v.entries[j]);
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `max |A Āᵀ - Id|`.
    pub fn sp_residual(&self) -> T {
        let p = self.matmul(&self.conj_transpose());
        let mut r = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j { SplitQuaternion::one() } else { SplitQuaternion::zero() };
                r = r.max((p.get(i, j) - target).max_abs());
            }
        }
        r
    }
}

pub fn is_sp_matrix<T: Real>(a: &QuatMatrix<T>) -> bool {
    a.sp_residual() <= T::lit(SP_TOL)
}

/// `(A, ξ)·q = A q ξ̄`.
pub fn sp_action<T: Real>(a: &QuatMatrix<T>, xi: &SplitQuaternion<T>, q: &BVector<T>) -> Result<BVector<T>> {
    if a.n != q.len() {
        return Err(Error::DimensionMismatch { expected: a.n, found: q.len() });
    }
    let r = a.sp_residual();
    if r > T::lit(SP_TOL) {
        return Err(Error::NotSymplectic(r.as_f64()));
    }
    let nrm = xi.norm_sq();
    if (nrm - T::one()).abs() > T::lit(UNIT_TOL) {
        return Err(Error::NotUnit(nrm.as_f64()));
    }
    Ok(a.apply(q).right_mul(&xi.conj()))
}

/// Gram matrix of [`metric`] on the standard real basis of `Bⁿ`.
pub fn gram_matrix<T: Real>(n: usize) -> Vec<Vec<T>> {
    let basis: Vec<BVector<T>> = (0..4 * n).map(|k| BVector::real_basis(n, k)).collect();
    basis.iter().map(|a| basis.iter().map(|b| metric_unchecked(a, b)).collect()).collect()
}
