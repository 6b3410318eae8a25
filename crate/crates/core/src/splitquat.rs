//! Split quaternions `B = span(1, i, s, t)` with
//! `i² = -1`, `s² = t² = 1`, `i s = t = -s i`, `t s = i`.
//!
//! The quadratic form `‖p‖² = w² + x² - y² - z²` has neutral signature and is
//! multiplicative; its zero set contains non-trivial zero divisors such as
//! `1 + s`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Below this `|norm_sq|` an element is treated as null.
pub const NULL_TOL: f64 = 1e-12;

/// Tolerance on `|norm_sq - 1|` accepted as a unit.
pub const UNIT_TOL: f64 = 1e-10;

/// Element `w + x i + y s + z t`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SplitQuaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

/// 3×3 real matrix, row major.
pub type Mat3<T> = [[T; 3]; 3];

impl<T: Real> SplitQuaternion<T> {
    pub const fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn s() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn t() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    /// Basis element `(1, i, s, t)[k]`.
    pub fn basis(k: usize) -> Self {
        match k {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::s(),
            3 => Self::t(),
            _ => panic!("split quaternion basis index {k} out of range"),
        }
    }

    pub fn from_array(c: [T; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [T; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> T {
        self.w * self.w + self.x * self.x - self.y * self.y - self.z * self.z
    }

    /// `⟨p, q⟩ = Re(p q̄)`.
    pub fn inner(self, q: Self) -> T {
        self.w * q.w + self.x * q.x - self.y * q.y - self.z * q.z
    }

    pub fn scale(self, a: T) -> Self {
        Self::new(self.w * a, self.x * a, self.y * a, self.z * a)
    }

    pub fn im(self) -> ImSplit<T> {
        ImSplit::new(self.x, self.y, self.z)
    }

    /// `p̄ / ‖p‖²`; fails on (numerically) null elements.
    pub fn inverse(self) -> Result<Self> {
        let n = self.norm_sq();
        if n.abs() <= T::lit(NULL_TOL) {
            return Err(Error::NullDivisor(n.as_f64()));
        }
        Ok(self.conj().scale(T::one() / n))
    }

    pub fn is_unit(self) -> bool {
        (self.norm_sq() - T::one()).abs() <= T::lit(UNIT_TOL)
    }

    pub fn max_abs(self) -> T {
        self.w.abs().max(self.x.abs()).max(self.y.abs()).max(self.z.abs())
    }
}

/// The product of `B`. Besides the defining relations this gives
/// `st = -i`, `ts = i`, `it = -s`, `ti = s`.
pub fn mul<T: Real>(a: &SplitQuaternion<T>, b: &SplitQuaternion<T>) -> SplitQuaternion<T> {
    SplitQuaternion::new(
        a.w * b.w - a.x * b.x + a.y * b.y + a.z * b.z,
        a.w * b.x + a.x * b.w - a.y * b.z + a.z * b.y,
        a.w * b.y + a.y * b.w - a.x * b.z + a.z * b.x,
        a.w * b.z + a.z * b.w + a.x * b.y - a.y * b.x,
    )
}

impl<T: Real> Mul for SplitQuaternion<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        mul(&self, &rhs)
    }
}

impl<T: Real> Mul<T> for SplitQuaternion<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}

impl<T: Real> Add for SplitQuaternion<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl<T: Real> Add for ImSplit<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl<T: Real> AddAssign for SplitQuaternion<T> {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl<T: Real> Sub for SplitQuaternion<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl<T: Real> Neg for SplitQuaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Real> fmt::Display for SplitQuaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}s + {}t", self.w, self.x, self.y, self.z)
    }
}

/// Causal type of an imaginary split quaternion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Causal {
    Spacelike,
    Timelike,
    Null,
}

/// Imaginary split quaternion `x i + y s + z t`, i.e. an element of
/// `sp(1, B)` in the basis `(ξ₁, ξ₂, ξ₃) = (i, s, t)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ImSplit<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> ImSplit<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    /// Basis vector `ξ_k`, `k ∈ {0, 1, 2}` for `(i, s, t)`.
    pub fn basis(k: usize) -> Self {
        let mut c = [T::zero(); 3];
        c[k] = T::one();
        Self::from_array(c)
    }

    pub fn from_array(c: [T; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn to_quat(self) -> SplitQuaternion<T> {
        SplitQuaternion::new(T::zero(), self.x, self.y, self.z)
    }

    pub fn norm_sq(self) -> T {
        self.x * self.x - self.y * self.y - self.z * self.z
    }

    pub fn scale(self, a: T) -> Self {
        Self::new(self.x * a, self.y * a, self.z * a)
    }

    pub fn classify(self) -> Causal {
        let n = self.norm_sq();
        let tol = T::lit(NULL_TOL);
        if n > tol {
            Causal::Spacelike
        } else if n < -tol {
            Causal::Timelike
        } else {
            Causal::Null
        }
    }
}

/// Diagonal of the form on `Im(B)`: `(1, -1, -1)`.
pub fn im_metric_signs<T: Real>() -> [T; 3] {
    [T::one(), -T::one(), -T::one()]
}

/// Matrix of `ξ ↦ q ξ q̄` on `Im(B)` in the basis `(i, s, t)`.
///
/// For a unit `q` this lies in SO⁺(1,2) and preserves `J = diag(1, -1, -1)`.
pub fn adjoint_matrix<T: Real>(q: &SplitQuaternion<T>) -> Result<Mat3<T>> {
    let n = q.norm_sq();
    if (n - T::one()).abs() > T::lit(UNIT_TOL) {
        return Err(Error::NotUnit(n.as_f64()));
    }
    Ok(adjoint_matrix_unchecked(q))
}

pub(crate) fn adjoint_matrix_unchecked<T: Real>(q: &SplitQuaternion<T>) -> Mat3<T> {
    let qc = q.conj();
    let mut m = [[T::zero(); 3]; 3];
    for col in 0..3 {
        let img = mul(&mul(q, &ImSplit::basis(col).to_quat()), &qc).im().to_array();
        for (row, v) in img.into_iter().enumerate() {
            m[row][col] = v;
        }
    }
    m
}

pub fn mat3_mul<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut c = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

pub fn mat3_apply<T: Real>(a: &Mat3<T>, v: [T; 3]) -> [T; 3] {
    let mut out = [T::zero(); 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|k| a[i][k] * v[k]).sum();
    }
    out
}

pub fn mat3_det<T: Real>(m: &Mat3<T>) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mat3_transpose<T: Real>(m: &Mat3<T>) -> Mat3<T> {
    let mut t = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = m[j][i];
        }
    }
    t
}

pub fn mat3_max_abs_diff<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> T {
    let mut m = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

/// `max |MᵀJM - J|` with `J = diag(1, -1, -1)`.
pub fn lorentz_residual<T: Real>(m: &Mat3<T>) -> T {
    let j = im_metric_signs::<T>();
    let mut r = T::zero();
    for a in 0..3 {
        for b in 0..3 {
            let v: T = (0..3).map(|k| m[k][a] * j[k] * m[k][b]).sum();
            let target = if a == b { j[a] } else { T::zero() };
            r = r.max((v - target).abs());
        }
    }
    r
}

/// Unit split quaternion on the component of SU(1,1) through `1`, drawn from
/// `rng`: the imaginary part is Gaussian and the real part is the positive
/// root of `w² = 1 - x² + y² + z²`, rejecting draws with no real root.
pub fn random_unit_with<T: Real, R: Rng + ?Sized>(rng: &mut R) -> SplitQuaternion<T> {
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        let w2 = 1.0 + y * y + z * z - x * x;
        if w2 >= 0.0 {
            return SplitQuaternion::new(T::lit(w2.sqrt()), T::lit(x), T::lit(y), T::lit(z));
        }
    }
}

/// Deterministic [`random_unit_with`] seeded from `seed`.
pub fn random_unit<T: Real>(seed: u64) -> SplitQuaternion<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unit_with(&mut rng)
}

/// Split quaternion with i.i.d. standard normal coefficients.
pub fn random_quat<T: Real, R: Rng + ?Sized>(rng: &mut R) -> SplitQuaternion<T> {
    let mut c = [T::zero(); 4];
    for v in &mut c {
        *v = T::lit(rng.sample(StandardNormal));
    }
    SplitQuaternion::from_array(c)
}

/// Imaginary split quaternion with i.i.d. standard normal coefficients.
pub fn random_im<T: Real, R: Rng + ?Sized>(rng: &mut R) -> ImSplit<T> {
    ImSplit::new(
        T::lit(rng.sample(StandardNormal)),
        T::lit(rng.sample(StandardNormal)),
        T::lit(rng.sample(StandardNormal)),
    )
}
