//! The permuting calculus on the flat model `(Bⁿ⁺¹)*₊`, the spacelike cone of
//! `Bⁿ⁺¹` with the right action `h ↦ h q̄`.
//!
//! Everything is closed form: `K_ξ(h) = -h ξ`, `χ(ξ_a, ξ_b) = λ(ξ_a) K_{ξ_b}`,
//! `γ = ½ g(χ, ·)`. The Clebsch-Gordan parts are taken with the indefinite
//! form `g_B = diag(1, -1, -1)` on `sp(1,B)`, and the alternating parts are
//! identified with `sp(1,B)` through the bracket
//! `[i,s] = 2t`, `[s,t] = -2i`, `[t,i] = 2s`.

use crate::bmodule::{lambda_apply, metric_unchecked, omega, BVector, SignTable};
use crate::calibration;
use crate::error::{Error, Result};
use num_traits::{One, Zero};

use crate::scalar::Real;
use crate::splitquat::{ImSplit, SplitQuaternion, NULL_TOL};

/// Minimum `g(h, h)` for a point of the spacelike cone.
pub const SPACELIKE_TOL: f64 = 1e-10;

/// Step of every central finite difference in this module.
pub const FD_STEP: f64 = 1e-4;

/// Point `h` of the spacelike cone.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatPoint<T> {
    h: BVector<T>,
}

impl<T: Real> FlatPoint<T> {
    pub fn new(h: BVector<T>) -> Result<Self> {
        let g = h.norm_sq();
        if !(g > T::lit(SPACELIKE_TOL)) {
            return Err(Error::NotSpacelike(g.as_f64()));
        }
        Ok(Self { h })
    }

    pub fn h(&self) -> &BVector<T> {
        &self.h
    }

    pub fn into_inner(self) -> BVector<T> {
        self.h
    }

    /// `‖h‖²`.
    pub fn norm_sq(&self) -> T {
        self.h.norm_sq()
    }
}

/// Values an [`SpBilinear`] can carry.
pub trait Linear: Clone {
    type Scalar: Real;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, a: Self::Scalar) -> Self;
}

impl<T: Real> Linear for T {
    type Scalar = T;
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn scale(&self, a: T) -> Self {
        *self * a
    }
}

impl<T: Real> Linear for Vec<T> {
    type Scalar = T;
    fn add(&self, o: &Self) -> Self {
        self.iter().zip(o).map(|(a, b)| *a + *b).collect()
    }
    fn scale(&self, a: T) -> Self {
        self.iter().map(|x| *x * a).collect()
    }
}

impl<T: Real> Linear for BVector<T> {
    type Scalar = T;
    fn add(&self, o: &Self) -> Self {
        BVector::add(self, o)
    }
    fn scale(&self, a: T) -> Self {
        BVector::scale(self, a)
    }
}

/// Bilinear form on `sp(1,B)` in the basis `(i, s, t)` with values in `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpBilinear<V> {
    pub m: [[V; 3]; 3],
}

/// Output of [`decompose`].
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<V> {
    pub trace: V,
    pub alt: SpBilinear<V>,
    pub sym0: SpBilinear<V>,
}

/// Signs `ε = (1, -1, -1)` of `g_B`.
pub fn eps<T: Real>() -> [T; 3] {
    [T::one(), -T::one(), -T::one()]
}

/// Orientation signs of the bracket identification
/// `Alt(a, b) ↦ c_k` for cyclic `(a, b, k)`.
const BRACKET_SIGN: [f64; 3] = [-1.0, 1.0, 1.0];

impl<V> SpBilinear<V> {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> V) -> Self {
        Self { m: std::array::from_fn(|a| std::array::from_fn(|b| f(a, b))) }
    }

    pub fn map<W>(&self, mut f: impl FnMut(&V) -> W) -> SpBilinear<W> {
        SpBilinear::from_fn(|a, b| f(&self.m[a][b]))
    }
}

impl<V: Linear> SpBilinear<V> {
    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(|a, b| self.m[a][b].add(&o.m[a][b]))
    }

    /// `g_B ⊗ v`.
    pub fn pure_trace(v: &V) -> Self {
        let e = eps::<V::Scalar>();
        let zero = v.scale(<V::Scalar>::zero());
        Self::from_fn(|a, b| if a == b { v.scale(e[a]) } else { zero.clone() })
    }
}

/// Splits `T = (trace/3) g_B + Alt T + Sym₀ T`, trace taken with `g_B`.
pub fn decompose<V: Linear>(t: &SpBilinear<V>) -> Decomposition<V> {
    let e = eps::<V::Scalar>();
    let half = <V::Scalar>::lit(0.5);
    let trace = t.m[0][0].scale(e[0]).add(&t.m[1][1].scale(e[1])).add(&t.m[2][2].scale(e[2]));
    let third = trace.scale(<V::Scalar>::one() / <V::Scalar>::lit(3.0));
    let zero = trace.scale(<V::Scalar>::zero());
    let alt = SpBilinear::from_fn(|a, b| {
        if a == b {
            zero.clone()
        } else {
            t.m[a][b].add(&t.m[b][a].scale(-<V::Scalar>::one())).scale(half)
        }
    });
    let sym0 = SpBilinear::from_fn(|a, b| {
        let s = t.m[a][b].add(&t.m[b][a]).scale(half);
        if a == b {
            s.add(&third.scale(-e[a]))
        } else {
            s
        }
    });
    Decomposition { trace, alt, sym0 }
}

/// Inverse of [`decompose`].
pub fn reassemble<V: Linear>(d: &Decomposition<V>) -> SpBilinear<V> {
    SpBilinear::pure_trace(&d.trace.scale(<V::Scalar>::one() / <V::Scalar>::lit(3.0))).add(&d.alt).add(&d.sym0)
}

/// Identifies an alternating form with an `sp(1,B)`-indexed triple through
/// the bracket of `Im B`.
pub fn alt_to_sp<V: Linear>(alt: &SpBilinear<V>) -> [V; 3] {
    std::array::from_fn(|k| {
        let (a, b) = ((k + 1) % 3, (k + 2) % 3);
        alt.m[a][b].scale(<V::Scalar>::lit(BRACKET_SIGN[k]))
    })
}

/// `K_ξ(h) = d/dt|₀ h·exp(tξ)‾ = -h ξ`.
pub fn fundamental_field<T: Real>(xi: &ImSplit<T>, h: &BVector<T>) -> BVector<T> {
    h.right_mul(&xi.to_quat()).neg()
}

/// Metric dual `g(Z, ·)` as coordinates on the standard real basis.
pub fn flat<T: Real>(z: &BVector<T>) -> Vec<T> {
    z.entries.iter().flat_map(|q| [q.w, q.x, -q.y, -q.z]).collect()
}

/// Evaluates a covector on a vector.
pub fn pair<T: Real>(c: &[T], v: &BVector<T>) -> T {
    c.iter().zip(v.to_reals()).map(|(a, b)| *a * b).sum()
}

/// `χ(ξ, ξ') = λ(ξ) K_{ξ'}(h)` for arbitrary `ξ, ξ'`.
pub fn chi_pair<T: Real>(xi: &ImSplit<T>, xi2: &ImSplit<T>, h: &BVector<T>, table: SignTable) -> BVector<T> {
    lambda_apply(xi, &fundamental_field(xi2, h), table)
}

/// `χ(a, b) = λ(ξ_a) K_{ξ_b}(h)` on the basis.
pub fn chi<T: Real>(h: &BVector<T>, table: SignTable) -> SpBilinear<BVector<T>> {
    let k: [BVector<T>; 3] = std::array::from_fn(|b| fundamental_field(&ImSplit::basis(b), h));
    SpBilinear::from_fn(|a, b| lambda_apply(&ImSplit::basis(a), &k[b], table))
}

/// Parts of `χ`: `χ₀ = -⅓ tr χ`, `χ₁` the alternating part read in `sp(1,B)`,
/// `χ₂ = -Sym₀ χ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiParts<T> {
    pub chi0: BVector<T>,
    pub chi1: [BVector<T>; 3],
    pub chi2: SpBilinear<BVector<T>>,
}

impl<T: Real> ChiParts<T> {
    pub fn chi2_norm(&self) -> T {
        self.chi2.m.iter().flatten().fold(T::zero(), |m, v| m.max(v.max_abs()))
    }
}

pub fn chi_parts<T: Real>(h: &BVector<T>, table: SignTable) -> ChiParts<T> {
    let d = decompose(&chi(h, table));
    ChiParts { chi0: d.trace.scale(-T::one() / T::lit(3.0)), chi1: alt_to_sp(&d.alt), chi2: d.sym0.map(|v| v.neg()) }
}

/// `γ(a, b) = ½ g(χ(a, b), ·)`.
pub fn gamma<T: Real>(h: &BVector<T>, table: SignTable) -> SpBilinear<Vec<T>> {
    chi(h, table).map(|z| flat(z).scale(T::lit(0.5)))
}

/// The `sp(1,B)*`-valued part `γ₁` of `ι ω = 2γ`; `γ₁(ξ_k) = g(X₁(ξ_k), ·)`.
pub fn gamma1<T: Real>(h: &BVector<T>, table: SignTable) -> [Vec<T>; 3] {
    let x1 = chi_parts(h, table).chi1;
    std::array::from_fn(|k| flat(&x1[k]))
}

/// `E = -λ(ξ) K_ξ` for unit spacelike `ξ`; `ξ = i` by default via [`euler`].
pub fn euler_along<T: Real>(xi: &ImSplit<T>, h: &BVector<T>, table: SignTable) -> BVector<T> {
    chi_pair(xi, xi, h, table).neg()
}

pub fn euler<T: Real>(h: &FlatPoint<T>, table: SignTable) -> BVector<T> {
    euler_along(&ImSplit::basis(0), h.h(), table)
}

/// `ρ(c, d) = ½ γ₁(ξ_d)(K_{ξ_c})`.
pub fn rho_matrix<T: Real>(h: &BVector<T>, table: SignTable) -> [[T; 3]; 3] {
    let x1 = chi_parts(h, table).chi1;
    let k: [BVector<T>; 3] = std::array::from_fn(|c| fundamental_field(&ImSplit::basis(c), h));
    let half = T::lit(0.5);
    std::array::from_fn(|c| std::array::from_fn(|d| half * metric_unchecked(&x1[d], &k[c])))
}

/// `ρ = (ρ₀, ρ₁, ρ₂)` with `ρ₀ = ⅓ tr ρ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rho<T> {
    pub rho0: T,
    pub rho1: ImSplit<T>,
    pub rho2: [[T; 3]; 3],
}

impl<T: Real> Rho<T> {
    pub fn rho2_norm(&self) -> T {
        self.rho2.iter().flatten().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

fn rho_of<T: Real>(h: &BVector<T>, table: SignTable) -> Rho<T> {
    let d = decompose(&SpBilinear { m: rho_matrix(h, table) });
    Rho { rho0: d.trace / T::lit(3.0), rho1: ImSplit::from_array(alt_to_sp(&d.alt)), rho2: d.sym0.m }
}

pub fn rho<T: Real>(h: &FlatPoint<T>, table: SignTable) -> Rho<T> {
    rho_of(h.h(), table)
}

/// `ρ₀` at an arbitrary point of `Bⁿ⁺¹` (used off the cone by the
/// finite-difference checks).
pub fn rho0_at<T: Real>(h: &BVector<T>, table: SignTable) -> T {
    rho_of(h, table).rho0
}

/// `κ(ξ) = ρ(ξ, ξ) = ½ γ₁(ξ)(K_ξ)`.
pub fn kappa<T: Real>(xi: &ImSplit<T>, h: &BVector<T>, table: SignTable) -> Result<T> {
    let n = xi.norm_sq();
    if n.abs() <= T::lit(NULL_TOL) {
        return Err(Error::NullDirection(n.as_f64()));
    }
    Ok(kappa_unchecked(xi, h, table))
}

fn kappa_unchecked<T: Real>(xi: &ImSplit<T>, h: &BVector<T>, table: SignTable) -> T {
    let r = rho_matrix(h, table);
    let c = xi.to_array();
    let mut s = T::zero();
    for a in 0..3 {
        for b in 0..3 {
            s += c[a] * c[b] * r[a][b];
        }
    }
    s
}

/// `dα(X, Y) = X α(Y) - Y α(X)` for constant fields, by central differences.
pub fn fd_exterior_derivative<T: Real, F>(alpha: F, h: &BVector<T>, x: &BVector<T>, y: &BVector<T>, step: T) -> T
where
    F: Fn(&BVector<T>, &BVector<T>) -> T,
{
    let two = T::lit(2.0);
    let dxy = (alpha(&h.axpy(step, x), y) - alpha(&h.axpy(-step, x), y)) / (two * step);
    let dyx = (alpha(&h.axpy(step, y), x) - alpha(&h.axpy(-step, y), x)) / (two * step);
    dxy - dyx
}

/// Directional derivative `df_h(v)` by central differences.
pub fn fd_directional<T: Real, F>(f: F, h: &BVector<T>, v: &BVector<T>, step: T) -> T
where
    F: Fn(&BVector<T>) -> T,
{
    (f(&h.axpy(step, v)) - f(&h.axpy(-step, v))) / (T::lit(2.0) * step)
}

/// `d(I_ξ* dρ₀)(X, Y) - 2ε ω_ξ(X, Y)` with `I*α(v) = -α(Iv)`, relative to
/// `max(1, |2ω_ξ(X, Y)|)`, maximised over the supplied pairs.
pub fn potential_check<T: Real>(
    h: &BVector<T>,
    xi: &ImSplit<T>,
    pairs: &[(BVector<T>, BVector<T>)],
    table: SignTable,
) -> T {
    let k = xi_index(xi);
    let target_eps = T::lit(calibration::POTENTIAL_EPS[k.unwrap_or(0)]);
    let factor = T::lit(calibration::POTENTIAL_FACTOR);
    let step = T::lit(FD_STEP);
    let alpha =
        |p: &BVector<T>, v: &BVector<T>| -fd_directional(|q| rho0_at(q, table), p, &lambda_apply(xi, v, table), step);
    let mut worst = T::zero();
    for (x, y) in pairs {
        let d = fd_exterior_derivative(alpha, h, x, y, step);
        let w = factor * target_eps * omega(xi, x, y, table);
        let r = (d - w).abs() / T::one().max(w.abs());
        worst = worst.max(r);
    }
    worst
}

/// `max |dγ₁(ξ_k)(X, Y) - 2ω_k(X, Y)|` over `k` and the pairs, relative to
/// `max(1, |2ω|)`.
pub fn d_gamma1_residual<T: Real>(h: &BVector<T>, pairs: &[(BVector<T>, BVector<T>)], table: SignTable) -> T {
    let step = T::lit(FD_STEP);
    let two = T::lit(2.0);
    let mut worst = T::zero();
    for k in 0..3 {
        let alpha = |p: &BVector<T>, v: &BVector<T>| pair(&gamma1(p, table)[k], v);
        for (x, y) in pairs {
            let d = fd_exterior_derivative(alpha, h, x, y, step);
            let w = two * omega(&ImSplit::basis(k), x, y, table);
            worst = worst.max((d - w).abs() / T::one().max(w.abs()));
        }
    }
    worst
}

/// `max |dκ(ξ)(Y) - ω_ξ(Y, K_ξ)|` over `ξ ∈ {i, s, t}` and the directions,
/// relative to `max(1, |ω|)`.
pub fn kappa_moment_residual<T: Real>(h: &BVector<T>, dirs: &[BVector<T>], table: SignTable) -> T {
    let step = T::lit(FD_STEP);
    let mut worst = T::zero();
    for k in 0..3 {
        let xi = ImSplit::basis(k);
        let kx = fundamental_field(&xi, h);
        for y in dirs {
            let d = fd_directional(|p| kappa_unchecked(&xi, p, table), h, y, step);
            let w = omega(&xi, y, &kx, table);
            worst = worst.max((d - w).abs() / T::one().max(w.abs()));
        }
    }
    worst
}

/// `max |dρ₀(v) - g(E, v)|` over the directions, relative to `max(1, |g(E, v)|)`.
pub fn gradient_residual<T: Real>(h: &FlatPoint<T>, dirs: &[BVector<T>], table: SignTable) -> T {
    let e = euler(h, table);
    let step = T::lit(FD_STEP);
    let mut worst = T::zero();
    for v in dirs {
        let d = fd_directional(|p| rho0_at(p, table), h.h(), v, step);
        let w = metric_unchecked(&e, v);
        worst = worst.max((d - w).abs() / T::one().max(w.abs()));
    }
    worst
}

/// `max |∇²ρ₀(X, Y) - g(X, Y)|` by second differences.
pub fn hessian_residual<T: Real>(h: &BVector<T>, pairs: &[(BVector<T>, BVector<T>)], table: SignTable) -> T {
    let step = T::lit(FD_STEP);
    let mut worst = T::zero();
    for (x, y) in pairs {
        let hxy = fd_directional(|p| fd_directional(|q| rho0_at(q, table), p, y, step), h, x, step);
        let g = metric_unchecked(x, y);
        worst = worst.max((hxy - g).abs() / T::one().max(g.abs()));
    }
    worst
}

fn xi_index<T: Real>(xi: &ImSplit<T>) -> Option<usize> {
    (0..3).find(|&k| *xi == ImSplit::basis(k))
}

/// `h ↦ h q̄`.
pub fn act<T: Real>(q: &SplitQuaternion<T>, h: &BVector<T>) -> BVector<T> {
    h.right_mul(&q.conj())
}
