//! The split 3-Sasakian structure of the unit pseudo-sphere
//! `S₊ = { p ∈ Bⁿ⁺¹ : ‖p‖² = 1 }` and the horizontal data of the quotient by
//! `Sp(1,B)`.
//!
//! Structures are indexed by `k ∈ {0, 1, 2}` for `ξ_k ∈ {i, s, t}`:
//!
//! * Reeb fields `X_k(p) = K_{ξ_k}(p) = -p ξ_k`, of lengths `τ = (1, -1, -1)`;
//! * `η_k(Y) = τ_k g(X_k, Y)`;
//! * `Φ_k(Y) = λ(ξ_k) Y + τ_k η_k(Y) p`.
//!
//! Fields are extended off the sphere as polynomial maps of the ambient point;
//! exterior derivatives and brackets use central differences of those
//! extensions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bmodule::{lambda_apply, metric_unchecked, omega, BVector};
use crate::calibration::{BRACKET_SIGN, CALIBRATED, CONTACT_EPS, NORMALITY_FACTOR, REEB_TAU};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::splitquat::{mul, ImSplit, SplitQuaternion};

/// Accepted `|‖p‖² - 1|`.
pub const SPHERE_TOL: f64 = 1e-10;

/// Step of the central differences.
pub const FD_STEP: f64 = 1e-4;

/// Relative rank tolerance in [`horizontal_basis`].
pub const RANK_TOL: f64 = 1e-8;

/// Point of `S₊`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpherePoint<T> {
    p: BVector<T>,
}

impl<T: Real> SpherePoint<T> {
    pub fn new(p: BVector<T>) -> Result<Self> {
        let g = p.norm_sq();
        if !((g - T::one()).abs() <= T::lit(SPHERE_TOL)) {
            return Err(Error::NotOnSphere(g.as_f64()));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> &BVector<T> {
        &self.p
    }

    /// Number of `B` entries, `n + 1`.
    pub fn entries(&self) -> usize {
        self.p.len()
    }

    /// `p q̄`.
    pub fn act(&self, q: &SplitQuaternion<T>) -> Result<Self> {
        Self::new(self.p.right_mul(&q.conj()))
    }
}

/// Max residual of each contact axiom over the sampled data.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ContactReport {
    pub phi_square: f64,
    pub eta_of_reeb: f64,
    pub eta_of_phi: f64,
    pub metric_compat: f64,
    pub d_eta: f64,
    pub normality: f64,
    pub bracket: f64,
    pub lengths: f64,
}

impl ContactReport {
    /// Componentwise maximum.
    pub fn merge(&mut self, o: &Self) {
        self.phi_square = self.phi_square.max(o.phi_square);
        self.eta_of_reeb = self.eta_of_reeb.max(o.eta_of_reeb);
        self.eta_of_phi = self.eta_of_phi.max(o.eta_of_phi);
        self.metric_compat = self.metric_compat.max(o.metric_compat);
        self.d_eta = self.d_eta.max(o.d_eta);
        self.normality = self.normality.max(o.normality);
        self.bracket = self.bracket.max(o.bracket);
        self.lengths = self.lengths.max(o.lengths);
    }
}

fn tau<T: Real>(k: usize) -> T {
    T::lit(REEB_TAU[k])
}

fn xi<T: Real>(k: usize) -> ImSplit<T> {
    ImSplit::basis(k)
}

/// `X - g(p, X) p / g(p, p)`.
pub fn tangent_project<T: Real>(p: &BVector<T>, x: &BVector<T>) -> BVector<T> {
    x.axpy(-metric_unchecked(p, x) / metric_unchecked(p, p), p)
}

/// Reeb field `X_k(p) = -p ξ_k`.
pub fn reeb<T: Real>(k: usize, p: &BVector<T>) -> BVector<T> {
    p.right_mul(&xi::<T>(k).to_quat()).neg()
}

/// `η_k(Y) = τ_k g(X_k, Y)` at `p`.
pub fn eta<T: Real>(k: usize, p: &BVector<T>, y: &BVector<T>) -> T {
    tau::<T>(k) * metric_unchecked(&reeb(k, p), y)
}

/// `Φ_k(Y) = λ(ξ_k) Y + τ_k η_k(Y) p` at `p`.
pub fn phi<T: Real>(k: usize, p: &BVector<T>, y: &BVector<T>) -> BVector<T> {
    lambda_apply(&xi(k), y, CALIBRATED).axpy(tau::<T>(k) * eta(k, p, y), p)
}

/// `β_k(A, B) = g(Φ_k A, B)`.
pub fn beta<T: Real>(k: usize, p: &BVector<T>, a: &BVector<T>, b: &BVector<T>) -> T {
    metric_unchecked(&phi(k, p, a), b)
}

/// Reeb brackets `½[X_a, X_b]` in closed form: the fields are the linear maps
/// `q ↦ -q ξ_a`, so `[X_a, X_b](q) = q [ξ_a, ξ_b]`.
pub fn half_reeb_bracket<T: Real>(a: usize, b: usize, p: &BVector<T>) -> BVector<T> {
    let (xa, xb) = (xi::<T>(a).to_quat(), xi::<T>(b).to_quat());
    let c = mul(&xa, &xb) - mul(&xb, &xa);
    p.right_mul(&c).scale(T::lit(0.5))
}

/// Reference relations `½[X_a, X_b] = c X_k`: `(a, b, k, c)`.
pub const REEB_TABLE: [(usize, usize, usize, f64); 3] = [(0, 1, 2, 1.0), (1, 2, 0, -1.0), (2, 0, 1, 1.0)];

type Field<'a, T> = Box<dyn Fn(&BVector<T>) -> BVector<T> + 'a>;

/// Tangent extension `q ↦ X₀ - g(q, X₀) q` of a vector at `p`.
fn extend<'a, T: Real>(x0: &'a BVector<T>) -> Field<'a, T> {
    Box::new(move |q| x0.axpy(-metric_unchecked(q, x0), q))
}

fn phi_field<'a, T: Real>(k: usize, a: &'a Field<'a, T>) -> Field<'a, T> {
    Box::new(move |q| phi(k, q, &a(q)))
}

/// `D_v F(p)` by central differences.
fn fd_deriv<T: Real>(f: &dyn Fn(&BVector<T>) -> BVector<T>, p: &BVector<T>, v: &BVector<T>) -> BVector<T> {
    let h = T::lit(FD_STEP);
    f(&p.axpy(h, v)).sub(&f(&p.axpy(-h, v))).scale(T::one() / (T::lit(2.0) * h))
}

/// `[A, B](p) = D_A B - D_B A`, projected to `T_p S₊`.
fn lie_bracket<T: Real>(a: &Field<'_, T>, b: &Field<'_, T>, p: &BVector<T>) -> BVector<T> {
    let r = fd_deriv(b.as_ref(), p, &a(p)).sub(&fd_deriv(a.as_ref(), p, &b(p)));
    tangent_project(p, &r)
}

/// `dη_k(X, Y) = ½(X η_k(Y) - Y η_k(X) - η_k([X, Y]))` by central differences.
pub fn d_eta_fd<T: Real>(k: usize, p: &BVector<T>, x0: &BVector<T>, y0: &BVector<T>) -> T {
    let (x, y) = (extend(x0), extend(y0));
    let h = T::lit(FD_STEP);
    let two = T::lit(2.0);
    let dir = |f: &Field<'_, T>, v: &BVector<T>| {
        let (pp, pm) = (p.axpy(h, v), p.axpy(-h, v));
        (eta(k, &pp, &f(&pp)) - eta(k, &pm, &f(&pm))) / (two * h)
    };
    let xy = dir(&y, &x(p));
    let yx = dir(&x, &y(p));
    let br = eta(k, p, &lie_bracket(&x, &y, p));
    T::lit(0.5) * (xy - yx - br)
}

/// Nijenhuis tensor `N_Φ(X, Y) = Φ²[X,Y] + [ΦX,ΦY] - Φ[ΦX,Y] - Φ[X,ΦY]`.
pub fn nijenhuis_fd<T: Real>(k: usize, p: &BVector<T>, x0: &BVector<T>, y0: &BVector<T>) -> BVector<T> {
    let (x, y) = (extend(x0), extend(y0));
    let (px, py) = (phi_field(k, &x), phi_field(k, &y));
    let ph = |v: &BVector<T>| phi(k, p, v);
    ph(&ph(&lie_bracket(&x, &y, p)))
        .add(&lie_bracket(&px, &py, p))
        .sub(&ph(&lie_bracket(&px, &y, p)))
        .sub(&ph(&lie_bracket(&x, &py, p)))
}

fn rel<T: Real>(diff: T, scale: T) -> f64 {
    (diff.abs() / T::one().max(scale.abs())).as_f64()
}

fn rel_vec<T: Real>(diff: &BVector<T>, scale: &BVector<T>) -> f64 {
    rel(diff.max_abs(), scale.max_abs())
}

/// Gaussian ambient vectors projected to `T_p S₊` and scaled to unit
/// Euclidean length.
pub fn sample_tangent<T: Real>(p: &BVector<T>, count: usize, rng: &mut ChaCha8Rng) -> Vec<BVector<T>> {
    (0..count)
        .map(|_| loop {
            let x = BVector::random(p.len(), rng);
            let v = tangent_project(p, &x);
            let n = v.euclid_norm();
            if n > T::lit(1e-6) * x.euclid_norm() {
                break v.scale(T::one() / n);
            }
        })
        .collect()
}

/// Tangent samples use a stream disjoint from the per-point streams.
fn sample_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    rng
}

/// Evaluates every contact axiom at `p` on `n_samples` tangent pairs.
pub fn contact_axioms<T: Real>(p: &SpherePoint<T>, n_samples: usize, seed: u64) -> ContactReport {
    let p = p.p();
    let mut rng = sample_rng(seed);
    let xs = sample_tangent(p, n_samples, &mut rng);
    let ys = sample_tangent(p, n_samples, &mut rng);
    let reebs: [BVector<T>; 3] = std::array::from_fn(|k| reeb(k, p));
    let mut r = ContactReport::default();

    for k in 0..3 {
        let tk = tau::<T>(k);
        r.lengths = r.lengths.max(rel(metric_unchecked(&reebs[k], &reebs[k]) - tk, tk));
        r.lengths = r.lengths.max(rel(metric_unchecked(p, &reebs[k]), T::one()));
        for j in 0..3 {
            let want = if j == k { T::one() } else { T::zero() };
            r.eta_of_reeb = r.eta_of_reeb.max(rel(eta(k, p, &reebs[j]) - want, T::one()));
        }
        r.eta_of_phi = r.eta_of_phi.max(rel_vec(&phi(k, p, &reebs[k]), &reebs[k]));
        for (a, b, c, sign) in REEB_TABLE {
            let want = reebs[c].scale(T::lit(BRACKET_SIGN * sign));
            r.bracket = r.bracket.max(rel_vec(&half_reeb_bracket(a, b, p).sub(&want), &want));
        }
    }

    for (x, y) in xs.iter().zip(&ys) {
        for k in 0..3 {
            let (tk, ek) = (tau::<T>(k), T::lit(CONTACT_EPS[k]));
            let (phx, phy) = (phi(k, p, x), phi(k, p, y));
            let (ex, ey) = (eta(k, p, x), eta(k, p, y));
            r.eta_of_phi = r.eta_of_phi.max(rel(eta(k, p, &phx), T::one()));
            r.eta_of_phi = r.eta_of_phi.max(rel(metric_unchecked(p, &phx), T::one()));

            let want = x.axpy(-ex, &reebs[k]).scale(ek);
            r.phi_square = r.phi_square.max(rel_vec(&phi(k, p, &phx).sub(&want), &want));

            let lhs = metric_unchecked(&phx, &phy);
            let rhs = ek * (-metric_unchecked(x, y) + tk * ex * ey);
            r.metric_compat = r.metric_compat.max(rel(lhs - rhs, rhs));

            let de = d_eta_fd(k, p, x, y);
            let de_want = tk * beta(k, p, x, y);
            r.d_eta = r.d_eta.max(rel(de - de_want, de_want));

            let n = nijenhuis_fd(k, p, x, y);
            let n_want = reebs[k].scale(T::lit(NORMALITY_FACTOR) * ek * de);
            r.normality = r.normality.max(rel_vec(&n.sub(&n_want), &n_want));
        }
    }
    r
}

/// The frame `(p, X₁, X₂, X₃)` of `𝒩 ⊕ 𝒱`, `g`-orthogonal with norms
/// `(1, 1, -1, -1)`.
fn vertical_frame<T: Real>(p: &BVector<T>) -> [BVector<T>; 4] {
    [p.clone(), reeb(0, p), reeb(1, p), reeb(2, p)]
}

/// Removes the `𝒩 ⊕ 𝒱` component of `v`.
pub fn horizontal_project<T: Real>(p: &BVector<T>, v: &BVector<T>) -> BVector<T> {
    let mut out = v.clone();
    for u in vertical_frame(p) {
        out = out.axpy(-metric_unchecked(&u, v) / metric_unchecked(&u, &u), &u);
    }
    out
}

/// Basis of `ℋ = T_p S₊ ∩ ker η₁ ∩ ker η₂ ∩ ker η₃`, Euclidean orthonormal.
pub fn horizontal_basis<T: Real>(p: &SpherePoint<T>) -> Result<Vec<BVector<T>>> {
    let p = p.p();
    let n = p.len();
    let expected = 4 * (n - 1);
    let mut basis: Vec<BVector<T>> = Vec::with_capacity(expected);
    let mut scale = T::zero();
    for j in 0..4 * n {
        let v = horizontal_project(p, &BVector::real_basis(n, j));
        scale = scale.max(v.euclid_norm());
        let mut w = v;
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let c: T = w.to_reals().iter().zip(b.to_reals()).map(|(x, y)| *x * y).sum();
                w = w.axpy(-c, b);
            }
        }
        let nw = w.euclid_norm();
        if nw > T::lit(RANK_TOL) * scale.max(T::one()) {
            basis.push(w.scale(T::one() / nw));
        }
        if basis.len() == expected {
            break;
        }
    }
    if basis.len() != expected {
        return Err(Error::DegenerateBasis { rank: basis.len(), expected });
    }
    Ok(basis)
}

/// `max |g(λ(ξ_k) v, u)|` over horizontal basis vectors `v`, `k` and
/// `u ∈ {p, X₁, X₂, X₃}`.
pub fn horizontal_invariance<T: Real>(p: &SpherePoint<T>, basis: &[BVector<T>]) -> T {
    let frame = vertical_frame(p.p());
    let mut worst = T::zero();
    for v in basis {
        for k in 0..3 {
            let lv = lambda_apply(&xi(k), v, CALIBRATED);
            for u in &frame {
                worst = worst.max(metric_unchecked(&lv, u).abs());
            }
        }
    }
    worst
}

/// `θ_k = β_k + Σ_{a,b} ε_{kab} η_a ∧ η_b`.
pub fn theta<T: Real>(k: usize, p: &BVector<T>, a: &BVector<T>, b: &BVector<T>) -> T {
    let (j, l) = ((k + 1) % 3, (k + 2) % 3);
    let wedge = eta(j, p, a) * eta(l, p, b) - eta(l, p, a) * eta(j, p, b);
    beta(k, p, a, b) + T::lit(2.0) * wedge
}

fn perms4() -> Vec<([usize; 4], bool)> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let d = 6usize.wrapping_sub(a + b + c);
                let p = [a, b, c, d];
                let distinct = d < 4 && (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                if distinct {
                    let inversions =
                        (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    out.push((p, inversions % 2 == 0));
                }
            }
        }
    }
    out
}

/// `(α ∧ β)(v₀, v₁, v₂, v₃) = ¼ Σ_{σ ∈ S₄} sgn σ α(v_σ0, v_σ1) β(v_σ2, v_σ3)`.
pub fn wedge22<T: Real, A, B>(alpha: A, beta: B, v: [&BVector<T>; 4]) -> T
where
    A: Fn(&BVector<T>, &BVector<T>) -> T,
    B: Fn(&BVector<T>, &BVector<T>) -> T,
{
    let mut s = T::zero();
    for (perm, even) in perms4() {
        let term = alpha(v[perm[0]], v[perm[1]]) * beta(v[perm[2]], v[perm[3]]);
        s += if even { term } else { -term };
    }
    s * T::lit(0.25)
}

/// `Ω̂ = θ₁∧θ₁ - θ₂∧θ₂ - θ₃∧θ₃`.
pub fn omega_hat<T: Real>(p: &BVector<T>, w: &BVector<T>, x: &BVector<T>, y: &BVector<T>, z: &BVector<T>) -> T {
    let mut s = T::zero();
    for k in 0..3 {
        let th = |a: &BVector<T>, b: &BVector<T>| theta(k, p, a, b);
        s += T::lit(REEB_TAU[k]) * wedge22(th, th, [w, x, y, z]);
    }
    s
}

/// `ι*ω₁∧ι*ω₁ - ι*ω₂∧ι*ω₂ - ι*ω₃∧ι*ω₃`.
pub fn omega_sum<T: Real>(w: &BVector<T>, x: &BVector<T>, y: &BVector<T>, z: &BVector<T>) -> T {
    let mut s = T::zero();
    for k in 0..3 {
        let om = |a: &BVector<T>, b: &BVector<T>| omega(&xi(k), a, b, CALIBRATED);
        s += T::lit(REEB_TAU[k]) * wedge22(om, om, [w, x, y, z]);
    }
    s
}

fn random_horizontal<T: Real>(basis: &[BVector<T>], rng: &mut ChaCha8Rng) -> BVector<T> {
    use rand_distr::{Distribution, StandardNormal};
    let mut v = BVector::zeros(basis[0].len());
    for b in basis {
        let c: f64 = StandardNormal.sample(rng);
        v = v.axpy(T::lit(c), b);
    }
    v
}

/// `max |Ω̂ - Σ ±ι*ω_k∧ι*ω_k|` on random horizontal 4-tuples, relative to
/// `max(1, |Ω̂|)`.
pub fn omega_hat_agreement<T: Real>(p: &SpherePoint<T>, basis: &[BVector<T>], n_samples: usize, seed: u64) -> f64 {
    let mut rng = sample_rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..n_samples {
        let v: [BVector<T>; 4] = std::array::from_fn(|_| random_horizontal(basis, &mut rng));
        let a = omega_hat(p.p(), &v[0], &v[1], &v[2], &v[3]);
        let b = omega_sum(&v[0], &v[1], &v[2], &v[3]);
        worst = worst.max(rel(a - b, a));
    }
    worst
}

/// Compares `Ω̂` at `p` on horizontal tuples with `Ω̂` at `p q̄` on the
/// tuples transported by `X ↦ X q̄`; relative to `max(1, |Ω̂|)`.
pub fn su11_invariance_check<T: Real>(
    p: &SpherePoint<T>,
    q: &SplitQuaternion<T>,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    let nq = q.norm_sq();
    if (nq - T::one()).abs() > T::lit(crate::splitquat::UNIT_TOL) {
        return Err(Error::NotUnit(nq.as_f64()));
    }
    let basis = horizontal_basis(p)?;
    let moved = p.act(q)?;
    let qc = q.conj();
    let mut rng = sample_rng(seed);
    let mut worst = 0.0f64;
    for _ in 0..n_samples {
        let v: [BVector<T>; 4] = std::array::from_fn(|_| random_horizontal(&basis, &mut rng));
        let w: [BVector<T>; 4] = std::array::from_fn(|j| v[j].right_mul(&qc));
        let a = omega_hat(p.p(), &v[0], &v[1], &v[2], &v[3]);
        let b = omega_hat(moved.p(), &w[0], &w[1], &w[2], &w[3]);
        worst = worst.max(rel(a - b, a));
    }
    Ok(worst)
}

/// Gram matrix of `g` pulled back from the level set `ρ₀ = c` through the
/// radial map `p ↦ √(2c) p`, on the given tangent vectors at `p`.
pub fn level_set_gram<T: Real>(p: &SpherePoint<T>, c: T, tangents: &[BVector<T>]) -> Vec<Vec<T>> {
    let r = (T::lit(2.0) * c).sqrt();
    let rp = p.p().scale(r);
    let pushed: Vec<BVector<T>> = tangents.iter().map(|v| tangent_project(&rp, &v.scale(r))).collect();
    pushed.iter().map(|a| pushed.iter().map(|b| metric_unchecked(a, b)).collect()).collect()
}

/// `max |G_c - (c / c') G_{c'}|`, relative to `max(1, |G_c|)`.
pub fn homothety_residual<T: Real>(p: &SpherePoint<T>, c: T, c2: T, tangents: &[BVector<T>]) -> f64 {
    let g1 = level_set_gram(p, c, tangents);
    let g2 = level_set_gram(p, c2, tangents);
    let ratio = c / c2;
    let mut worst = 0.0f64;
    for (r1, r2) in g1.iter().zip(&g2) {
        for (a, b) in r1.iter().zip(r2) {
            worst = worst.max(rel(*a - ratio * *b, *a));
        }
    }
    worst
}

/// Every check at one point.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PointChecks {
    pub contact: ContactReport,
    pub horizontal_dim: usize,
    pub horizontal_invariance: f64,
    pub omega_hat_agreement: f64,
    pub su11_invariance: f64,
    pub homothety: f64,
}

/// Runs [`contact_axioms`] and the horizontal checks at `p`, transporting by
/// a unit drawn from `seed` for the invariance check.
pub fn check_point(p: &SpherePoint<f64>, n_samples: usize, seed: u64) -> Result<PointChecks> {
    let contact = contact_axioms(p, n_samples, seed);
    let basis = horizontal_basis(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let q = crate::splitquat::random_unit_with::<f64, _>(&mut rng);
    let tangents = sample_tangent(p.p(), 3, &mut rng);
    Ok(PointChecks {
        contact,
        horizontal_dim: basis.len(),
        horizontal_invariance: horizontal_invariance(p, &basis),
        omega_hat_agreement: omega_hat_agreement(p, &basis, n_samples, seed),
        su11_invariance: su11_invariance_check(p, &q, n_samples, seed)?,
        homothety: homothety_residual(p, 0.5, 3.0, &tangents),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{point_rng, random_sphere_point};

    type Q = SplitQuaternion<f64>;

    fn point(seed: u64, n: usize) -> SpherePoint<f64> {
        random_sphere_point(n + 1, &mut point_rng(seed, 0))
    }

    #[test]
    fn sphere_guard() {
        let off = BVector::new(vec![Q::one().scale(2.0)]);
        assert!(matches!(SpherePoint::new(off), Err(Error::NotOnSphere(_))));
    }

    #[test]
    fn projection() {
        let p = point(1, 1);
        let mut rng = point_rng(1, 1);
        let x = BVector::<f64>::random(2, &mut rng);
        let t = tangent_project(p.p(), &x);
        assert!(metric_unchecked(p.p(), &t).abs() < 1e-12);
        assert!(tangent_project(p.p(), &t).sub(&t).max_abs() < 1e-12);
        assert!(tangent_project(p.p(), p.p()).max_abs() < 1e-12);
    }

    #[test]
    fn reeb_lengths_and_tangency() {
        for seed in 0..10 {
            let p = point(seed, 2);
            for (k, want) in [(0, 1.0), (1, -1.0), (2, -1.0)] {
                let x = reeb(k, p.p());
                assert!((metric_unchecked(&x, &x) - want).abs() < 1e-10);
                assert!(metric_unchecked(p.p(), &x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reeb_brackets_reproduce_the_table_up_to_sign() {
        let p = point(2, 1);
        let b = half_reeb_bracket(0, 1, p.p());
        assert!(b.add(&reeb(2, p.p())).max_abs() < 1e-14);
        // the finite-difference bracket of the linear fields agrees
        let x1: Field<'_, f64> = Box::new(|q| reeb(0, q));
        let x2: Field<'_, f64> = Box::new(|q| reeb(1, q));
        let fd = lie_bracket(&x1, &x2, p.p()).scale(0.5);
        assert!(fd.sub(&b).max_abs() < 1e-8);
    }

    #[test]
    fn eta_and_phi_examples() {
        let p = point(3, 1);
        let x1 = reeb(0, p.p());
        assert!((eta(0, p.p(), &x1) - 1.0).abs() < 1e-12);
        for k in 0..3 {
            assert!(phi(k, p.p(), &reeb(k, p.p())).max_abs() < 1e-12);
        }
        let mut rng = point_rng(3, 1);
        let y = sample_tangent(p.p(), 1, &mut rng).remove(0);
        let pp = phi(1, p.p(), &phi(1, p.p(), &y));
        let want = y.axpy(-eta(1, p.p(), &y), &reeb(1, p.p()));
        assert!(pp.sub(&want).max_abs() < 1e-12);
    }

    #[test]
    fn contact_axioms_hold() {
        for n in [1, 2] {
            let r = contact_axioms(&point(4, n), 10, 4);
            assert!(r.phi_square < 1e-10, "{r:?}");
            assert!(r.eta_of_reeb < 1e-10);
            assert!(r.eta_of_phi < 1e-10);
            assert!(r.metric_compat < 1e-10);
            assert!(r.lengths < 1e-10);
            assert!(r.bracket < 1e-12);
            assert!(r.d_eta < 1e-6, "{r:?}");
            assert!(r.normality < 1e-6, "{r:?}");
        }
    }

    #[test]
    fn wrong_normality_constant_is_detected() {
        let p = point(5, 1);
        let mut rng = point_rng(5, 1);
        let v = sample_tangent(p.p(), 2, &mut rng);
        let n = nijenhuis_fd(0, p.p(), &v[0], &v[1]);
        let de = d_eta_fd(0, p.p(), &v[0], &v[1]);
        // N = dη ⊗ X would leave a residual of order |dη|
        let naive = reeb(0, p.p()).scale(de);
        assert!(n.sub(&naive).max_abs() > 1e-3 * de.abs().max(1e-3));
    }

    #[test]
    fn horizontal_space() {
        for n in [1, 2] {
            let p = point(6, n);
            let b = horizontal_basis(&p).unwrap();
            assert_eq!(b.len(), 4 * n);
            for v in &b {
                assert!(metric_unchecked(p.p(), v).abs() < 1e-12);
                for k in 0..3 {
                    assert!(eta(k, p.p(), v).abs() < 1e-12);
                }
            }
            assert!(horizontal_invariance(&p, &b) < 1e-10);
            assert!(omega_hat_agreement(&p, &b, 5, 0) < 1e-9);
        }
    }

    #[test]
    fn omega_hat_is_nonzero_on_the_horizontal_space() {
        let p = point(7, 1);
        let b = horizontal_basis(&p).unwrap();
        assert!(omega_hat(p.p(), &b[0], &b[1], &b[2], &b[3]).abs() > 1e-6);
    }

    #[test]
    fn su11_invariance() {
        let p = point(8, 1);
        assert_eq!(su11_invariance_check(&p, &Q::one(), 5, 0).unwrap(), 0.0);
        assert!(su11_invariance_check(&p, &(-Q::one()), 5, 0).unwrap() < 1e-14);
        let q = crate::splitquat::random_unit::<f64>(8);
        assert!(su11_invariance_check(&p, &q, 5, 0).unwrap() < 1e-9);
        assert!(matches!(su11_invariance_check(&p, &Q::s(), 1, 0), Err(Error::NotUnit(_))));
    }

    #[test]
    fn homothety() {
        let p = point(9, 1);
        let mut rng = point_rng(9, 1);
        let t = sample_tangent(p.p(), 4, &mut rng);
        assert!(homothety_residual(&p, 0.5, 2.0, &t) < 1e-12);
    }

    #[test]
    fn wedge_of_a_single_two_form() {
        // (e¹∧e²) ∧ (e³∧e⁴) evaluated on the coordinate basis is 1
        let e: Vec<BVector<f64>> = (0..4).map(|k| BVector::real_basis(1, k)).collect();
        let f12 = |a: &BVector<f64>, b: &BVector<f64>| {
            let (a, b) = (a.to_reals(), b.to_reals());
            a[0] * b[1] - a[1] * b[0]
        };
        let f34 = |a: &BVector<f64>, b: &BVector<f64>| {
            let (a, b) = (a.to_reals(), b.to_reals());
            a[2] * b[3] - a[3] * b[2]
        };
        assert_eq!(wedge22(f12, f34, [&e[0], &e[1], &e[2], &e[3]]), 1.0);
        assert_eq!(wedge22(f12, f12, [&e[0], &e[1], &e[2], &e[3]]), 0.0);
    }

    #[test]
    fn full_point_check() {
        let c = check_point(&point(10, 1), 5, 10).unwrap();
        assert_eq!(c.horizontal_dim, 4);
        assert!(c.su11_invariance < 1e-9);
    }
}
