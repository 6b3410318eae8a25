//! Nahm-Schmid equations on a compact Lie algebra `g`:
//!
//! ```text
//! Ṫ₁ + [T₀, T₁] = -[T₂, T₃]
//! Ṫ₂ + [T₀, T₂] =  [T₃, T₁]
//! Ṫ₃ + [T₀, T₃] =  [T₁, T₂]
//! ```
//!
//! with `T₀` held at its initial value (the full system) or dropped (the
//! reduced system, stored with `T₀ ≡ 0`). Integration is classical fixed-step
//! RK4 on a uniform grid.

pub mod degeneracy;
pub mod gauge;

use crate::error::{Error, Result};
use crate::liealg::{su2, LieAlgebra, LieVector};
use crate::scalar::Real;
use crate::splitquat::{adjoint_matrix, SplitQuaternion};

pub use degeneracy::{degeneracy_indicator, degeneracy_scan, DegeneracyReport, Family, Root, ScanResult, ScanRow};
pub use gauge::{gauge_fix_t0, gauge_transform, GaugeFix, Mat2};

/// `(T₀, T₁, T₂, T₃)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NahmState<T> {
    pub t: [LieVector<T>; 4],
}

impl<T: Real> NahmState<T> {
    pub fn new(t0: LieVector<T>, t1: LieVector<T>, t2: LieVector<T>, t3: LieVector<T>) -> Self {
        Self { t: [t0, t1, t2, t3] }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { t: std::array::from_fn(|_| LieVector::zeros(dim)) }
    }

    pub fn dim(&self) -> usize {
        self.t[0].dim()
    }

    pub fn axpy(&self, a: T, o: &Self) -> Self {
        Self { t: std::array::from_fn(|k| self.t[k].axpy(a, &o.t[k])) }
    }

    pub fn scale(&self, a: T) -> Self {
        Self { t: std::array::from_fn(|k| self.t[k].scale(a)) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.axpy(-T::one(), o)
    }

    pub fn max_abs(&self) -> T {
        self.t.iter().fold(T::zero(), |m, v| m.max(v.max_abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.t.iter().all(|v| v.is_finite())
    }

    /// Flattened coordinates `T₀ | T₁ | T₂ | T₃`.
    pub fn to_flat(&self) -> Vec<T> {
        self.t.iter().flat_map(|v| v.coords.iter().copied()).collect()
    }
}

/// States on the uniform grid `t_j = j L / N`, `j = 0..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct NahmTrajectory<T> {
    pub algebra: LieAlgebra<T>,
    pub length: T,
    pub steps: usize,
    pub states: Vec<NahmState<T>>,
    pub reduced: bool,
}

impl<T: Real> NahmTrajectory<T> {
    /// Wraps precomputed states, checking the grid invariant.
    pub fn from_states(algebra: LieAlgebra<T>, length: T, states: Vec<NahmState<T>>, reduced: bool) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::InvalidArgument("a trajectory needs at least two nodes".into()));
        }
        if let Some(bad) = states.iter().find(|s| s.dim() != algebra.dim()) {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: bad.dim() });
        }
        let steps = states.len() - 1;
        Ok(Self { algebra, length, steps, states, reduced })
    }

    pub fn step(&self) -> T {
        self.length / T::lit(self.steps as f64)
    }

    pub fn time(&self, j: usize) -> T {
        self.length * T::lit(j as f64) / T::lit(self.steps as f64)
    }

    pub fn conserved(&self) -> Vec<T> {
        self.states.iter().map(|s| conserved(&self.algebra, s)).collect()
    }

    /// `max_t |C(t) - C(0)|` for the conserved quantity `C`.
    pub fn conserved_drift(&self) -> T {
        let c = self.conserved();
        c.iter().fold(T::zero(), |m, v| m.max((*v - c[0]).abs()))
    }
}

fn check_state<T: Real>(l: &LieAlgebra<T>, s: &NahmState<T>) -> Result<()> {
    for v in &s.t {
        if v.dim() != l.dim() {
            return Err(Error::DimensionMismatch { expected: l.dim(), found: v.dim() });
        }
    }
    Ok(())
}

fn rhs_unchecked<T: Real>(l: &LieAlgebra<T>, s: &NahmState<T>, reduced: bool) -> NahmState<T> {
    let [t0, t1, t2, t3] = &s.t;
    let b = |x: &LieVector<T>, y: &LieVector<T>| l.bracket_unchecked(x, y);
    let mut d1 = b(t2, t3).neg();
    let mut d2 = b(t3, t1);
    let mut d3 = b(t1, t2);
    if !reduced {
        d1 = d1.sub(&b(t0, t1));
        d2 = d2.sub(&b(t0, t2));
        d3 = d3.sub(&b(t0, t3));
    }
    NahmState::new(LieVector::zeros(l.dim()), d1, d2, d3)
}

/// Time derivative of the state; the `T₀` slot is always zero.
pub fn rhs<T: Real>(l: &LieAlgebra<T>, s: &NahmState<T>, reduced: bool) -> Result<NahmState<T>> {
    check_state(l, s)?;
    Ok(rhs_unchecked(l, s, reduced))
}

/// Classical RK4 over `[0, length]` with `steps` equal steps.
pub fn integrate<T: Real>(
    l: &LieAlgebra<T>,
    init: &NahmState<T>,
    length: T,
    steps: usize,
    reduced: bool,
) -> Result<NahmTrajectory<T>> {
    check_state(l, init)?;
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("steps must be at least 2, got {steps}")));
    }
    if !(length > T::zero()) || !length.is_finite() {
        return Err(Error::InvalidArgument(format!("length must be positive, got {length}")));
    }
    let mut y = init.clone();
    if reduced {
        y.t[0] = LieVector::zeros(l.dim());
    }
    let h = length / T::lit(steps as f64);
    let half = h * T::lit(0.5);
    let sixth = h / T::lit(6.0);
    let two = T::lit(2.0);
    let mut states = Vec::with_capacity(steps + 1);
    states.push(y.clone());
    for step in 1..=steps {
        let k1 = rhs_unchecked(l, &y, reduced);
        let k2 = rhs_unchecked(l, &y.axpy(half, &k1), reduced);
        let k3 = rhs_unchecked(l, &y.axpy(half, &k2), reduced);
        let k4 = rhs_unchecked(l, &y.axpy(h, &k3), reduced);
        y = y.axpy(sixth, &k1).axpy(sixth * two, &k2).axpy(sixth * two, &k3).axpy(sixth, &k4);
        if !y.is_finite() {
            return Err(Error::IntegrationBlowup { step });
        }
        states.push(y.clone());
    }
    Ok(NahmTrajectory { algebra: l.clone(), length, steps, states, reduced })
}

/// `2‖T₁‖² + ‖T₂‖² + ‖T₃‖²`.
pub fn conserved<T: Real>(l: &LieAlgebra<T>, s: &NahmState<T>) -> T {
    T::lit(2.0) * l.norm_sq(&s.t[1]) + l.norm_sq(&s.t[2]) + l.norm_sq(&s.t[3])
}

/// Integer weights and their denominator for `f'(t_j)` with unit spacing:
/// fourth-order central differences inside, one-sided fourth-order closures
/// at the ends and second order on grids shorter than five nodes.
pub(crate) fn derivative_stencil(j: usize, n: usize) -> (Vec<(usize, f64)>, f64) {
    let last = n;
    if n < 4 {
        return if j == 0 {
            (vec![(0, -1.0), (1, 1.0)], 1.0)
        } else if j == last {
            (vec![(last - 1, -1.0), (last, 1.0)], 1.0)
        } else {
            (vec![(j - 1, -1.0), (j + 1, 1.0)], 2.0)
        };
    }
    let w = match j {
        0 => vec![(0, -25.0), (1, 48.0), (2, -36.0), (3, 16.0), (4, -3.0)],
        1 => vec![(0, -3.0), (1, -10.0), (2, 18.0), (3, -6.0), (4, 1.0)],
        _ if j == last => vec![(last, 25.0), (last - 1, -48.0), (last - 2, 36.0), (last - 3, -16.0), (last - 4, 3.0)],
        _ if j == last - 1 => vec![(last, 3.0), (last - 1, 10.0), (last - 2, -18.0), (last - 3, 6.0), (last - 4, -1.0)],
        _ => vec![(j - 2, 1.0), (j - 1, -8.0), (j + 1, 8.0), (j + 2, -1.0)],
    };
    (w, 12.0)
}

/// Grid derivative of `values` with spacing `h`.
pub fn time_derivative<T: Real>(values: &[LieVector<T>], h: T) -> Vec<LieVector<T>> {
    let n = values.len() - 1;
    let dim = values[0].dim();
    (0..=n)
        .map(|j| {
            let (weights, denom) = derivative_stencil(j, n);
            let mut acc = LieVector::zeros(dim);
            for (node, w) in weights {
                acc = acc.axpy(T::lit(w), &values[node]);
            }
            acc.scale(T::one() / (T::lit(denom) * h))
        })
        .collect()
}

/// Sup norms of `(μ_I, μ_S, μ_T)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentResidual<T> {
    pub mu_i: T,
    pub mu_s: T,
    pub mu_t: T,
}

impl<T: Real> MomentResidual<T> {
    pub fn max(&self) -> T {
        self.mu_i.max(self.mu_s).max(self.mu_t)
    }
}

fn residual_impl<T: Real>(tr: &NahmTrajectory<T>, with_t0: bool) -> MomentResidual<T> {
    let l = &tr.algebra;
    let h = tr.step();
    let series = |k: usize| tr.states.iter().map(|s| s.t[k].clone()).collect::<Vec<_>>();
    let d: [Vec<LieVector<T>>; 3] = std::array::from_fn(|k| time_derivative(&series(k + 1), h));
    let mut out = MomentResidual { mu_i: T::zero(), mu_s: T::zero(), mu_t: T::zero() };
    let norm = |v: &LieVector<T>| l.norm_sq(v).max(T::zero()).sqrt();
    for (j, s) in tr.states.iter().enumerate() {
        let b = |x: &LieVector<T>, y: &LieVector<T>| l.bracket_unchecked(x, y);
        let [t0, t1, t2, t3] = &s.t;
        let mut mi = d[0][j].add(&b(t2, t3));
        let mut ms = d[1][j].sub(&b(t3, t1));
        let mut mt = d[2][j].sub(&b(t1, t2));
        if with_t0 {
            mi = mi.add(&b(t0, t1));
            ms = ms.add(&b(t0, t2));
            mt = mt.add(&b(t0, t3));
        }
        out.mu_i = out.mu_i.max(norm(&mi));
        out.mu_s = out.mu_s.max(norm(&ms));
        out.mu_t = out.mu_t.max(norm(&mt));
    }
    out
}

/// `μ_I = Ṫ₁ + [T₀,T₁] + [T₂,T₃]`, `μ_S = Ṫ₂ + [T₀,T₂] - [T₃,T₁]`,
/// `μ_T = Ṫ₃ + [T₀,T₃] - [T₁,T₂]` with grid derivatives.
pub fn moment_residual<T: Real>(tr: &NahmTrajectory<T>) -> MomentResidual<T> {
    residual_impl(tr, !tr.reduced)
}

/// Residual of the reduced equations, ignoring `T₀`.
pub fn reduced_residual<T: Real>(tr: &NahmTrajectory<T>) -> MomentResidual<T> {
    residual_impl(tr, false)
}

/// `Φ_a T(t) = a T(a t)` on the same grid. The equations are invariant under
/// `Φ_a`, so the image is the solution with initial value `a T(0)`; it is
/// obtained by integrating from there, which also covers `a > 1` where
/// `T(a t)` leaves the original interval.
pub fn scaling<T: Real>(a: T, tr: &NahmTrajectory<T>) -> Result<NahmTrajectory<T>> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(Error::InvalidArgument(format!("scaling factor must be positive, got {a}")));
    }
    if a == T::one() {
        return Ok(tr.clone());
    }
    integrate(&tr.algebra, &tr.states[0].scale(a), tr.length, tr.steps, tr.reduced)
}

/// `(T₁, T₂, T₃) ↦ Ad(q)(T₁, T₂, T₃)` pointwise, `T₀` fixed.
pub fn su11_act<T: Real>(q: &SplitQuaternion<T>, tr: &NahmTrajectory<T>) -> Result<NahmTrajectory<T>> {
    let m = adjoint_matrix(q)?;
    let states = tr
        .states
        .iter()
        .map(|s| {
            let mut out = s.clone();
            for r in 0..3 {
                let mut acc = LieVector::zeros(s.dim());
                for c in 0..3 {
                    acc = acc.axpy(m[r][c], &s.t[c + 1]);
                }
                out.t[r + 1] = acc;
            }
            out
        })
        .collect();
    Ok(NahmTrajectory { states, ..tr.clone() })
}

/// `T₁ = -k tanh(kt) e₁`, `T₂ = k sech(kt) e₂`, `T₃ = k sech(kt) e₃` on su(2).
pub fn exact_state<T: Real>(k: T, t: T) -> NahmState<T> {
    let th = (k * t).tanh();
    let sh = T::one() / (k * t).cosh();
    let e = |j: usize, c: T| LieVector::basis(3, j).scale(c);
    NahmState::new(LieVector::zeros(3), e(0, -k * th), e(1, k * sh), e(2, k * sh))
}

/// The exact solution sampled on a uniform grid.
pub fn exact_trajectory<T: Real>(k: T, length: T, steps: usize) -> NahmTrajectory<T> {
    let states = (0..=steps).map(|j| exact_state(k, length * T::lit(j as f64) / T::lit(steps as f64))).collect();
    NahmTrajectory { algebra: su2(), length, steps, states, reduced: true }
}

/// `max_j |a - b|` over two trajectories on the same grid.
pub fn sup_distance<T: Real>(a: &NahmTrajectory<T>, b: &NahmTrajectory<T>) -> T {
    a.states.iter().zip(&b.states).fold(T::zero(), |m, (x, y)| m.max(x.sub(y).max_abs()))
}
