//! Gauge action on su(2)-valued trajectories, realised by 2×2 complex
//! matrices with basis `E_a = -i σ_a / 2` and `⟨X, Y⟩ = -2 tr(XY)`.

use num_complex::Complex;

use super::{derivative_stencil, NahmState, NahmTrajectory};
use crate::error::{Error, Result};
use crate::liealg::LieVector;
use crate::scalar::Real;

/// 2×2 complex matrix, row major.
pub type Mat2<T> = [[Complex<T>; 2]; 2];

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

pub fn identity<T: Real>() -> Mat2<T> {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

fn basis<T: Real>(a: usize) -> Mat2<T> {
    match a {
        0 => [[c(0.0, 0.0), c(0.0, -0.5)], [c(0.0, -0.5), c(0.0, 0.0)]],
        1 => [[c(0.0, 0.0), c(-0.5, 0.0)], [c(0.5, 0.0), c(0.0, 0.0)]],
        2 => [[c(0.0, -0.5), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.5)]],
        _ => unreachable!("su(2) has three basis elements"),
    }
}

pub fn mat_mul<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    std::array::from_fn(|r| std::array::from_fn(|k| a[r][0] * b[0][k] + a[r][1] * b[1][k]))
}

pub fn mat_add<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    std::array::from_fn(|r| std::array::from_fn(|k| a[r][k] + b[r][k]))
}

pub fn mat_scale<T: Real>(a: &Mat2<T>, s: T) -> Mat2<T> {
    std::array::from_fn(|r| std::array::from_fn(|k| a[r][k] * s))
}

pub fn mat_inv<T: Real>(a: &Mat2<T>) -> Mat2<T> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let inv = Complex::new(T::one(), T::zero()) / det;
    [[a[1][1] * inv, -a[0][1] * inv], [-a[1][0] * inv, a[0][0] * inv]]
}

pub fn mat_max_abs_diff<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> T {
    let mut m = T::zero();
    for r in 0..2 {
        for k in 0..2 {
            m = m.max((a[r][k] - b[r][k]).norm());
        }
    }
    m
}

/// `Σ v_a E_a`.
pub fn to_matrix<T: Real>(v: &LieVector<T>) -> Mat2<T> {
    let mut m = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for a in 0..3 {
        m = mat_add(&m, &mat_scale(&basis(a), v.coords[a]));
    }
    m
}

/// Coordinates `-2 Re tr(X E_a)`; exact on su(2).
pub fn from_matrix<T: Real>(x: &Mat2<T>) -> LieVector<T> {
    LieVector::new(
        (0..3)
            .map(|a| {
                let p = mat_mul(x, &basis(a));
                -T::lit(2.0) * (p[0][0] + p[1][1]).re
            })
            .collect(),
    )
}

fn require_su2<T: Real>(tr: &NahmTrajectory<T>) -> Result<()> {
    if tr.algebra.is_su2() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "gauge action needs a matrix realisation; algebra '{}' has none",
            tr.algebra.name()
        )))
    }
}

/// `T₀ ↦ g T₀ g⁻¹ - ġ g⁻¹`, `T_i ↦ g T_i g⁻¹`, with `ġ` from grid
/// differences.
pub fn gauge_transform<T: Real>(g_path: &[Mat2<T>], tr: &NahmTrajectory<T>) -> Result<NahmTrajectory<T>> {
    require_su2(tr)?;
    if g_path.len() != tr.states.len() {
        return Err(Error::DimensionMismatch { expected: tr.states.len(), found: g_path.len() });
    }
    let n = tr.steps;
    let h = tr.step();
    let states = tr
        .states
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let g = &g_path[j];
            let gi = mat_inv(g);
            let conj = |v: &LieVector<T>| from_matrix(&mat_mul(&mat_mul(g, &to_matrix(v)), &gi));
            let mut gdot = [[Complex::new(T::zero(), T::zero()); 2]; 2];
            let (weights, denom) = derivative_stencil(j, n);
            for (node, w) in weights {
                gdot = mat_add(&gdot, &mat_scale(&g_path[node], T::lit(w)));
            }
            gdot = mat_scale(&gdot, T::one() / (T::lit(denom) * h));
            let t0 = conj(&s.t[0]).sub(&from_matrix(&mat_mul(&gdot, &gi)));
            NahmState::new(t0, conj(&s.t[1]), conj(&s.t[2]), conj(&s.t[3]))
        })
        .collect();
    Ok(NahmTrajectory { states, reduced: false, ..tr.clone() })
}

/// Weights of the cubic through four equispaced nodes at the midpoint of
/// the interval `[j, j + 1]`.
pub(crate) fn midpoint_stencil(j: usize, n: usize) -> [(usize, f64); 4] {
    if n < 3 {
        panic!("midpoint interpolation needs at least four nodes");
    }
    if j == 0 {
        [(0, 5.0 / 16.0), (1, 15.0 / 16.0), (2, -5.0 / 16.0), (3, 1.0 / 16.0)]
    } else if j + 1 == n {
        [(n - 3, 1.0 / 16.0), (n - 2, -5.0 / 16.0), (n - 1, 15.0 / 16.0), (n, 5.0 / 16.0)]
    } else {
        [(j - 1, -1.0 / 16.0), (j, 9.0 / 16.0), (j + 1, 9.0 / 16.0), (j + 2, -1.0 / 16.0)]
    }
}

pub(crate) fn midpoint<T: Real>(values: &[LieVector<T>], j: usize) -> LieVector<T> {
    let n = values.len() - 1;
    let mut acc = LieVector::zeros(values[0].dim());
    for (node, w) in midpoint_stencil(j, n) {
        acc = acc.axpy(T::lit(w), &values[node]);
    }
    acc
}

/// Output of [`gauge_fix_t0`].
#[derive(Clone, Debug)]
pub struct GaugeFix<T> {
    pub trajectory: NahmTrajectory<T>,
    pub g_path: Vec<Mat2<T>>,
    /// `g(L)`; not quotiented to the identity.
    pub g_end: Mat2<T>,
}

/// Solves `ġ = g T₀`, `g(0) = 1` by RK4 on the trajectory grid and applies
/// the resulting gauge transformation, which removes `T₀`.
pub fn gauge_fix_t0<T: Real>(tr: &NahmTrajectory<T>) -> Result<GaugeFix<T>> {
    require_su2(tr)?;
    if tr.steps < 3 {
        return Err(Error::InvalidArgument("gauge fixing needs at least three steps".into()));
    }
    let t0: Vec<LieVector<T>> = tr.states.iter().map(|s| s.t[0].clone()).collect();
    let h = tr.step();
    let f = |g: &Mat2<T>, a: &LieVector<T>| mat_mul(g, &to_matrix(a));
    let mut g = identity::<T>();
    let mut path = Vec::with_capacity(tr.states.len());
    path.push(g);
    let half = h * T::lit(0.5);
    for j in 0..tr.steps {
        let mid = midpoint(&t0, j);
        let k1 = f(&g, &t0[j]);
        let k2 = f(&mat_add(&g, &mat_scale(&k1, half)), &mid);
        let k3 = f(&mat_add(&g, &mat_scale(&k2, half)), &mid);
        let k4 = f(&mat_add(&g, &mat_scale(&k3, h)), &t0[j + 1]);
        let incr = mat_add(&mat_add(&k1, &mat_scale(&k2, T::lit(2.0))), &mat_add(&mat_scale(&k3, T::lit(2.0)), &k4));
        g = mat_add(&g, &mat_scale(&incr, h / T::lit(6.0)));
        path.push(g);
    }
    let trajectory = gauge_transform(&path, tr)?;
    Ok(GaugeFix { trajectory, g_end: g, g_path: path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::su2;
    use crate::nahm::{integrate, moment_residual, reduced_residual};

    fn sample_full() -> NahmTrajectory<f64> {
        let s = NahmState::new(
            LieVector::new(vec![0.4, -0.7, 0.9]),
            LieVector::new(vec![0.2, 0.5, -0.3]),
            LieVector::new(vec![-0.6, 0.1, 0.8]),
            LieVector::new(vec![0.3, -0.4, 0.1]),
        );
        integrate(&su2(), &s, 1.0, 1000, false).unwrap()
    }

    #[test]
    fn matrix_round_trip_and_bracket() {
        let g = su2::<f64>();
        let x = LieVector::new(vec![0.3, -1.1, 2.0]);
        let y = LieVector::new(vec![-0.5, 0.25, 0.75]);
        assert!(from_matrix(&to_matrix(&x)).sub(&x).max_abs() < 1e-15);
        let (mx, my) = (to_matrix(&x), to_matrix(&y));
        let comm = mat_add(&mat_mul(&mx, &my), &mat_scale(&mat_mul(&my, &mx), -1.0));
        assert!(from_matrix(&comm).sub(&g.bracket(&x, &y).unwrap()).max_abs() < 1e-14);
    }

    #[test]
    fn identity_gauge_is_trivial() {
        let tr = sample_full();
        let out = gauge_transform(&vec![identity(); tr.states.len()], &tr).unwrap();
        for (a, b) in out.states.iter().zip(&tr.states) {
            assert!(a.sub(b).max_abs() < 1e-15);
        }
    }

    #[test]
    fn gauge_fix_removes_t0() {
        let tr = sample_full();
        assert!(moment_residual(&tr).max() < 1e-6);
        let fixed = gauge_fix_t0(&tr).unwrap();
        let sup_t0 = fixed.trajectory.states.iter().fold(0.0f64, |m, s| m.max(s.t[0].max_abs()));
        assert!(sup_t0 < 1e-8, "{sup_t0}");
        assert!(reduced_residual(&fixed.trajectory).max() < 1e-6);
        // conserved quantity is gauge invariant
        let a = tr.conserved();
        let b = fixed.trajectory.conserved();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-10);
        }
        // g(1) stays unitary
        let gi = mat_inv(&fixed.g_end);
        let gh: Mat2<f64> = std::array::from_fn(|r| std::array::from_fn(|k| fixed.g_end[k][r].conj()));
        assert!(mat_max_abs_diff(&gi, &gh) < 1e-10);
    }

    #[test]
    fn non_matrix_algebra_is_unsupported() {
        let g = crate::liealg::LieAlgebra::<f64>::from_json_str(
            &serde_json::to_string(&su2::<f64>().to_file_data()).unwrap(),
        )
        .unwrap();
        let tr = integrate(&g, &NahmState::zeros(3), 1.0, 10, false).unwrap();
        assert!(matches!(gauge_fix_t0(&tr), Err(Error::Unsupported(_))));
        assert!(matches!(gauge_transform(&vec![identity(); 11], &tr), Err(Error::Unsupported(_))));
    }
}
