//! Degeneracy locus: a solution is degenerate when
//!
//! ```text
//! ξ̈ + [T₀, ξ̇] + [Ṫ₀, ξ] + Σ_{i=0..3} a_ii [T_i, [T_i, ξ]] = 0,   a = (1, 1, -1, -1)
//! ```
//!
//! has a nonzero solution with `ξ(0) = 0 = ξ(L)`. This is detected through the
//! shooting map `v = ξ̇(0) ↦ ξ(L)`.

use nalgebra::DMatrix;
use serde::Serialize;

use super::gauge::midpoint;
use super::{integrate, scaling, time_derivative, NahmState, NahmTrajectory};
use crate::error::{Error, Result};
use crate::liealg::{su2, LieVector};
use crate::scalar::Real;

/// `min_sv ≤ DEGENERACY_TOL · ‖F‖₂` flags a degenerate trajectory.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// A refined sign change is kept as a root only if `min_sv ≤ ROOT_ACCEPT · ‖F‖₂`
/// there; this rejects jumps of the signed indicator.
pub const ROOT_ACCEPT: f64 = 1e-6;

/// Bisection stops once the bracket is shorter than this.
pub const BISECTION_TOL: f64 = 1e-10;

const A: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegeneracyReport {
    /// Column `k` is `ξ(L)` for `ξ̇(0) = e_k`.
    pub endpoint_map: Vec<Vec<f64>>,
    pub det: f64,
    pub min_singular_value: f64,
    pub norm: f64,
    /// Real eigenvalue of smallest modulus (`det` if there is none); changes
    /// sign across simple crossings of the locus even when `det` does not.
    pub signed_indicator: f64,
    pub degenerate: bool,
}

fn operator<T: Real>(
    tr: &NahmTrajectory<T>,
    t: &[LieVector<T>; 4],
    t0dot: &LieVector<T>,
    xi: &LieVector<T>,
    eta: &LieVector<T>,
) -> (LieVector<T>, LieVector<T>) {
    let l = &tr.algebra;
    let b = |x: &LieVector<T>, y: &LieVector<T>| l.bracket_unchecked(x, y);
    let mut acc = b(&t[0], eta).add(&b(t0dot, xi));
    for i in 0..4 {
        acc = acc.axpy(T::lit(A[i]), &b(&t[i], &b(&t[i], xi)));
    }
    (eta.clone(), acc.neg())
}

/// Integrates the linearised equation from `ξ(0) = 0`, `ξ̇(0) = v`.
pub fn shoot<T: Real>(tr: &NahmTrajectory<T>, v: &LieVector<T>) -> LieVector<T> {
    let n = tr.steps;
    let h = tr.step();
    let dim = tr.algebra.dim();
    let series = |k: usize| tr.states.iter().map(|s| s.t[k].clone()).collect::<Vec<_>>();
    let cols: [Vec<LieVector<T>>; 4] = std::array::from_fn(series);
    let t0dot = if tr.reduced { vec![LieVector::zeros(dim); n + 1] } else { time_derivative(&cols[0], h) };
    let at = |j: usize| -> [LieVector<T>; 4] { std::array::from_fn(|k| cols[k][j].clone()) };
    let mid = |j: usize| -> [LieVector<T>; 4] { std::array::from_fn(|k| midpoint(&cols[k], j)) };
    let half = h * T::lit(0.5);
    let sixth = h / T::lit(6.0);
    let two = T::lit(2.0);
    let mut xi = LieVector::zeros(dim);
    let mut eta = v.clone();
    for j in 0..n {
        let (t_a, t_m, t_b) = (at(j), mid(j), at(j + 1));
        let d_m = midpoint(&t0dot, j);
        let (k1x, k1e) = operator(tr, &t_a, &t0dot[j], &xi, &eta);
        let (k2x, k2e) = operator(tr, &t_m, &d_m, &xi.axpy(half, &k1x), &eta.axpy(half, &k1e));
        let (k3x, k3e) = operator(tr, &t_m, &d_m, &xi.axpy(half, &k2x), &eta.axpy(half, &k2e));
        let (k4x, k4e) = operator(tr, &t_b, &t0dot[j + 1], &xi.axpy(h, &k3x), &eta.axpy(h, &k3e));
        xi = xi.axpy(sixth, &k1x).axpy(sixth * two, &k2x).axpy(sixth * two, &k3x).axpy(sixth, &k4x);
        eta = eta.axpy(sixth, &k1e).axpy(sixth * two, &k2e).axpy(sixth * two, &k3e).axpy(sixth, &k4e);
    }
    xi
}

/// Endpoint map, its determinant and singular values.
pub fn degeneracy_indicator<T: Real>(tr: &NahmTrajectory<T>) -> Result<DegeneracyReport> {
    if tr.steps < 3 {
        return Err(Error::InvalidArgument("degeneracy indicator needs at least three steps".into()));
    }
    let dim = tr.algebra.dim();
    let columns: Vec<Vec<f64>> =
        (0..dim).map(|k| shoot(tr, &LieVector::basis(dim, k)).coords.iter().map(|x| x.as_f64()).collect()).collect();
    let f = DMatrix::from_fn(dim, dim, |r, c| columns[c][r]);
    let sv = f.clone().svd(false, false).singular_values;
    let min_sv = sv.min();
    let norm = sv.max();
    let det = f.determinant();
    let signed = f
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= 1e-12 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .min_by(|a, b| a.abs().total_cmp(&b.abs()))
        .unwrap_or(det);
    Ok(DegeneracyReport {
        endpoint_map: (0..dim).map(|r| (0..dim).map(|c| f[(r, c)]).collect()).collect(),
        det,
        min_singular_value: min_sv,
        norm,
        signed_indicator: signed,
        degenerate: min_sv <= DEGENERACY_TOL * norm,
    })
}

/// One-parameter families of su(2) solutions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Family {
    /// `T_k ≡ c e_k` (`k = 1, 2, 3`), all other components zero.
    Constant(usize),
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "const-t1" => Ok(Family::Constant(1)),
            "const-t2" => Ok(Family::Constant(2)),
            "const-t3" => Ok(Family::Constant(3)),
            other => Err(Error::InvalidArgument(format!(
                "unknown family '{other}' (expected const-t1, const-t2 or const-t3)"
            ))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Family::Constant(k) => format!("const-t{k}"),
        }
    }

    /// Initial state at parameter `c`.
    pub fn init(&self, c: f64) -> NahmState<f64> {
        match self {
            Family::Constant(k) => {
                let mut s = NahmState::zeros(3);
                s.t[*k] = LieVector::basis(3, k - 1).scale(c);
                s
            }
        }
    }

    /// Integrated member at parameter `c` on `[0, 1]`, optionally mapped by
    /// `Φ_a`.
    pub fn trajectory(&self, c: f64, steps: usize, scale: f64) -> Result<NahmTrajectory<f64>> {
        let tr = integrate(&su2(), &self.init(c), 1.0, steps, true)?;
        scaling(scale, &tr)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub param: f64,
    pub det: f64,
    pub min_sv: f64,
    pub signed_indicator: f64,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Root {
    pub param: f64,
    pub min_sv: f64,
    pub det: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    pub roots: Vec<Root>,
}

/// Evaluates the indicator for the member built by `make(c)`.
pub fn scan_point<F>(make: &F, c: f64) -> Result<ScanRow>
where
    F: Fn(f64) -> Result<NahmTrajectory<f64>>,
{
    let r = degeneracy_indicator(&make(c)?)?;
    Ok(ScanRow {
        param: c,
        det: r.det,
        min_sv: r.min_singular_value,
        signed_indicator: r.signed_indicator,
        degenerate: r.degenerate,
    })
}

/// Bisects every sign change of the signed indicator between consecutive
/// rows and keeps the refined points where the endpoint map is singular.
pub fn refine_roots<F>(make: &F, rows: &[ScanRow]) -> Result<Vec<Root>>
where
    F: Fn(f64) -> Result<NahmTrajectory<f64>>,
{
    let mut roots = Vec::new();
    for w in rows.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let exact_hit = a.signed_indicator == 0.0;
        if !exact_hit && a.signed_indicator * b.signed_indicator >= 0.0 {
            continue;
        }
        let (mut lo, mut hi) = (a.param, b.param);
        let mut f_lo = a.signed_indicator;
        let mut it = 0;
        while !exact_hit && (hi - lo).abs() > BISECTION_TOL && it < 200 {
            let m = 0.5 * (lo + hi);
            let fm = degeneracy_indicator(&make(m)?)?.signed_indicator;
            if fm == 0.0 {
                lo = m;
                hi = m;
                break;
            }
            if (fm > 0.0) == (f_lo > 0.0) {
                lo = m;
                f_lo = fm;
            } else {
                hi = m;
            }
            it += 1;
        }
        let c = 0.5 * (lo + hi);
        let r = degeneracy_indicator(&make(c)?)?;
        if r.min_singular_value <= ROOT_ACCEPT * r.norm {
            roots.push(Root { param: c, min_sv: r.min_singular_value, det: r.det, iterations: it });
        }
    }
    Ok(roots)
}

/// Uniform parameter grid with `samples` nodes including both ends.
pub fn param_grid(from: f64, to: f64, samples: usize) -> Result<Vec<f64>> {
    if samples < 2 || !(to > from) {
        return Err(Error::InvalidArgument(format!(
            "scan needs from < to and at least two samples (got [{from}, {to}], {samples})"
        )));
    }
    Ok((0..samples).map(|j| from + (to - from) * j as f64 / (samples - 1) as f64).collect())
}

/// Sequential scan of `family` over `[from, to]`.
pub fn degeneracy_scan(
    family: Family,
    from: f64,
    to: f64,
    samples: usize,
    steps: usize,
    scale: f64,
) -> Result<ScanResult> {
    let make = |c: f64| family.trajectory(c, steps, scale);
    let rows = param_grid(from, to, samples)?.into_iter().map(|c| scan_point(&make, c)).collect::<Result<Vec<_>>>()?;
    let roots = refine_roots(&make, &rows)?;
    Ok(ScanResult { rows, roots })
}
