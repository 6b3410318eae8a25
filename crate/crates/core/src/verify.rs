//! Randomised invariant suite for the split-quaternion algebra and the
//! module structures, parameterised by the multiplication so that a broken
//! table can be injected as a negative control.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bmodule::{gram_matrix, lambda_apply, metric_unchecked, BVector};
use crate::calibration::CALIBRATED;
use crate::liealg::{AlgebraReport, Check};
use crate::splitquat::{
    im_metric_signs, lorentz_residual, mat3_det, mat3_max_abs_diff, mat3_mul, mul, random_im, random_quat,
    random_unit_with, ImSplit, Mat3, SplitQuaternion,
};

type Q = SplitQuaternion<f64>;

/// Multiplication under test.
pub type MulFn = fn(&Q, &Q) -> Q;

/// Known faults for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Flips the sign of the `i·s` contribution to the `t` coefficient, so
    /// that `i s = -t`.
    SignFlip,
}

impl Fault {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sign-flip" => Some(Fault::SignFlip),
            _ => None,
        }
    }
}

fn mul_sign_flip(a: &Q, b: &Q) -> Q {
    let mut p = mul(a, b);
    p.z -= 2.0 * a.x * b.y;
    p
}

pub fn multiplication(fault: Option<Fault>) -> MulFn {
    match fault {
        None => mul,
        Some(Fault::SignFlip) => mul_sign_flip,
    }
}

/// Sample sizes of [`run`].
#[derive(Clone, Copy, Debug)]
pub struct SuiteSize {
    pub pairs: usize,
    pub triples: usize,
    pub units: usize,
}

impl Default for SuiteSize {
    fn default() -> Self {
        Self { pairs: 10_000, triples: 10_000, units: 10_000 }
    }
}

fn adjoint_with(m: MulFn, q: &Q) -> Mat3<f64> {
    let qc = q.conj();
    let mut out = [[0.0; 3]; 3];
    for col in 0..3 {
        let img = m(&m(q, &ImSplit::basis(col).to_quat()), &qc).im().to_array();
        for row in 0..3 {
            out[row][col] = img[row];
        }
    }
    out
}

fn mat_max(m: &Mat3<f64>) -> f64 {
    m.iter().flatten().fold(0.0f64, |a, b| a.max(b.abs()))
}

/// Runs every check with the given multiplication.
pub fn run(seed: u64, size: SuiteSize, fault: Option<Fault>) -> AlgebraReport {
    let m = multiplication(fault);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    // defining relations, exact
    let (one, i, s, t) = (Q::one(), Q::i(), Q::s(), Q::t());
    let table = [
        (i, i, -one),
        (s, s, one),
        (t, t, one),
        (i, s, t),
        (s, i, -t),
        (t, s, i),
        (s, t, -i),
        (i, t, -s),
        (t, i, s),
        (one, i, i),
        (s, one, s),
    ];
    let r = table.iter().map(|(a, b, c)| (m(a, b) - *c).max_abs()).fold(0.0, f64::max);
    checks.push(Check::new("multiplication_table", r, 0.0));

    let mut norm_r = 0.0f64;
    let mut conj_r = 0.0f64;
    for _ in 0..size.pairs {
        let p: Q = random_quat(&mut rng);
        let q: Q = random_quat(&mut rng);
        let np = p.norm_sq() * q.norm_sq();
        norm_r = norm_r.max((m(&p, &q).norm_sq() - np).abs() / (1.0 + np.abs()));
        let re = m(&p, &q.conj()).w;
        conj_r = conj_r.max((p.inner(q) - re).abs() / (1.0 + re.abs()));
        // p p̄ = ‖p‖²
        let pp = m(&p, &p.conj()) - Q::real(p.norm_sq());
        conj_r = conj_r.max(pp.max_abs() / (1.0 + p.norm_sq().abs()));
    }
    checks.push(Check::new("norm_multiplicativity", norm_r, 1e-10));
    checks.push(Check::new("inner_is_re_p_conj_q", conj_r, 1e-12));

    let mut assoc = 0.0f64;
    for _ in 0..size.triples {
        let (a, b, c): (Q, Q, Q) = (random_quat(&mut rng), random_quat(&mut rng), random_quat(&mut rng));
        let l = m(&m(&a, &b), &c);
        let r = m(&a, &m(&b, &c));
        assoc = assoc.max((l - r).max_abs() / (1.0 + a.max_abs() * b.max_abs() * c.max_abs()));
    }
    checks.push(Check::new("associativity", assoc, 1e-12));

    let mut hom = 0.0f64;
    let mut lor = 0.0f64;
    let mut kernel = 0.0f64;
    for _ in 0..size.units {
        let q1: Q = random_unit_with(&mut rng);
        let q2: Q = random_unit_with(&mut rng);
        let (m1, m2) = (adjoint_with(m, &q1), adjoint_with(m, &q2));
        let m12 = adjoint_with(m, &m(&q1, &q2));
        let scale = 1.0 + mat_max(&m1) * mat_max(&m2);
        hom = hom.max(mat3_max_abs_diff(&m12, &mat3_mul(&m1, &m2)) / scale);
        let s1 = 1.0 + mat_max(&m1).powi(2);
        lor = lor.max(lorentz_residual(&m1) / s1);
        lor = lor.max((mat3_det(&m1) - 1.0).abs() / (s1 * mat_max(&m1).max(1.0)));
        // orthochronous component
        if m1[0][0] < 1.0 - 1e-10 * s1 {
            lor = lor.max(1.0 - m1[0][0]);
        }
        kernel = kernel.max(mat3_max_abs_diff(&adjoint_with(m, &(-q1)), &m1) / s1);
    }
    checks.push(Check::new("adjoint_homomorphism", hom, 1e-10));
    checks.push(Check::new("adjoint_in_so12", lor, 1e-10));
    checks.push(Check::new("adjoint_kernel_pm1", kernel, 1e-12));

    // module structures: λ(ξ)² = -‖ξ‖² and the metric signs of I, S, T
    let mut lam = 0.0f64;
    let mut compat = 0.0f64;
    let j = im_metric_signs::<f64>();
    for _ in 0..200 {
        let a = BVector::<f64>::random(2, &mut rng);
        let b = BVector::<f64>::random(2, &mut rng);
        let xi: ImSplit<f64> = random_im(&mut rng);
        let ll = lambda_apply(&xi, &lambda_apply(&xi, &a, CALIBRATED), CALIBRATED);
        lam = lam.max(ll.add(&a.scale(xi.norm_sq())).max_abs() / (1.0 + a.max_abs() * xi.norm_sq().abs()));
        let g = metric_unchecked(&a, &b);
        for (k, sign) in j.iter().enumerate() {
            let x = ImSplit::basis(k);
            let la = lambda_apply(&x, &a, CALIBRATED);
            let lb = lambda_apply(&x, &b, CALIBRATED);
            compat = compat.max((metric_unchecked(&la, &lb) - sign * g).abs() / (1.0 + g.abs()));
        }
    }
    checks.push(Check::new("lambda_square", lam, 1e-12));
    checks.push(Check::new("structure_metric_signs", compat, 1e-12));

    let mut sig = 0.0f64;
    for n in 1..=3 {
        let g = gram_matrix::<f64>(n);
        let mat = nalgebra::DMatrix::from_fn(4 * n, 4 * n, |r, c| g[r][c]);
        let ev = mat.symmetric_eigenvalues();
        let pos = ev.iter().filter(|e| **e > 0.5).count();
        let neg = ev.iter().filter(|e| **e < -0.5).count();
        sig = sig.max(((pos as f64) - 2.0 * n as f64).abs() + ((neg as f64) - 2.0 * n as f64).abs());
    }
    checks.push(Check::new("metric_signature", sig, 0.0));

    AlgebraReport { checks }
}
