use proptest::prelude::*;
use splitgeom::bmodule::{lambda_apply, metric, sp_action, BVector, QuatMatrix, SignTable};
use splitgeom::calibration::CALIBRATED;
use splitgeom::liealg::{su2, LieAlgebra, LieVector};
use splitgeom::splitquat::{adjoint_matrix, lorentz_residual, mat3_det, mat3_max_abs_diff, mat3_mul, random_unit};
use splitgeom::{ImSplitF64, SplitQuat};

// B ≅ M₂(ℝ): i ↦ [[0,-1],[1,0]], s ↦ diag(1,-1), t ↦ [[0,1],[1,0]].
type M2 = [[f64; 2]; 2];

fn to_m2(q: &SplitQuat) -> M2 {
    [[q.w + q.y, -q.x + q.z], [q.x + q.z, q.w - q.y]]
}

fn from_m2(m: &M2) -> SplitQuat {
    let w = 0.5 * (m[0][0] + m[1][1]);
    let y = 0.5 * (m[0][0] - m[1][1]);
    let x = 0.5 * (m[1][0] - m[0][1]);
    let z = 0.5 * (m[1][0] + m[0][1]);
    SplitQuat::new(w, x, y, z)
}

fn m2_mul(a: &M2, b: &M2) -> M2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

fn quat() -> impl Strategy<Value = SplitQuat> {
    prop::array::uniform4(-3.0..3.0f64).prop_map(SplitQuat::from_array)
}

fn bvec(n: usize) -> impl Strategy<Value = BVector<f64>> {
    prop::collection::vec(quat(), n).prop_map(BVector::new)
}

fn lie() -> impl Strategy<Value = LieVector<f64>> {
    prop::collection::vec(-2.0..2.0f64, 3).prop_map(LieVector::new)
}

#[test]
fn matrix_model_reproduces_the_basis() {
    let id = to_m2(&SplitQuat::one());
    assert_eq!(id, [[1.0, 0.0], [0.0, 1.0]]);
    for q in [SplitQuat::i(), SplitQuat::s(), SplitQuat::t()] {
        assert_eq!(from_m2(&to_m2(&q)), q);
    }
}

proptest! {
    #[test]
    fn product_matches_matrix_model(a in quat(), b in quat()) {
        let want = from_m2(&m2_mul(&to_m2(&a), &to_m2(&b)));
        prop_assert!((a * b - want).max_abs() < 1e-12);
    }

    #[test]
    fn norm_is_determinant_and_multiplicative(a in quat(), b in quat()) {
        let m = to_m2(&a);
        prop_assert!((a.norm_sq() - (m[0][0] * m[1][1] - m[0][1] * m[1][0])).abs() < 1e-12);
        let np = a.norm_sq() * b.norm_sq();
        prop_assert!(((a * b).norm_sq() - np).abs() <= 1e-10 * (1.0 + np.abs()));
    }

    #[test]
    fn associativity_and_conjugation(a in quat(), b in quat(), c in quat()) {
        prop_assert!(((a * b) * c - a * (b * c)).max_abs() < 1e-11);
        prop_assert!(((a * b).conj() - b.conj() * a.conj()).max_abs() < 1e-12);
        prop_assert!((a.inner(b) - (a * b.conj()).w).abs() < 1e-12);
    }

    #[test]
    fn inverse_when_not_null(a in quat()) {
        prop_assume!(a.norm_sq().abs() > 1e-3);
        let inv = a.inverse().unwrap();
        prop_assert!((a * inv - SplitQuat::one()).max_abs() < 1e-9 * (1.0 + a.max_abs() * inv.max_abs()));
    }

    #[test]
    fn adjoint_is_a_lorentz_homomorphism(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (q1, q2) = (random_unit::<f64>(s1), random_unit::<f64>(s2));
        let (m1, m2) = (adjoint_matrix(&q1).unwrap(), adjoint_matrix(&q2).unwrap());
        let m12 = adjoint_matrix(&(q1 * q2)).unwrap();
        let scale = 1.0 + m1.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).powi(2)
            * m2.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).powi(2);
        prop_assert!(mat3_max_abs_diff(&m12, &mat3_mul(&m1, &m2)) <= 1e-10 * scale);
        prop_assert!(lorentz_residual(&m1) <= 1e-10 * scale);
        prop_assert!((mat3_det(&m1) - 1.0).abs() <= 1e-10 * scale);
        prop_assert!(m1[0][0] >= 1.0 - 1e-9);
        prop_assert_eq!(adjoint_matrix(&(-q1)).unwrap(), m1);
    }

    #[test]
    fn structures_square_to_minus_norm(a in bvec(3), c in prop::array::uniform3(-2.0..2.0f64)) {
        let xi = ImSplitF64::from_array(c);
        for table in SignTable::all() {
            let ll = lambda_apply(&xi, &lambda_apply(&xi, &a, table), table);
            prop_assert!(ll.add(&a.scale(xi.norm_sq())).max_abs() < 1e-10);
        }
    }

    #[test]
    fn sp_action_is_an_isometry(a in bvec(2), b in bvec(2), th in -3.0..3.0f64, s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut rot = QuatMatrix::<f64>::identity(2);
        rot.set(0, 0, SplitQuat::real(th.cos()));
        rot.set(0, 1, SplitQuat::real(-th.sin()));
        rot.set(1, 0, SplitQuat::real(th.sin()));
        rot.set(1, 1, SplitQuat::real(th.cos()));
        let d = QuatMatrix::diagonal(&[random_unit(s1), random_unit(s1 ^ 1)]);
        let m = d.matmul(&rot);
        let xi = random_unit::<f64>(s2);
        let (ga, gb) = (sp_action(&m, &xi, &a).unwrap(), sp_action(&m, &xi, &b).unwrap());
        let g = metric(&a, &b).unwrap();
        let scale = 1.0 + m.data.iter().fold(0.0f64, |x, q| x.max(q.max_abs())).powi(2) * xi.max_abs().powi(2)
            * a.max_abs() * b.max_abs();
        prop_assert!((metric(&ga, &gb).unwrap() - g).abs() <= 1e-10 * scale);
        // the calibrated structures commute with the left Sp(n) factor
        for k in 0..3 {
            let x = ImSplitF64::basis(k);
            let lhs = lambda_apply(&x, &m.apply(&a), CALIBRATED);
            let rhs = m.apply(&lambda_apply(&x, &a, CALIBRATED));
            prop_assert!(lhs.sub(&rhs).max_abs() <= 1e-10 * scale);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn su2_jacobi_and_ad_invariance(x in lie(), y in lie(), z in lie()) {
        let g = su2::<f64>();
        let b = |u: &LieVector<f64>, v: &LieVector<f64>| g.bracket(u, v).unwrap();
        let jac = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).add(&b(&z, &b(&x, &y)));
        prop_assert!(jac.max_abs() < 1e-12);
        let ad = g.inner(&b(&x, &y), &z).unwrap() + g.inner(&y, &b(&x, &z)).unwrap();
        prop_assert!(ad.abs() < 1e-12);
        prop_assert!(b(&x, &y).add(&b(&y, &x)).max_abs() == 0.0);
    }
}

#[test]
fn algebra_files_round_trip_and_reject_bad_data() {
    let g = su2::<f64>();
    let text = serde_json::to_string(&g.to_file_data()).unwrap();
    let h = LieAlgebra::<f64>::from_json_str(&text).unwrap();
    let x = LieVector::new(vec![0.3, -0.2, 1.1]);
    let y = LieVector::new(vec![1.0, 0.5, -0.7]);
    assert_eq!(h.bracket(&x, &y).unwrap(), g.bracket(&x, &y).unwrap());

    // abelian R³ with an indefinite form is rejected
    let bad = r#"{"dim": 3, "c": [[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]],[[0,0,0],[0,0,0],[0,0,0]]],
                 "ip": [[1,0,0],[0,-1,0],[0,0,1]]}"#;
    assert!(LieAlgebra::<f64>::from_json_str(bad).is_err());
    // Jacobi fails for a perturbed su(2)
    let mut f = g.to_file_data();
    f.c[0][1][2] = 1.0;
    f.c[1][0][2] = -1.0;
    f.c[1][2][0] = 2.0;
    f.c[2][1][0] = -2.0;
    assert!(LieAlgebra::<f64>::from_json_str(&serde_json::to_string(&f).unwrap()).is_err());
    assert!(LieAlgebra::<f64>::from_json_str("{\"dim\": 2}").is_err());
}
