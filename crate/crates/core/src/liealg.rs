//! Finite-dimensional Lie algebras given by structure constants and an
//! ad-invariant inner product.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Residual tolerance used by [`LieAlgebra::check`].
pub const CHECK_TOL: f64 = 1e-12;

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k` with inner-product matrix `ip`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<T> {
    dim: usize,
    c: Vec<T>,
    ip: Vec<T>,
    name: String,
    su2: bool,
}

/// Coordinates of an element in the basis of its algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct LieVector<T> {
    pub coords: Vec<T>,
}

/// On-disk form: `{"dim": n, "c": [[[...]]], "ip": [[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub c: Vec<Vec<Vec<f64>>>,
    pub ip: Vec<Vec<f64>>,
}

/// One line of a validation report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
            // NaN residuals fail
            pass: residual <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub checks: Vec<Check>,
}

impl AlgebraReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl<T: Real> LieVector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![T::zero(); dim])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[k] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.coords.iter().zip(&o.coords).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.coords.iter().zip(&o.coords).map(|(a, b)| *a - *b).collect())
    }

    pub fn scale(&self, a: T) -> Self {
        Self::new(self.coords.iter().map(|x| *x * a).collect())
    }

    /// `self + a·o`.
    pub fn axpy(&self, a: T, o: &Self) -> Self {
        Self::new(self.coords.iter().zip(&o.coords).map(|(x, y)| *x + a * *y).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-T::one())
    }

    pub fn max_abs(&self) -> T {
        crate::scalar::max_abs(&self.coords)
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|x| x.is_finite())
    }
}

impl<T: Real> LieAlgebra<T> {
    /// Builds an algebra from flat arrays, validating shapes only.
    pub fn new(dim: usize, c: Vec<Vec<Vec<T>>>, ip: Vec<Vec<T>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        let shape_ok = c.len() == dim
            && c.iter().all(|r| r.len() == dim && r.iter().all(|s| s.len() == dim))
            && ip.len() == dim
            && ip.iter().all(|r| r.len() == dim);
        if !shape_ok {
            return Err(Error::InvalidAlgebra(format!(
                "structure constants or inner product are not {dim}-dimensional"
            )));
        }
        Ok(Self {
            dim,
            c: c.into_iter().flatten().flatten().collect(),
            ip: ip.into_iter().flatten().collect(),
            name: "custom".into(),
            su2: false,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Whether the algebra is the built-in su(2), which carries a 2×2
    /// matrix realization.
    pub fn is_su2(&self) -> bool {
        self.su2
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> T {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    pub fn ip(&self, i: usize, j: usize) -> T {
        self.ip[i * self.dim + j]
    }

    fn check_dim(&self, x: &LieVector<T>) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &LieVector<T>, y: &LieVector<T>) -> Result<LieVector<T>> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &LieVector<T>, y: &LieVector<T>) -> LieVector<T> {
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            let xi = x.coords[i];
            if xi == T::zero() {
                continue;
            }
            for j in 0..n {
                let w = xi * y.coords[j];
                if w == T::zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.c(i, j, k);
                }
            }
        }
        LieVector::new(out)
    }

    pub fn inner(&self, x: &LieVector<T>, y: &LieVector<T>) -> Result<T> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.inner_unchecked(x, y))
    }

    pub(crate) fn inner_unchecked(&self, x: &LieVector<T>, y: &LieVector<T>) -> T {
        let n = self.dim;
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                s += x.coords[i] * self.ip(i, j) * y.coords[j];
            }
        }
        s
    }

    pub fn norm_sq(&self, x: &LieVector<T>) -> T {
        self.inner_unchecked(x, x)
    }

    /// Antisymmetry, Jacobi and ad-invariance on basis triples, plus symmetry
    /// and positive-definiteness of `ip`.
    pub fn check(&self) -> AlgebraReport {
        let n = self.dim;
        let mut anti = 0.0f64;
        let mut jac = 0.0f64;
        let mut adinv = 0.0f64;
        let e = |k| LieVector::<T>::basis(n, k);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    anti = anti.max((self.c(i, j, k) + self.c(j, i, k)).abs().as_f64());
                    let (x, y, z) = (e(i), e(j), e(k));
                    let s = self
                        .bracket_unchecked(&x, &self.bracket_unchecked(&y, &z))
                        .add(&self.bracket_unchecked(&y, &self.bracket_unchecked(&z, &x)))
                        .add(&self.bracket_unchecked(&z, &self.bracket_unchecked(&x, &y)));
                    jac = jac.max(s.max_abs().as_f64());
                    let l = self.inner_unchecked(&self.bracket_unchecked(&x, &y), &z);
                    let r = self.inner_unchecked(&x, &self.bracket_unchecked(&y, &z));
                    adinv = adinv.max((l - r).abs().as_f64());
                }
            }
        }
        let mut sym = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                sym = sym.max((self.ip(i, j) - self.ip(j, i)).abs().as_f64());
            }
        }
        let ip = nalgebra::DMatrix::from_fn(n, n, |i, j| 0.5 * (self.ip(i, j) + self.ip(j, i)).as_f64());
        let min_eig = ip.symmetric_eigenvalues().min();
        // reported as a residual: how far the smallest eigenvalue is from positive
        let pd = if min_eig > 0.0 { 0.0 } else { 1.0 - min_eig };
        AlgebraReport {
            checks: vec![
                Check::new("antisymmetry", anti, CHECK_TOL),
                Check::new("jacobi", jac, CHECK_TOL),
                Check::new("ad_invariance", adinv, CHECK_TOL),
                Check::new("ip_symmetric", sym, CHECK_TOL),
                Check::new("ip_positive_definite", pd, CHECK_TOL),
            ],
        }
    }

    pub fn from_file_data(f: &AlgebraFile) -> Result<Self> {
        let conv = |x: &f64| T::lit(*x);
        let c = f.c.iter().map(|a| a.iter().map(|b| b.iter().map(conv).collect()).collect()).collect();
        let ip = f.ip.iter().map(|a| a.iter().map(conv).collect()).collect();
        Self::new(f.dim, c, ip)
    }

    /// Parses a JSON structure-constant file and validates it.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let f: AlgebraFile = serde_json::from_str(s).map_err(|e| Error::InvalidAlgebra(e.to_string()))?;
        let alg = Self::from_file_data(&f)?;
        let report = alg.check();
        if let Some(bad) = report.checks.iter().find(|c| !c.pass) {
            return Err(Error::InvalidAlgebra(format!("{} residual {:e}", bad.name, bad.residual)));
        }
        Ok(alg)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::InvalidAlgebra(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&s)
    }

    pub fn to_file_data(&self) -> AlgebraFile {
        let n = self.dim;
        AlgebraFile {
            dim: n,
            c: (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.c(i, j, k).as_f64()).collect()).collect()).collect(),
            ip: (0..n).map(|i| (0..n).map(|j| self.ip(i, j).as_f64()).collect()).collect(),
        }
    }
}

/// su(2) with `[e₁,e₂] = e₃` cyclically and the identity inner product.
pub fn su2<T: Real>() -> LieAlgebra<T> {
    let mut c = vec![vec![vec![T::zero(); 3]; 3]; 3];
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        c[i][j][k] = T::one();
        c[j][i][k] = -T::one();
    }
    let ip = (0..3).map(|i| (0..3).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
    let mut alg = LieAlgebra::new(3, c, ip).expect("su(2) tables are well-formed");
    alg.name = "su2".into();
    alg.su2 = true;
    alg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(k: usize) -> LieVector<f64> {
        LieVector::basis(3, k)
    }

    #[test]
    fn su2_table() {
        let g = su2::<f64>();
        assert_eq!(g.bracket(&e(0), &e(1)).unwrap(), e(2));
        assert_eq!(g.bracket(&e(1), &e(2)).unwrap(), e(0));
        assert_eq!(g.bracket(&e(2), &e(0)).unwrap(), e(1));
        assert_eq!(g.bracket(&e(0), &e(0)).unwrap(), LieVector::zeros(3));
        assert_eq!(g.bracket(&e(0).add(&e(1)), &e(1)).unwrap(), e(2));
    }

    // oracle: su(2) realised by E_a = -i σ_a / 2, where [E_a, E_b] = ε_abc E_c
    #[test]
    fn su2_matches_pauli_commutators() {
        use num_complex::Complex64 as C;
        let z = C::new(0.0, 0.0);
        let pauli = [
            [[z, C::new(1.0, 0.0)], [C::new(1.0, 0.0), z]],
            [[z, C::new(0.0, -1.0)], [C::new(0.0, 1.0), z]],
            [[C::new(1.0, 0.0), z], [z, C::new(-1.0, 0.0)]],
        ];
        let ea: Vec<[[C; 2]; 2]> = pauli
            .iter()
            .map(|p| {
                let mut m = [[z; 2]; 2];
                for r in 0..2 {
                    for c in 0..2 {
                        m[r][c] = p[r][c] * C::new(0.0, -0.5);
                    }
                }
                m
            })
            .collect();
        let mm = |a: &[[C; 2]; 2], b: &[[C; 2]; 2]| {
            let mut m = [[z; 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    m[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
                }
            }
            m
        };
        // coordinate of a traceless anti-hermitian matrix along E_k: -2 tr(X E_k)
        let coord = |x: &[[C; 2]; 2], k: usize| {
            let p = mm(x, &ea[k]);
            (-(p[0][0] + p[1][1]) * 2.0).re
        };
        let g = su2::<f64>();
        for a in 0..3 {
            for b in 0..3 {
                let ab = mm(&ea[a], &ea[b]);
                let ba = mm(&ea[b], &ea[a]);
                let mut comm = [[z; 2]; 2];
                for r in 0..2 {
                    for c in 0..2 {
                        comm[r][c] = ab[r][c] - ba[r][c];
                    }
                }
                let br = g.bracket(&e(a), &e(b)).unwrap();
                for k in 0..3 {
                    assert!((coord(&comm, k) - br.coords[k]).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn inner_and_ad_invariance_examples() {
        let g = su2::<f64>();
        assert_eq!(g.inner(&e(0), &e(0)).unwrap(), 1.0);
        let l = g.inner(&g.bracket(&e(0), &e(1)).unwrap(), &e(2)).unwrap();
        let r = g.inner(&e(0), &g.bracket(&e(1), &e(2)).unwrap()).unwrap();
        assert_eq!((l, r), (1.0, 1.0));
    }

    #[test]
    fn su2_passes_checks_exactly() {
        let rep = su2::<f64>().check();
        assert!(rep.all_pass());
        assert!(rep.checks.iter().all(|c| c.residual == 0.0));
    }

    #[test]
    fn dimension_mismatch() {
        let g = su2::<f64>();
        let bad = LieVector::zeros(2);
        assert!(matches!(g.bracket(&bad, &e(0)), Err(Error::DimensionMismatch { expected: 3, found: 2 })));
        assert!(g.inner(&e(0), &bad).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = su2::<f64>();
        let s = serde_json::to_string(&g.to_file_data()).unwrap();
        let h = LieAlgebra::<f64>::from_json_str(&s).unwrap();
        assert_eq!(h.dim(), 3);
        assert!(!h.is_su2());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.bracket(&e(i), &e(j)).unwrap(), h.bracket(&e(i), &e(j)).unwrap());
            }
        }
    }

    #[test]
    fn json_rejects_broken_algebras() {
        // not antisymmetric
        let s = r#"{"dim":1,"c":[[[1.0]]],"ip":[[1.0]]}"#;
        assert!(matches!(LieAlgebra::<f64>::from_json_str(s), Err(Error::InvalidAlgebra(_))));
        // indefinite inner product
        let s = r#"{"dim":1,"c":[[[0.0]]],"ip":[[-1.0]]}"#;
        assert!(LieAlgebra::<f64>::from_json_str(s).is_err());
        // wrong shape
        let s = r#"{"dim":2,"c":[[[0.0]]],"ip":[[1.0]]}"#;
        assert!(LieAlgebra::<f64>::from_json_str(s).is_err());
        assert!(LieAlgebra::<f64>::from_json_str("{").is_err());
    }

    #[test]
    fn abelian_algebra_loads() {
        let s = r#"{"dim":2,"c":[[[0,0],[0,0]],[[0,0],[0,0]]],"ip":[[1,0],[0,2]]}"#;
        let g = LieAlgebra::<f64>::from_json_str(s).unwrap();
        assert_eq!(g.inner(&LieVector::basis(2, 1), &LieVector::basis(2, 1)).unwrap(), 2.0);
    }
}
