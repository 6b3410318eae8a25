//! Sign conventions fixed by calibration against the flat model.
//!
//! [`run`] replays the selection: of the eight sign tables for `λ`, exactly
//! one makes `ρ₂` and `χ₂` vanish on the spacelike cone with `ρ₀ > 0`. The
//! constants below record its outcome together with the normalisations the
//! remaining identities were found to satisfy under that table; the unit
//! tests re-run the selection so that a drift in any convention fails loudly.

use serde::Serialize;

use crate::bmodule::SignTable;
use crate::error::{Error, Result};
use crate::permuting::{chi_parts, rho};
use crate::sampling::{point_rng, random_spacelike};

/// `λ(ξ)` is right multiplication by `ξ̄`.
pub const CALIBRATED: SignTable = SignTable::new([-1, -1, -1]);

/// `d(I_ξ* dρ₀) = POTENTIAL_FACTOR · ε_ξ · ω_ξ`.
pub const POTENTIAL_FACTOR: f64 = 2.0;

/// `ε_ξ` for `ξ = i, s, t`.
pub const POTENTIAL_EPS: [f64; 3] = [1.0, 1.0, 1.0];

/// `½[X_a, X_b] = BRACKET_SIGN · (reference table)` for the Reeb fields.
pub const BRACKET_SIGN: f64 = -1.0;

/// Contact type `ε'_k = -‖ξ_k‖²`: `Φ_k² = ε'_k (id - η_k ⊗ X_k)`.
pub const CONTACT_EPS: [f64; 3] = [-1.0, 1.0, 1.0];

/// `τ_k = ‖X_k‖²` on the unit sphere.
pub const REEB_TAU: [f64; 3] = [1.0, -1.0, -1.0];

/// `N_{Φ_k} = NORMALITY_FACTOR · ε'_k · dη_k ⊗ X_k` (½-normalised `dη`).
pub const NORMALITY_FACTOR: f64 = 2.0;

/// Per-table outcome of [`run`].
#[derive(Clone, Debug, Serialize)]
pub struct TableResult {
    pub table: SignTable,
    pub max_rho2: f64,
    pub max_chi2: f64,
    pub min_rho0: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationReport {
    pub tables: Vec<TableResult>,
}

impl CalibrationReport {
    pub fn passing(&self) -> Vec<SignTable> {
        self.tables.iter().filter(|t| t.pass).map(|t| t.table).collect()
    }

    /// The unique passing table.
    pub fn selected(&self) -> Result<SignTable> {
        match self.passing().as_slice() {
            [t] => Ok(*t),
            other => Err(Error::Calibration { passed: other.len() }),
        }
    }
}

/// Evaluates every table on `points` spacelike points of `Bⁿ⁺¹`.
pub fn run(seed: u64, points: usize, n: usize) -> CalibrationReport {
    let pts: Vec<_> = (0..points as u64).map(|i| random_spacelike::<f64>(n + 1, &mut point_rng(seed, i))).collect();
    let tables = SignTable::all()
        .into_iter()
        .map(|table| {
            let mut max_rho2 = 0.0f64;
            let mut max_chi2 = 0.0f64;
            let mut min_rho0 = f64::INFINITY;
            for p in &pts {
                let r = rho(p, table);
                max_rho2 = max_rho2.max(r.rho2_norm());
                max_chi2 = max_chi2.max(chi_parts(p.h(), table).chi2_norm());
                min_rho0 = min_rho0.min(r.rho0);
            }
            let pass = max_rho2 <= 1e-10 && max_chi2 <= 1e-10 && min_rho0 > 0.0;
            TableResult { table, max_rho2, max_chi2, min_rho0, pass }
        })
        .collect();
    CalibrationReport { tables }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_selects_the_frozen_table() {
        for seed in 0..3 {
            let rep = run(seed, 100, 1);
            assert_eq!(rep.selected().unwrap(), CALIBRATED);
        }
    }

    #[test]
    fn vanishing_alone_admits_two_tables() {
        let rep = run(0, 50, 1);
        let vanish: Vec<_> =
            rep.tables.iter().filter(|t| t.max_rho2 <= 1e-10 && t.max_chi2 <= 1e-10).map(|t| t.table).collect();
        assert_eq!(vanish, vec![SignTable::new([1, 1, 1]), CALIBRATED]);
    }
}
