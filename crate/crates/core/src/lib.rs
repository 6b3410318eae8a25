//! Numerical companion to hypersymplectic geometry with a permuting SU(1,1)
//! action.
//!
//! The crate is organised bottom-up:
//!
//! * [`splitquat`]: the split quaternions `B`, their indefinite norm, the unit
//!   group SU(1,1) and its adjoint map onto SO⁺(1,2).
//! * [`bmodule`]: the flat module `Bⁿ`, its neutral metric, the structures
//!   `I, S, T` and the `Sp(n,B) × Sp(1,B)` action.
//! * [`permuting`]: fundamental fields, the Clebsch-Gordan split of
//!   `ι ω`, the maps `ρ₀, ρ₁, ρ₂`, the Euler field and the potentials `κ`,
//!   all evaluated in closed form on the spacelike cone of `Bⁿ⁺¹`.
//! * [`sasakian`]: the split 3-Sasakian structure of the unit pseudo-sphere
//!   `S₊` and the horizontal data feeding the para-quaternionic quotient.
//! * [`liealg`] and [`nahm`]: a structure-constant Lie algebra backend and the
//!   Nahm-Schmid equations with their symmetries and degeneracy locus.
//!
//! Everything is generic over a [`Real`] scalar; the aliases at the crate root
//! fix it to `f64`, which is what the verification tolerances assume.

// negated float comparisons reject NaN on purpose; index loops mirror the
// formulas
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bmodule;
pub mod calibration;
pub mod error;
pub mod liealg;
pub mod nahm;
pub mod permuting;
pub mod sampling;
pub mod sasakian;
pub mod scalar;
pub mod splitquat;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type SplitQuat = splitquat::SplitQuaternion<f64>;
pub type ImSplitF64 = splitquat::ImSplit<f64>;
pub type BVec = bmodule::BVector<f64>;
pub type QuatMat = bmodule::QuatMatrix<f64>;
pub type LieAlg = liealg::LieAlgebra<f64>;
pub type LieVec = liealg::LieVector<f64>;
pub type NahmStateF64 = nahm::NahmState<f64>;
pub type Trajectory = nahm::NahmTrajectory<f64>;
pub type FlatPt = permuting::FlatPoint<f64>;
pub type SpherePt = sasakian::SpherePoint<f64>;

/// Crate version, embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
