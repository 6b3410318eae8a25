//! Seed-deterministic sampling of points on the spacelike cone and on the
//! unit pseudo-sphere.
//!
//! Each sample index gets its own ChaCha stream, so parallel sweeps produce
//! the same points as sequential ones.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bmodule::BVector;
use crate::permuting::FlatPoint;
use crate::sasakian::SpherePoint;
use crate::scalar::Real;

/// Draws are kept only if `g(h, h) > SPACELIKE_MARGIN·|h|²` (Euclidean), which
/// keeps the rescaled sphere points in a bounded patch.
pub const SPACELIKE_MARGIN: f64 = 0.05;

/// RNG for sample `index` under `seed`.
pub fn point_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn spacelike_draw<T: Real>(entries: usize, rng: &mut ChaCha8Rng) -> BVector<T> {
    loop {
        let h = BVector::<T>::random(entries, rng);
        let e = h.euclid_norm();
        if h.norm_sq() > T::lit(SPACELIKE_MARGIN) * e * e {
            return h;
        }
    }
}

/// Gaussian point of `B^entries` conditioned to be spacelike.
pub fn random_spacelike<T: Real>(entries: usize, rng: &mut ChaCha8Rng) -> FlatPoint<T> {
    FlatPoint::new(spacelike_draw(entries, rng)).expect("accepted draws are spacelike")
}

/// Spacelike Gaussian draw rescaled to `g(p, p) = 1`.
pub fn random_sphere_point<T: Real>(entries: usize, rng: &mut ChaCha8Rng) -> SpherePoint<T> {
    let h = spacelike_draw::<T>(entries, rng);
    let s = h.norm_sq().sqrt();
    SpherePoint::new(h.scale(T::one() / s)).expect("rescaled spacelike draw lies on the sphere")
}
