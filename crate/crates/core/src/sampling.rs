//! Seeded random sampling of rational points in cones.
//!
//! Samples are nonnegative integer combinations of the extremal rays, so they
//! are exact and reproducible given the seed. Interior samples use strictly
//! positive coefficients; plain samples may drop rays and land on faces.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cones::PolyhedralCone;
use crate::exactnum::{Rational, RationalVector};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random point of the cone: nonnegative integer ray combination, never zero.
pub fn sample_in_cone(cone: &PolyhedralCone, rng: &mut ChaCha8Rng) -> RationalVector {
    loop {
        let v = combination(cone, rng, 0, 7);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Random interior point: strictly positive coefficients on every ray.
pub fn sample_in_interior(cone: &PolyhedralCone, rng: &mut ChaCha8Rng) -> RationalVector {
    combination(cone, rng, 1, 7)
}

fn combination(
    cone: &PolyhedralCone,
    rng: &mut ChaCha8Rng,
    min_coeff: i64,
    max_coeff: i64,
) -> RationalVector {
    let mut acc = RationalVector::zeros(cone.ambient_dim);
    for ray in cone.rays() {
        let c = rng.gen_range(min_coeff..=max_coeff);
        if c != 0 {
            acc = acc.add(&ray.scale(&Rational::from_int(c)));
        }
    }
    acc
}

/// Random positive rational scale factor with small numerator/denominator.
pub fn sample_scale(rng: &mut ChaCha8Rng) -> Rational {
    let p = rng.gen_range(1..=9i64);
    let q = rng.gen_range(1..=9i64);
    Rational::ratio(p, q)
}
