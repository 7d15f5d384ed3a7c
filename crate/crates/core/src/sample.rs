//! Seeded samplers for the property and obstruction test harnesses.
//!
//! Convex positions are generated constructively as rational points on the
//! parabola (strictly increasing rational parameters), so convexity never
//! needs a rejection loop. All randomness flows through a caller-supplied
//! seed for reproducibility.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::Rat;
use crate::rigidity::{ParameterConfig, PlanarConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Strictly increasing rationals with small numerators and denominators.
pub fn random_increasing_rationals(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    let mut t = Vec::with_capacity(n);
    let mut cur = Rat::from_integer(BigInt::from(rng.gen_range(-40i64..=0)));
    for _ in 0..n {
        let num = rng.gen_range(1i64..=24);
        let den = rng.gen_range(1i64..=6);
        cur += Rat::new(BigInt::from(num), BigInt::from(den));
        t.push(cur.clone());
    }
    t
}

pub fn random_parameters(rng: &mut ChaCha8Rng, n: usize) -> ParameterConfig {
    ParameterConfig::new(random_increasing_rationals(rng, n)).expect("increasing by construction")
}

/// A random configuration in convex position (points on the parabola).
pub fn random_convex_config(rng: &mut ChaCha8Rng, n: usize) -> PlanarConfig {
    random_parameters(rng, n).parabola()
}

/// Six increasing parameters whose parabola points are exactly in Desargues
/// position: with t4 = -c/t1, t5 = -c/t2, t6 = -c/t3 for t1 < t2 < t3 < 0
/// and c > 0, the chords 14, 25, 36 are y = (t_a + t_b) x + c, concurrent at
/// (0, c).
pub fn desargues_parameters(rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let t3 = -Rat::new(BigInt::from(rng.gen_range(1i64..=12)), BigInt::from(rng.gen_range(1i64..=4)));
    let t2 = &t3 - Rat::new(BigInt::from(rng.gen_range(1i64..=12)), BigInt::from(rng.gen_range(1i64..=4)));
    let t1 = &t2 - Rat::new(BigInt::from(rng.gen_range(1i64..=12)), BigInt::from(rng.gen_range(1i64..=4)));
    let c = Rat::new(BigInt::from(rng.gen_range(1i64..=40)), BigInt::from(rng.gen_range(1i64..=4)));
    let t4 = -&c / &t1;
    let t5 = -&c / &t2;
    let t6 = -&c / &t3;
    vec![t1, t2, t3, t4, t5, t6]
}
