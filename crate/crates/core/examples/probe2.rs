use multirigid_core::embedding::ReducedEmbedding;
use multirigid_core::rigidity::*;
use multirigid_core::linalg::Rat;
use num_bigint::BigInt;
use num_traits::One;
use std::time::Instant;

// Dyadic variant: t_i = round(tan * 2^bits) / 2^bits.
fn circle_dyadic(n: usize, bits: u32) -> ParameterConfig {
    let cf = circle_positions(n, 2 * bits.max(32)).unwrap(); // high-precision seeds
    let scale = BigInt::one() << bits;
    let t: Vec<Rat> = cf
        .t
        .iter()
        .map(|x| {
            let num = (x * Rat::from_integer(scale.clone())).round().to_integer();
            Rat::new(num, scale.clone())
        })
        .collect();
    ParameterConfig::new(t).unwrap()
}

fn main() {
    for (label, t, k) in [
        ("(3,10) cf64", circle_positions(10, 64).unwrap(), 3usize),
        ("(3,10) dy64", circle_dyadic(10, 64), 3),
        ("(3,10) dy32", circle_dyadic(10, 32), 3),
        ("(4,12) dy64", circle_dyadic(12, 64), 4),
        ("(4,12) dy32", circle_dyadic(12, 32), 4),
    ] {
        let t0 = Instant::now();
        let m = build_polynomial(&t, 2 * k).unwrap();
        let emb = ReducedEmbedding::new(&m, k).unwrap();
        eprintln!("{label}: embed {:?}, max ray bits {}", t0.elapsed(), emb.max_entry_bits());
    }
}
