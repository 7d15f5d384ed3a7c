use multirigid_core::obstructions::*;
use multirigid_core::rigidity::*;
use multirigid_core::sample;

fn main() {
    // Pin down the orientation requirements of the two sub-configurations at
    // n = 2k+6: sample random convex 12-gons (k = 3), classify the shared
    // hexad, and report which restricted star is empty.
    let mut rng = sample::rng(42);
    let mut stats = [[0u32; 2]; 3]; // class -> (a_empty, b_empty)
    for _ in 0..60 {
        let q = sample::random_convex_config(&mut rng, 12);
        let w = impossibility_witness(&q, 3).unwrap();
        let ci = match w.class {
            OrientationClass::Positive => 0,
            OrientationClass::Negative => 1,
            OrientationClass::Desargues => 2,
        };
        if !w.star_a.nonempty { stats[ci][0] += 1; }
        if !w.star_b.nonempty { stats[ci][1] += 1; }
        if w.star_a.nonempty && w.star_b.nonempty {
            println!("NO CONFLICT at class {:?}", w.class);
        }
    }
    println!("class Positive: a_empty={} b_empty={}", stats[0][0], stats[0][1]);
    println!("class Negative: a_empty={} b_empty={}", stats[1][0], stats[1][1]);
    println!("class Desargues: a_empty={} b_empty={}", stats[2][0], stats[2][1]);
    let _ = regular_gon_config(12, 32);
}
