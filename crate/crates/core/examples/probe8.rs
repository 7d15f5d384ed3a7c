use multirigid_core::embedding::ReducedEmbedding;
use multirigid_core::linalg::Rat;
use multirigid_core::ngon::Edge;
use multirigid_core::polytope::*;
use multirigid_core::rigidity::*;
use num_traits::Signed;

fn main() {
    let t = circle_positions(10, 64).unwrap();
    let m = build_polynomial(&t, 6).unwrap();
    let emb = ReducedEmbedding::new(&m, 3).unwrap();
    let facets = emb.gon.all_facets();
    let ineqs = build_inequalities(&emb, &facets).unwrap();
    let base = LiftingVector::from_integer_entries(&[
        ((4, 8), 4), ((4, 9), 69), ((4, 10), 16074),
        ((5, 9), 14), ((5, 10), 10281), ((6, 10), 3948),
    ]);
    for (i, q) in ineqs.iter().enumerate() {
        let v = q.evaluate(&base);
        if !v.is_positive() {
            let fv: f64 = {
                let n: f64 = q.evaluate(&base).numer().to_string().parse().unwrap_or(f64::NAN);
                let d: f64 = q.evaluate(&base).denom().to_string().parse().unwrap_or(f64::NAN);
                n / d
            };
            println!("#{i} removed {} inserted {} value ~ {fv:.4e}", q.removed, q.inserted);
        }
    }
    // exponent scan at circle positions
    for s in -6i32..=6 {
        let f: std::collections::BTreeMap<Edge, Rat> = base
            .f
            .iter()
            .map(|(e, v)| {
                let delta = &t.t[e.j as usize - 1] - &t.t[e.i as usize - 1];
                let mut scale = Rat::from_integer(1.into());
                for _ in 0..s.abs() { scale = &scale * &delta; }
                if s < 0 { scale = scale.recip(); }
                (*e, v * &scale)
            })
            .collect();
        let lift = LiftingVector { f };
        let violated = ineqs.iter().filter(|q| !q.evaluate(&lift).is_positive()).count();
        if violated < 20 { println!("exp {s}: violated {violated}"); }
    }
}
