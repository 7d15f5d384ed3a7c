use multirigid_core::embedding::ReducedEmbedding;
use multirigid_core::ngon::KTriangulation;
use multirigid_core::polytope::*;
use multirigid_core::rigidity::*;
use num_traits::Signed;

fn main() {
    for bits in [48u32, 64, 96] {
        let t = circle_positions(10, bits).unwrap();
        let m = build_polynomial(&t, 6).unwrap();
        let emb = ReducedEmbedding::new(&m, 3).unwrap();
        let facets = emb.gon.all_facets();
        let ineqs = build_inequalities(&emb, &facets).unwrap();
        let lift = LiftingVector::from_integer_entries(&[
            ((4, 8), 4), ((4, 9), 69), ((4, 10), 16074),
            ((5, 9), 14), ((5, 10), 10281), ((6, 10), 3948),
        ]);
        let greedy = KTriangulation::greedy(10, 3).unwrap();
        let violated = ineqs.iter().filter(|q| !q.evaluate(&lift).is_positive()).count();
        println!("circle bits={bits}: violated {violated}/{} ", ineqs.len());
        if violated == 0 {
            let v = verify_lift(&lift, &ineqs, &greedy).unwrap();
            println!("  verify_lift: {:?}", v.is_ok());
        }
    }
}
