use multirigid_core::embedding::ReducedEmbedding;
use multirigid_core::ngon::KTriangulation;
use multirigid_core::polytope::*;
use multirigid_core::rigidity::*;

fn main() {
    let t = ParameterConfig::from_integers(&[-2, 1, 2, 3, 4, 5, 6, 7, 9, 20]).unwrap();
    let m = build_polynomial(&t, 6).unwrap();
    let emb = ReducedEmbedding::new(&m, 3).unwrap();
    let facets = emb.gon.all_facets();
    let ineqs = build_inequalities(&emb, &facets).unwrap();
    println!("inequalities: {}", ineqs.len());
    let lift = LiftingVector::from_integer_entries(&[
        ((4, 8), 4), ((4, 9), 69), ((4, 10), 16074),
        ((5, 9), 14), ((5, 10), 10281), ((6, 10), 3948),
    ]);
    let greedy = KTriangulation::greedy(10, 3).unwrap();
    let mut violated = 0;
    let mut first = true;
    for (i, q) in ineqs.iter().enumerate() {
        let v = q.evaluate(&lift);
        if !num_traits::Signed::is_positive(&v) {
            violated += 1;
            if first {
                println!("first violated #{i}: removed {} inserted {} value {}", q.removed, q.inserted, multirigid_core::formats::rat_to_string(&v));
                println!("coeffs: {:?}", q.coeffs.iter().map(|(e, c)| format!("{e}:{c}")).collect::<Vec<_>>());
                first = false;
            }
        }
    }
    println!("violated: {violated}/{}", ineqs.len());
    match find_lift(&ineqs, 10, 3).unwrap() {
        LpOutcome::Feasible(f) => {
            println!("system IS feasible");
            let ok = verify_lift(&f, &ineqs, &greedy).unwrap().is_ok();
            println!("found lift verifies: {ok}");
            println!("found lift: {}", serde_json::to_string(&f).unwrap());
        }
        LpOutcome::Infeasible(_) => println!("system is INFEASIBLE"),
    }
}
