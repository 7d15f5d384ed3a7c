use multirigid_core::embedding::ReducedEmbedding;
use multirigid_core::linalg::Rat;
use multirigid_core::ngon::Edge;
use multirigid_core::polytope::*;
use multirigid_core::rigidity::*;
use num_traits::Signed;

fn check_scaled(label: &str, k: usize, t: &ParameterConfig, entries: &[((u16,u16), i64)]) {
    let m = build_polynomial(t, 2 * k).unwrap();
    let emb = ReducedEmbedding::new(&m, k).unwrap();
    let facets = emb.gon.all_facets();
    let ineqs = build_inequalities(&emb, &facets).unwrap();
    let base = LiftingVector::from_integer_entries(entries);
    let mut ok_exps = Vec::new();
    for s in -6i32..=6 {
        let f: std::collections::BTreeMap<Edge, Rat> = base
            .f
            .iter()
            .map(|(e, v)| {
                let delta = &t.t[e.j as usize - 1] - &t.t[e.i as usize - 1];
                let mut scale = Rat::from_integer(1.into());
                for _ in 0..s.abs() {
                    scale = &scale * &delta;
                }
                if s < 0 {
                    scale = scale.recip();
                }
                (*e, v * &scale)
            })
            .collect();
        let lift = LiftingVector { f };
        let all_pos = ineqs.iter().all(|q| q.evaluate(&lift).is_positive());
        if all_pos {
            ok_exps.push(s);
        }
    }
    println!("{label}: valid exponents {ok_exps:?}");
}

fn main() {
    let std8 = ParameterConfig::standard(8);
    check_scaled("(2,8) table1L", 2, &std8, &[((3,6),3),((3,7),14),((3,8),36),((4,7),3),((4,8),16),((5,8),6)]);
    let std9 = ParameterConfig::standard(9);
    check_scaled("(2,9) table1R", 2, &std9, &[((3,6),7),((3,7),29),((3,8),76),((3,9),165),((4,7),9),((4,8),33),((4,9),95),((5,8),6),((5,9),42),((6,9),16)]);
    let t10 = ParameterConfig::from_integers(&[-2,1,2,3,4,5,6,7,9,20]).unwrap();
    check_scaled("(2,10) table2", 2, &t10, &[((3,6),44),((3,7),161),((3,8),424),((3,9),1733),((3,10),46398),((4,7),45),((4,8),260),((4,9),1722),((4,10),60296),((5,8),106),((5,9),1062),((5,10),42019),((6,9),196),((6,10),13048),((7,10),6146)]);
    check_scaled("(3,10) lemma", 3, &t10, &[((4,8),4),((4,9),69),((4,10),16074),((5,9),14),((5,10),10281),((6,10),3948)]);
}
