use multirigid_core::embedding::ReducedEmbedding;
use multirigid_core::linalg::Rat;
use multirigid_core::ngon::Edge;
use multirigid_core::polytope::*;
use multirigid_core::rigidity::*;
use num_traits::Signed;

fn main() {
    let t = ParameterConfig::from_integers(&[-2, 1, 2, 3, 4, 5, 6, 7, 9, 20]).unwrap();
    let m = build_polynomial(&t, 6).unwrap();
    let emb = ReducedEmbedding::new(&m, 3).unwrap();
    let facets = emb.gon.all_facets();
    let ineqs = build_inequalities(&emb, &facets).unwrap();
    let entries: Vec<((u16, u16), i64)> = vec![
        ((4, 8), 4), ((4, 9), 69), ((4, 10), 16074),
        ((5, 9), 14), ((5, 10), 10281), ((6, 10), 3948),
    ];
    // For each entry: interval of values keeping all inequalities strict,
    // given the other five fixed.
    for free_idx in 0..entries.len() {
        let free_edge = Edge::new(entries[free_idx].0 .0, entries[free_idx].0 .1);
        let fixed: Vec<((u16, u16), i64)> = entries
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != free_idx)
            .map(|(_, &e)| e)
            .collect();
        let base = LiftingVector::from_integer_entries(&fixed);
        let mut lo: Option<Rat> = None; // x > lo
        let mut hi: Option<Rat> = None; // x < hi
        let mut infeasible = false;
        for q in &ineqs {
            let w = q.coeffs.get(&free_edge).cloned();
            let rest = q.evaluate(&base);
            match w {
                None => {
                    if !rest.is_positive() {
                        infeasible = true;
                        break;
                    }
                }
                Some(w) => {
                    let bound = -&rest / Rat::from_integer(w.clone());
                    if w.is_positive() {
                        if lo.as_ref().is_none_or(|l| bound > *l) {
                            lo = Some(bound);
                        }
                    } else if hi.as_ref().is_none_or(|h| bound < *h) {
                        hi = Some(bound);
                    }
                }
            }
        }
        if infeasible {
            println!("{free_edge}: no single-entry fix (others already violate)");
            continue;
        }
        let ok = match (&lo, &hi) {
            (Some(l), Some(h)) => l < h,
            _ => true,
        };
        println!(
            "{free_edge}: interval ({}, {}), nonempty = {ok}, table value = {}",
            lo.map(|x| multirigid_core::formats::rat_to_string(&x)).unwrap_or("-inf".into()),
            hi.map(|x| multirigid_core::formats::rat_to_string(&x)).unwrap_or("+inf".into()),
            entries[free_idx].1,
        );
    }
}
