use multirigid_core::embedding::ReducedEmbedding;
use multirigid_core::linalg::{self, Rat};
use multirigid_core::ngon::{short_edges, Edge};
use multirigid_core::polytope::*;
use multirigid_core::rigidity::*;
use num_traits::{Signed, Zero};

fn main() {
    let t = ParameterConfig::from_integers(&[-2, 1, 2, 3, 4, 5, 6, 7, 9, 20]).unwrap();
    let m = build_polynomial(&t, 6).unwrap();
    let emb = ReducedEmbedding::new(&m, 3).unwrap();
    let facets = emb.gon.all_facets();
    let ineqs = build_inequalities(&emb, &facets).unwrap();
    let table = LiftingVector::from_integer_entries(&[
        ((4, 8), 4), ((4, 9), 69), ((4, 10), 16074),
        ((5, 9), 14), ((5, 10), 10281), ((6, 10), 3948),
    ]);
    let q = &ineqs[700];
    println!("contracted value: {}", multirigid_core::formats::rat_to_string(&q.evaluate(&table)));
    // Rebuild the same flip's union in the full space: ridge + removed +
    // inserted + all short edges.
    let mut union: Vec<Edge> = short_edges(10, 3);
    union.extend(q.ridge.iter().copied());
    union.push(q.removed);
    union.push(q.inserted);
    union.sort();
    let (rows, scales) = m.rows_int(&union);
    println!("rows {} rank {}", union.len(), linalg::rank(&rows));
    let dep = linalg::unique_dependence(&rows).unwrap();
    let mut nominal: Vec<Rat> = dep.iter().zip(&scales).map(|(c, s)| Rat::from_integer(c.clone()) * s).collect();
    let pos_rem = union.iter().position(|&x| x == q.removed).unwrap();
    if nominal[pos_rem].is_negative() {
        for x in nominal.iter_mut() { *x = -x.clone(); }
    }
    let fval = |e: Edge| table.f.get(&e).cloned().unwrap_or_else(Rat::zero);
    let total: Rat = union.iter().zip(&nominal).map(|(&e, w)| fval(e) * w).sum();
    println!("full-space value: {}", multirigid_core::formats::rat_to_string(&total));
    // compare the relevant-edge coefficient RATIOS between the two paths
    println!("-- per-edge comparison (edge, contracted coeff, full nominal coeff):");
    for (e, c) in &q.coeffs {
        let p = union.iter().position(|x| x == e).unwrap();
        println!("  {e}: {c} vs {}", multirigid_core::formats::rat_to_string(&nominal[p]));
    }
}
