use multirigid_core::embedding::ReducedEmbedding;
use multirigid_core::linalg::{self, Int, Rat};
use multirigid_core::ngon::KTriangulation;
use multirigid_core::polytope::*;
use multirigid_core::rigidity::*;
use num_traits::{Signed, Zero};

// Direct definition oracle: f is valid iff for every facet, the hyperplane
// through its lifted rays has every other lifted ray strictly on the upper
// side. Independent of the circuit-inequality path.
fn regular_oracle(emb: &ReducedEmbedding, facets: &[Vec<u16>], lift: &LiftingVector) -> bool {
    let dim = emb.dim;
    // lifted stored rays: (w_e, s_e * f_e) cleared to integers per-ray.
    let lifted: Vec<Vec<Int>> = (0..emb.rays.len())
        .map(|id| {
            let e = emb.gon.relevant[id];
            let f = lift.f.get(&e).cloned().unwrap_or_else(|| Rat::from_integer(0.into()));
            let h = f * &emb.scales[id];
            let mut v: Vec<Rat> = emb.rays[id].iter().map(|x| Rat::from_integer(x.clone())).collect();
            v.push(h);
            linalg::clear_denominators(&v).0
        })
        .collect();
    for facet in facets {
        // normal u: kernel of the 12x13 matrix of lifted facet rays
        let cols = dim + 1;
        let rows: Vec<Vec<Int>> = (0..cols)
            .map(|c| facet.iter().map(|&id| lifted[id as usize][c].clone()).collect())
            .collect();
        let u = match linalg::unique_dependence(&rows) {
            Ok(u) => u,
            Err(_) => return false,
        };
        // orient: u_last > 0
        let mut u = u;
        if u[dim].is_negative() {
            for x in u.iter_mut() { *x = -std::mem::take(x); }
        } else if u[dim].is_zero() {
            return false;
        }
        for (id, l) in lifted.iter().enumerate() {
            if facet.contains(&(id as u16)) { continue; }
            let dot: Int = l.iter().zip(&u).map(|(a, b)| a * b).sum();
            if !dot.is_positive() {
                return false;
            }
        }
    }
    true
}

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
    println!("published table, direct oracle: {}", regular_oracle(&emb, &facets, &table));
    match find_lift(&ineqs, 10, 3).unwrap() {
        LpOutcome::Feasible(f) => {
            println!("found lift, inequality path: {}", verify_lift(&f, &ineqs, &KTriangulation::greedy(10,3).unwrap()).unwrap().is_ok());
            println!("found lift, direct oracle: {}", regular_oracle(&emb, &facets, &f));
        }
        _ => println!("unexpected infeasible"),
    }
    // sanity: same oracle on (2,8) with its table
    let t8 = ParameterConfig::standard(8);
    let m8 = build_polynomial(&t8, 4).unwrap();
    let emb8 = ReducedEmbedding::new(&m8, 2).unwrap();
    let f8 = emb8.gon.all_facets();
    let tab8 = LiftingVector::from_integer_entries(&[((3,6),3),((3,7),14),((3,8),36),((4,7),3),((4,8),16),((5,8),6)]);
    println!("(2,8) table, direct oracle: {}", regular_oracle(&emb8, &f8, &tab8));
}
