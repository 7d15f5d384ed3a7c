use multirigid_core::linalg::{self, Rat};
use multirigid_core::ngon::{Edge, KTriangulation};
use multirigid_core::rigidity::*;
use num_traits::{Signed, Zero};

fn main() {
    // The flip removing {1,7} and inserting {5,10} from the facet found in
    // the violated inequality #700. Reconstruct it combinatorially, compute
    // its circuit on the FULL matrix rows (no contraction anywhere), and
    // evaluate the published heights.
    let t = ParameterConfig::from_integers(&[-2, 1, 2, 3, 4, 5, 6, 7, 9, 20]).unwrap();
    let m = build_polynomial(&t, 6).unwrap();
    // facet: greedy-like search: find a (3,10) facet containing {1,7} whose
    // flip at {1,7} inserts {5,10}.
    let gon = multirigid_core::ngon::Gon::new(10, 3).unwrap();
    let mut target: Option<(KTriangulation, Edge)> = None;
    gon.enumerate(None, |tri| {
        if target.is_none() && tri.contains(Edge::new(1, 7)) {
            if let Ok(f) = tri.flip(Edge::new(1, 7)) {
                if f.inserted == Edge::new(5, 10) {
                    target = Some((tri.clone(), Edge::new(1, 7)));
                    return std::ops::ControlFlow::Break(());
                }
            }
        }
        std::ops::ControlFlow::Continue(())
    });
    let (tri, e) = target.expect("flip found");
    let mut union = tri.all_edges();
    union.push(Edge::new(5, 10));
    union.sort();
    println!("union rows: {}", union.len());
    let (rows, scales) = m.rows_int(&union);
    let dep = linalg::unique_dependence(&rows).unwrap();
    // nominal coefficients, oriented so the exchanged pair is positive
    let mut nominal: Vec<Rat> = dep.iter().zip(&scales).map(|(c, s)| Rat::from_integer(c.clone()) * s).collect();
    let pos_rem = union.iter().position(|&x| x == e).unwrap();
    let pos_ins = union.iter().position(|&x| x == Edge::new(5, 10)).unwrap();
    assert!(!nominal[pos_rem].is_zero() && nominal[pos_rem].is_positive() == nominal[pos_ins].is_positive());
    if nominal[pos_rem].is_negative() {
        for x in nominal.iter_mut() { *x = -x.clone(); }
    }
    // published heights; zero on everything else
    let f = |e: Edge| -> Rat {
        let table = [((4u16,8u16),4i64),((4,9),69),((4,10),16074),((5,9),14),((5,10),10281),((6,10),3948)];
        for ((a,b),v) in table {
            if e == Edge::new(a,b) { return Rat::from_integer(v.into()); }
        }
        Rat::zero()
    };
    let total: Rat = union.iter().zip(&nominal).map(|(&e, w)| f(e) * w).sum();
    println!("full-space inequality value sign: {:?} (negative means the published heights are invalid)",
        if total.is_positive() { "positive" } else if total.is_zero() { "zero" } else { "negative" });
}
