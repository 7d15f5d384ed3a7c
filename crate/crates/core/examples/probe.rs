use multirigid_core::embedding::ReducedEmbedding;
use multirigid_core::fan::*;
use multirigid_core::rigidity::*;
use std::time::Instant;

fn run(k: usize, n: usize, t: ParameterConfig, label: &str) {
    let t0 = Instant::now();
    let m = build_polynomial(&t, 2 * k).unwrap();
    let emb = ReducedEmbedding::new(&m, k).unwrap();
    eprintln!("{label}: embed {:?}, max ray bits {}", t0.elapsed(), emb.max_entry_bits());
    let t1 = Instant::now();
    let facets = emb.gon.all_facets();
    eprintln!("{label}: {} facets in {:?}", facets.len(), t1.elapsed());
    let t2 = Instant::now();
    let basis = check_bases(&emb, &facets, false);
    eprintln!("{label}: bases ok={} in {:?}", basis.ok, t2.elapsed());
    if !basis.ok { return; }
    let t3 = Instant::now();
    let (icop, table) = check_icop(&emb, &facets, false).unwrap();
    let table = table.unwrap();
    eprintln!("{label}: icop ok={} flips={} in {:?}", icop.ok, icop.flips, t3.elapsed());
    if !icop.ok { return; }
    let t4 = Instant::now();
    let five = check_five_cycles(&emb, &facets, &table).unwrap();
    eprintln!("{label}: 5cycles ok={} count={} in {:?}", five.ok, five.cycles_of_length_5, t4.elapsed());
    let t5 = Instant::now();
    let deg = check_degree_one(&emb, &facets).unwrap();
    eprintln!("{label}: degree ok={} count={} in {:?}", deg.ok, deg.membership_count, t5.elapsed());
    eprintln!("{label}: TOTAL {:?}", t0.elapsed());
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    match which.as_str() {
        "29" => run(2, 9, ParameterConfig::standard(9), "(2,9) std"),
        "210" => run(2, 10, ParameterConfig::standard(10), "(2,10) std"),
        "211" => run(2, 11, ParameterConfig::standard(11), "(2,11) std"),
        "310c" => run(3, 10, circle_positions(10, 64).unwrap(), "(3,10) circle"),
        "311c" => run(3, 11, circle_positions(11, 16).unwrap(), "(3,11) circle16"),
        "412c" => run(4, 12, circle_positions(12, 64).unwrap(), "(4,12) circle"),
        "412c16" => run(4, 12, circle_positions(12, 16).unwrap(), "(4,12) circle16"),
        _ => eprintln!("unknown"),
    }
}
