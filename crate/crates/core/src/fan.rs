//! Certifies whether a rigidity-matrix row configuration realizes the reduced
//! complex as a basis collection and as a complete simplicial fan.
//!
//! The pipeline runs bases -> flip circuits (ICoP) -> length-5 cycle signs ->
//! degree-one membership, stopping at the first failed stage. Every check is
//! an exact sign decision on the contracted integer rays.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

use crate::embedding::{EmbedError, ReducedEmbedding};
use crate::linalg::{self, Int, LinalgError};
use crate::ngon::{Edge, KTriangulation, NgonError};
use crate::rigidity::{MatrixKind, RigidityMatrix};

#[derive(Debug, Clone, thiserror::Error)]
pub enum FanError {
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error(transparent)]
    Ngon(#[from] NgonError),
    #[error("structural failure in a flip circuit: {0}")]
    Structural(#[from] LinalgError),
    #[error("codimension-two face has a link of length {0}, expected 3..=5")]
    BadLink(usize),
    #[error("flip circuit missing from the circuit table")]
    MissingFlip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NotBases,
    BasesOnly,
    CompleteFan,
}

#[derive(Debug, Clone, Default)]
pub struct FanOptions {
    /// Run every check in a stage and count failures instead of stopping at
    /// the first witness.
    pub exhaustive: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FanParams {
    pub k: usize,
    pub n: usize,
    pub d: usize,
    pub kind: MatrixKind,
    /// Positions echoed exactly as rationals, in a kind-dependent layout.
    pub positions: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisStage {
    pub ok: bool,
    pub facets: u64,
    pub failures: u64,
    /// Relevant edges of the first failing facet, with its corank.
    pub failing_facet: Option<Vec<Edge>>,
    pub failing_corank: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlipWitness {
    /// Relevant edges of the two facets of the flip.
    pub facet: Vec<Edge>,
    pub neighbor: Vec<Edge>,
    pub removed: Edge,
    pub inserted: Edge,
    /// Signs of the unique circuit on the union (relevant support).
    pub circuit: crate::linalg::SignedCircuit,
    pub flip_edge_signs_equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IcopStage {
    pub ok: bool,
    pub flips: u64,
    pub failures: u64,
    pub witness: Option<FlipWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleWitness {
    pub center: Vec<Edge>,
    pub cycle: Vec<Edge>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiveCycleStage {
    pub ok: bool,
    pub cycles_of_length_5: u64,
    pub failures: u64,
    pub witness: Option<CycleWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeStage {
    pub ok: bool,
    /// Number of facet cones containing the probe vector.
    pub membership_count: u64,
    pub perturbations: u32,
    /// Set when 32 perturbations failed to make the probe generic.
    pub inconclusive: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FanReport {
    pub params: FanParams,
    pub basis: BasisStage,
    pub icop: Option<IcopStage>,
    pub five_cycles: Option<FiveCycleStage>,
    pub degree_one: Option<DegreeStage>,
    pub verdict: Verdict,
}

impl FanReport {
    /// Stable CLI exit-code contract: 0 fan, 2 bases only, 3 not bases.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::CompleteFan => 0,
            Verdict::BasesOnly => 2,
            Verdict::NotBases => 3,
        }
    }
}

/// One flip between adjacent facets, in contracted coordinates.
pub struct FlipCircuit {
    /// Sorted relevant-edge ids of the union T1 u T2 (dim + 1 of them).
    pub union_ids: Vec<u16>,
    /// Positions (in `union_ids`) of the exchanged pair.
    pub removed_pos: usize,
    pub inserted_pos: usize,
    /// Integer circuit coefficients on the stored rays, aligned to union_ids.
    pub dep: Vec<Int>,
}

/// Key identifying a flip circuit: union ids followed by the exchanged pair.
type FlipKey = Vec<u16>;

fn flip_key(union_ids: &[u16], a: u16, b: u16) -> FlipKey {
    let mut k = union_ids.to_vec();
    k.push(a.min(b));
    k.push(a.max(b));
    k
}

fn signs_of(dep: &[Int]) -> Vec<i8> {
    dep.iter()
        .map(|c| {
            if c.is_zero() {
                0
            } else if c.is_positive() {
                1
            } else {
                -1
            }
        })
        .collect()
}

fn mask_of(ids: &[u16]) -> u128 {
    ids.iter().fold(0u128, |m, &i| m | (1u128 << i))
}

fn edges_of(emb: &ReducedEmbedding, ids: &[u16]) -> Vec<Edge> {
    ids.iter().map(|&i| emb.gon.relevant[i as usize]).collect()
}

/// Enumerates each flip exactly once (from its lexicographically smaller
/// facet) and maps it through `f`. Parallel over facets; the output order is
/// facet-major lexicographic, so "first" means lexicographically smallest.
pub fn for_each_flip<T, F>(
    emb: &ReducedEmbedding,
    facets: &[Vec<u16>],
    f: F,
) -> Result<Vec<T>, FanError>
where
    T: Send,
    F: Fn(&[u16], &FlipCircuit) -> Result<Option<T>, FanError> + Sync,
{
    let results: Result<Vec<Vec<T>>, FanError> = facets
        .par_iter()
        .map(|facet| {
            let mut out = Vec::new();
            let mask = mask_of(facet);
            for &id in facet.iter() {
                let Some(g) = emb.gon.flip_target(mask, id as usize) else {
                    return Err(FanError::Ngon(NgonError::InternalInvariantViolation(
                        format!("no flip target for edge id {id}"),
                    )));
                };
                let g = g as u16;
                // Replacing id by g keeps every other edge, so comparing the
                // two facets lexicographically reduces to id < g.
                if g < id {
                    continue;
                }
                let mut union_ids = facet.clone();
                union_ids.insert(union_ids.binary_search(&g).unwrap_err(), g);
                let removed_pos = union_ids.binary_search(&id).unwrap();
                let inserted_pos = union_ids.binary_search(&g).unwrap();
                let rows = emb.facet_rows(&union_ids);
                let dep = linalg::unique_dependence(&rows)?;
                let circuit = FlipCircuit { union_ids, removed_pos, inserted_pos, dep };
                if let Some(t) = f(facet, &circuit)? {
                    out.push(t);
                }
            }
            Ok(out)
        })
        .collect();
    Ok(results?.into_iter().flatten().collect())
}

/// Basis-collection check: every facet's rays are linearly independent.
pub fn check_bases(emb: &ReducedEmbedding, facets: &[Vec<u16>], exhaustive: bool) -> BasisStage {
    let dim = emb.dim;
    let chunk = 2048usize;
    let mut failures = 0u64;
    let mut witness: Option<(Vec<Edge>, usize)> = None;
    for block in facets.chunks(chunk) {
        let found: Vec<(usize, usize)> = block
            .par_iter()
            .enumerate()
            .filter_map(|(i, facet)| {
                let rows = emb.facet_rows(facet);
                let r = linalg::rank(&rows);
                (r != dim).then_some((i, dim - r))
            })
            .collect();
        if witness.is_none() {
            if let Some(&(i, corank)) = found.iter().min_by_key(|(i, _)| *i) {
                witness = Some((edges_of(emb, &block[i]), corank));
            }
        }
        failures += found.len() as u64;
        if failures > 0 && !exhaustive {
            break;
        }
    }
    BasisStage {
        ok: failures == 0,
        facets: facets.len() as u64,
        failures,
        failing_facet: witness.as_ref().map(|(f, _)| f.clone()),
        failing_corank: witness.map(|(_, c)| c),
    }
}

/// ICoP check over all flips; also returns the circuit-sign table consumed by
/// the five-cycle stage. In short-circuit mode the scan stops after the chunk
/// containing the first failure and the table is withheld.
pub fn check_icop(
    emb: &ReducedEmbedding,
    facets: &[Vec<u16>],
    exhaustive: bool,
) -> Result<(IcopStage, Option<HashMap<FlipKey, Vec<i8>>>), FanError> {
    struct FlipOut {
        key: FlipKey,
        signs: Vec<i8>,
        witness: Option<FlipWitness>,
    }
    let handle = |facet: &[u16], c: &FlipCircuit| -> Result<Option<FlipOut>, FanError> {
        let signs = signs_of(&c.dep);
        let sr = signs[c.removed_pos];
        let si = signs[c.inserted_pos];
        let equal = sr != 0 && sr == si;
        let witness = if equal {
            None
        } else {
            let removed_id = c.union_ids[c.removed_pos];
            let removed = emb.gon.relevant[removed_id as usize];
            let inserted = emb.gon.relevant[c.union_ids[c.inserted_pos] as usize];
            let neighbor: Vec<Edge> = c
                .union_ids
                .iter()
                .filter(|&&x| x != removed_id)
                .map(|&x| emb.gon.relevant[x as usize])
                .collect();
            Some(FlipWitness {
                facet: edges_of(emb, facet),
                neighbor,
                removed,
                inserted,
                circuit: crate::linalg::DependenceVector::from_integer_coeffs(
                    c.union_ids
                        .iter()
                        .zip(&c.dep)
                        .map(|(&i, v)| (emb.gon.relevant[i as usize], v.clone())),
                )
                .circuit(),
                flip_edge_signs_equal: false,
            })
        };
        Ok(Some(FlipOut {
            key: flip_key(
                &c.union_ids,
                c.union_ids[c.removed_pos],
                c.union_ids[c.inserted_pos],
            ),
            signs,
            witness,
        }))
    };
    let mut flips = 0u64;
    let mut failures = 0u64;
    let mut witness: Option<FlipWitness> = None;
    let mut table = HashMap::new();
    let chunk = 512usize;
    let mut start = 0usize;
    while start < facets.len() {
        let end = (start + chunk).min(facets.len());
        let outs: Vec<FlipOut> = for_each_flip(emb, &facets[start..end], &handle)?;
        flips += outs.len() as u64;
        failures += outs.iter().filter(|o| o.witness.is_some()).count() as u64;
        if witness.is_none() {
            witness = outs.iter().find_map(|o| o.witness.clone());
        }
        for o in outs {
            table.insert(o.key, o.signs);
        }
        start = end;
        if failures > 0 && !exhaustive {
            break;
        }
    }
    let scanned_all = start == facets.len();
    let stage = IcopStage { ok: failures == 0, flips, failures, witness };
    Ok((stage, scanned_all.then_some(table)))
}

/// Length-5 elementary cycle check: each such cycle must contain three
/// consecutive vertices whose circuit has the opposite sign at the middle
/// one. Cycles of length 3 or 4 are simple automatically and are skipped.
pub fn check_five_cycles(
    emb: &ReducedEmbedding,
    facets: &[Vec<u16>],
    table: &HashMap<FlipKey, Vec<i8>>,
) -> Result<FiveCycleStage, FanError> {
    let per_facet: Result<Vec<(u64, u64, Option<(usize, CycleWitness)>)>, FanError> = facets
        .par_iter()
        .enumerate()
        .map(|(fi, facet)| {
            let mask = mask_of(facet);
            let mut count5 = 0u64;
            let mut failures = 0u64;
            let mut witness = None;
            for a in 0..facet.len() {
                for b in a + 1..facet.len() {
                    let ridge = mask & !(1u128 << facet[a]) & !(1u128 << facet[b]);
                    let verts = emb.gon.link_vertices(ridge);
                    let len = verts.len();
                    if !(3..=5).contains(&len) {
                        return Err(FanError::BadLink(len));
                    }
                    if len < 5 {
                        continue;
                    }
                    let compat =
                        |g: usize, h: usize| !emb.gon.creates_crossing(ridge | (1u128 << g), h);
                    let mut adj = [[usize::MAX; 2]; 5];
                    for (i, &g) in verts.iter().enumerate() {
                        let mut cdeg = 0;
                        for (j, &h) in verts.iter().enumerate() {
                            if i != j && compat(g, h) {
                                if cdeg == 2 {
                                    return Err(FanError::BadLink(len));
                                }
                                adj[i][cdeg] = j;
                                cdeg += 1;
                            }
                        }
                        if cdeg != 2 {
                            return Err(FanError::BadLink(len));
                        }
                    }
                    let ridge_ids: Vec<u16> = facet
                        .iter()
                        .copied()
                        .filter(|&x| x != facet[a] && x != facet[b])
                        .collect();
                    // Owner rule: handle each cycle only at its
                    // lexicographically smallest facet.
                    let mut is_owner = true;
                    'owner: for (i, &g) in verts.iter().enumerate() {
                        for &j in &adj[i] {
                            let h = verts[j];
                            let mut ids = ridge_ids.clone();
                            for v in [g as u16, h as u16] {
                                ids.insert(ids.binary_search(&v).unwrap_err(), v);
                            }
                            if ids.as_slice() < facet.as_slice() {
                                is_owner = false;
                                break 'owner;
                            }
                        }
                    }
                    if !is_owner {
                        continue;
                    }
                    count5 += 1;
                    let mut order = vec![0usize, adj[0][0]];
                    while order.len() < 5 {
                        let cur = *order.last().unwrap();
                        let prev = order[order.len() - 2];
                        let nxt = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                        order.push(nxt);
                    }
                    let mut simple = false;
                    for s in 0..5 {
                        let i1 = verts[order[s]] as u16;
                        let i2 = verts[order[(s + 1) % 5]] as u16;
                        let i3 = verts[order[(s + 2) % 5]] as u16;
                        let mut union_ids = ridge_ids.clone();
                        for v in [i1, i2, i3] {
                            union_ids.insert(union_ids.binary_search(&v).unwrap_err(), v);
                        }
                        let key = flip_key(&union_ids, i1, i3);
                        let signs = table.get(&key).ok_or(FanError::MissingFlip)?;
                        let p1 = union_ids.binary_search(&i1).unwrap();
                        let p2 = union_ids.binary_search(&i2).unwrap();
                        if signs[p2] != 0 && signs[p1] != 0 && signs[p2] != signs[p1] {
                            simple = true;
                            break;
                        }
                    }
                    if !simple {
                        failures += 1;
                        if witness.is_none() {
                            witness = Some((
                                fi,
                                CycleWitness {
                                    center: edges_of(emb, &ridge_ids),
                                    cycle: order
                                        .iter()
                                        .map(|&i| emb.gon.relevant[verts[i]])
                                        .collect(),
                                },
                            ));
                        }
                    }
                }
            }
            Ok((count5, failures, witness))
        })
        .collect();
    let per_facet = per_facet?;
    let cycles_of_length_5: u64 = per_facet.iter().map(|r| r.0).sum();
    let failures: u64 = per_facet.iter().map(|r| r.1).sum();
    let witness = per_facet
        .into_iter()
        .filter_map(|r| r.2)
        .min_by_key(|(fi, _)| *fi)
        .map(|(_, w)| w);
    Ok(FiveCycleStage { ok: failures == 0, cycles_of_length_5, failures, witness })
}

/// Degree-one check: a probe vector interior to the greedy facet's cone must
/// lie in no other facet cone; together with ICoP and simple cycles this
/// makes the pre-embedding a complete fan.
pub fn check_degree_one(
    emb: &ReducedEmbedding,
    facets: &[Vec<u16>],
) -> Result<DegreeStage, FanError> {
    let greedy = KTriangulation::greedy(emb.gon.n, emb.gon.k)?;
    let greedy_ids: Vec<u16> = greedy
        .relevant
        .iter()
        .map(|e| emb.gon.edge_id(*e).expect("greedy edge is relevant") as u16)
        .collect();
    let dim = emb.dim;
    if dim == 0 {
        // Single empty facet; the zero-dimensional fan is trivially complete.
        return Ok(DegreeStage {
            ok: facets.len() == 1,
            membership_count: 1,
            perturbations: 0,
            inconclusive: false,
        });
    }
    // Probe: sum of the greedy facet's stored rays (a positive combination of
    // its nominal rays, hence interior to the greedy cone).
    let mut probe: Vec<Int> = vec![Int::zero(); dim];
    for &id in &greedy_ids {
        for (x, y) in probe.iter_mut().zip(&emb.rays[id as usize]) {
            *x += y;
        }
    }
    let mut perturbations = 0u32;
    loop {
        #[derive(PartialEq)]
        enum Member {
            Interior,
            Boundary,
            Outside,
        }
        let members: Result<Vec<Member>, FanError> = facets
            .par_iter()
            .map(|facet| {
                let rows = emb.facet_rows(facet);
                match linalg::solve_in_basis(&rows, &probe) {
                    Ok(x) => {
                        if x.iter().any(Signed::is_negative) {
                            Ok(Member::Outside)
                        } else if x.iter().any(Zero::is_zero) {
                            Ok(Member::Boundary)
                        } else {
                            Ok(Member::Interior)
                        }
                    }
                    Err(LinalgError::NotInSpan) => Ok(Member::Outside),
                    Err(e) => Err(FanError::Structural(e)),
                }
            })
            .collect();
        let members = members?;
        if members.contains(&Member::Boundary) {
            if perturbations >= 32 {
                return Ok(DegreeStage {
                    ok: false,
                    membership_count: 0,
                    perturbations,
                    inconclusive: true,
                });
            }
            // Deterministic schedule: probe <- 2 probe + (next greedy ray),
            // i.e. adding 1/2^(m+1) of the ray in the original scale.
            let g = &emb.rays[greedy_ids[perturbations as usize % greedy_ids.len()] as usize];
            for (x, y) in probe.iter_mut().zip(g) {
                *x = &*x * Int::from(2) + y;
            }
            perturbations += 1;
            continue;
        }
        let membership_count = members.iter().filter(|m| **m == Member::Interior).count() as u64;
        let greedy_interior = facets
            .iter()
            .zip(&members)
            .any(|(f, m)| *m == Member::Interior && f == &greedy_ids);
        return Ok(DegreeStage {
            ok: membership_count == 1 && greedy_interior,
            membership_count,
            perturbations,
            inconclusive: false,
        });
    }
}

/// Full pipeline: bases -> ICoP -> 5-cycles -> degree one. Stops at the first
/// failed stage and reports the verdict with a concrete witness.
pub fn certify_fan(
    matrix: &RigidityMatrix,
    k: usize,
    positions: Vec<String>,
    opts: &FanOptions,
) -> Result<FanReport, FanError> {
    let emb = ReducedEmbedding::new(matrix, k)?;
    let facets = emb.gon.all_facets();
    let params =
        FanParams { k, n: matrix.n, d: matrix.d, kind: matrix.kind, positions };
    let basis = check_bases(&emb, &facets, opts.exhaustive);
    if !basis.ok {
        return Ok(FanReport {
            params,
            basis,
            icop: None,
            five_cycles: None,
            degree_one: None,
            verdict: Verdict::NotBases,
        });
    }
    let (icop, table) = check_icop(&emb, &facets, opts.exhaustive)?;
    let Some(table) = table else {
        return Ok(FanReport {
            params,
            basis,
            icop: Some(icop),
            five_cycles: None,
            degree_one: None,
            verdict: Verdict::BasesOnly,
        });
    };
    let five = check_five_cycles(&emb, &facets, &table)?;
    drop(table);
    if !icop.ok || !five.ok {
        return Ok(FanReport {
            params,
            basis,
            icop: Some(icop),
            five_cycles: Some(five),
            degree_one: None,
            verdict: Verdict::BasesOnly,
        });
    }
    let degree = check_degree_one(&emb, &facets)?;
    let verdict = if degree.ok { Verdict::CompleteFan } else { Verdict::BasesOnly };
    Ok(FanReport {
        params,
        basis,
        icop: Some(icop),
        five_cycles: Some(five),
        degree_one: Some(degree),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity::{build_polynomial, ParameterConfig};

    fn certify_standard(k: usize, n: usize) -> FanReport {
        let t = ParameterConfig::standard(n);
        let m = build_polynomial(&t, 2 * k).unwrap();
        certify_fan(&m, k, vec![], &FanOptions::default()).unwrap()
    }

    #[test]
    fn standard_2_8_is_a_complete_fan() {
        let r = certify_standard(2, 8);
        assert_eq!(r.verdict, Verdict::CompleteFan, "{r:?}");
        assert_eq!(r.basis.facets, 84);
        let icop = r.icop.unwrap();
        assert_eq!(icop.flips, 84 * 6 / 2);
        assert_eq!(r.degree_one.unwrap().membership_count, 1);
    }

    #[test]
    fn standard_3_9_fails_at_bases_with_the_known_witness() {
        let r = certify_standard(3, 9);
        assert_eq!(r.verdict, Verdict::NotBases);
        let failing = r.basis.failing_facet.unwrap();
        // K_9 minus {16, 37, 49} has relevant edges {15, 26, 27, 38, 48, 59}.
        let expect: Vec<Edge> = [(1, 5), (2, 6), (2, 7), (3, 8), (4, 8), (5, 9)]
            .iter()
            .map(|&(a, b)| Edge::new(a, b))
            .collect();
        assert_eq!(failing, expect);
        assert_eq!(r.basis.failing_corank, Some(1));
    }

    #[test]
    fn trivial_complexes_certify() {
        // n = 2k+1: a single empty facet.
        let t = ParameterConfig::standard(5);
        let m = build_polynomial(&t, 4).unwrap();
        let r = certify_fan(&m, 2, vec![], &FanOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::CompleteFan);
        assert_eq!(r.basis.facets, 1);
        // n = 2k+2: the boundary of a simplex.
        let r = certify_standard(2, 6);
        assert_eq!(r.verdict, Verdict::CompleteFan, "{r:?}");
        assert_eq!(r.basis.facets, 3);
    }

    #[test]
    fn any_convex_position_realizes_2_7() {
        for t in [
            ParameterConfig::standard(7),
            ParameterConfig::from_integers(&[-9, -3, 0, 1, 4, 17, 40]).unwrap(),
        ] {
            let m = build_polynomial(&t, 4).unwrap();
            let r = certify_fan(&m, 2, vec![], &FanOptions::default()).unwrap();
            assert_eq!(r.verdict, Verdict::CompleteFan);
        }
    }
}
