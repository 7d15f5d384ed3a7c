//! Geometric obstruction theory for convex positions: Desargues-position
//! classification of six points, the oriented Morgan-Scott sign law, the
//! relevant-star interior test at n = 2k+3, and the conflicting-orientation
//! witness showing no convex position works for n >= 2k+6, k >= 3.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::linalg::{self, DependenceVector, Rat};
use crate::ngon::{relevant_edges, Edge, KTriangulation, NgonError};
use crate::rigidity::{build_cofactor, PlanarConfig, RigidityError};
use crate::simplex::{strict_feasibility, StrictOutcome};

#[derive(Debug, Clone, thiserror::Error)]
pub enum ObstructionError {
    #[error("points are not in strictly convex position")]
    NotConvex,
    #[error("expected {expected} points, got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("unexpected rank structure: {0}")]
    RankUnexpected(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
    #[error(transparent)]
    Linalg(#[from] linalg::LinalgError),
    #[error(transparent)]
    Ngon(#[from] NgonError),
}

/// Orientation class of six convex points with respect to the chords 14, 25
/// and 36: where the intersection of lines 14 and 36 falls relative to 25.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrientationClass {
    Positive,
    Negative,
    Desargues,
}

fn triple_det(q: &PlanarConfig, a: usize, b: usize, c: usize) -> Rat {
    // |abc| for homogenized points (x, y, 1); 1-based indices.
    let (ax, ay) = &q.q[a - 1];
    let (bx, by) = &q.q[b - 1];
    let (cx, cy) = &q.q[c - 1];
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

/// Classifies six convex points: Desargues iff the chords 14, 25, 36 are
/// concurrent, otherwise positively/negatively oriented by which side of 25
/// the intersection of 14 and 36 falls on.
///
/// The classification is evaluated as the sign of
/// |136| |245| - |125| |346|, which is projective (no intersection point is
/// computed) and independent of the traversal direction of the hull.
pub fn desargues_class(q: &PlanarConfig) -> Result<OrientationClass, ObstructionError> {
    if q.len() != 6 {
        return Err(ObstructionError::WrongPointCount { expected: 6, got: q.len() });
    }
    if !q.convex_position() {
        return Err(ObstructionError::NotConvex);
    }
    let delta = triple_det(q, 1, 3, 6) * triple_det(q, 2, 4, 5)
        - triple_det(q, 1, 2, 5) * triple_det(q, 3, 4, 6);
    Ok(if delta.is_zero() {
        OrientationClass::Desargues
    } else if delta.is_positive() {
        OrientationClass::Positive
    } else {
        OrientationClass::Negative
    })
}

/// Sign of lambda_14 * lambda_15 in the unique dependence of K_6 minus
/// {25, 36} in the cofactor matroid C_3(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MsSign {
    Positive,
    Negative,
    Zero,
}

#[derive(Debug, Clone, Serialize)]
pub struct MorganScott {
    pub sign: MsSign,
    pub dependence: DependenceVector,
}

/// Computes the unique dependence of K_6 minus {25, 36} in C_3(q) and the
/// sign of lambda_14 / lambda_15. Matches [`desargues_class`]: positive,
/// negative, zero exactly for positively oriented, negatively oriented and
/// Desargues configurations.
pub fn morgan_scott_signs(q: &PlanarConfig) -> Result<MorganScott, ObstructionError> {
    if q.len() != 6 {
        return Err(ObstructionError::WrongPointCount { expected: 6, got: q.len() });
    }
    if !q.convex_position() {
        return Err(ObstructionError::NotConvex);
    }
    let matrix = build_cofactor(q, 3)?;
    let skip = [Edge::new(2, 5), Edge::new(3, 6)];
    let edges: Vec<Edge> = matrix.edges().filter(|e| !skip.contains(e)).collect();
    let (rows, scales) = matrix.rows_int(&edges);
    let dep = linalg::unique_dependence(&rows).map_err(|e| {
        ObstructionError::RankUnexpected(format!("K_6 minus {{25,36}}: {e}"))
    })?;
    let nominal: Vec<Rat> = dep
        .iter()
        .zip(&scales)
        .map(|(c, s)| Rat::from_integer(c.clone()) * s)
        .collect();
    let coeff = |e: Edge| -> &Rat {
        let pos = edges.iter().position(|&x| x == e).expect("edge present");
        &nominal[pos]
    };
    let l14 = coeff(Edge::new(1, 4));
    let l15 = coeff(Edge::new(1, 5));
    if l15.is_zero() {
        return Err(ObstructionError::RankUnexpected(
            "lambda_15 vanishes; positions are degenerate".into(),
        ));
    }
    let p = l14 * l15;
    let sign = if p.is_zero() {
        MsSign::Zero
    } else if p.is_positive() {
        MsSign::Positive
    } else {
        MsSign::Negative
    };
    Ok(MorganScott {
        sign,
        dependence: DependenceVector::from_integer_coeffs(
            edges.iter().zip(&dep).map(|(&e, c)| (e, c.clone())),
        ),
    })
}

/// Result of the relevant-star interior test at n = 2k+3.
#[derive(Debug, Clone, Serialize)]
pub struct StarInteriorResult {
    pub nonempty: bool,
    /// A point strictly inside every big half-plane, as ("x", "y") rationals.
    pub witness: Option<(String, String)>,
    /// On emptiness: three relevant edges (missing edges of an octahedral
    /// k-triangulation) whose big half-planes already fail to intersect.
    pub violating_triple: Option<[Edge; 3]>,
}

/// Oriented line support of the big half-plane of a relevant edge: the side
/// of the chord containing k+1 of the points, determined by counting.
fn big_half_plane_row(
    q: &PlanarConfig,
    e: Edge,
    k: usize,
) -> Result<[Rat; 3], ObstructionError> {
    let n = q.len();
    let (ax, ay) = &q.q[e.i as usize - 1];
    let (bx, by) = &q.q[e.j as usize - 1];
    // line(x, y) = (b - a) x (p - a): alpha x + beta y + gamma.
    let alpha = ay - by;
    let beta = bx - ax;
    let gamma = ax * by - bx * ay;
    let mut pos = 0usize;
    let mut neg = 0usize;
    for (idx, (x, y)) in q.q.iter().enumerate() {
        let v = idx as u16 + 1;
        if v == e.i || v == e.j {
            continue;
        }
        let s = &alpha * x + &beta * y + &gamma;
        if s.is_positive() {
            pos += 1;
        } else if s.is_negative() {
            neg += 1;
        } else {
            return Err(ObstructionError::NotConvex);
        }
    }
    if pos + neg != n - 2 || pos.max(neg) != k + 1 {
        return Err(ObstructionError::RankUnexpected(format!(
            "edge {e} splits points {pos}/{neg}, expected {}/{}",
            k + 1,
            k
        )));
    }
    Ok(if pos == k + 1 {
        [alpha, beta, gamma]
    } else {
        [-alpha, -beta, -gamma]
    })
}

/// Tests whether the big half-planes of all 2k+3 relevant edges have a
/// common interior point (exact planar LP). On emptiness, reports an
/// octahedral triple of relevant edges already witnessing it.
pub fn star_interior_test(
    q: &PlanarConfig,
    k: usize,
) -> Result<StarInteriorResult, ObstructionError> {
    let n = 2 * k + 3;
    if q.len() != n {
        return Err(ObstructionError::WrongPointCount { expected: n, got: q.len() });
    }
    if !q.convex_position() {
        return Err(ObstructionError::NotConvex);
    }
    let rel = relevant_edges(n, k);
    debug_assert_eq!(rel.len(), n);
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
    for &e in &rel {
        rows.push(big_half_plane_row(q, e, k)?.to_vec());
    }
    // Homogenization: w > 0.
    rows.push(vec![Rat::zero(), Rat::zero(), Rat::from_integer(1.into())]);
    match strict_feasibility(&rows, 3) {
        StrictOutcome::Feasible(x) => {
            let w = &x[2];
            let px = &x[0] / w;
            let py = &x[1] / w;
            Ok(StarInteriorResult {
                nonempty: true,
                witness: Some((
                    crate::formats::rat_to_string(&px),
                    crate::formats::rat_to_string(&py),
                )),
                violating_triple: None,
            })
        }
        StrictOutcome::Certificate(_) => {
            let triple = violating_octahedral_triple(q, k, &rel)?;
            Ok(StarInteriorResult { nonempty: false, witness: None, violating_triple: Some(triple) })
        }
    }
}

/// Finds an octahedral triple of relevant edges whose three big half-planes
/// have empty intersection. Exists whenever the full intersection is empty.
fn violating_octahedral_triple(
    q: &PlanarConfig,
    k: usize,
    rel: &[Edge],
) -> Result<[Edge; 3], ObstructionError> {
    let n = 2 * k + 3;
    let all_rel: Vec<Edge> = rel.to_vec();
    for a in 0..all_rel.len() {
        for b in a + 1..all_rel.len() {
            for c in b + 1..all_rel.len() {
                let triple = [all_rel[a], all_rel[b], all_rel[c]];
                let mut endpoints: Vec<u16> = triple.iter().flat_map(|e| [e.i, e.j]).collect();
                endpoints.sort_unstable();
                endpoints.dedup();
                if endpoints.len() != 6 {
                    continue;
                }
                // Octahedral: removing the triple leaves a k-triangulation.
                let remaining: Vec<Edge> =
                    all_rel.iter().copied().filter(|e| !triple.contains(e)).collect();
                if KTriangulation::new(n, k, remaining).is_err() {
                    continue;
                }
                let mut rows: Vec<Vec<Rat>> = triple
                    .iter()
                    .map(|&e| big_half_plane_row(q, e, k).map(|r| r.to_vec()))
                    .collect::<Result<_, _>>()?;
                rows.push(vec![Rat::zero(), Rat::zero(), Rat::from_integer(1.into())]);
                if matches!(strict_feasibility(&rows, 3), StrictOutcome::Certificate(_)) {
                    return Ok(triple);
                }
            }
        }
    }
    Err(ObstructionError::RankUnexpected(
        "empty star interior without an octahedral witness".into(),
    ))
}

/// The two sub-configurations at n = 2k+6 whose realization requirements
/// conflict: restricted to I1 the shared hexad must be negatively oriented,
/// restricted to I2 positively, so at least one relevant star is empty.
#[derive(Debug, Clone, Serialize)]
pub struct ImpossibilityWitness {
    pub k: usize,
    pub n: usize,
    /// Vertices kept in each sub-configuration (1-based).
    pub subset_a: Vec<u16>,
    pub subset_b: Vec<u16>,
    /// The six shared points (1, 3, 5, k+4, k+6, k+8).
    pub shared: [u16; 6],
    pub class: OrientationClass,
    pub required_for_a: OrientationClass,
    pub required_for_b: OrientationClass,
    pub star_a: StarInteriorResult,
    pub star_b: StarInteriorResult,
    /// True when at least one of the stars is empty (always, by the class
    /// conflict).
    pub conflict: bool,
}

pub fn impossibility_witness(
    q: &PlanarConfig,
    k: usize,
) -> Result<ImpossibilityWitness, ObstructionError> {
    if k < 3 {
        return Err(ObstructionError::InvalidParams("k must be at least 3".into()));
    }
    let n = 2 * k + 6;
    if q.len() != n {
        return Err(ObstructionError::WrongPointCount { expected: n, got: q.len() });
    }
    if !q.convex_position() {
        return Err(ObstructionError::NotConvex);
    }
    let excluded_a = [4u16, (k + 5) as u16, (k + 9) as u16];
    let excluded_b = [2u16, 6u16, (k + 7) as u16];
    let subset_a: Vec<u16> =
        (1..=n as u16).filter(|v| !excluded_a.contains(v)).collect();
    let subset_b: Vec<u16> =
        (1..=n as u16).filter(|v| !excluded_b.contains(v)).collect();
    let shared: [u16; 6] =
        [1, 3, 5, (k + 4) as u16, (k + 6) as u16, (k + 8) as u16];
    let shared_cfg = q.subset(&shared.iter().map(|&v| v as usize - 1).collect::<Vec<_>>());
    let class = desargues_class(&shared_cfg)?;
    let star_a = star_interior_test(
        &q.subset(&subset_a.iter().map(|&v| v as usize - 1).collect::<Vec<_>>()),
        k,
    )?;
    let star_b = star_interior_test(
        &q.subset(&subset_b.iter().map(|&v| v as usize - 1).collect::<Vec<_>>()),
        k,
    )?;
    // The two requirements exclude each other, so at least one is violated;
    // the violated side's relevant star must come back empty.
    let conflict = (class == OrientationClass::Negative || !star_a.nonempty)
        && (class == OrientationClass::Positive || !star_b.nonempty);
    Ok(ImpossibilityWitness {
        k,
        n,
        subset_a,
        subset_b,
        shared,
        class,
        required_for_a: OrientationClass::Negative,
        required_for_b: OrientationClass::Positive,
        star_a,
        star_b,
        conflict,
    })
}

/// Number of sign changes in a cyclic coefficient listing, as used by the
/// convex-position sign-change law: for vertex i, the coefficients lambda_ij
/// are read with j in the cyclic order (i+1, ..., n, 1, ..., i-1), and for
/// odd d the entries with j > i are negated. Zeros are skipped.
pub fn sign_changes_at_vertex(
    dep: &DependenceVector,
    n: usize,
    d: usize,
    vertex: u16,
) -> usize {
    let mut signs: Vec<i8> = Vec::new();
    for off in 1..n as u16 {
        let j = (vertex - 1 + off) % n as u16 + 1;
        let e = Edge::new(vertex, j);
        let mut s = dep.sign(e);
        if d % 2 == 1 && j > vertex {
            s = -s;
        }
        if s != 0 {
            signs.push(s);
        }
    }
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Checks the sign-change law for every vertex appearing in the support of a
/// convex-position dependence: at least d changes (vertices with all-zero
/// coefficient sequences are skipped).
pub fn satisfies_sign_change_law(dep: &DependenceVector, n: usize, d: usize) -> bool {
    (1..=n as u16).all(|v| {
        let touched = dep
            .coefficients
            .keys()
            .any(|e| e.i == v || e.j == v);
        !touched || sign_changes_at_vertex(dep, n, d, v) >= d
    })
}
