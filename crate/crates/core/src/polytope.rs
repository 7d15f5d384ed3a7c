//! Polytopality of a certified fan: one circuit inequality per flip, height
//! vector verification, and exact LP search for a valid lifting with a Farkas
//! certificate on infeasibility.
//!
//! Heights are normalized to zero on every edge of the greedy triangulation
//! (its rows are a basis), which cuts the variables down to the relevant
//! edges inside [k+1, n] not in the greedy facet.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

use crate::embedding::ReducedEmbedding;
use crate::fan::{for_each_flip, FanError};
use crate::linalg::{Int, Rat};
use crate::ngon::{Edge, KTriangulation, NgonError};
use crate::simplex::{strict_feasibility, StrictOutcome};

#[derive(Debug, Clone, thiserror::Error)]
pub enum PolytopeError {
    #[error("ICoP violated at the flip removing {removed} and inserting {inserted}; the fan is not certified")]
    IcopViolated { removed: Edge, inserted: Edge },
    #[error("missing height for edge {0}")]
    MissingEdgeValue(Edge),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Ngon(#[from] NgonError),
}

/// Heights f on the relevant edges outside the greedy triangulation; greedy
/// and short edges are implicitly zero by normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingVector {
    pub f: BTreeMap<Edge, Rat>,
}

impl LiftingVector {
    pub fn from_integer_entries(entries: &[((u16, u16), i64)]) -> Self {
        LiftingVector {
            f: entries
                .iter()
                .map(|&((a, b), v)| (Edge::new(a, b), Rat::from_integer(BigInt::from(v))))
                .collect(),
        }
    }

    pub fn value(&self, e: Edge) -> Option<&Rat> {
        self.f.get(&e)
    }

    pub fn scaled(&self, by: &Rat) -> LiftingVector {
        LiftingVector {
            f: self.f.iter().map(|(e, v)| (*e, v * by)).collect(),
        }
    }
}

impl Serialize for LiftingVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.f.len()))?;
        for (e, v) in &self.f {
            map.serialize_entry(
                &format!("{},{}", e.i, e.j),
                &crate::formats::rat_to_string(v),
            )?;
        }
        map.end()
    }
}

/// One circuit inequality sum_e w_e f_e > 0 per flip, with integer
/// coefficients on the nominal matrix rows, oriented so that the exchanged
/// pair is positive.
#[derive(Debug, Clone)]
pub struct CircuitInequality {
    pub removed: Edge,
    pub inserted: Edge,
    /// Relevant edges of the flip's ridge (support context).
    pub ridge: Vec<Edge>,
    /// Coefficients over the relevant support (zero coefficients dropped).
    pub coeffs: BTreeMap<Edge, Int>,
}

impl Serialize for CircuitInequality {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CircuitInequality", 3)?;
        st.serialize_field("removed", &self.removed)?;
        st.serialize_field("inserted", &self.inserted)?;
        let coeffs: BTreeMap<String, String> = self
            .coeffs
            .iter()
            .map(|(e, w)| (format!("{},{}", e.i, e.j), w.to_string()))
            .collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl CircuitInequality {
    /// Exact evaluation with f = 0 outside the lift's domain.
    pub fn evaluate(&self, lift: &LiftingVector) -> Rat {
        let mut acc = Rat::zero();
        for (e, w) in &self.coeffs {
            if let Some(v) = lift.value(*e) {
                acc += Rat::from_integer(w.clone()) * v;
            }
        }
        acc
    }
}

/// Builds the N*D/2 circuit inequalities of a certified fan, one per ridge.
/// Coefficients are exact and refer to the nominal rigidity-matrix rows.
pub fn build_inequalities(
    emb: &ReducedEmbedding,
    facets: &[Vec<u16>],
) -> Result<Vec<CircuitInequality>, PolytopeError> {
    let out: Vec<Result<CircuitInequality, PolytopeError>> =
        for_each_flip(emb, facets, |_, c| {
            let removed = emb.gon.relevant[c.union_ids[c.removed_pos] as usize];
            let inserted = emb.gon.relevant[c.union_ids[c.inserted_pos] as usize];
            // Nominal coefficients: positive per-edge rescale of the stored
            // ones, then cleared to integers by a positive rational.
            let nominal = emb.to_nominal_coeffs(&c.union_ids, &c.dep);
            let sr = sign_of(&nominal[c.removed_pos]);
            let si = sign_of(&nominal[c.inserted_pos]);
            if sr == 0 || sr != si {
                return Ok(Some(Err(PolytopeError::IcopViolated { removed, inserted })));
            }
            let mut lcm = BigInt::one();
            for v in &nominal {
                lcm = lcm.lcm(v.denom());
            }
            let mut ints: Vec<Int> =
                nominal.iter().map(|v| (v * Rat::from_integer(lcm.clone())).to_integer()).collect();
            let mut g = BigInt::zero();
            for v in &ints {
                g = g.gcd(v);
            }
            if !g.is_zero() && !g.is_one() {
                for v in ints.iter_mut() {
                    *v /= &g;
                }
            }
            if sr < 0 {
                for v in ints.iter_mut() {
                    *v = -std::mem::take(v);
                }
            }
            let ridge: Vec<Edge> = c
                .union_ids
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != c.removed_pos && p != c.inserted_pos)
                .map(|(_, &id)| emb.gon.relevant[id as usize])
                .collect();
            let coeffs: BTreeMap<Edge, Int> = c
                .union_ids
                .iter()
                .zip(ints)
                .filter(|(_, v)| !v.is_zero())
                .map(|(&id, v)| (emb.gon.relevant[id as usize], v))
                .collect();
            Ok(Some(Ok(CircuitInequality { removed, inserted, ridge, coeffs })))
        })?;
    out.into_iter().collect()
}

fn sign_of(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Outcome of verifying a supplied lifting vector.
#[derive(Debug, Clone, Serialize)]
pub struct LiftViolation {
    pub index: usize,
    pub removed: Edge,
    pub inserted: Edge,
    pub value: String,
}

/// Checks that every circuit inequality is strictly positive under `lift`
/// (greedy and short edges held at zero). Returns the first violation.
pub fn verify_lift(
    lift: &LiftingVector,
    inequalities: &[CircuitInequality],
    greedy: &KTriangulation,
) -> Result<Result<(), LiftViolation>, PolytopeError> {
    // Domain check: every relevant non-greedy edge must carry a value.
    let n = greedy.n;
    let k = greedy.k;
    for e in crate::ngon::relevant_edges(n, k) {
        if !greedy.contains(e) && !lift.f.contains_key(&e) {
            return Err(PolytopeError::MissingEdgeValue(e));
        }
    }
    for (index, ineq) in inequalities.iter().enumerate() {
        let v = ineq.evaluate(lift);
        if !v.is_positive() {
            return Ok(Err(LiftViolation {
                index,
                removed: ineq.removed,
                inserted: ineq.inserted,
                value: crate::formats::rat_to_string(&v),
            }));
        }
    }
    Ok(Ok(()))
}

/// A proof that no valid lifting exists: nonnegative multipliers on the
/// inequalities whose coefficient rows combine to the zero functional with
/// positive total mass.
#[derive(Debug, Clone, Serialize)]
pub struct FarkasCertificate {
    /// (inequality index, multiplier), nonzero entries only.
    pub multipliers: Vec<(usize, String)>,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Feasible(LiftingVector),
    Infeasible(FarkasCertificate),
}

/// The height variables after greedy normalization: relevant edges not in
/// the greedy triangulation, sorted. Their count is (n-2k)(n-2k-1)/2.
pub fn lift_variables(n: usize, k: usize) -> Result<Vec<Edge>, NgonError> {
    let greedy = KTriangulation::greedy(n, k)?;
    Ok(crate::ngon::relevant_edges(n, k)
        .into_iter()
        .filter(|e| !greedy.contains(*e))
        .collect())
}

/// Exact LP search for a valid lifting vector: finds f with w.f >= 1 for
/// every inequality, or a Farkas certificate that the strict system is
/// infeasible. Uses delayed constraint generation over the deduplicated
/// inequality rows, so only small exact LPs are ever solved.
pub fn find_lift(
    inequalities: &[CircuitInequality],
    n: usize,
    k: usize,
) -> Result<LpOutcome, PolytopeError> {
    let variables = lift_variables(n, k)?;
    let var_index: HashMap<Edge, usize> =
        variables.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let dim = variables.len();

    // Dense integer rows over the variables; duplicates collapse to their
    // first representative.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut row_source: Vec<usize> = Vec::new();
    let mut seen: HashMap<Vec<Int>, usize> = HashMap::new();
    for (idx, ineq) in inequalities.iter().enumerate() {
        let mut dense = vec![Int::zero(); dim];
        for (e, w) in &ineq.coeffs {
            if let Some(&v) = var_index.get(e) {
                dense[v] = w.clone();
            }
        }
        if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(dense.clone()) {
            slot.insert(rows.len());
            rows.push(dense.iter().map(|v| Rat::from_integer(v.clone())).collect());
            row_source.push(idx);
        }
    }
    if dim == 0 || rows.is_empty() {
        return Ok(LpOutcome::Feasible(LiftingVector { f: BTreeMap::new() }));
    }

    // Delayed constraint generation.
    let mut working: Vec<usize> = (0..rows.len().min(4 * dim + 8)).collect();
    let mut in_working = vec![false; rows.len()];
    for &i in &working {
        in_working[i] = true;
    }
    loop {
        let sub: Vec<Vec<Rat>> = working.iter().map(|&i| rows[i].clone()).collect();
        match strict_feasibility(&sub, dim) {
            StrictOutcome::Certificate(y) => {
                // Valid for the full system: unused rows get multiplier zero.
                let multipliers: Vec<(usize, String)> = working
                    .iter()
                    .zip(&y)
                    .filter(|(_, v)| v.is_positive())
                    .map(|(&i, v)| (row_source[i], crate::formats::rat_to_string(v)))
                    .collect();
                return Ok(LpOutcome::Infeasible(FarkasCertificate { multipliers }));
            }
            StrictOutcome::Feasible(x) => {
                // Exact scan of all rows for violations of w.x > 0.
                let mut worst: Vec<(Rat, usize)> = Vec::new();
                let mut min_pos: Option<Rat> = None;
                for (i, row) in rows.iter().enumerate() {
                    let v: Rat = row.iter().zip(&x).map(|(a, b)| a * b).sum();
                    if v.is_positive() {
                        if min_pos.as_ref().is_none_or(|m| v < *m) {
                            min_pos = Some(v);
                        }
                    } else if !in_working[i] {
                        worst.push((v, i));
                    } else {
                        // A working row came back non-positive: cannot happen,
                        // strict_feasibility guarantees margin there.
                        debug_assert!(false, "working row violated");
                    }
                }
                if worst.is_empty() {
                    let margin = min_pos.expect("at least one row");
                    let scale = margin.recip();
                    let f: BTreeMap<Edge, Rat> = variables
                        .iter()
                        .zip(&x)
                        .map(|(e, v)| (*e, v * &scale))
                        .collect();
                    return Ok(LpOutcome::Feasible(LiftingVector { f }));
                }
                worst.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
                for (_, i) in worst.into_iter().take(64) {
                    in_working[i] = true;
                    working.push(i);
                }
                working.sort_unstable();
            }
        }
    }
}

/// Exact check of a Farkas certificate against the inequality system.
pub fn verify_farkas(
    certificate: &FarkasCertificate,
    inequalities: &[CircuitInequality],
    n: usize,
    k: usize,
) -> Result<bool, PolytopeError> {
    let variables = lift_variables(n, k)?;
    let var_index: HashMap<Edge, usize> =
        variables.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut combo = vec![Rat::zero(); variables.len()];
    let mut mass = Rat::zero();
    for (idx, mult) in &certificate.multipliers {
        let y = crate::formats::rat_from_string(mult).map_err(|_| {
            PolytopeError::Fan(FanError::MissingFlip)
        })?;
        if y.is_negative() {
            return Ok(false);
        }
        mass += &y;
        let ineq = &inequalities[*idx];
        for (e, w) in &ineq.coeffs {
            if let Some(&v) = var_index.get(e) {
                combo[v] += Rat::from_integer(w.clone()) * &y;
            }
        }
    }
    Ok(mass.is_positive() && combo.iter().all(Zero::is_zero))
}
