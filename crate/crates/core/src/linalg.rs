//! Exact rational linear algebra on rows of rigidity matrices.
//!
//! Everything is fraction-free Bareiss elimination over arbitrary-precision
//! integers after clearing denominators. Pivots are chosen deterministically
//! (first nonzero in column order) so ranks, dependences and solved
//! coefficients are reproducible across runs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::ngon::Edge;

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("row set has corank {corank}, expected corank 1")]
    CorankNotOne { corank: usize },
    #[error("target vector is not in the span of the basis rows")]
    NotInSpan,
    #[error("basis rows are not linearly independent")]
    NotIndependent,
    #[error("rows have mismatched lengths")]
    RaggedRows,
}

/// Clears denominators of a rational vector, returning the integer vector and
/// the positive scale `s` such that `ints = s * rationals`.
pub fn clear_denominators(row: &[Rat]) -> (Vec<Int>, Rat) {
    let mut lcm = Int::one();
    for x in row {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = Int::zero();
    for v in &ints {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() || g.is_one() {
        (ints, Rat::from_integer(lcm))
    } else {
        let reduced = ints.iter().map(|v| v / &g).collect();
        (reduced, Rat::new(lcm, g))
    }
}

/// Divides a vector by the gcd of its entries. Returns the (positive) gcd,
/// or 1 for the zero vector.
pub fn make_primitive(v: &mut [Int]) -> Int {
    let mut g = Int::zero();
    for x in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return g;
        }
    }
    if g.is_zero() {
        return Int::one();
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
    g
}

fn check_rect(rows: &[Vec<Int>]) -> Result<usize, LinalgError> {
    let Some(first) = rows.first() else {
        return Ok(0);
    };
    let w = first.len();
    if rows.iter().any(|r| r.len() != w) {
        return Err(LinalgError::RaggedRows);
    }
    Ok(w)
}

/// Exact rank over the rationals, columns scanned in their natural order.
pub fn rank(rows: &[Vec<Int>]) -> usize {
    let order: Vec<usize> = (0..rows.first().map_or(0, Vec::len)).collect();
    rank_with_column_order(rows, &order)
}

/// Exact rank with an explicit column scan order (used to check that the
/// result does not depend on pivoting choices).
pub fn rank_with_column_order(rows: &[Vec<Int>], cols: &[usize]) -> usize {
    let mut work: Vec<Vec<Int>> = rows.to_vec();
    let m = work.len();
    let mut r = 0usize;
    let mut prev = Int::one();
    for &c in cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(r, p);
        for i in r + 1..m {
            let row_rc = work[r][c].clone();
            let row_ic = work[i][c].clone();
            for &cc in cols {
                let t = &row_rc * &work[i][cc] - &row_ic * &work[r][cc];
                work[i][cc] = t / &prev;
            }
        }
        prev = work[r][c].clone();
        r += 1;
    }
    r
}

/// Fraction-free determinant of a square integer matrix.
pub fn det(rows: &[Vec<Int>]) -> Int {
    let n = rows.len();
    if n == 0 {
        return Int::one();
    }
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut work: Vec<Vec<Int>> = rows.to_vec();
    let mut sign = 1i8;
    let mut prev = Int::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !work[i][c].is_zero()) else {
            return Int::zero();
        };
        if p != c {
            work.swap(c, p);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let t = &work[c][c] * &work[i][j] - &work[i][c] * &work[c][j];
                work[i][j] = t / &prev;
            }
            work[i][c] = Int::zero();
        }
        prev = work[c][c].clone();
    }
    let d = work[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Whether a square integer matrix is nonsingular. Same elimination as
/// [`det`] but aborts on the first zero column.
pub fn is_nonsingular(rows: &[Vec<Int>]) -> bool {
    rank(rows) == rows.len()
}

/// Outcome of eliminating a row set while tracking row operations.
struct Eliminated {
    /// For each zero row produced, the integer combination of the *original*
    /// rows that witnesses it.
    kernel: Vec<Vec<Int>>,
    rank: usize,
}

/// Fraction-free elimination of `rows`, carrying an identity block so that
/// every row of the reduced matrix is a known integer combination of the
/// input rows. Kernel rows are exact integer dependences.
fn eliminate_with_transform(rows: &[Vec<Int>], width: usize) -> Eliminated {
    let m = rows.len();
    // Working matrix [A | I].
    let mut work: Vec<Vec<Int>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut w = r.clone();
            w.extend((0..m).map(|j| if i == j { Int::one() } else { Int::zero() }));
            w
        })
        .collect();
    let total = width + m;
    let mut r = 0usize;
    let mut prev = Int::one();
    for c in 0..width {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(r, p);
        for i in r + 1..m {
            for j in 0..total {
                if j == c {
                    continue;
                }
                let t = &work[r][c] * &work[i][j] - &work[i][c] * &work[r][j];
                work[i][j] = t / &prev;
            }
            work[i][c] = Int::zero();
        }
        prev = work[r][c].clone();
        r += 1;
    }
    let mut kernel = Vec::new();
    for row in work.iter().skip(r) {
        debug_assert!(row[..width].iter().all(Zero::is_zero));
        let mut dep: Vec<Int> = row[width..].to_vec();
        make_primitive(&mut dep);
        kernel.push(dep);
    }
    Eliminated { kernel, rank: r }
}

/// The unique (up to scalar) linear dependence among `rows`, which must have
/// corank exactly one. The returned integer coefficients are primitive
/// (gcd one) with deterministic sign: the first nonzero coefficient in row
/// order is positive.
pub fn unique_dependence(rows: &[Vec<Int>]) -> Result<Vec<Int>, LinalgError> {
    let width = check_rect(rows)?;
    let elim = eliminate_with_transform(rows, width);
    let corank = rows.len() - elim.rank;
    if corank != 1 {
        return Err(LinalgError::CorankNotOne { corank });
    }
    let mut dep = elim.kernel.into_iter().next().expect("corank-one kernel");
    if let Some(first) = dep.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in dep.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    debug_assert!(verify_dependence(rows, &dep));
    Ok(dep)
}

/// Exact substitution check: does `dep` combine `rows` to the zero vector?
pub fn verify_dependence(rows: &[Vec<Int>], dep: &[Int]) -> bool {
    if rows.is_empty() {
        return true;
    }
    let width = rows[0].len();
    (0..width).all(|c| {
        rows.iter()
            .zip(dep)
            .map(|(r, l)| &r[c] * l)
            .sum::<Int>()
            .is_zero()
    })
}

/// Expresses `target` in the given independent rows: returns exact rational
/// coefficients `x` with `sum x_e row_e = target`.
pub fn solve_in_basis(basis: &[Vec<Int>], target: &[Int]) -> Result<Vec<Rat>, LinalgError> {
    let mut rows: Vec<Vec<Int>> = basis.to_vec();
    rows.push(target.to_vec());
    match unique_dependence(&rows) {
        Ok(dep) => {
            let lt = &dep[basis.len()];
            if lt.is_zero() {
                // The dependence lives inside the basis rows.
                return Err(LinalgError::NotIndependent);
            }
            Ok(dep[..basis.len()]
                .iter()
                .map(|l| -Rat::new(l.clone(), lt.clone()))
                .collect())
        }
        Err(LinalgError::CorankNotOne { corank: 0 }) => Err(LinalgError::NotInSpan),
        Err(LinalgError::CorankNotOne { .. }) => Err(LinalgError::NotIndependent),
        Err(e) => Err(e),
    }
}

/// A normalized linear dependence among rows indexed by edges.
///
/// Coefficients are exact rationals scaled so that the lexicographically
/// smallest support edge has coefficient +1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceVector {
    pub coefficients: BTreeMap<Edge, Rat>,
}

impl Serialize for DependenceVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.coefficients.len()))?;
        for (e, c) in &self.coefficients {
            map.serialize_entry(&format!("{},{}", e.i, e.j), &crate::formats::rat_to_string(c))?;
        }
        map.end()
    }
}

impl DependenceVector {
    /// Builds from per-edge integer coefficients, dropping zeros and
    /// normalizing the lexicographically smallest support edge to +1.
    pub fn from_integer_coeffs(pairs: impl IntoIterator<Item = (Edge, Int)>) -> Self {
        let raw: BTreeMap<Edge, Int> =
            pairs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let lead = raw
            .iter()
            .next()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Int::one);
        let coefficients = raw
            .into_iter()
            .map(|(e, c)| (e, Rat::new(c, lead.clone())))
            .collect();
        DependenceVector { coefficients }
    }

    pub fn support(&self) -> impl Iterator<Item = Edge> + '_ {
        self.coefficients.keys().copied()
    }

    pub fn sign(&self, e: Edge) -> i8 {
        match self.coefficients.get(&e) {
            None => 0,
            Some(c) => {
                if c.is_positive() {
                    1
                } else if c.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn circuit(&self) -> SignedCircuit {
        SignedCircuit {
            signs: self
                .coefficients
                .iter()
                .map(|(e, c)| (*e, if c.is_positive() { 1 } else { -1 }))
                .collect(),
        }
    }
}

/// Support and signs of a minimal dependence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCircuit {
    /// Edge -> +1/-1 over the support.
    pub signs: BTreeMap<Edge, i8>,
}

impl Serialize for SignedCircuit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.signs.len()))?;
        for (e, sign) in &self.signs {
            map.serialize_entry(&format!("{},{}", e.i, e.j), if *sign > 0 { "+" } else { "-" })?;
        }
        map.end()
    }
}

impl SignedCircuit {
    pub fn support(&self) -> impl Iterator<Item = Edge> + '_ {
        self.signs.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn rank_of_empty_row_set_is_zero() {
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn rank_matches_under_different_pivot_orders() {
        let rows = vec![iv(&[1, 2, 3]), iv(&[2, 4, 6]), iv(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank_with_column_order(&rows, &[2, 0, 1]), 2);
        assert_eq!(rank_with_column_order(&rows, &[1, 2, 0]), 2);
    }

    #[test]
    fn dependence_of_three_planar_vectors() {
        // (1,0), (0,1), (1,1) -> lambda = (1, 1, -1).
        let rows = vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1])];
        let dep = unique_dependence(&rows).unwrap();
        assert_eq!(dep, iv(&[1, 1, -1]));
    }

    #[test]
    fn dependence_rejects_wrong_corank() {
        let rows = vec![iv(&[1, 0]), iv(&[0, 1])];
        assert_eq!(
            unique_dependence(&rows),
            Err(LinalgError::CorankNotOne { corank: 0 })
        );
        let rows = vec![iv(&[1, 0]), iv(&[2, 0]), iv(&[3, 0])];
        assert_eq!(
            unique_dependence(&rows),
            Err(LinalgError::CorankNotOne { corank: 2 })
        );
    }

    #[test]
    fn solve_unit_and_sum_targets() {
        let basis = vec![iv(&[1, 0, 2]), iv(&[0, 1, 3])];
        let x = solve_in_basis(&basis, &iv(&[1, 0, 2])).unwrap();
        assert_eq!(x[0], Rat::one());
        assert!(x[1].is_zero());
        let x = solve_in_basis(&basis, &iv(&[1, 1, 5])).unwrap();
        assert!(x.iter().all(|c| c.is_one()));
        assert_eq!(
            solve_in_basis(&basis, &iv(&[0, 0, 1])),
            Err(LinalgError::NotInSpan)
        );
    }

    #[test]
    fn determinant_signs() {
        assert_eq!(det(&[iv(&[0, 1]), iv(&[1, 0])]), Int::from(-1));
        assert_eq!(det(&[iv(&[2, 0]), iv(&[0, 3])]), Int::from(6));
        assert_eq!(det(&[iv(&[1, 2]), iv(&[2, 4])]), Int::zero());
    }
}
