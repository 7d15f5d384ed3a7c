//! The four rigidity matrices with exact rational entries, rows indexed by
//! edges of K_n: bar-and-joint R(p), hyperconnectivity H(p), cofactor C_d(q)
//! (affine and homogeneous) and polynomial P_d(t).
//!
//! Each row has two nonzero blocks of d entries; the sign convention places
//! the "+" block at the smaller endpoint so circuit signs are comparable
//! across kinds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::linalg::{Int, Rat};
use crate::ngon::Edge;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum RigidityError {
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("vector {0} is zero")]
    ZeroVector(usize),
    #[error("parameters are not strictly increasing at position {0}")]
    NotIncreasing(usize),
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("dimension parameter d must be at least 1")]
    BadDimension,
    #[error("points have mixed dimensions")]
    MixedDimensions,
}

/// Strictly increasing exact parameters t_1 < ... < t_n on the moment curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterConfig {
    pub t: Vec<Rat>,
}

impl ParameterConfig {
    pub fn new(t: Vec<Rat>) -> Result<Self, RigidityError> {
        for i in 1..t.len() {
            if t[i - 1] >= t[i] {
                return Err(RigidityError::NotIncreasing(i));
            }
        }
        Ok(ParameterConfig { t })
    }

    pub fn from_integers(t: &[i64]) -> Result<Self, RigidityError> {
        Self::new(t.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
    }

    pub fn standard(n: usize) -> Self {
        Self::from_integers(&(1..=n as i64).collect::<Vec<_>>()).expect("1..n increasing")
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Points (t_i, t_i^2) on the parabola.
    pub fn parabola(&self) -> PlanarConfig {
        PlanarConfig {
            q: self.t.iter().map(|t| (t.clone(), t * t)).collect(),
        }
    }

    /// Points (t_i, t_i^2, ..., t_i^d) on the moment curve.
    pub fn moment_curve(&self, d: usize) -> Vec<Vec<Rat>> {
        self.t.iter().map(|t| powers(t, 1, d)).collect()
    }

    /// Vectors (1, t_i, ..., t_i^{d-1}).
    pub fn polynomial_vectors(&self, d: usize) -> Vec<Vec<Rat>> {
        self.t.iter().map(|t| powers(t, 0, d - 1)).collect()
    }
}

fn powers(t: &Rat, lo: usize, hi: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(hi - lo + 1);
    let mut p = if lo == 0 {
        Rat::one()
    } else {
        let mut p = t.clone();
        for _ in 1..lo {
            p = &p * t;
        }
        p
    };
    out.push(p.clone());
    for _ in lo..hi {
        p = &p * t;
        out.push(p.clone());
    }
    out
}

/// n points in the plane with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarConfig {
    pub q: Vec<(Rat, Rat)>,
}

impl PlanarConfig {
    pub fn new(q: Vec<(Rat, Rat)>) -> Self {
        PlanarConfig { q }
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// Orientation of the triple (a, b, c), as the sign of the 3x3
    /// determinant of the homogenized points: +1 counter-clockwise, -1
    /// clockwise, 0 collinear. Indices are 0-based.
    pub fn orient(&self, a: usize, b: usize, c: usize) -> i8 {
        let (ax, ay) = &self.q[a];
        let (bx, by) = &self.q[b];
        let (cx, cy) = &self.q[c];
        let d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
        if d.is_zero() {
            0
        } else if d.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Strict convex position in the listed cyclic order: all consecutive
    /// triples turn the same way and no triple is collinear.
    pub fn convex_position(&self) -> bool {
        let n = self.q.len();
        if n < 3 {
            return false;
        }
        let first = self.orient(0, 1, 2);
        if first == 0 {
            return false;
        }
        (0..n).all(|i| self.orient(i, (i + 1) % n, (i + 2) % n) == first)
    }

    /// No three points collinear. Quadratic-cubic scan, checked on demand.
    pub fn general_position(&self) -> bool {
        let n = self.q.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if self.orient(a, b, c) == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn subset(&self, idx: &[usize]) -> PlanarConfig {
        PlanarConfig { q: idx.iter().map(|&i| self.q[i].clone()).collect() }
    }
}

/// n nonzero vectors in R^3 (projective points).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousConfig {
    pub q: Vec<[Rat; 3]>,
}

impl HomogeneousConfig {
    pub fn new(q: Vec<[Rat; 3]>) -> Result<Self, RigidityError> {
        for (i, v) in q.iter().enumerate() {
            if v.iter().all(Zero::is_zero) {
                return Err(RigidityError::ZeroVector(i + 1));
            }
        }
        Ok(HomogeneousConfig { q })
    }

    /// Lifts a planar configuration with Z = 1.
    pub fn from_planar(q: &PlanarConfig) -> Self {
        HomogeneousConfig {
            q: q.q.iter().map(|(x, y)| [x.clone(), y.clone(), Rat::one()]).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    BarJoint,
    Hyper,
    Cofactor,
    CofactorHomogeneous,
    Polynomial,
}

/// A rigidity matrix: one row per edge of K_n, each row supported on two
/// blocks of d columns.
#[derive(Debug, Clone)]
pub struct RigidityMatrix {
    pub kind: MatrixKind,
    pub d: usize,
    pub n: usize,
    /// Edge {i,j} -> (block at i, block at j).
    rows: BTreeMap<Edge, (Vec<Rat>, Vec<Rat>)>,
}

impl RigidityMatrix {
    fn from_blocks(
        kind: MatrixKind,
        d: usize,
        n: usize,
        mut block_fn: impl FnMut(usize, usize) -> (Vec<Rat>, Vec<Rat>),
    ) -> Self {
        let mut rows = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let e = Edge::new(i as u16, j as u16);
                rows.insert(e, block_fn(i - 1, j - 1));
            }
        }
        RigidityMatrix { kind, d, n, rows }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.rows.keys().copied()
    }

    /// The two nonzero blocks of the row of `e` (at e.i and e.j).
    pub fn blocks(&self, e: Edge) -> Option<(&[Rat], &[Rat])> {
        self.rows.get(&e).map(|(a, b)| (a.as_slice(), b.as_slice()))
    }

    /// Dense row of length n*d.
    pub fn row_dense(&self, e: Edge) -> Option<Vec<Rat>> {
        let (bi, bj) = self.blocks(e)?;
        let mut row = vec![Rat::zero(); self.n * self.d];
        let oi = (e.i as usize - 1) * self.d;
        let oj = (e.j as usize - 1) * self.d;
        row[oi..oi + self.d].clone_from_slice(bi);
        row[oj..oj + self.d].clone_from_slice(bj);
        Some(row)
    }

    pub fn rows_dense(&self, edges: &[Edge]) -> Vec<Vec<Rat>> {
        edges.iter().map(|e| self.row_dense(*e).expect("edge of K_n")).collect()
    }

    /// Dense integer rows with per-row positive scales: ints = scale * rationals.
    pub fn rows_int(&self, edges: &[Edge]) -> (Vec<Vec<Int>>, Vec<Rat>) {
        let mut ints = Vec::with_capacity(edges.len());
        let mut scales = Vec::with_capacity(edges.len());
        for e in edges {
            let dense = self.row_dense(*e).expect("edge of K_n");
            let (iv, s) = crate::linalg::clear_denominators(&dense);
            ints.push(iv);
            scales.push(s);
        }
        (ints, scales)
    }

    /// The expected rank for spanning general-position configurations:
    /// min(C(n,2), dn - C(d+1,2)).
    pub fn generic_rank(&self) -> usize {
        let full = self.n * (self.n - 1) / 2;
        let dn = self.d * self.n;
        let corr = (self.d + 1) * self.d / 2;
        full.min(dn.saturating_sub(corr))
    }
}

/// Bar-and-joint rigidity matrix R(p): row {i,j} carries p_i - p_j at block i
/// and p_j - p_i at block j.
pub fn build_bar_joint(points: &[Vec<Rat>]) -> Result<RigidityMatrix, RigidityError> {
    let n = points.len();
    if n < 2 {
        return Err(RigidityError::TooFewPoints { needed: 2, got: n });
    }
    let d = points[0].len();
    if d == 0 {
        return Err(RigidityError::BadDimension);
    }
    if points.iter().any(|p| p.len() != d) {
        return Err(RigidityError::MixedDimensions);
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Err(RigidityError::DuplicatePoint(i + 1, j + 1));
            }
        }
    }
    Ok(RigidityMatrix::from_blocks(MatrixKind::BarJoint, d, n, |i, j| {
        let diff: Vec<Rat> = points[i].iter().zip(&points[j]).map(|(a, b)| a - b).collect();
        let neg: Vec<Rat> = diff.iter().map(|x| -x.clone()).collect();
        (diff, neg)
    }))
}

/// Hyperconnectivity matrix H(p): row {i,j} (i<j) carries p_j at block i and
/// -p_i at block j.
pub fn build_hyper(vectors: &[Vec<Rat>]) -> Result<RigidityMatrix, RigidityError> {
    build_hyper_with_kind(vectors, MatrixKind::Hyper)
}

fn build_hyper_with_kind(
    vectors: &[Vec<Rat>],
    kind: MatrixKind,
) -> Result<RigidityMatrix, RigidityError> {
    let n = vectors.len();
    if n < 2 {
        return Err(RigidityError::TooFewPoints { needed: 2, got: n });
    }
    let d = vectors[0].len();
    if d == 0 {
        return Err(RigidityError::BadDimension);
    }
    if vectors.iter().any(|p| p.len() != d) {
        return Err(RigidityError::MixedDimensions);
    }
    for (i, v) in vectors.iter().enumerate() {
        if v.iter().all(Zero::is_zero) {
            return Err(RigidityError::ZeroVector(i + 1));
        }
    }
    Ok(RigidityMatrix::from_blocks(kind, d, n, |i, j| {
        (
            vectors[j].clone(),
            vectors[i].iter().map(|x| -x.clone()).collect(),
        )
    }))
}

fn cofactor_vector(x: &Rat, y: &Rat, d: usize) -> Vec<Rat> {
    // (x^{d-1}, y x^{d-2}, ..., y^{d-1})
    let mut out = Vec::with_capacity(d);
    for m in 0..d {
        let mut v = Rat::one();
        for _ in 0..(d - 1 - m) {
            v = &v * x;
        }
        for _ in 0..m {
            v = &v * y;
        }
        out.push(v);
    }
    out
}

/// Cofactor rigidity matrix C_d(q) for planar points: row {i,j} carries
/// c_ij = ((x_i-x_j)^{d-1}, (y_i-y_j)(x_i-x_j)^{d-2}, ..., (y_i-y_j)^{d-1})
/// at block i and -c_ij at block j.
pub fn build_cofactor(q: &PlanarConfig, d: usize) -> Result<RigidityMatrix, RigidityError> {
    let n = q.len();
    if n < 2 {
        return Err(RigidityError::TooFewPoints { needed: 2, got: n });
    }
    if d == 0 {
        return Err(RigidityError::BadDimension);
    }
    for i in 0..n {
        for j in i + 1..n {
            if q.q[i] == q.q[j] {
                return Err(RigidityError::DuplicatePoint(i + 1, j + 1));
            }
        }
    }
    Ok(RigidityMatrix::from_blocks(MatrixKind::Cofactor, d, n, |i, j| {
        let x = &q.q[i].0 - &q.q[j].0;
        let y = &q.q[i].1 - &q.q[j].1;
        let c = cofactor_vector(&x, &y, d);
        let neg = c.iter().map(|v| -v.clone()).collect();
        (c, neg)
    }))
}

/// Homogeneous cofactor matrix C_d(Q) for vectors Q_i = (X_i, Y_i, Z_i):
/// built like [`build_cofactor`] with x_ij = X_i Z_j - Z_i X_j and
/// y_ij = Y_i Z_j - Z_i Y_j. Taking all Z_i = 1 recovers the affine case.
pub fn build_cofactor_homogeneous(
    q: &HomogeneousConfig,
    d: usize,
) -> Result<RigidityMatrix, RigidityError> {
    let n = q.q.len();
    if n < 2 {
        return Err(RigidityError::TooFewPoints { needed: 2, got: n });
    }
    if d == 0 {
        return Err(RigidityError::BadDimension);
    }
    Ok(RigidityMatrix::from_blocks(MatrixKind::CofactorHomogeneous, d, n, |i, j| {
        let [xi, yi, zi] = &q.q[i];
        let [xj, yj, zj] = &q.q[j];
        let x = xi * zj - zi * xj;
        let y = yi * zj - zi * yj;
        let c = cofactor_vector(&x, &y, d);
        let neg = c.iter().map(|v| -v.clone()).collect();
        (c, neg)
    }))
}

/// Polynomial d-rigidity matrix P_d(t): the hyperconnectivity matrix of the
/// vectors (1, t_i, ..., t_i^{d-1}).
pub fn build_polynomial(t: &ParameterConfig, d: usize) -> Result<RigidityMatrix, RigidityError> {
    if d == 0 {
        return Err(RigidityError::BadDimension);
    }
    build_hyper_with_kind(&t.polynomial_vectors(d), MatrixKind::Polynomial)
}

// ---------------------------------------------------------------------------
// Rational approximations of the equispaced-circle parameters.
// ---------------------------------------------------------------------------

/// pi as an exact rational with error below 2^-prec (Machin's formula).
fn pi_approx(prec: u32) -> Rat {
    // pi = 16 atan(1/5) - 4 atan(1/239)
    let atan_inv = |x: i64| -> Rat {
        let xr = Rat::from_integer(BigInt::from(x));
        let x2 = &xr * &xr;
        let mut term = Rat::one() / xr; // 1/x
        let mut sum = term.clone();
        let mut m = 1u32;
        let bound = Rat::new(BigInt::one(), BigInt::one() << (prec + 8));
        loop {
            term = term / &x2;
            let t = &term / Rat::from_integer(BigInt::from(2 * m + 1));
            if m % 2 == 1 {
                sum = sum - &t;
            } else {
                sum = sum + &t;
            }
            if t < bound {
                break;
            }
            m += 1;
        }
        sum
    };
    Rat::from_integer(BigInt::from(16)) * atan_inv(5)
        - Rat::from_integer(BigInt::from(4)) * atan_inv(239)
}

/// Truncates a rational to `bits` fractional bits (floor), bounding its size.
fn round_to_bits(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = (x * Rat::from_integer(scale.clone())).floor();
    Rat::new(scaled.to_integer(), scale)
}

/// sin and cos of an exact rational angle by Taylor series, each with error
/// below 2^-prec. |theta| should be below 2 for fast convergence.
fn sin_cos(theta: &Rat, prec: u32) -> (Rat, Rat) {
    let bound = Rat::new(BigInt::one(), BigInt::one() << (prec + 8));
    let t2 = theta * theta;
    let mut sin = theta.clone();
    let mut term = theta.clone();
    let mut m = 1u64;
    loop {
        term = &term * &t2 / Rat::from_integer(BigInt::from((2 * m) * (2 * m + 1)));
        if m % 2 == 1 {
            sin = sin - &term;
        } else {
            sin = sin + &term;
        }
        if term.abs() < bound {
            break;
        }
        m += 1;
    }
    let mut cos = Rat::one();
    let mut term = Rat::one();
    let mut m = 1u64;
    loop {
        term = &term * &t2 / Rat::from_integer(BigInt::from((2 * m - 1) * (2 * m)));
        if m % 2 == 1 {
            cos = cos - &term;
        } else {
            cos = cos + &term;
        }
        if term.abs() < bound {
            break;
        }
        m += 1;
    }
    (sin, cos)
}

/// Best continued-fraction convergent of `x` whose numerator and denominator
/// both fit in `bits` bits. Deterministic.
fn convergent_within(x: &Rat, bits: u32) -> Rat {
    let limit = BigInt::one() << bits;
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (x.floor().to_integer(), BigInt::one());
    let mut frac = x - Rat::from_integer(p1.clone());
    while !frac.is_zero() {
        let inv = frac.recip();
        let a = inv.floor().to_integer();
        frac = inv - Rat::from_integer(a.clone());
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if p2.abs() > limit || q2.abs() > limit {
            break;
        }
        (p0, q0) = (p1, q1);
        (p1, q1) = (p2, q2);
    }
    let _ = (p0, q0);
    Rat::new(p1, q1)
}

/// Parameters "equispaced along the circle": rational approximations of
/// tan(alpha_0 + i pi / n) with alpha_0 = -(n+1) pi / (2n), for i = 1..n.
/// Numerators and denominators of the convergents are bounded by `bits` bits.
/// The sequence is strictly increasing and symmetric: t_i = -t_{n+1-i}.
pub fn circle_positions(n: usize, bits: u32) -> Result<ParameterConfig, RigidityError> {
    if n < 3 {
        return Err(RigidityError::TooFewPoints { needed: 3, got: n });
    }
    let prec = 4 * bits.max(64) + 64;
    let pi = pi_approx(prec);
    let mut t = vec![Rat::zero(); n];
    for i in 1..=n {
        // angle_i = pi (2i - n - 1) / (2n), antisymmetric under i -> n+1-i.
        let num = 2 * i as i64 - n as i64 - 1;
        if num == 0 {
            t[i - 1] = Rat::zero();
            continue;
        }
        if num > 0 {
            // mirror later
            continue;
        }
        let theta = round_to_bits(
            &(&pi * Rat::new(BigInt::from(num), BigInt::from(2 * n as i64))),
            prec,
        );
        let (s, c) = sin_cos(&theta, prec);
        let tan = s / c;
        t[i - 1] = convergent_within(&tan, bits);
    }
    for i in 1..=n {
        if 2 * i as i64 - n as i64 - 1 > 0 {
            t[i - 1] = -t[n - i].clone();
        }
    }
    ParameterConfig::new(t)
}

/// Rational points exactly on the unit circle approximating a regular n-gon,
/// in counter-clockwise convex position: ((1-s^2)/(1+s^2), 2s/(1+s^2)) for
/// s a bounded convergent of tan(theta_i / 2), theta_i = -pi + (2i-1) pi / n.
pub fn regular_gon_config(n: usize, bits: u32) -> Result<PlanarConfig, RigidityError> {
    if n < 3 {
        return Err(RigidityError::TooFewPoints { needed: 3, got: n });
    }
    let prec = 4 * bits.max(64) + 64;
    let pi = pi_approx(prec);
    let mut q = Vec::with_capacity(n);
    for i in 1..=n {
        // theta_i / 2 = pi (2i - 1 - n) / (2n), in (-pi/2, pi/2).
        let num = 2 * i as i64 - 1 - n as i64;
        let s = if num == 0 {
            Rat::zero()
        } else {
            let half = round_to_bits(
                &(&pi * Rat::new(BigInt::from(num), BigInt::from(2 * n as i64))),
                prec,
            );
            let (sn, cs) = sin_cos(&half, prec);
            convergent_within(&(sn / cs), bits)
        };
        let s2 = &s * &s;
        let denom = Rat::one() + &s2;
        let x = (Rat::one() - &s2) / &denom;
        let y = (Rat::from_integer(BigInt::from(2)) * &s) / &denom;
        q.push((x, y));
    }
    let cfg = PlanarConfig::new(q);
    debug_assert!(cfg.convex_position());
    Ok(cfg)
}

/// Positive gcd-reduced helper used when echoing positions in reports.
pub fn rat_is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}
