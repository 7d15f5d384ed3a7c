//! Contraction of a rigidity-matrix row configuration at the edges common to
//! all facets (the kn edges of length at most k).
//!
//! Every certification question about the reduced complex (bases, flip
//! circuits, cycle signs, cone membership) only involves the images of the
//! relevant-edge rows in the quotient modulo the span of the short-edge rows.
//! Those images live in dimension k(n-2k-1), which keeps the per-facet linear
//! algebra small. Each stored ray is a primitive integer vector together with
//! the positive scale tying it back to the nominal matrix row, so dependence
//! coefficients can be converted back to nominal coordinates exactly.

use num_traits::{One, Signed, Zero};

use crate::linalg::{self, Int, Rat};
use crate::ngon::{facet_relevant_count, Gon, NgonError};
use crate::rigidity::{MatrixKind, RigidityMatrix};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("matrix rank {got} is below the required k(2n-2k-1) = {expected} (degenerate positions)")]
    RankDeficient { expected: usize, got: usize },
    #[error(transparent)]
    Ngon(#[from] NgonError),
}

/// Result of contracting rows modulo a pinned independent set.
pub struct Contraction {
    /// Primitive integer images in a coordinate subspace of the quotient.
    pub rays: Vec<Vec<Int>>,
    /// rays[i] = scales[i] * contracted(nominal row i); all scales positive.
    pub scales: Vec<Rat>,
    pub contracted_rank: usize,
    pub pinned_rank: usize,
}

/// Eliminates the pivot coordinates of `ech` from `v` fraction-freely,
/// gcd-reducing as it goes. Returns the positive rational factor `f` such
/// that the final `v` equals `f * v_original` modulo the row span of `ech`.
fn reduce_against(v: &mut [Int], ech: &[Vec<Int>], pivots: &[usize]) -> Rat {
    let mut factor = Rat::one();
    for (row, &p) in ech.iter().zip(pivots) {
        if v[p].is_zero() {
            continue;
        }
        let a = &row[p];
        let pos_a = a.abs();
        let b = if a.is_negative() { -v[p].clone() } else { v[p].clone() };
        for (x, r) in v.iter_mut().zip(row) {
            *x = &*x * &pos_a - &b * r;
        }
        debug_assert!(v[p].is_zero());
        factor *= Rat::from_integer(pos_a);
        let g = linalg::make_primitive(v);
        if !g.is_one() {
            factor /= Rat::from_integer(g);
        }
    }
    factor
}

/// Contracts the `rest` rows modulo the span of the `pinned` rows. The
/// `rest_scales` relate the integer inputs to nominal rational rows
/// (ints = scale * nominal) and are folded into the output scales.
pub fn contract(pinned: &[Vec<Int>], rest: &[Vec<Int>], rest_scales: &[Rat]) -> Contraction {
    let mut ech: Vec<Vec<Int>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in pinned {
        let mut v = row.clone();
        let _ = reduce_against(&mut v, &ech, &pivots);
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            ech.push(v);
            pivots.push(p);
        }
    }
    let pinned_rank = ech.len();

    let mut reduced: Vec<Vec<Int>> = Vec::with_capacity(rest.len());
    let mut scales: Vec<Rat> = Vec::with_capacity(rest.len());
    for (row, s0) in rest.iter().zip(rest_scales) {
        let mut v = row.clone();
        let f = reduce_against(&mut v, &ech, &pivots);
        reduced.push(v);
        scales.push(s0 * f);
    }

    // Coordinates where the span of the reduced rows projects isomorphically:
    // the pivot columns of their own echelon form.
    let mut span_ech: Vec<Vec<Int>> = Vec::new();
    let mut span_pivots: Vec<usize> = Vec::new();
    for row in &reduced {
        let mut v = row.clone();
        let _ = reduce_against(&mut v, &span_ech, &span_pivots);
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            span_ech.push(v);
            span_pivots.push(p);
        }
    }
    let mut cols = span_pivots.clone();
    cols.sort_unstable();
    let rays = reduced
        .iter()
        .map(|v| cols.iter().map(|&c| v[c].clone()).collect())
        .collect();
    Contraction { rays, scales, contracted_rank: span_ech.len(), pinned_rank }
}

/// The contracted configuration of a rigidity matrix for the (n, k) complex:
/// one primitive integer ray per relevant edge, in dimension k(n-2k-1).
pub struct ReducedEmbedding {
    pub kind: MatrixKind,
    pub d: usize,
    pub gon: Gon,
    /// rays[id] for relevant edge id (Gon ordering), each of length dim.
    pub rays: Vec<Vec<Int>>,
    /// Positive scales: rays[id] = scales[id] * contracted(nominal row).
    pub scales: Vec<Rat>,
    pub dim: usize,
}

impl ReducedEmbedding {
    /// Builds the contraction at the short edges, checking that the matrix
    /// has the full rank k(2n-2k-1) required for certification.
    pub fn new(matrix: &RigidityMatrix, k: usize) -> Result<ReducedEmbedding, EmbedError> {
        let n = matrix.n;
        let gon = Gon::new(n, k)?;
        let dim = facet_relevant_count(n, k);
        let short = crate::ngon::short_edges(n, k);
        let (short_rows, _) = matrix.rows_int(&short);
        let (rel_rows, rel_scales) = matrix.rows_int(&gon.relevant);
        let c = contract(&short_rows, &rel_rows, &rel_scales);
        let expected = crate::ngon::facet_edge_count(n, k);
        if c.pinned_rank != short.len() || c.contracted_rank != dim {
            return Err(EmbedError::RankDeficient {
                expected,
                got: c.pinned_rank + c.contracted_rank,
            });
        }
        Ok(ReducedEmbedding {
            kind: matrix.kind,
            d: matrix.d,
            gon,
            rays: c.rays,
            scales: c.scales,
            dim,
        })
    }

    pub fn ray(&self, id: usize) -> &[Int] {
        &self.rays[id]
    }

    /// Rows for a facet given by relevant-edge ids.
    pub fn facet_rows(&self, ids: &[u16]) -> Vec<Vec<Int>> {
        ids.iter().map(|&i| self.rays[i as usize].clone()).collect()
    }

    /// Converts dependence coefficients on the stored rays to coefficients on
    /// the nominal matrix rows (positive per-edge rescale).
    pub fn to_nominal_coeffs(&self, ids: &[u16], stored: &[Int]) -> Vec<Rat> {
        ids.iter()
            .zip(stored)
            .map(|(&id, c)| Rat::from_integer(c.clone()) * &self.scales[id as usize])
            .collect()
    }

    /// Largest bit size of any stored ray entry (diagnostics).
    pub fn max_entry_bits(&self) -> u64 {
        self.rays
            .iter()
            .flat_map(|r| r.iter())
            .map(|x| x.bits())
            .max()
            .unwrap_or(0)
    }
}
