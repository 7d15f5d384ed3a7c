//! Combinatorics of the convex n-gon: edges, crossings, k-triangulations,
//! stars, bisectors, flips, codimension-two links, enumeration, and the k=2
//! flattening/inflation operations.
//!
//! Vertex indices are 1-based throughout. A k-triangulation is stored as its
//! sorted list of relevant edges (length >= k+1); the kn edges of length at
//! most k lie in every facet and are kept implicit.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::ops::ControlFlow;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum NgonError {
    #[error("invalid parameters: need n >= 2k+1 and k >= 1, got n={n}, k={k}")]
    InvalidParams { n: usize, k: usize },
    #[error("edge {0} is not relevant (length <= k)")]
    NotRelevant(Edge),
    #[error("edge {0} is not in the triangulation")]
    NotInTriangulation(Edge),
    #[error("the given edge pair does not leave a codimension-two face")]
    NotAFace,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("too many relevant edges for this build ({0} > 128)")]
    TooLarge(usize),
}

/// A diagonal {i, j} of the n-gon, kept canonical with i < j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub i: u16,
    pub j: u16,
}

impl Edge {
    pub fn new(a: u16, b: u16) -> Edge {
        assert!(a != b, "degenerate edge {{{a},{b}}}");
        if a < b {
            Edge { i: a, j: b }
        } else {
            Edge { i: b, j: a }
        }
    }

    /// Cyclic length: min(j-i, n-(j-i)), in [1, n/2].
    pub fn length(&self, n: usize) -> usize {
        let d = (self.j - self.i) as usize;
        d.min(n - d)
    }

    pub fn class(&self, n: usize, k: usize) -> EdgeClass {
        let l = self.length(n);
        if l < k {
            EdgeClass::Irrelevant
        } else if l == k {
            EdgeClass::Boundary
        } else {
            EdgeClass::Relevant
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{},{}}}", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    Irrelevant,
    Boundary,
    Relevant,
}

/// Whether two diagonals cross in the interior of the convex n-gon.
/// Edges sharing a vertex do not cross. Total function.
pub fn crossing(e: Edge, f: Edge) -> bool {
    let (i, j) = (e.i, e.j);
    let (k, l) = (f.i, f.j);
    (i < k && k < j && j < l) || (k < i && i < l && l < j)
}

/// All edges of the n-gon of length <= k (irrelevant + boundary), sorted.
pub fn short_edges(n: usize, k: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for i in 1..=n as u16 {
        for j in i + 1..=n as u16 {
            let e = Edge { i, j };
            if e.length(n) <= k {
                out.push(e);
            }
        }
    }
    out.sort();
    out
}

/// All relevant edges (length >= k+1), sorted lexicographically.
pub fn relevant_edges(n: usize, k: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for i in 1..=n as u16 {
        for j in i + 1..=n as u16 {
            let e = Edge { i, j };
            if e.length(n) >= k + 1 {
                out.push(e);
            }
        }
    }
    out.sort();
    out
}

/// Number of edges in every k-triangulation of the n-gon.
pub fn facet_edge_count(n: usize, k: usize) -> usize {
    k * (2 * n - 2 * k - 1)
}

/// Number of relevant edges in every k-triangulation (the reduced dimension).
pub fn facet_relevant_count(n: usize, k: usize) -> usize {
    k * (n - 2 * k - 1)
}

fn check_params(n: usize, k: usize) -> Result<(), NgonError> {
    if k == 0 || n < 2 * k + 1 {
        return Err(NgonError::InvalidParams { n, k });
    }
    Ok(())
}

/// n-th Catalan number.
pub fn catalan(m: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..m {
        c = c * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
    }
    c
}

/// The Hankel determinant det(C_{n-i-j})_{1<=i,j<=k} of Catalan numbers,
/// which counts the k-triangulations of the n-gon.
pub fn hankel_count(n: usize, k: usize) -> BigInt {
    let rows: Vec<Vec<BigInt>> = (1..=k)
        .map(|i| (1..=k).map(|j| catalan(n - i - j)).collect())
        .collect();
    crate::linalg::det(&rows)
}

/// Session-scoped combinatorics for one (n, k): relevant-edge indexing and a
/// precomputed crossing bit table, as used by the enumeration and the
/// certifier inner loops.
#[derive(Debug, Clone)]
pub struct Gon {
    pub n: usize,
    pub k: usize,
    pub relevant: Vec<Edge>,
    /// crossings[a] = bitmask over relevant-edge ids crossing edge a.
    crossings: Vec<u128>,
}

impl Gon {
    pub fn new(n: usize, k: usize) -> Result<Gon, NgonError> {
        check_params(n, k)?;
        let relevant = relevant_edges(n, k);
        if relevant.len() > 128 {
            return Err(NgonError::TooLarge(relevant.len()));
        }
        let m = relevant.len();
        let mut crossings = vec![0u128; m];
        for a in 0..m {
            for b in 0..m {
                if crossing(relevant[a], relevant[b]) {
                    crossings[a] |= 1u128 << b;
                }
            }
        }
        Ok(Gon { n, k, relevant, crossings })
    }

    pub fn edge_id(&self, e: Edge) -> Option<usize> {
        self.relevant.binary_search(&e).ok()
    }

    pub fn dim(&self) -> usize {
        facet_relevant_count(self.n, self.k)
    }

    /// Is there a set of `depth` mutually crossing edges inside `cands`?
    fn has_clique(&self, cands: u128, depth: usize) -> bool {
        if depth == 0 {
            return true;
        }
        if (cands.count_ones() as usize) < depth {
            return false;
        }
        let mut rest = cands;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // Cliques enumerated by increasing minimum element.
            if self.has_clique(rest & self.crossings[v], depth - 1) {
                return true;
            }
        }
        false
    }

    /// Would adding relevant edge `id` to the (k+1)-crossing-free set `mask`
    /// create a (k+1)-crossing?
    pub fn creates_crossing(&self, mask: u128, id: usize) -> bool {
        self.has_clique(mask & self.crossings[id], self.k)
    }

    pub fn mask_of(&self, edges: &[Edge]) -> u128 {
        let mut m = 0u128;
        for e in edges {
            let id = self.edge_id(*e).expect("relevant edge");
            m |= 1 << id;
        }
        m
    }

    /// Depth-first enumeration of all k-triangulations in lexicographic order
    /// on their sorted relevant-edge lists. `resume_after` skips everything up
    /// to and including the given relevant-edge list. The callback may stop
    /// the stream early. Returns the number of facets emitted.
    pub fn enumerate<F>(&self, resume_after: Option<&[Edge]>, mut f: F) -> u64
    where
        F: FnMut(&KTriangulation) -> ControlFlow<()>,
    {
        let target = self.dim();
        let m = self.relevant.len();
        let resume: Option<Vec<usize>> =
            resume_after.map(|es| es.iter().map(|e| self.edge_id(*e).expect("resume edge")).collect());
        let mut chosen: Vec<usize> = Vec::with_capacity(target);
        let mut count = 0u64;
        if target == 0 {
            // The unique facet has no relevant edges.
            if resume.is_none() {
                let t = KTriangulation { n: self.n, k: self.k, relevant: Vec::new() };
                let _ = f(&t);
                count = 1;
            }
            return count;
        }
        let _ = self.dfs(0, 0u128, target, m, &mut chosen, resume.as_deref(), &mut count, &mut f);
        count
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs<F>(
        &self,
        start: usize,
        mask: u128,
        target: usize,
        m: usize,
        chosen: &mut Vec<usize>,
        resume: Option<&[usize]>,
        count: &mut u64,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&KTriangulation) -> ControlFlow<()>,
    {
        let depth = chosen.len();
        // Lexicographic lower bound while resuming: if the edges chosen so far
        // equal a prefix of the checkpoint, the next edge must not fall below
        // the checkpoint's edge at this depth.
        let mut lo = start;
        let mut on_path = false;
        if let Some(r) = resume {
            if depth < r.len() && chosen[..] == r[..depth] {
                lo = lo.max(r[depth]);
                on_path = true;
            }
        }
        for id in lo..m {
            if m - id < target - depth {
                break;
            }
            if self.creates_crossing(mask, id) {
                continue;
            }
            chosen.push(id);
            if depth + 1 == target {
                // Skip the checkpoint facet itself.
                let is_checkpoint = on_path && resume.is_some_and(|r| chosen[..] == *r);
                if !is_checkpoint {
                    let t = KTriangulation {
                        n: self.n,
                        k: self.k,
                        relevant: chosen.iter().map(|&i| self.relevant[i]).collect(),
                    };
                    *count += 1;
                    if f(&t).is_break() {
                        chosen.pop();
                        return ControlFlow::Break(());
                    }
                }
            } else {
                let res = self.dfs(id + 1, mask | (1 << id), target, m, chosen, resume, count, f);
                if res.is_break() {
                    chosen.pop();
                    return ControlFlow::Break(());
                }
            }
            chosen.pop();
        }
        ControlFlow::Continue(())
    }

    /// Collects all facets (relevant-edge id lists) in lexicographic order.
    pub fn all_facets(&self) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        self.enumerate(None, |t| {
            out.push(
                t.relevant
                    .iter()
                    .map(|e| self.edge_id(*e).unwrap() as u16)
                    .collect(),
            );
            ControlFlow::Continue(())
        });
        out
    }

    /// The edge inserted by flipping relevant edge `id` out of the facet with
    /// relevant-edge mask `mask`: the unique other relevant edge completing
    /// the ridge to a facet.
    pub fn flip_target(&self, mask: u128, id: usize) -> Option<usize> {
        let ridge = mask & !(1 << id);
        (0..self.relevant.len())
            .find(|&g| g != id && ridge & (1 << g) == 0 && !self.creates_crossing(ridge, g))
    }

    /// Vertices of the link of the codimension-two face `ridge` (a facet mask
    /// minus two relevant edges): all relevant edges compatible with it.
    pub fn link_vertices(&self, ridge: u128) -> Vec<usize> {
        (0..self.relevant.len())
            .filter(|&g| ridge & (1 << g) == 0 && !self.creates_crossing(ridge, g))
            .collect()
    }
}

/// A maximal (k+1)-crossing-free edge set, stored by its relevant edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KTriangulation {
    pub n: usize,
    pub k: usize,
    /// Sorted relevant edges; irrelevant and boundary edges are implicit.
    pub relevant: Vec<Edge>,
}

impl KTriangulation {
    /// Builds from a relevant-edge list, checking it is a facet.
    pub fn new(n: usize, k: usize, mut relevant: Vec<Edge>) -> Result<Self, NgonError> {
        check_params(n, k)?;
        relevant.sort();
        relevant.dedup();
        for e in &relevant {
            if e.j as usize > n {
                return Err(NgonError::InvalidParams { n, k });
            }
            if e.class(n, k) != EdgeClass::Relevant {
                return Err(NgonError::NotRelevant(*e));
            }
        }
        let t = KTriangulation { n, k, relevant };
        if !t.is_crossing_free() {
            return Err(NgonError::PreconditionFailed(
                "edge set contains a (k+1)-crossing".into(),
            ));
        }
        if t.relevant.len() != facet_relevant_count(n, k) {
            return Err(NgonError::PreconditionFailed(format!(
                "expected {} relevant edges, got {}",
                facet_relevant_count(n, k),
                t.relevant.len()
            )));
        }
        Ok(t)
    }

    fn is_crossing_free(&self) -> bool {
        // No (k+1)-crossing among relevant edges (short edges cannot cross k+1 ways).
        let es = &self.relevant;
        fn extend(es: &[Edge], clique: &mut Vec<Edge>, from: usize, left: usize) -> bool {
            if left == 0 {
                return true;
            }
            for i in from..es.len() {
                if clique.iter().all(|c| crossing(*c, es[i])) {
                    clique.push(es[i]);
                    if extend(es, clique, i + 1, left - 1) {
                        return true;
                    }
                    clique.pop();
                }
            }
            false
        }
        !extend(es, &mut Vec::new(), 0, self.k + 1)
    }

    /// All edges of the facet: the kn short edges plus the relevant ones.
    pub fn all_edges(&self) -> Vec<Edge> {
        let mut out = short_edges(self.n, self.k);
        out.extend(self.relevant.iter().copied());
        out.sort();
        out
    }

    pub fn contains(&self, e: Edge) -> bool {
        e.length(self.n) <= self.k || self.relevant.binary_search(&e).is_ok()
    }

    /// The n-2k k-stars of the triangulation.
    pub fn stars(&self) -> Result<Vec<Star>, NgonError> {
        let n = self.n;
        let k = self.k;
        let mut stars = Vec::new();
        let mut subset: Vec<u16> = Vec::with_capacity(2 * k + 1);
        self.star_search(1, &mut subset, &mut stars);
        if stars.len() != n - 2 * k {
            return Err(NgonError::InternalInvariantViolation(format!(
                "found {} stars, expected {}",
                stars.len(),
                n - 2 * k
            )));
        }
        // Every relevant edge lies in exactly two stars, every boundary edge
        // in exactly one.
        let mut counts = std::collections::HashMap::new();
        for s in &stars {
            for e in s.edges() {
                *counts.entry(e).or_insert(0usize) += 1;
            }
        }
        for e in &self.relevant {
            if counts.get(e).copied().unwrap_or(0) != 2 {
                return Err(NgonError::InternalInvariantViolation(format!(
                    "relevant edge {e} lies in {} stars, expected 2",
                    counts.get(e).copied().unwrap_or(0)
                )));
            }
        }
        for e in short_edges(n, k) {
            if e.length(n) == k && counts.get(&e).copied().unwrap_or(0) != 1 {
                return Err(NgonError::InternalInvariantViolation(format!(
                    "boundary edge {e} lies in {} stars, expected 1",
                    counts.get(&e).copied().unwrap_or(0)
                )));
            }
        }
        Ok(stars)
    }

    fn star_search(&self, from: u16, subset: &mut Vec<u16>, out: &mut Vec<Star>) {
        let want = 2 * self.k + 1;
        if subset.len() == want {
            out.push(Star { vertices: subset.clone() });
            return;
        }
        let n = self.n as u16;
        for v in from..=n {
            if (n - v + 1) as usize + subset.len() < want {
                break;
            }
            subset.push(v);
            if self.star_prefix_ok(subset) {
                self.star_search(v + 1, subset, out);
            }
            subset.pop();
        }
    }

    /// Checks the star edges already determined by the chosen prefix. With
    /// vertices s_0..s_{2k} cyclically ordered, edge {s_a, s_{a+k}} is testable
    /// once both endpoints are chosen.
    fn star_prefix_ok(&self, subset: &[u16]) -> bool {
        let k = self.k;
        let len = subset.len();
        let want = 2 * k + 1;
        for a in 0..len {
            let b = (a + k) % want;
            if b < len {
                let e = Edge::new(subset[a], subset[b]);
                if !self.contains(e) {
                    return false;
                }
            }
        }
        true
    }

    /// The flip removing relevant edge `e`: finds the unique edge `f` (the
    /// common bisector of the two stars containing `e`) such that exchanging
    /// them yields another k-triangulation.
    pub fn flip(&self, e: Edge) -> Result<Flip, NgonError> {
        if e.class(self.n, self.k) != EdgeClass::Relevant {
            return Err(NgonError::NotRelevant(e));
        }
        if self.relevant.binary_search(&e).is_err() {
            return Err(NgonError::NotInTriangulation(e));
        }
        let ridge: Vec<Edge> = self.relevant.iter().copied().filter(|&g| g != e).collect();
        let mut inserted = None;
        for g in relevant_edges(self.n, self.k) {
            if g == e || ridge.binary_search(&g).is_ok() {
                continue;
            }
            let mut cand = ridge.clone();
            cand.push(g);
            cand.sort();
            let t = KTriangulation { n: self.n, k: self.k, relevant: cand };
            if t.is_crossing_free() {
                if inserted.is_some() {
                    return Err(NgonError::InternalInvariantViolation(format!(
                        "two completions of the ridge when flipping {e}"
                    )));
                }
                inserted = Some((g, t));
            }
        }
        let (ins, result) = inserted.ok_or_else(|| {
            NgonError::InternalInvariantViolation(format!("no completion when flipping {e}"))
        })?;
        Ok(Flip { source: self.clone(), removed: e, inserted: ins, result })
    }

    /// The elementary cycle with center T \ {e, f}: the link of the
    /// codimension-two face, as vertices in cyclic order and the facets
    /// between consecutive vertices.
    pub fn elementary_cycle(&self, e: Edge, f: Edge) -> Result<ElementaryCycle, NgonError> {
        if e == f {
            return Err(NgonError::NotAFace);
        }
        for x in [e, f] {
            if x.class(self.n, self.k) != EdgeClass::Relevant {
                return Err(NgonError::NotRelevant(x));
            }
            if self.relevant.binary_search(&x).is_err() {
                return Err(NgonError::NotInTriangulation(x));
            }
        }
        let center: Vec<Edge> =
            self.relevant.iter().copied().filter(|&g| g != e && g != f).collect();
        let mut verts: Vec<Edge> = Vec::new();
        for g in relevant_edges(self.n, self.k) {
            if center.binary_search(&g).is_ok() {
                continue;
            }
            let mut cand = center.clone();
            cand.push(g);
            cand.sort();
            let t = KTriangulation { n: self.n, k: self.k, relevant: cand };
            if t.is_crossing_free() {
                verts.push(g);
            }
        }
        cycle_from_vertices(self, &center, &verts)
    }

    /// The (unique) k-triangulation whose relevant edges are the relevant
    /// members of the complete bipartite graph [1,k] x [k+1,n].
    pub fn greedy(n: usize, k: usize) -> Result<KTriangulation, NgonError> {
        check_params(n, k)?;
        let mut relevant = Vec::new();
        for i in 1..=k as u16 {
            for j in (k as u16 + 1)..=(n as u16) {
                let e = Edge::new(i, j);
                if e.class(n, k) == EdgeClass::Relevant {
                    relevant.push(e);
                }
            }
        }
        KTriangulation::new(n, k, relevant)
    }

    /// Number of length-3 edges; meaningful for k = 2.
    pub fn ear_count(&self) -> usize {
        self.relevant.iter().filter(|e| e.length(self.n) == 3).count()
    }
}

/// A k-star: 2k+1 cyclically ordered vertices, edges connecting positions k apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Star {
    /// Vertices in increasing (= cyclic) order.
    pub vertices: Vec<u16>,
}

impl Star {
    pub fn edges(&self) -> Vec<Edge> {
        let m = self.vertices.len();
        let k = (m - 1) / 2;
        (0..m)
            .map(|a| Edge::new(self.vertices[a], self.vertices[(a + k) % m]))
            .collect()
    }

    /// External: has three consecutive vertices of the n-gon (equivalently,
    /// uses a boundary edge).
    pub fn is_external(&self, n: usize) -> bool {
        self.consecutive_runs(n).iter().any(|&r| r >= 3)
    }

    /// Doubly external: four consecutive vertices.
    pub fn is_doubly_external(&self, n: usize) -> bool {
        self.consecutive_runs(n).iter().any(|&r| r >= 4)
    }

    fn consecutive_runs(&self, n: usize) -> Vec<usize> {
        let vs = &self.vertices;
        let m = vs.len();
        let step_one =
            |a: usize, b: usize| (vs[b] as usize + n - vs[a] as usize) % n == 1;
        // Start at a run boundary; if there is none the whole vertex set is
        // one cyclic run (only possible when the star uses every vertex).
        let start = (0..m).find(|&a| !step_one((a + m - 1) % m, a)).unwrap_or(0);
        let mut runs = Vec::new();
        let mut run = 1usize;
        for off in 1..=m {
            let a = (start + off - 1) % m;
            let b = (start + off) % m;
            if off < m && step_one(a, b) {
                run += 1;
            } else {
                runs.push(run);
                run = 1;
            }
        }
        runs
    }
}

/// A flip: exchange of a relevant edge for the common bisector of the two
/// stars containing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flip {
    pub source: KTriangulation,
    pub removed: Edge,
    pub inserted: Edge,
    pub result: KTriangulation,
}

/// The link of a codimension-two face: a cycle of 3, 4 or 5 relevant edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementaryCycle {
    /// Relevant edges of the center (the codimension-two face).
    pub center: Vec<Edge>,
    /// Cycle vertices in cyclic order, starting at the lexicographically
    /// smallest and moving toward its smaller neighbor.
    pub vertices: Vec<Edge>,
    /// facets[i] = center + {vertices[i], vertices[i+1 mod len]}.
    pub facets: Vec<KTriangulation>,
}

fn cycle_from_vertices(
    t: &KTriangulation,
    center: &[Edge],
    verts: &[Edge],
) -> Result<ElementaryCycle, NgonError> {
    let len = verts.len();
    if !(3..=5).contains(&len) {
        return Err(NgonError::NotAFace);
    }
    let compatible = |a: Edge, b: Edge| -> bool {
        let mut cand: Vec<Edge> = center.to_vec();
        cand.push(a);
        cand.push(b);
        cand.sort();
        KTriangulation { n: t.n, k: t.k, relevant: cand }.is_crossing_free()
    };
    // Adjacency graph on the vertices must be a single cycle.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); len];
    for a in 0..len {
        for b in a + 1..len {
            if compatible(verts[a], verts[b]) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    if adj.iter().any(|nb| nb.len() != 2) {
        return Err(NgonError::NotAFace);
    }
    // Walk from the lexicographically smallest vertex toward its smaller neighbor.
    let start = 0; // verts is sorted
    let first = adj[start][0].min(adj[start][1]);
    let mut order = vec![start, first];
    while order.len() < len {
        let cur = *order.last().unwrap();
        let prev = order[order.len() - 2];
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        order.push(next);
    }
    // A single cycle visits every vertex.
    let seen: BTreeSet<usize> = order.iter().copied().collect();
    if seen.len() != len {
        return Err(NgonError::NotAFace);
    }
    let vertices: Vec<Edge> = order.iter().map(|&i| verts[i]).collect();
    let facets = (0..len)
        .map(|i| {
            let mut cand = center.to_vec();
            cand.push(vertices[i]);
            cand.push(vertices[(i + 1) % len]);
            cand.sort();
            KTriangulation { n: t.n, k: t.k, relevant: cand }
        })
        .collect();
    Ok(ElementaryCycle { center: center.to_vec(), vertices, facets })
}

/// Result of flattening a boundary edge in a 2-triangulation: the smaller
/// triangulation is given in the rotated frame where the removed vertex was
/// n+1, together with the data needed to invert the operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flattening {
    /// 2-triangulation of the n-gon, in the rotated frame.
    pub result: KTriangulation,
    /// The external 2-crossing {{n,b},{1,c}} replacing the star.
    pub crossing: (Edge, Edge),
    /// Rotation applied to the original labels: x -> ((x - 1 + rotation) mod (n+1)) + 1.
    pub rotation: u16,
    pub b: u16,
    pub c: u16,
}

impl KTriangulation {
    /// Flattening of a boundary edge (k = 2 only): removes the middle vertex
    /// of the unique star on the boundary edge, producing a 2-triangulation
    /// of the n-gon from one of the (n+1)-gon.
    pub fn flatten(&self, boundary: Edge) -> Result<Flattening, NgonError> {
        if self.k != 2 {
            return Err(NgonError::PreconditionFailed("flattening requires k = 2".into()));
        }
        let n1 = self.n; // n + 1 vertices here
        if boundary.length(n1) != 2 {
            return Err(NgonError::PreconditionFailed(format!(
                "edge {boundary} is not a boundary edge (length 2)"
            )));
        }
        let n = n1 - 1;
        // Middle vertex of the boundary edge's short side.
        let v = if (boundary.j - boundary.i) as usize == 2 {
            boundary.i + 1
        } else {
            // wraps around: {i, j} with j - i = n1 - 2; middle is j + 1 (mod).
            (boundary.j % n1 as u16) + 1
        };
        // Rotate labels so v -> n+1 = n1.
        let rot = |x: u16| -> u16 { ((x as usize + n1 - v as usize + n1 - 1) % n1 + 1) as u16 };
        let rotation = ((2 * n1 - v as usize) % n1) as u16;
        let rotated: Vec<Edge> =
            self.relevant.iter().map(|e| Edge::new(rot(e.i), rot(e.j))).collect();
        let rt = KTriangulation { n: n1, k: 2, relevant: { let mut r = rotated; r.sort(); r } };
        // The unique star on the boundary edge {n, 1}; its vertices are
        // {1, b, c, n, n+1} with 1 < b < c < n.
        let star = rt
            .stars()?
            .into_iter()
            .find(|s| s.edges().contains(&Edge::new(n as u16, 1)))
            .ok_or_else(|| {
                NgonError::PreconditionFailed("no star on the boundary edge".into())
            })?;
        let inner: Vec<u16> = star
            .vertices
            .iter()
            .copied()
            .filter(|&x| x != 1 && x != n as u16 && x != n1 as u16)
            .collect();
        if inner.len() != 2 || !star.vertices.contains(&(n1 as u16)) {
            return Err(NgonError::PreconditionFailed(
                "the star on the boundary edge is not external".into(),
            ));
        }
        let (b, c) = (inner[0], inner[1]);
        let star_edges: BTreeSet<Edge> = star.edges().into_iter().collect();
        let mut relevant: Vec<Edge> = Vec::new();
        let mut push_if_relevant = |e: Edge| {
            if e.class(n, 2) == EdgeClass::Relevant {
                relevant.push(e);
            }
        };
        push_if_relevant(Edge::new(n as u16, b));
        push_if_relevant(Edge::new(1, c));
        for &e in &rt.relevant {
            if star_edges.contains(&e) {
                continue;
            }
            let img = if e.j == n1 as u16 {
                let i = e.i;
                if i < b {
                    Edge::new(i, n as u16)
                } else if i > c {
                    Edge::new(1, i)
                } else {
                    return Err(NgonError::InternalInvariantViolation(format!(
                        "edge {e} incompatible with the external star"
                    )));
                }
            } else {
                e
            };
            push_if_relevant(img);
        }
        let result = KTriangulation::new(n, 2, relevant)?;
        Ok(Flattening {
            result,
            crossing: (Edge::new(n as u16, b), Edge::new(1, c)),
            rotation,
            b,
            c,
        })
    }

    /// Inflation of an external 2-crossing {{n,b},{1,c}} (k = 2 only):
    /// inserts vertex n+1, inverting [`flatten`] in the rotated frame.
    pub fn inflate(&self, b: u16, c: u16) -> Result<KTriangulation, NgonError> {
        if self.k != 2 {
            return Err(NgonError::PreconditionFailed("inflation requires k = 2".into()));
        }
        let n = self.n;
        let n1 = n + 1;
        if !(1 < b && b < c && (c as usize) < n) {
            return Err(NgonError::PreconditionFailed(format!(
                "need 1 < b < c < n for the crossing, got b={b}, c={c}"
            )));
        }
        for e in [Edge::new(n as u16, b), Edge::new(1, c)] {
            if !self.contains(e) {
                return Err(NgonError::PreconditionFailed(format!(
                    "crossing edge {e} is not in the triangulation"
                )));
            }
        }
        let cross_pair = [Edge::new(n as u16, b), Edge::new(1, c)];
        let mut relevant: Vec<Edge> = Vec::new();
        let mut push_if_relevant = |e: Edge| {
            if e.class(n1, 2) == EdgeClass::Relevant {
                relevant.push(e);
            }
        };
        // The inflated star {1, b, c, n, n+1} contributes its five edges.
        let star = Star { vertices: vec![1, b, c, n as u16, n1 as u16] };
        for e in star.edges() {
            push_if_relevant(e);
        }
        for &e in &self.relevant {
            if cross_pair.contains(&e) {
                continue;
            }
            let img = if e.j == n as u16 && e.i < b {
                Edge::new(e.i, n1 as u16)
            } else if e.i == 1 && e.j > c {
                Edge::new(e.j, n1 as u16)
            } else {
                e
            };
            push_if_relevant(img);
        }
        KTriangulation::new(n1, 2, relevant)
    }

    /// Applies the rotation x -> ((x - 1 + r) mod n) + 1 to all edges.
    pub fn rotated(&self, r: u16) -> KTriangulation {
        let n = self.n as u16;
        let rot = |x: u16| ((x - 1 + r) % n) + 1;
        let mut relevant: Vec<Edge> =
            self.relevant.iter().map(|e| Edge::new(rot(e.i), rot(e.j))).collect();
        relevant.sort();
        KTriangulation { n: self.n, k: self.k, relevant }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_examples() {
        assert!(crossing(Edge::new(1, 4), Edge::new(2, 6)));
        assert!(!crossing(Edge::new(1, 4), Edge::new(4, 6)));
        assert!(!crossing(Edge::new(1, 4), Edge::new(5, 8)));
        // symmetry
        assert!(crossing(Edge::new(2, 6), Edge::new(1, 4)));
    }

    #[test]
    fn edge_lengths_and_classes() {
        let e = Edge::new(1, 8);
        assert_eq!(e.length(8), 1);
        assert_eq!(Edge::new(2, 6).length(8), 4);
        assert_eq!(Edge::new(1, 3).class(8, 2), EdgeClass::Boundary);
        assert_eq!(Edge::new(1, 2).class(8, 2), EdgeClass::Irrelevant);
        assert_eq!(Edge::new(1, 4).class(8, 2), EdgeClass::Relevant);
    }

    #[test]
    fn pentagon_has_five_triangulations() {
        let gon = Gon::new(5, 1).unwrap();
        let mut count = 0;
        gon.enumerate(None, |t| {
            assert_eq!(t.relevant.len(), 2);
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 5);
        assert_eq!(hankel_count(5, 1), BigInt::from(5));
    }

    #[test]
    fn hexagon_count_matches_brute_force_oracle() {
        // Brute force over all subsets of relevant edges: the maximal
        // 3-crossing-free sets. This is the independent oracle; the DFS
        // enumerator and the Hankel determinant must agree with it.
        let rel = relevant_edges(6, 2);
        assert_eq!(rel.len(), 3);
        let mut maximal = Vec::new();
        for mask in 0u32..(1 << rel.len()) {
            let set: Vec<Edge> =
                (0..rel.len()).filter(|&i| mask & (1 << i) != 0).map(|i| rel[i]).collect();
            let ok = |s: &[Edge]| {
                // 3-crossing-free: no three mutually crossing
                for a in 0..s.len() {
                    for b in a + 1..s.len() {
                        for c in b + 1..s.len() {
                            if crossing(s[a], s[b]) && crossing(s[a], s[c]) && crossing(s[b], s[c])
                            {
                                return false;
                            }
                        }
                    }
                }
                true
            };
            if !ok(&set) {
                continue;
            }
            let maximal_set = rel.iter().all(|&g| {
                set.contains(&g) || {
                    let mut bigger = set.clone();
                    bigger.push(g);
                    !ok(&bigger)
                }
            });
            if maximal_set {
                maximal.push(set);
            }
        }
        let gon = Gon::new(6, 2).unwrap();
        let count = gon.enumerate(None, |_| ControlFlow::Continue(()));
        assert_eq!(count as usize, maximal.len());
        assert_eq!(BigInt::from(count), hankel_count(6, 2));
        assert_eq!(count, 3);
    }

    #[test]
    fn octagon_count_matches_hankel() {
        let gon = Gon::new(8, 2).unwrap();
        let count = gon.enumerate(None, |_| ControlFlow::Continue(()));
        assert_eq!(BigInt::from(count), hankel_count(8, 2));
        assert_eq!(count, 84);
    }

    #[test]
    fn facet_sizes() {
        let gon = Gon::new(8, 2).unwrap();
        gon.enumerate(None, |t| {
            assert_eq!(t.relevant.len(), facet_relevant_count(8, 2));
            assert_eq!(t.all_edges().len(), facet_edge_count(8, 2));
            ControlFlow::Continue(())
        });
    }

    #[test]
    fn stars_of_hexagon_and_pentagon() {
        let gon = Gon::new(6, 2).unwrap();
        gon.enumerate(None, |t| {
            assert_eq!(t.stars().unwrap().len(), 2);
            ControlFlow::Continue(())
        });
        let gon = Gon::new(5, 1).unwrap();
        gon.enumerate(None, |t| {
            assert_eq!(t.stars().unwrap().len(), 3);
            ControlFlow::Continue(())
        });
    }

    #[test]
    fn stars_cover_edges_for_2_8() {
        let gon = Gon::new(8, 2).unwrap();
        gon.enumerate(None, |t| {
            // stars() itself checks the 2x/1x coverage invariants.
            assert_eq!(t.stars().unwrap().len(), 4);
            ControlFlow::Continue(())
        });
    }

    #[test]
    fn pentagon_flip_exchanges_quadrilateral_diagonal() {
        let t = KTriangulation::new(5, 1, vec![Edge::new(1, 3), Edge::new(1, 4)]).unwrap();
        let f = t.flip(Edge::new(1, 3)).unwrap();
        assert_eq!(f.inserted, Edge::new(2, 4));
        // involution
        let back = f.result.flip(Edge::new(2, 4)).unwrap();
        assert_eq!(back.result, t);
        assert_eq!(back.inserted, Edge::new(1, 3));
    }

    #[test]
    fn flip_errors() {
        let t = KTriangulation::greedy(8, 2).unwrap();
        assert!(matches!(t.flip(Edge::new(1, 2)), Err(NgonError::NotRelevant(_))));
        let missing = relevant_edges(8, 2)
            .into_iter()
            .find(|e| !t.contains(*e))
            .unwrap();
        assert!(matches!(t.flip(missing), Err(NgonError::NotInTriangulation(_))));
    }

    #[test]
    fn every_2_8_facet_has_six_flips() {
        let gon = Gon::new(8, 2).unwrap();
        gon.enumerate(None, |t| {
            for &e in &t.relevant {
                let f = t.flip(e).unwrap();
                assert_eq!(f.result.relevant.len(), 6);
            }
            assert_eq!(t.relevant.len(), 6);
            ControlFlow::Continue(())
        });
    }

    #[test]
    fn greedy_triangulations() {
        let t = KTriangulation::greedy(5, 1).unwrap();
        assert_eq!(t.relevant, vec![Edge::new(1, 3), Edge::new(1, 4)]);
        let t = KTriangulation::greedy(8, 2).unwrap();
        assert_eq!(t.relevant.len(), 6);
        assert!(t.relevant.iter().all(|e| e.i <= 2));
        let t = KTriangulation::greedy(10, 3).unwrap();
        assert_eq!(t.relevant.len(), 9);
        assert!(t.relevant.iter().all(|e| e.i <= 3 && e.j >= 4));
    }

    #[test]
    fn seven_gon_elementary_cycles_match_known_links() {
        // Collect all distinct codimension-two links of the (2,7) complex and
        // look up the three known vertex sets.
        let gon = Gon::new(7, 2).unwrap();
        let mut cycles: Vec<ElementaryCycle> = Vec::new();
        gon.enumerate(None, |t| {
            for a in 0..t.relevant.len() {
                for b in a + 1..t.relevant.len() {
                    let c = t.elementary_cycle(t.relevant[a], t.relevant[b]).unwrap();
                    assert!((3..=5).contains(&c.vertices.len()));
                    if !cycles.iter().any(|d| d.center == c.center) {
                        cycles.push(c);
                    }
                }
            }
            ControlFlow::Continue(())
        });
        let vset = |es: &[(u16, u16)]| -> BTreeSet<Edge> {
            es.iter().map(|&(a, b)| Edge::new(a, b)).collect()
        };
        let find = |want: &BTreeSet<Edge>| -> Option<&ElementaryCycle> {
            cycles
                .iter()
                .find(|c| c.vertices.iter().copied().collect::<BTreeSet<_>>() == *want)
        };
        let tri = vset(&[(1, 5), (2, 6), (4, 7)]);
        let c3 = find(&tri).expect("triangle link");
        assert_eq!(c3.vertices.len(), 3);

        let quad = vset(&[(1, 5), (2, 5), (3, 6), (4, 7)]);
        let c4 = find(&quad).expect("quadrilateral link");
        assert_eq!(c4.vertices.len(), 4);
        // The two commuting flips interleave: 25 and 36 sit across the cycle.
        let pos_of = |e: Edge| c4.vertices.iter().position(|&v| v == e).unwrap();
        assert_eq!((pos_of(Edge::new(2, 5)) + 2) % 4, pos_of(Edge::new(3, 6)));

        let pent = vset(&[(2, 5), (2, 6), (3, 6), (3, 7), (4, 7)]);
        let c5 = find(&pent).expect("pentagon link");
        assert_eq!(c5.vertices.len(), 5);
        let expect = [(2, 5), (2, 6), (3, 6), (3, 7), (4, 7)];
        let ring: Vec<Edge> = c5.vertices.clone();
        let pos = ring.iter().position(|&e| e == Edge::new(2, 5)).unwrap();
        let fwd: Vec<Edge> = (0..5).map(|i| ring[(pos + i) % 5]).collect();
        let bwd: Vec<Edge> = (0..5).map(|i| ring[(pos + 5 - i) % 5]).collect();
        let want: Vec<Edge> = expect.iter().map(|&(a, b)| Edge::new(a, b)).collect();
        assert!(fwd == want || bwd == want, "cycle order {ring:?}");
    }

    #[test]
    fn resume_reproduces_remaining_stream() {
        let gon = Gon::new(8, 2).unwrap();
        let mut all = Vec::new();
        gon.enumerate(None, |t| {
            all.push(t.clone());
            ControlFlow::Continue(())
        });
        let cut = 30;
        let mut rest = Vec::new();
        gon.enumerate(Some(&all[cut - 1].relevant), |t| {
            rest.push(t.clone());
            ControlFlow::Continue(())
        });
        assert_eq!(&all[cut..], &rest[..]);
    }

    #[test]
    fn lexicographic_emission_order() {
        let gon = Gon::new(7, 2).unwrap();
        let mut prev: Option<Vec<Edge>> = None;
        gon.enumerate(None, |t| {
            if let Some(p) = &prev {
                assert!(p < &t.relevant);
            }
            prev = Some(t.relevant.clone());
            ControlFlow::Continue(())
        });
    }

    #[test]
    fn flatten_inflate_round_trip_small() {
        // Every boundary edge of every 2-triangulation, for n+1 in {6,...,9}.
        for n1 in 6..=9usize {
            let gon = Gon::new(n1, 2).unwrap();
            gon.enumerate(None, |t| {
                for i in 1..=n1 as u16 {
                    let j = ((i as usize + 1) % n1 + 1) as u16;
                    let e = Edge::new(i, j);
                    assert_eq!(e.length(n1), 2);
                    let flat = t.flatten(e).unwrap();
                    let back = flat.result.inflate(flat.b, flat.c).unwrap();
                    let original_rotated = t.rotated(flat.rotation);
                    assert_eq!(back, original_rotated, "n1={n1} e={e}");
                }
                ControlFlow::Continue(())
            });
        }
    }

    #[test]
    fn doubly_external_inflation_is_vertex_4_split() {
        // Inflating a doubly external crossing {{n,b},{1,n-1}} splits vertex n
        // into n and n+1 with exactly three common neighbors.
        let n = 7usize;
        let gon = Gon::new(n, 2).unwrap();
        let mut checked = 0;
        gon.enumerate(None, |t| {
            for b in 2..(n as u16 - 1) {
                let c = n as u16 - 1;
                if b >= c {
                    continue;
                }
                if t.contains(Edge::new(n as u16, b)) && t.contains(Edge::new(1, c)) {
                    if let Ok(t1) = t.inflate(b, c) {
                        let neighbors = |tt: &KTriangulation, v: u16| -> BTreeSet<u16> {
                            let nn = tt.n as u16;
                            (1..=nn)
                                .filter(|&u| u != v && tt.contains(Edge::new(u, v)))
                                .collect()
                        };
                        let nb_n = neighbors(&t1, n as u16);
                        let nb_n1 = neighbors(&t1, (n + 1) as u16);
                        assert!(nb_n1.contains(&(n as u16)));
                        let common: BTreeSet<u16> =
                            nb_n.intersection(&nb_n1).copied().collect();
                        assert_eq!(common.len(), 3, "t={t:?} b={b}");
                        // Contracting {n, n+1} recovers the original edge set.
                        let mut contracted: BTreeSet<Edge> = BTreeSet::new();
                        for e in t1.all_edges() {
                            let m = |x: u16| if x == (n + 1) as u16 { n as u16 } else { x };
                            if m(e.i) != m(e.j) {
                                contracted.insert(Edge::new(m(e.i), m(e.j)));
                            }
                        }
                        let orig: BTreeSet<Edge> = t.all_edges().into_iter().collect();
                        assert_eq!(contracted, orig);
                        checked += 1;
                    }
                }
            }
            ControlFlow::Continue(())
        });
        assert!(checked > 0);
    }

    // For n <= 6 every relevant edge is a diameter and the ear count
    // degenerates; the identity holds from n = 7 on.
    #[test]
    fn ears_equal_internal_stars_plus_four() {
        for n in 7..=9usize {
            let gon = Gon::new(n, 2).unwrap();
            gon.enumerate(None, |t| {
                let stars = t.stars().unwrap();
                let internal = stars.iter().filter(|s| !s.is_external(n)).count();
                assert_eq!(t.ear_count(), internal + 4, "n={n} t={t:?}");
                ControlFlow::Continue(())
            });
        }
    }

    #[test]
    fn monotonicity_2_7_to_2_8() {
        // Facets of the (2,8) complex containing B_8 = {{1,6},{2,7}}, with
        // B_8 removed, are exactly the facets of the (2,7) complex.
        let b8 = [Edge::new(1, 6), Edge::new(2, 7)];
        let gon8 = Gon::new(8, 2).unwrap();
        let mut restricted: BTreeSet<Vec<Edge>> = BTreeSet::new();
        gon8.enumerate(None, |t| {
            if b8.iter().all(|e| t.contains(*e)) {
                restricted.insert(
                    t.relevant.iter().copied().filter(|e| !b8.contains(e)).collect(),
                );
            }
            ControlFlow::Continue(())
        });
        let gon7 = Gon::new(7, 2).unwrap();
        let mut facets7: BTreeSet<Vec<Edge>> = BTreeSet::new();
        gon7.enumerate(None, |t| {
            facets7.insert(t.relevant.clone());
            ControlFlow::Continue(())
        });
        assert_eq!(restricted, facets7);
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(Gon::new(4, 2).is_err());
        assert!(Gon::new(6, 0).is_err());
    }
}
