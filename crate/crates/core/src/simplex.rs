//! Exact rational simplex for standard-form linear programs
//! min c.x s.t. Ax = b, x >= 0, with Bland's anti-cycling rule.
//!
//! Dense two-phase tableau over BigRational. Small by design: callers keep
//! the constraint count down (the polytope certifier feeds it working subsets
//! through delayed constraint generation). Returns exact primal and dual
//! solutions; the dual is what certificate extraction needs.

use num_traits::{One, Signed, Zero};

use crate::linalg::Rat;

#[derive(Debug, Clone)]
pub struct StandardLp {
    /// m x n constraint matrix.
    pub a: Vec<Vec<Rat>>,
    /// Right-hand side, length m.
    pub b: Vec<Rat>,
    /// Cost vector, length n.
    pub c: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct Solved {
    pub x: Vec<Rat>,
    pub objective: Rat,
    /// Dual multipliers u with u = c_B B^-1 (one per constraint row).
    pub dual: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub enum SimplexOutcome {
    Optimal(Solved),
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// rows m x (n + m artificials + 1 rhs)
    t: Vec<Vec<Rat>>,
    /// objective row, same width
    obj: Vec<Rat>,
    basis: Vec<usize>,
    m: usize,
    n: usize,
}

impl Tableau {
    fn width(&self) -> usize {
        self.n + self.m + 1
    }

    fn rhs_col(&self) -> usize {
        self.n + self.m
    }

    /// Recomputes the objective row for the given costs (length n + m).
    fn set_objective(&mut self, costs: &[Rat]) {
        let w = self.width();
        self.obj = costs.to_vec();
        self.obj.push(Rat::zero());
        debug_assert_eq!(self.obj.len(), w);
        for r in 0..self.m {
            let cb = costs[self.basis[r]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..w {
                let v = &self.t[r][j] * &cb;
                self.obj[j] = &self.obj[j] - &v;
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        debug_assert!(!p.is_zero());
        let w = self.width();
        for j in 0..w {
            self.t[row][j] = &self.t[row][j] / &p;
        }
        for r in 0..self.m {
            if r == row || self.t[r][col].is_zero() {
                continue;
            }
            let f = self.t[r][col].clone();
            for j in 0..w {
                let v = &self.t[row][j] * &f;
                self.t[r][j] = &self.t[r][j] - &v;
            }
        }
        if !self.obj[col].is_zero() {
            let f = self.obj[col].clone();
            for j in 0..w {
                let v = &self.t[row][j] * &f;
                self.obj[j] = &self.obj[j] - &v;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering = lowest-index eligible column with negative
    /// reduced cost; leaving = min ratio, ties broken by lowest basis index.
    /// `allowed` filters the candidate entering columns.
    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> Result<(), ()> {
        loop {
            let enter = (0..self.n + self.m)
                .find(|&j| allowed(j) && !self.basis.contains(&j) && self.obj[j].is_negative());
            let Some(col) = enter else {
                return Ok(());
            };
            let rhs = self.rhs_col();
            let mut leave: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for r in 0..self.m {
                if self.t[r][col].is_positive() {
                    let ratio = &self.t[r][rhs] / &self.t[r][col];
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b
                                || (ratio == *b
                                    && self.basis[r] < self.basis[leave.unwrap()])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        leave = Some(r);
                    }
                }
            }
            match leave {
                None => return Err(()), // unbounded
                Some(r) => self.pivot(r, col),
            }
        }
    }
}

/// Solves min c.x s.t. Ax = b, x >= 0 with the two-phase method.
pub fn solve(lp: &StandardLp) -> SimplexOutcome {
    let m = lp.a.len();
    let n = lp.c.len();
    debug_assert!(lp.a.iter().all(|r| r.len() == n));
    debug_assert_eq!(lp.b.len(), m);
    // Normalize rows so b >= 0, remembering signs for the dual.
    let mut row_sign = vec![Rat::one(); m];
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rat> = lp.a[i].clone();
        let mut rhs = lp.b[i].clone();
        if rhs.is_negative() {
            row_sign[i] = -Rat::one();
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
        }
        // artificial block
        for j in 0..m {
            row.push(if i == j { Rat::one() } else { Rat::zero() });
        }
        row.push(rhs);
        t.push(row);
    }
    let basis: Vec<usize> = (n..n + m).collect();
    let mut tab = Tableau { t, obj: Vec::new(), basis, m, n };

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rat::zero(); n + m];
    for c in phase1.iter_mut().skip(n) {
        *c = Rat::one();
    }
    tab.set_objective(&phase1);
    if tab.run(|_| true).is_err() {
        return SimplexOutcome::Unbounded; // cannot happen: phase 1 is bounded
    }
    let rhs = tab.rhs_col();
    let phase1_obj: Rat = (0..tab.m)
        .filter(|&r| tab.basis[r] >= n)
        .map(|r| tab.t[r][rhs].clone())
        .sum();
    if !phase1_obj.is_zero() {
        return SimplexOutcome::Infeasible;
    }
    // Drive artificials that remained basic (at value zero) out of the basis.
    // Rows where no real column can replace them are redundant and inert:
    // their real entries are all zero, so later pivots never touch them and
    // their dual multiplier is zero.
    for r in 0..m {
        if tab.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, j);
            }
        }
    }

    // Phase 2: artificials are barred from entering.
    let mut phase2 = vec![Rat::zero(); n + m];
    phase2[..n].clone_from_slice(&lp.c);
    tab.set_objective(&phase2);
    if tab.run(|j| j < n).is_err() {
        return SimplexOutcome::Unbounded;
    }

    let mut x = vec![Rat::zero(); n];
    for r in 0..m {
        if tab.basis[r] < n {
            x[tab.basis[r]] = tab.t[r][rhs].clone();
        }
    }
    let objective: Rat = lp.c.iter().zip(&x).map(|(c, v)| c * v).sum();
    // Dual from the artificial columns: reduced cost of artificial j is
    // 0 - u_j in phase 2, so u_j = -obj[n + j], corrected by the row sign.
    let dual: Vec<Rat> = (0..m)
        .map(|j| -&tab.obj[n + j] * &row_sign[j])
        .collect();
    SimplexOutcome::Optimal(Solved { x, objective, dual })
}

/// Feasibility of a strict homogeneous system: find x with row.x > 0 for all
/// rows, or a nonnegative certificate y, not all zero, with sum_i y_i row_i = 0.
///
/// Solved through the bounded program max s s.t. row.x >= s, s <= 1, whose
/// dual is min z s.t. sum y_i row_i = 0, sum y_i + z = 1, y, z >= 0. A zero
/// optimum yields the certificate with unit mass; a positive optimum yields
/// a strictly feasible x.
pub enum StrictOutcome {
    Feasible(Vec<Rat>),
    /// Certificate y (same indexing as the input rows, total mass 1).
    Certificate(Vec<Rat>),
}

pub fn strict_feasibility(rows: &[Vec<Rat>], dim: usize) -> StrictOutcome {
    let w = rows.len();
    // Standard form of the dual: variables y_1..y_w, z.
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(dim + 1);
    for r in 0..dim {
        let mut row: Vec<Rat> = rows.iter().map(|q| q[r].clone()).collect();
        row.push(Rat::zero());
        a.push(row);
    }
    let mut mass = vec![Rat::one(); w];
    mass.push(Rat::one());
    a.push(mass);
    let mut b = vec![Rat::zero(); dim];
    b.push(Rat::one());
    let mut c = vec![Rat::zero(); w];
    c.push(Rat::one());
    let lp = StandardLp { a, b, c };
    match solve(&lp) {
        SimplexOutcome::Optimal(sol) => {
            if sol.objective.is_zero() {
                StrictOutcome::Certificate(sol.x[..w].to_vec())
            } else {
                // x = -u on the first dim rows; margin = u on the mass row.
                let x: Vec<Rat> = sol.dual[..dim].iter().map(|u| -u.clone()).collect();
                debug_assert!(sol.dual[dim].is_positive());
                StrictOutcome::Feasible(x)
            }
        }
        // The dual is feasible (y = 0, z = 1) and bounded below by 0.
        SimplexOutcome::Infeasible | SimplexOutcome::Unbounded => {
            unreachable!("strict-feasibility dual is always feasible and bounded")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(x: i64) -> Rat {
        Rat::from_integer(BigInt::from(x))
    }

    #[test]
    fn solves_a_small_equality_lp() {
        // min -x1 - x2 s.t. x1 + x2 + s = 4, x1 + 3 x2 + t = 6; x >= 0.
        let lp = StandardLp {
            a: vec![vec![r(1), r(1), r(1), r(0)], vec![r(1), r(3), r(0), r(1)]],
            b: vec![r(4), r(6)],
            c: vec![r(-1), r(-1), r(0), r(0)],
        };
        match solve(&lp) {
            SimplexOutcome::Optimal(sol) => {
                assert_eq!(sol.objective, r(-4));
                // optimal face: x1 + x2 = 4
                assert_eq!(&sol.x[0] + &sol.x[1], r(4));
                assert!(sol.x.iter().all(|v| !v.is_negative()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        // x1 = 1 and x1 = 2.
        let lp = StandardLp {
            a: vec![vec![r(1)], vec![r(1)]],
            b: vec![r(1), r(2)],
            c: vec![r(0)],
        };
        assert!(matches!(solve(&lp), SimplexOutcome::Infeasible));
    }

    #[test]
    fn strict_feasibility_finds_point_or_certificate() {
        // x > 0 and x < 1 jointly (as x > 0, 1 - ... ) via rows (1), (-1):
        // infeasible strictly: y = (1/2, 1/2) certificate.
        match strict_feasibility(&[vec![r(1)], vec![r(-1)]], 1) {
            StrictOutcome::Certificate(y) => {
                assert_eq!(&y[0] + &y[1], r(1));
                assert_eq!(&y[0] - &y[1], r(0));
            }
            StrictOutcome::Feasible(_) => panic!("should be infeasible"),
        }
        // x > 0, 2x > 0: feasible.
        match strict_feasibility(&[vec![r(1)], vec![r(2)]], 1) {
            StrictOutcome::Feasible(x) => assert!(x[0].is_positive()),
            StrictOutcome::Certificate(_) => panic!("should be feasible"),
        }
        // planar: three half-planes with empty strict intersection.
        let rows = vec![vec![r(1), r(0)], vec![r(-1), r(-1)], vec![r(0), r(1)]];
        match strict_feasibility(&rows, 2) {
            StrictOutcome::Certificate(y) => {
                // sum y_i row_i = 0 exactly
                for c in 0..2 {
                    let s: Rat = rows.iter().zip(&y).map(|(row, yi)| &row[c] * yi).sum();
                    assert!(s.is_zero());
                }
                let mass: Rat = y.iter().sum();
                assert!(mass.is_one());
            }
            StrictOutcome::Feasible(x) => panic!("should be infeasible, got {x:?}"),
        }
    }
}
