//! Small dense linear programs solved by a two-phase simplex method with
//! Bland's anti-cycling rule.
//!
//! Problems are stated as
//!
//! ```text
//!     maximize     c·x
//!     subject to   a·x  = b   (equality rows)
//!                  a·x >= b   (inequality rows)
//!                  x   >= 0
//! ```
//!
//! Inequality rows get surplus variables internally. When the right-hand
//! side of an inequality row is nonpositive, its surplus variable doubles as
//! the initial basic variable, so artificial variables are only introduced
//! where actually needed. Bland's rule (lowest eligible index enters, lowest
//! basic variable index leaves among ratio ties) makes the pivot sequence,
//! and hence the returned basic solution, deterministic.

use thiserror::Error;

/// Pivot tolerance, distinct from domain-level comparison tolerances.
const EPS_PIVOT: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum LpError {
    #[error("constraint row has {found} coefficients, expected {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("problem must have at least one variable")]
    NoVariables,
}

/// One linear constraint `coeffs · x (= or >=) rhs`.
#[derive(Debug, Clone)]
pub struct LinearConstraint {
    pub coeffs: Vec<f64>,
    pub rhs: f64,
}

/// A linear program in the form described in the module docs.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub eq_constraints: Vec<LinearConstraint>,
    pub ineq_constraints: Vec<LinearConstraint>,
}

impl LpProblem {
    pub fn maximize(objective: Vec<f64>) -> LpProblem {
        LpProblem {
            objective,
            eq_constraints: Vec::new(),
            ineq_constraints: Vec::new(),
        }
    }

    pub fn eq(mut self, coeffs: Vec<f64>, rhs: f64) -> LpProblem {
        self.eq_constraints.push(LinearConstraint { coeffs, rhs });
        self
    }

    pub fn ge(mut self, coeffs: Vec<f64>, rhs: f64) -> LpProblem {
        self.ineq_constraints.push(LinearConstraint { coeffs, rhs });
        self
    }

    fn validate(&self) -> Result<(), LpError> {
        let n = self.objective.len();
        if n == 0 {
            return Err(LpError::NoVariables);
        }
        for c in self.eq_constraints.iter().chain(&self.ineq_constraints) {
            if c.coeffs.len() != n {
                return Err(LpError::RowLength {
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Values of the original variables (empty unless optimal).
    pub x: Vec<f64>,
    /// Objective value (0 unless optimal).
    pub value: f64,
}

impl LpSolution {
    fn non_optimal(status: LpStatus) -> LpSolution {
        LpSolution {
            status,
            x: Vec::new(),
            value: 0.0,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Indices of entries of a basic solution larger than `eps`, sorted.
pub fn vertex_support(x: &[f64], eps: f64) -> Vec<usize> {
    x.iter()
        .enumerate()
        .filter(|(_, &v)| v.abs() > eps)
        .map(|(i, _)| i)
        .collect()
}

struct Tableau {
    ncols: usize,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    obj: Vec<f64>,
    /// Entering threshold: reduced costs at or below this are treated as
    /// nonpositive. Scaled to the objective's magnitude by the caller.
    rc_tol: f64,
    /// Untouched copies of the constraint rows, used to rebuild the tableau
    /// from scratch under the current basis once the pivot loop converges.
    /// Indexed in step with `rows`.
    pristine_rows: Vec<Vec<f64>>,
    pristine_rhs: Vec<f64>,
    /// Reusable buffer holding the normalized pivot row during updates.
    scratch: Vec<f64>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= piv;
        }
        self.rhs[r] /= piv;
        self.scratch.clear();
        self.scratch.extend_from_slice(&self.rows[r]);
        let pivot_rhs = self.rhs[r];
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c];
            if f == 0.0 {
                continue;
            }
            for (v, s) in self.rows[i].iter_mut().zip(&self.scratch) {
                *v -= f * s;
            }
            self.rows[i][c] = 0.0;
            self.rhs[i] -= f * pivot_rhs;
        }
        let f = self.obj[c];
        if f != 0.0 {
            for (v, s) in self.obj.iter_mut().zip(&self.scratch) {
                *v -= f * s;
            }
            self.obj[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Bland's rule loop for maximization over columns `0..limit`.
    /// Returns false if the objective is unbounded above. When the caller
    /// knows the objective is bounded (phase 1 never exceeds zero), a
    /// column with no eligible pivot row can only be reduced-cost noise
    /// and is dropped instead.
    fn run_simplex(&mut self, limit: usize, bounded: bool) -> bool {
        loop {
            let entering = (0..limit).find(|&j| self.obj[j] > self.rc_tol);
            let Some(c) = entering else {
                return true;
            };
            // Two-pass ratio test: find the tightest ratio with a small
            // feasibility slack, then among rows within that bound pick the
            // largest pivot element (stability), breaking ties by the basic
            // variable's index. Each pivot can push a basic value below
            // zero by at most RATIO_SLACK, which the refactoring pass
            // cleans up again. Roundoff can leave a degenerate rhs
            // marginally negative; it is treated as zero in the ratios.
            const RATIO_SLACK: f64 = 1e-9;
            let mut bound = f64::INFINITY;
            for r in 0..self.rows.len() {
                let a = self.rows[r][c];
                if a > EPS_PIVOT {
                    bound = bound.min((self.rhs[r].max(0.0) + RATIO_SLACK) / a);
                }
            }
            if bound == f64::INFINITY {
                if bounded {
                    self.obj[c] = 0.0;
                    continue;
                }
                return false;
            }
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][c];
                if a > EPS_PIVOT && self.rhs[r].max(0.0) / a <= bound {
                    let better = match leave {
                        None => true,
                        Some((lr, la)) => a > la || (a == la && self.basis[r] < self.basis[lr]),
                    };
                    if better {
                        leave = Some((r, a));
                    }
                }
            }
            self.pivot(leave.expect("bound is finite, so some row qualifies").0, c);
        }
    }

    /// Prices the cost vector against the current tableau rows.
    fn price_out(&mut self, cost: &[f64]) {
        self.obj[..self.ncols].copy_from_slice(&cost[..self.ncols]);
        for r in 0..self.rows.len() {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for j in 0..self.ncols {
                    self.obj[j] -= cb * self.rows[r][j];
                }
            }
        }
        for &b in &self.basis {
            self.obj[b] = 0.0;
        }
    }

    /// Recomputes basic values and reduced costs from the pristine data
    /// under the current basis, discarding drift accumulated while
    /// pivoting. When a reduced cost survives (the drifted state stopped
    /// short of a true optimum), the tableau rows are also rebuilt so
    /// pivoting can continue. Returns `None` on a numerically singular
    /// basis, otherwise whether clean arithmetic confirms optimality.
    fn refresh(&mut self, cost: &[f64], limit: usize) -> Option<bool> {
        let m = self.rows.len();
        let basis_matrix: Vec<Vec<f64>> = (0..m)
            .map(|r| {
                self.basis
                    .iter()
                    .map(|&b| self.pristine_rows[r][b])
                    .collect()
            })
            .collect();
        let lu = Lu::factor(basis_matrix)?;

        let mut rhs = self.pristine_rhs.clone();
        lu.solve(&mut rhs);
        self.rhs = rhs;

        // Reduced costs via the dual vector: rc_j = c_j − λ·A_j.
        let mut lambda: Vec<f64> = (0..m).map(|r| cost[self.basis[r]]).collect();
        lu.solve_transpose(&mut lambda);
        for j in 0..self.ncols {
            let mut rc = cost[j];
            for r in 0..m {
                rc -= lambda[r] * self.pristine_rows[r][j];
            }
            self.obj[j] = rc;
        }
        for &b in &self.basis {
            self.obj[b] = 0.0;
        }
        if (0..limit).all(|j| self.obj[j] <= self.rc_tol) {
            return Some(true);
        }

        // Rebuild the rows column by column for further pivoting.
        let mut col = vec![0.0; m];
        for j in 0..self.ncols {
            for r in 0..m {
                col[r] = self.pristine_rows[r][j];
            }
            lu.solve(&mut col);
            for r in 0..m {
                self.rows[r][j] = col[r];
            }
        }
        for (r, &b) in self.basis.iter().enumerate() {
            for i in 0..m {
                self.rows[i][b] = if i == r { 1.0 } else { 0.0 };
            }
        }
        Some(false)
    }

    /// Pivots until no reduced cost survives a rebuild from pristine data,
    /// so the final basis is optimal with respect to clean arithmetic, not
    /// drifted values. Returns false on an unbounded objective.
    fn solve_phase(&mut self, cost: &[f64], limit: usize, bounded: bool) -> bool {
        self.price_out(cost);
        for _round in 0..20 {
            if !self.run_simplex(limit, bounded) {
                return false;
            }
            match self.refresh(cost, limit) {
                // Without a clean rebuild there is nothing to check against;
                // keep what the pivot loop reached.
                None => return true,
                Some(optimal) => {
                    if optimal {
                        return true;
                    }
                }
            }
        }
        true
    }
}

/// Dense LU factorization with partial pivoting, for the basis rebuilds.
struct Lu {
    m: usize,
    a: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut a: Vec<Vec<f64>>) -> Option<Lu> {
        let m = a.len();
        let mut perm: Vec<usize> = (0..m).collect();
        for k in 0..m {
            let piv = (k..m).max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap())?;
            if a[piv][k].abs() < 1e-12 {
                return None;
            }
            a.swap(k, piv);
            perm.swap(k, piv);
            let d = a[k][k];
            for i in k + 1..m {
                let f = a[i][k] / d;
                a[i][k] = f;
                if f != 0.0 {
                    for j in k + 1..m {
                        a[i][j] -= f * a[k][j];
                    }
                }
            }
        }
        Some(Lu { m, a, perm })
    }

    /// Solves B·x = v in place (v is permuted, forward- and
    /// back-substituted).
    fn solve(&self, v: &mut [f64]) {
        let m = self.m;
        let mut x: Vec<f64> = (0..m).map(|i| v[self.perm[i]]).collect();
        for i in 1..m {
            for k in 0..i {
                x[i] -= self.a[i][k] * x[k];
            }
        }
        for i in (0..m).rev() {
            for k in i + 1..m {
                x[i] -= self.a[i][k] * x[k];
            }
            x[i] /= self.a[i][i];
        }
        v.copy_from_slice(&x);
    }

    /// Solves Bᵀ·y = w in place.
    fn solve_transpose(&self, w: &mut [f64]) {
        let m = self.m;
        // Uᵀ z = w (forward), then Lᵀ s = z (backward), then un-permute.
        let mut z = w.to_vec();
        for i in 0..m {
            for k in 0..i {
                z[i] -= self.a[k][i] * z[k];
            }
            z[i] /= self.a[i][i];
        }
        for i in (0..m).rev() {
            for k in i + 1..m {
                z[i] -= self.a[k][i] * z[k];
            }
        }
        for i in 0..m {
            w[self.perm[i]] = z[i];
        }
    }
}

/// Solves the program, returning a basic optimal solution when one exists.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution, LpError> {
    p.validate()?;
    let nv = p.objective.len();
    let ns = p.ineq_constraints.len();
    let nrows = p.eq_constraints.len() + ns;

    // Columns: original variables, then surplus variables, then artificials.
    // The structural part of each row is equilibrated to unit max magnitude
    // so the pivot tolerance is meaningful regardless of the payoff scale;
    // surplus variables are measured in the scaled units (their coefficient
    // stays −1), which keeps the initial basis canonical.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(nrows);
    let mut rhs: Vec<f64> = Vec::with_capacity(nrows);
    let mut surplus_col: Vec<Option<usize>> = Vec::with_capacity(nrows);
    let scaled = |c: &LinearConstraint| -> (Vec<f64>, f64) {
        let scale = c.coeffs.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let mut row = vec![0.0; nv + ns];
        if scale > 0.0 {
            for (dst, src) in row.iter_mut().zip(&c.coeffs) {
                *dst = src / scale;
            }
            (row, c.rhs / scale)
        } else {
            (row, c.rhs)
        }
    };
    for c in &p.eq_constraints {
        let (row, b) = scaled(c);
        rows.push(row);
        rhs.push(b);
        surplus_col.push(None);
    }
    for (k, c) in p.ineq_constraints.iter().enumerate() {
        let (mut row, b) = scaled(c);
        row[nv + k] = -1.0;
        rows.push(row);
        rhs.push(b);
        surplus_col.push(Some(nv + k));
    }
    let rhs_scale = rhs.iter().fold(1.0_f64, |a, b| a.max(b.abs()));

    // Normalize right-hand sides to be nonnegative. A surplus column that
    // ends up with coefficient +1 can serve as the initial basic variable;
    // every other row gets an artificial.
    let mut basis = vec![usize::MAX; nrows];
    let mut artificial_rows = Vec::new();
    for r in 0..nrows {
        if rhs[r] < 0.0 {
            for v in rows[r].iter_mut() {
                *v = -*v;
            }
            rhs[r] = -rhs[r];
        }
        match surplus_col[r] {
            Some(sc) if rows[r][sc] > 0.0 => basis[r] = sc,
            _ => artificial_rows.push(r),
        }
    }
    let na = artificial_rows.len();
    let ncols = nv + ns + na;
    for (k, &r) in artificial_rows.iter().enumerate() {
        basis[r] = nv + ns + k;
    }
    for row in rows.iter_mut() {
        row.resize(ncols, 0.0);
    }
    for (k, &r) in artificial_rows.iter().enumerate() {
        rows[r][nv + ns + k] = 1.0;
    }

    let mut t = Tableau {
        ncols,
        pristine_rows: rows.clone(),
        pristine_rhs: rhs.clone(),
        rows,
        rhs,
        basis,
        obj: vec![0.0; ncols],
        rc_tol: EPS_PIVOT,
        scratch: Vec::with_capacity(ncols),
    };

    // Phase 1: maximize −Σ artificials.
    if na > 0 {
        let mut cost = vec![0.0; ncols];
        for j in nv + ns..ncols {
            cost[j] = -1.0;
        }
        t.rc_tol = EPS_PIVOT * (1.0 + nrows as f64);
        let phase1_bounded = t.solve_phase(&cost, nv + ns, true);
        debug_assert!(phase1_bounded, "phase 1 objective is bounded by 0");
        let infeasibility: f64 = t
            .basis
            .iter()
            .zip(&t.rhs)
            .filter(|(&b, _)| b >= nv + ns)
            .map(|(_, &v)| v.max(0.0))
            .sum();
        if infeasibility > 1e-8 * (1.0 + rhs_scale) {
            return Ok(LpSolution::non_optimal(LpStatus::Infeasible));
        }

        // Drive remaining zero-level artificials out of the basis; rows
        // where that is impossible are redundant and dropped (from the
        // pristine copies too, which mirror row order).
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= nv + ns {
                let col = (0..nv + ns)
                    .filter(|&j| t.rows[r][j].abs() > EPS_PIVOT)
                    .max_by(|&a, &b| t.rows[r][a].abs().partial_cmp(&t.rows[r][b].abs()).unwrap());
                match col {
                    Some(c) => t.pivot(r, c),
                    None => {
                        t.rows.swap_remove(r);
                        t.rhs.swap_remove(r);
                        t.basis.swap_remove(r);
                        t.pristine_rows.swap_remove(r);
                        t.pristine_rhs.swap_remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for row in t.rows.iter_mut().chain(t.pristine_rows.iter_mut()) {
            row.truncate(nv + ns);
        }
        t.ncols = nv + ns;
    }

    // Phase 2: the real objective.
    let mut cost = vec![0.0; t.ncols];
    cost[..nv].copy_from_slice(&p.objective);
    let obj_scale = p.objective.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
    t.rc_tol = EPS_PIVOT * obj_scale;
    if !t.solve_phase(&cost, t.ncols, false) {
        return Ok(LpSolution::non_optimal(LpStatus::Unbounded));
    }

    let mut x = vec![0.0; nv];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < nv {
            x[b] = t.rhs[r].max(0.0);
        }
    }
    let value = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_split() {
        let p = LpProblem::maximize(vec![1.0, 0.0]).eq(vec![1.0, 1.0], 1.0);
        let s = solve_lp(&p).unwrap();
        assert!(s.is_optimal());
        assert!((s.value - 1.0).abs() < 1e-9);
        assert!((s.x[0] - 1.0).abs() < 1e-9);
        assert!(s.x[1].abs() < 1e-9);
    }

    #[test]
    fn two_vertex_problem() {
        // Vertices (1, 0) and (0.5, 0.5); the objective picks (1, 0).
        let p = LpProblem::maximize(vec![3.0, 1.0])
            .eq(vec![1.0, 1.0], 1.0)
            .ge(vec![1.0, -1.0], 0.0);
        let s = solve_lp(&p).unwrap();
        assert!(s.is_optimal());
        assert!((s.value - 3.0).abs() < 1e-9);
        assert!((s.x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn contradiction_is_infeasible() {
        let p = LpProblem::maximize(vec![1.0, 0.0])
            .eq(vec![1.0, 1.0], 1.0)
            .ge(vec![-1.0, 0.0], 0.5);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let p = LpProblem::maximize(vec![1.0, 0.0]).ge(vec![1.0, -1.0], 0.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let p = LpProblem::maximize(vec![1.0, 2.0])
            .eq(vec![1.0, 1.0], 1.0)
            .eq(vec![2.0, 2.0], 2.0);
        let s = solve_lp(&p).unwrap();
        assert!(s.is_optimal());
        assert!((s.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_inequality() {
        // x1 - x2 >= -0.25 with x1 + x2 = 1; maximize x2.
        let p = LpProblem::maximize(vec![0.0, 1.0])
            .eq(vec![1.0, 1.0], 1.0)
            .ge(vec![1.0, -1.0], -0.25);
        let s = solve_lp(&p).unwrap();
        assert!(s.is_optimal());
        assert!((s.value - 0.625).abs() < 1e-9);
    }

    #[test]
    fn vertex_support_examples() {
        assert_eq!(vertex_support(&[1.0, 0.0, 0.0], 1e-9), vec![0]);
        assert_eq!(vertex_support(&[0.3, 0.0, 0.7], 1e-9), vec![0, 2]);
    }

    #[test]
    fn feasibility_of_returned_point() {
        let p = LpProblem::maximize(vec![1.0, 2.0, 0.5])
            .eq(vec![1.0, 1.0, 1.0], 1.0)
            .ge(vec![1.0, -1.0, 0.0], -0.5)
            .ge(vec![0.0, 1.0, -1.0], 0.0);
        let s = solve_lp(&p).unwrap();
        assert!(s.is_optimal());
        let dot = |c: &[f64]| c.iter().zip(&s.x).map(|(a, b)| a * b).sum::<f64>();
        assert!((dot(&[1.0, 1.0, 1.0]) - 1.0).abs() < 1e-8);
        assert!(dot(&[1.0, -1.0, 0.0]) >= -0.5 - 1e-8);
        assert!(dot(&[0.0, 1.0, -1.0]) >= -1e-8);
        assert!(s.x.iter().all(|&v| v >= -1e-9));
    }
}
