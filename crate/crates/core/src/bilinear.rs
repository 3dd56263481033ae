//! Constant-time solver for simple 2×2 bilinear programs:
//!
//! ```text
//!     maximize     xᵀA y + xᵀc + yᵀc'
//!     subject to   xᵀB y >= d1
//!                  x1 + x2 = d2
//!                  y1 + y2 = d3
//!                  x, y >= 0
//! ```
//!
//! Substituting x2 = d2 − x1 and y2 = d3 − y1 reduces the program to two
//! variables. With
//!
//! ```text
//!     g1 = a11−a12−a21+a22        g4 = b11−b12−b21+b22
//!     g2 = (a12−a22)d3 + c1−c2    g5 = (b12−b22)d3
//!     g3 = (a21−a22)d2 + c1'−c2'  g6 = (b21−b22)d2
//!                                 g7 = b22·d2·d3 − d1
//! ```
//!
//! the objective becomes f(x1,y1) = g1·x1y1 + g2·x1 + g3·y1 plus the
//! constant a22·d2·d3 + c2·d2 + c2'·d3, and the constraint becomes
//! p(y1)·x1 + q(y1) >= 0 with p = g4·y1 + g5 and q = g6·y1 + g7. For fixed
//! y1 the feasible x1 form a single interval (possibly empty), and f is
//! linear in x1, so the optimum over x1 sits at an interval endpoint.
//!
//! The sign of p, the position of the endpoint −q/p relative to [0, d2],
//! and the sign of ∂f/∂x1 = g1·y1 + g2 partition [0, d3] into eight cases.
//! Six of them fix x1 at 0 or d2, leaving a linear function of y1; the two
//! where x1 rides the constraint boundary −q(y1)/p(y1) leave a rational
//! function whose stationary points are roots of a quadratic. The solver
//! collects every case-interval endpoint, those quadratic roots, and the
//! p-sign switching point as candidate y1 values, evaluates both feasible
//! x1 endpoints at each, and returns the best feasible candidate. Strict
//! case inequalities are relaxed to closed ones, so boundary points land in
//! every adjacent candidate set; spurious candidates are removed by the
//! final feasibility check rather than by case bookkeeping.
//!
//! Returned objective values include the additive constant, i.e. they are
//! true values of the original program.

/// Tolerance band for classifying p(y1) as zero and for the final
/// feasibility check, scaled by the problem's magnitude.
const EPS_CASE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearProblem2x2 {
    pub a: [[f64; 2]; 2],
    pub b: [[f64; 2]; 2],
    pub c: [f64; 2],
    pub c_prime: [f64; 2],
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl BilinearProblem2x2 {
    /// A program over probability vectors (d2 = d3 = 1) without linear terms.
    pub fn probability(a: [[f64; 2]; 2], b: [[f64; 2]; 2], d1: f64) -> BilinearProblem2x2 {
        BilinearProblem2x2 {
            a,
            b,
            c: [0.0, 0.0],
            c_prime: [0.0, 0.0],
            d1,
            d2: 1.0,
            d3: 1.0,
        }
    }

    /// Objective value at (x, y), including all linear terms.
    pub fn objective(&self, x: [f64; 2], y: [f64; 2]) -> f64 {
        let mut v = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                v += x[i] * self.a[i][j] * y[j];
            }
        }
        v + x[0] * self.c[0] + x[1] * self.c[1] + y[0] * self.c_prime[0] + y[1] * self.c_prime[1]
    }

    /// Left-hand side of the bilinear constraint at (x, y).
    pub fn constraint(&self, x: [f64; 2], y: [f64; 2]) -> f64 {
        let mut v = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                v += x[i] * self.b[i][j] * y[j];
            }
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BilinearStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearSolution {
    pub status: BilinearStatus,
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub value: f64,
}

impl BilinearSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == BilinearStatus::Optimal
    }
}

#[derive(Debug, Clone, Copy)]
struct Reduced {
    g1: f64,
    g2: f64,
    g3: f64,
    g4: f64,
    g5: f64,
    g6: f64,
    g7: f64,
    d2: f64,
    d3: f64,
    constant: f64,
    /// Magnitude bound for the constraint expression, for tolerance scaling.
    scale: f64,
}

impl Reduced {
    fn new(p: &BilinearProblem2x2) -> Reduced {
        let a = &p.a;
        let b = &p.b;
        let (d2, d3) = (p.d2, p.d3);
        let g4 = b[0][0] - b[0][1] - b[1][0] + b[1][1];
        let g5 = (b[0][1] - b[1][1]) * d3;
        let g6 = (b[1][0] - b[1][1]) * d2;
        let g7 = b[1][1] * d2 * d3 - p.d1;
        Reduced {
            g1: a[0][0] - a[0][1] - a[1][0] + a[1][1],
            g2: (a[0][1] - a[1][1]) * d3 + p.c[0] - p.c[1],
            g3: (a[1][0] - a[1][1]) * d2 + p.c_prime[0] - p.c_prime[1],
            g4,
            g5,
            g6,
            g7,
            d2,
            d3,
            constant: a[1][1] * d2 * d3 + p.c[1] * d2 + p.c_prime[1] * d3,
            scale: 1.0 + g4.abs() * d2 * d3 + g5.abs() * d2 + g6.abs() * d3 + g7.abs(),
        }
    }

    fn p(&self, y1: f64) -> f64 {
        self.g4 * y1 + self.g5
    }

    fn q(&self, y1: f64) -> f64 {
        self.g6 * y1 + self.g7
    }

    fn objective(&self, x1: f64, y1: f64) -> f64 {
        self.g1 * x1 * y1 + self.g2 * x1 + self.g3 * y1
    }

    fn constraint_slack(&self, x1: f64, y1: f64) -> f64 {
        self.p(y1) * x1 + self.q(y1)
    }

    /// Feasible x1 interval for a fixed y1, per the four-way sign table on
    /// p(y1). Nonemptiness is decided on the division-free slack at the
    /// easy endpoint (x1 = d2 for p > 0, x1 = 0 for p < 0), so boundary
    /// candidates where −q/p rounds just past the box survive.
    fn x_interval(&self, y1: f64) -> Option<(f64, f64)> {
        let p = self.p(y1);
        let q = self.q(y1);
        let band = EPS_CASE * self.scale;
        if p.abs() <= band {
            if q >= -band {
                Some((0.0, self.d2))
            } else {
                None
            }
        } else if p > 0.0 {
            // x1 >= -q/p; feasible iff the slack at x1 = d2 is nonnegative.
            if p * self.d2 + q >= -band {
                Some(((-q / p).clamp(0.0, self.d2), self.d2))
            } else {
                None
            }
        } else {
            // x1 <= -q/p; feasible iff the slack at x1 = 0 is nonnegative.
            if q >= -band {
                Some((0.0, (-q / p).clamp(0.0, self.d2)))
            } else {
                None
            }
        }
    }
}

/// Feasible x1 values Ψ(y1) of the reduced program at a fixed y1, as a
/// closed interval or nothing.
pub fn feasibility_interval(p: &BilinearProblem2x2, y1: f64) -> Option<(f64, f64)> {
    Reduced::new(p).x_interval(y1)
}

#[derive(Clone, Copy, PartialEq)]
enum Rel {
    Ge,
    Le,
}

/// Intersects conditions `coef·y + cons REL 0` with [0, d3].
fn intersect(conds: &[(f64, f64, Rel)], d3: f64, band: f64) -> Option<(f64, f64)> {
    let mut lo = 0.0_f64;
    let mut hi = d3;
    for &(coef, cons, rel) in conds {
        let (a, b) = match rel {
            Rel::Ge => (coef, cons),
            Rel::Le => (-coef, -cons),
        };
        // now require a·y + b >= 0
        if a > 0.0 {
            lo = lo.max(-b / a);
        } else if a < 0.0 {
            hi = hi.min(-b / a);
        } else if b < -band {
            return None;
        }
    }
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// Roots of c2·y² + c1·y + c0 = 0 via the numerically stable quadratic
/// formula; near-zero leading coefficients fall back to the linear root.
fn real_roots(c2: f64, c1: f64, c0: f64, out: &mut Candidates) {
    let lead_scale = c2.abs().max(c1.abs()).max(c0.abs());
    if lead_scale == 0.0 {
        return;
    }
    if c2.abs() <= 1e-14 * lead_scale {
        if c1 != 0.0 {
            out.push(-c0 / c1);
        }
        return;
    }
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc < 0.0 {
        return;
    }
    let sq = disc.sqrt();
    // q-form avoids cancellation between -c1 and ±sq.
    let qf = -0.5 * (c1 + c1.signum() * sq);
    if qf != 0.0 {
        out.push(qf / c2);
        out.push(c0 / qf);
    } else {
        out.push(0.0);
    }
}

struct Candidates {
    items: [f64; 40],
    len: usize,
}

impl Candidates {
    fn new() -> Candidates {
        Candidates {
            items: [0.0; 40],
            len: 0,
        }
    }

    fn push(&mut self, v: f64) {
        if v.is_finite() && self.len < self.items.len() {
            self.items[self.len] = v;
            self.len += 1;
        }
    }

    fn as_slice(&self) -> &[f64] {
        &self.items[..self.len]
    }
}

/// Solves the program by the eight-case reduction described in the module
/// docs. The returned value is the true objective, constant term included.
pub fn solve_bilinear_2x2(p: &BilinearProblem2x2) -> BilinearSolution {
    debug_assert!(p.d2 > 0.0 && p.d3 > 0.0);
    let r = Reduced::new(p);
    let band = EPS_CASE * r.scale;

    // Stationary points of f(−q(y)/p(y), y); the derivative numerator is a
    // quadratic in y.
    let mut boundary_roots = Candidates::new();
    real_roots(
        -r.g1 * r.g4 * r.g6 + r.g3 * r.g4 * r.g4,
        2.0 * r.g5 * (r.g3 * r.g4 - r.g1 * r.g6),
        -r.g5 * (r.g1 * r.g7 + r.g2 * r.g6) + r.g4 * r.g2 * r.g7 + r.g3 * r.g5 * r.g5,
        &mut boundary_roots,
    );

    let mut cands = Candidates::new();
    cands.push(0.0);
    cands.push(r.d3);
    if r.g4 != 0.0 {
        cands.push(-r.g5 / r.g4); // sign switch of p(y)
    }

    let pp = (r.g4, r.g5); // p(y) as (coef, cons)
    let qq = (r.g6, r.g7); // q(y)
    let dd = (r.d2 * r.g4 + r.g6, r.d2 * r.g5 + r.g7); // d2·p(y) + q(y)
    let de = (r.g1, r.g2); // ∂f/∂x1
    let cond = |lin: (f64, f64), rel: Rel| (lin.0, lin.1, rel);
    let pad = (0.0, 0.0, Rel::Ge); // vacuous filler for three-condition cases
    type Case = ([(f64, f64, Rel); 4], bool);
    let cases: [Case; 6] = [
        // p > 0 branch: Q1 (x=d2), Q2 (x=0), Q3 (boundary)
        (
            [cond(pp, Rel::Ge), cond(dd, Rel::Ge), cond(de, Rel::Ge), pad],
            false,
        ),
        (
            [cond(pp, Rel::Ge), cond(qq, Rel::Ge), cond(de, Rel::Le), pad],
            false,
        ),
        (
            [
                cond(pp, Rel::Ge),
                cond(qq, Rel::Le),
                cond(dd, Rel::Ge),
                cond(de, Rel::Le),
            ],
            true,
        ),
        // p < 0 branch: Q4 (x=d2), Q5 (boundary), Q6 (x=0)
        (
            [cond(pp, Rel::Le), cond(dd, Rel::Ge), cond(de, Rel::Ge), pad],
            false,
        ),
        (
            [
                cond(pp, Rel::Le),
                cond(qq, Rel::Ge),
                cond(dd, Rel::Le),
                cond(de, Rel::Ge),
            ],
            true,
        ),
        (
            [cond(pp, Rel::Le), cond(qq, Rel::Ge), cond(de, Rel::Le), pad],
            false,
        ),
    ];
    for (conds, rational) in cases {
        if let Some((lo, hi)) = intersect(&conds, r.d3, band) {
            cands.push(lo);
            cands.push(hi);
            if rational {
                for &root in boundary_roots.as_slice() {
                    if root >= lo && root <= hi {
                        cands.push(root);
                    }
                }
            }
        }
    }
    // p = 0 branch: Q7 (x=d2) and Q8 (x=0) share the conditions q >= 0,
    // y in [0, d3]; their interval endpoints matter only when p vanishes
    // identically, otherwise the switching point candidate covers them.
    if r.g4 == 0.0 && r.g5.abs() <= band {
        if let Some((lo, hi)) = intersect(&[(qq.0, qq.1, Rel::Ge)], r.d3, band) {
            cands.push(lo);
            cands.push(hi);
        }
        // f(d2, y) and f(0, y) are linear in y; endpoints already pushed.
    }

    let mut best: Option<(f64, f64, f64)> = None;
    for &y in cands.as_slice() {
        if !(0.0..=r.d3).contains(&y) {
            continue;
        }
        let Some((xlo, xhi)) = r.x_interval(y) else {
            continue;
        };
        for x in [xlo, xhi] {
            if r.constraint_slack(x, y) < -band {
                continue;
            }
            let v = r.objective(x, y);
            let better = match best {
                None => true,
                Some((bv, _, _)) => v > bv,
            };
            if better {
                best = Some((v, x, y));
            }
        }
    }

    match best {
        Some((v, x1, y1)) => BilinearSolution {
            status: BilinearStatus::Optimal,
            x: [x1, r.d2 - x1],
            y: [y1, r.d3 - y1],
            value: v + r.constant,
        },
        None => BilinearSolution {
            status: BilinearStatus::Infeasible,
            x: [0.0, 0.0],
            y: [0.0, 0.0],
            value: f64::NEG_INFINITY,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_objective_corner() {
        let p = BilinearProblem2x2::probability(
            [[1.0, 0.0], [0.0, 1.0]],
            [[1.0, 0.0], [0.0, 1.0]],
            0.0,
        );
        let s = solve_bilinear_2x2(&p);
        assert!(s.is_optimal());
        assert!((s.value - 1.0).abs() < 1e-9);
        // The max sits at (1,0)/(1,0) or (0,1)/(0,1).
        assert!((s.x[0] - s.y[0]).abs() < 1e-9);
    }

    #[test]
    fn vacuous_constraint_pure_linear() {
        // Objective 5·x1; constraint xᵀ1y = d2·d3 = 1 >= 1 always holds.
        let p = BilinearProblem2x2 {
            a: [[0.0, 0.0], [0.0, 0.0]],
            b: [[1.0, 1.0], [1.0, 1.0]],
            c: [5.0, 0.0],
            c_prime: [0.0, 0.0],
            d1: 1.0,
            d2: 1.0,
            d3: 1.0,
        };
        let s = solve_bilinear_2x2(&p);
        assert!(s.is_optimal());
        assert!((s.value - 5.0).abs() < 1e-9);
        assert!((s.x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_when_constraint_unreachable() {
        let p = BilinearProblem2x2::probability(
            [[1.0, 0.0], [0.0, 1.0]],
            [[0.0, 0.0], [0.0, 0.0]],
            1.0,
        );
        let s = solve_bilinear_2x2(&p);
        assert_eq!(s.status, BilinearStatus::Infeasible);
    }

    #[test]
    fn constraint_independent_of_x() {
        // Duplicated constraint rows make p(y) vanish identically, so the
        // whole decision rides on q(y): here 2·y1 >= 1. The objective
        // rewards x1·y2, so the optimum is x1 = 1 with y1 at its minimum.
        let p = BilinearProblem2x2::probability(
            [[0.0, 1.0], [0.0, 0.0]],
            [[2.0, 0.0], [2.0, 0.0]],
            1.0,
        );
        let s = solve_bilinear_2x2(&p);
        assert!(s.is_optimal());
        assert!((s.value - 0.5).abs() < 1e-9);
        assert!((s.x[0] - 1.0).abs() < 1e-9);
        assert!((s.y[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn feasibility_interval_cases() {
        // p(y) = 0 everywhere, q(y) = 1: full interval.
        let vac = BilinearProblem2x2::probability([[0.0; 2]; 2], [[0.0; 2]; 2], -1.0);
        assert_eq!(feasibility_interval(&vac, 0.5), Some((0.0, 1.0)));
        // p(y) = 0 everywhere, q(y) = -1: empty.
        let infeas = BilinearProblem2x2::probability([[0.0; 2]; 2], [[0.0; 2]; 2], 1.0);
        assert_eq!(feasibility_interval(&infeas, 0.5), None);
    }

    #[test]
    fn feasibility_interval_binding() {
        // B = I, d1 = 0.5: at y1 = 1 the constraint reads x1 >= 0.5.
        let p = BilinearProblem2x2::probability([[0.0; 2]; 2], [[1.0, 0.0], [0.0, 1.0]], 0.5);
        let (lo, hi) = feasibility_interval(&p, 1.0).unwrap();
        assert!((lo - 0.5).abs() < 1e-12);
        assert!((hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constraint_boundary_optimum() {
        // The example worked out by hand: objective from the payoff matrix
        // [[3,0],[5,1]] with constraint matrix [[3,5],[0,1]] and threshold 1
        // has its maximum 13/3 at x = (1/3, 2/3), y = (1, 0).
        let p = BilinearProblem2x2::probability(
            [[3.0, 0.0], [5.0, 1.0]],
            [[3.0, 5.0], [0.0, 1.0]],
            1.0,
        );
        let s = solve_bilinear_2x2(&p);
        assert!(s.is_optimal());
        assert!((s.value - 13.0 / 3.0).abs() < 1e-9);
        assert!((s.x[0] - 1.0 / 3.0).abs() < 1e-9);
        assert!((s.y[0] - 1.0).abs() < 1e-9);
        assert!(p.constraint(s.x, s.y) >= p.d1 - 1e-9);
    }

    #[test]
    fn additive_shift_moves_value_by_t_d2() {
        let p = BilinearProblem2x2 {
            a: [[1.0, -2.0], [0.5, 3.0]],
            b: [[0.5, 1.0], [-1.0, 2.0]],
            c: [0.3, -0.7],
            c_prime: [1.1, 0.2],
            d1: 0.4,
            d2: 1.0,
            d3: 1.0,
        };
        let base = solve_bilinear_2x2(&p);
        let t = 2.75;
        let mut shifted = p;
        shifted.c = [p.c[0] + t, p.c[1] + t];
        let s = solve_bilinear_2x2(&shifted);
        assert!((s.value - base.value - t * p.d2).abs() < 1e-9);
    }
}
