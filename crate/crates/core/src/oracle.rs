//! Brute-force grid-search references for validating the LP and bilinear
//! solvers on small instances. These deliberately share no code with the
//! production solvers (utilities are recomputed with plain loops here) and
//! are only meant for tests and acceptance runs. Grid values lower-bound
//! the true optima, with the gap shrinking as the grid refines.

use crate::bilinear::BilinearProblem2x2;
use crate::game::{Game, Player};
use crate::solvers::best_utility;

/// Grid resolution and the largest support size enumerated.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub k: usize,
    pub max_support: u8,
}

impl GridSpec {
    pub fn new(k: usize, max_support: u8) -> GridSpec {
        assert!(k >= 1, "grid must have at least one subdivision");
        assert!(
            max_support == 1 || max_support == 2,
            "only supports of size 1 or 2 are enumerated"
        );
        GridSpec { k, max_support }
    }
}

/// A grid strategy: weight `w` on `a1`, the rest on `a2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridStrategy {
    pub a1: usize,
    pub a2: usize,
    pub w: f64,
}

fn grid_strategies(actions: usize, spec: &GridSpec) -> Vec<GridStrategy> {
    let mut out = Vec::new();
    for a in 0..actions {
        out.push(GridStrategy {
            a1: a,
            a2: a,
            w: 1.0,
        });
    }
    if spec.max_support == 2 {
        for a1 in 0..actions {
            for a2 in a1 + 1..actions {
                for t in 1..spec.k {
                    out.push(GridStrategy {
                        a1,
                        a2,
                        w: t as f64 / spec.k as f64,
                    });
                }
            }
        }
    }
    out
}

fn pay(g: &Game, player: Player, own: usize, other: usize) -> f64 {
    match player {
        Player::One => g.payoff(Player::One, own, other),
        Player::Two => g.payoff(Player::Two, other, own),
    }
}

fn opp_pay(g: &Game, player: Player, own: usize, other: usize) -> f64 {
    pay(g, player.other(), other, own)
}

/// Brute-force counterpart of [`best_utility`]: for each grid strategy of
/// the player, find the opponent's exact pure best-response set and take
/// the best response (for the player) within it.
pub fn oracle_bu(g: &Game, player: Player, spec: &GridSpec) -> f64 {
    oracle_bu_witness(g, player, spec).0
}

/// Like [`oracle_bu`], but also reports the achieving strategy and the
/// opponent reply, so tests can confirm the value is attained.
pub fn oracle_bu_witness(g: &Game, player: Player, spec: &GridSpec) -> (f64, GridStrategy, usize) {
    let eps = crate::game::DEFAULT_EPS;
    let opp = g.actions(player.other());
    let mut best = f64::NEG_INFINITY;
    let mut witness = (
        GridStrategy {
            a1: 0,
            a2: 0,
            w: 1.0,
        },
        0,
    );
    for s in grid_strategies(g.actions(player), spec) {
        let mut opp_best = f64::NEG_INFINITY;
        for t in 0..opp {
            let v = s.w * opp_pay(g, player, s.a1, t) + (1.0 - s.w) * opp_pay(g, player, s.a2, t);
            if v > opp_best {
                opp_best = v;
            }
        }
        for t in 0..opp {
            let theirs =
                s.w * opp_pay(g, player, s.a1, t) + (1.0 - s.w) * opp_pay(g, player, s.a2, t);
            if theirs < opp_best - eps {
                continue;
            }
            let mine = s.w * pay(g, player, s.a1, t) + (1.0 - s.w) * pay(g, player, s.a2, t);
            if mine > best {
                best = mine;
                witness = (s, t);
            }
        }
    }
    (best, witness.0, witness.1)
}

/// Grid maximum of min(U_1(s) − BU_1, U_2(s) − BU_2) over profile pairs
/// with supports of at most `max_support`. The BU terms use the exact LP
/// computation; only the profile search is gridded.
pub fn oracle_mpce_alpha(g: &Game, spec: &GridSpec) -> f64 {
    oracle_mpce_alpha_witness(g, spec).0
}

pub fn oracle_mpce_alpha_witness(g: &Game, spec: &GridSpec) -> (f64, GridStrategy, GridStrategy) {
    let bu1 = best_utility(g, Player::One);
    let bu2 = best_utility(g, Player::Two);
    let rows = grid_strategies(g.rows(), spec);
    let cols = grid_strategies(g.cols(), spec);
    let mut best = f64::NEG_INFINITY;
    let mut witness = (rows[0], cols[0]);
    for &r in &rows {
        for &c in &cols {
            let mut u1 = 0.0;
            let mut u2 = 0.0;
            for (pi, i) in [(r.w, r.a1), (1.0 - r.w, r.a2)] {
                for (pj, j) in [(c.w, c.a1), (1.0 - c.w, c.a2)] {
                    u1 += pi * pj * g.u1(i, j);
                    u2 += pi * pj * g.u2(i, j);
                }
            }
            let f = (u1 - bu1).min(u2 - bu2);
            if f > best {
                best = f;
                witness = (r, c);
            }
        }
    }
    (best, witness.0, witness.1)
}

/// Grid maximum of the true bilinear objective over feasible grid points,
/// or `None` when no grid point satisfies the constraint.
pub fn oracle_bilinear(p: &BilinearProblem2x2, k: usize) -> Option<f64> {
    oracle_bilinear_witness(p, k).map(|(v, _, _)| v)
}

pub fn oracle_bilinear_witness(
    p: &BilinearProblem2x2,
    k: usize,
) -> Option<(f64, [f64; 2], [f64; 2])> {
    assert!(k >= 1);
    let mut best: Option<(f64, [f64; 2], [f64; 2])> = None;
    for i in 0..=k {
        let x1 = p.d2 * i as f64 / k as f64;
        let x = [x1, p.d2 - x1];
        for j in 0..=k {
            let y1 = p.d3 * j as f64 / k as f64;
            let y = [y1, p.d3 - y1];
            let lhs = x[0] * (p.b[0][0] * y[0] + p.b[0][1] * y[1])
                + x[1] * (p.b[1][0] * y[0] + p.b[1][1] * y[1]);
            if lhs < p.d1 {
                continue;
            }
            let v = x[0] * (p.a[0][0] * y[0] + p.a[0][1] * y[1])
                + x[1] * (p.a[1][0] * y[0] + p.a[1][1] * y[1])
                + x[0] * p.c[0]
                + x[1] * p.c[1]
                + y[0] * p.c_prime[0]
                + y[1] * p.c_prime[1];
            if best.is_none_or(|(bv, _, _)| v > bv) {
                best = Some((v, x, y));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games;

    #[test]
    fn pd_oracle_bu_is_one() {
        let g = games::prisoners();
        let spec = GridSpec::new(10, 2);
        assert!((oracle_bu(&g, Player::One, &spec) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_cell_game_bu_is_its_payoff() {
        let g = crate::game::Game::new(vec![vec![4.5]], vec![vec![-2.0]]).unwrap();
        let spec = GridSpec::new(5, 2);
        assert!((oracle_bu(&g, Player::One, &spec) - 4.5).abs() < 1e-12);
        assert!((oracle_bu(&g, Player::Two, &spec) + 2.0).abs() < 1e-12);
    }

    #[test]
    fn short_centipede_oracle_tracks_exact_bu() {
        let g = games::centipede(4).unwrap();
        let spec = GridSpec::new(400, 2);
        let exact = best_utility(&g, Player::One);
        let approx = oracle_bu(&g, Player::One, &spec);
        assert!(approx <= exact + 1e-9);
        assert!(
            (approx - exact).abs() < 5e-2,
            "approx={approx} exact={exact}"
        );
    }

    #[test]
    fn pd_oracle_alpha_is_two() {
        let g = games::prisoners();
        let spec = GridSpec::new(10, 2);
        assert!((oracle_mpce_alpha(&g, &spec) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn coarse_bargaining_oracle_alpha() {
        let g = games::bargaining(100, 25).unwrap();
        let spec = GridSpec::new(4, 2);
        assert!((oracle_mpce_alpha(&g, &spec) + 50.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_bilinear_grid_is_empty() {
        let p = BilinearProblem2x2::probability([[0.0; 2]; 2], [[0.0; 2]; 2], 1.0);
        assert!(oracle_bilinear(&p, 10).is_none());
    }

    #[test]
    fn oracle_values_monotone_in_k() {
        let g = games::coordination(2.0, 0.5).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for k in [5, 10, 20, 40] {
            let v = oracle_mpce_alpha(&g, &GridSpec::new(k, 2));
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn oracle_soundness_value_is_attained() {
        let g = games::coordination(1.5, 0.5).unwrap();
        let spec = GridSpec::new(7, 2);
        let (v, r, c) = oracle_mpce_alpha_witness(&g, &spec);
        let bu1 = best_utility(&g, Player::One);
        let bu2 = best_utility(&g, Player::Two);
        let mut u1 = 0.0;
        let mut u2 = 0.0;
        for (pi, i) in [(r.w, r.a1), (1.0 - r.w, r.a2)] {
            for (pj, j) in [(c.w, c.a1), (1.0 - c.w, c.a2)] {
                u1 += pi * pj * g.u1(i, j);
                u2 += pi * pj * g.u2(i, j);
            }
        }
        assert!(((u1 - bu1).min(u2 - bu2) - v).abs() < 1e-12);
    }
}
