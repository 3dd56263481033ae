//! The best utility a player can secure when the opponent best-responds.
//!
//! For player 1 this is computed with one linear program per opponent
//! column j: maximize player 1's payoff against column j over mixed rows
//! s1, subject to j being a best response of player 2 to s1. The maximum
//! over the feasible columns is the answer; columns that are never a best
//! response yield infeasible programs and are skipped. Restricting the
//! opponent to pure responses is exact because the deviator's payoff is
//! linear over the opponent's best-response set.

use crate::game::{Game, Player};
use crate::linprog::{solve_lp, LpProblem};

pub fn best_utility(g: &Game, player: Player) -> f64 {
    match player {
        Player::One => bu_rows(
            g,
            |g, i, j| g.u1(i, j),
            |g, i, j| g.u2(i, j),
            g.rows(),
            g.cols(),
        ),
        Player::Two => bu_rows(
            g,
            |g, j, i| g.u2(i, j),
            |g, j, i| g.u1(i, j),
            g.cols(),
            g.rows(),
        ),
    }
}

/// Shared body: `mine(g, k, resp)` is the optimizing player's payoff when
/// they put weight on action k and the opponent plays `resp`; `theirs`
/// is the opponent's payoff in the same orientation.
fn bu_rows(
    g: &Game,
    mine: impl Fn(&Game, usize, usize) -> f64,
    theirs: impl Fn(&Game, usize, usize) -> f64,
    own_actions: usize,
    opp_actions: usize,
) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for resp in 0..opp_actions {
        let objective: Vec<f64> = (0..own_actions).map(|k| mine(g, k, resp)).collect();
        let mut lp = LpProblem::maximize(objective).eq(vec![1.0; own_actions], 1.0);
        for other in 0..opp_actions {
            if other == resp {
                continue;
            }
            let row: Vec<f64> = (0..own_actions)
                .map(|k| theirs(g, k, resp) - theirs(g, k, other))
                .collect();
            lp = lp.ge(row, 0.0);
        }
        let sol = solve_lp(&lp).expect("constructed program is well formed");
        if sol.is_optimal() && sol.value > best {
            best = sol.value;
        }
    }
    debug_assert!(
        best.is_finite(),
        "some opponent action is a best response to something"
    );
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games;

    #[test]
    fn prisoners_dilemma_bu_is_one() {
        let g = games::prisoners();
        assert!((best_utility(&g, Player::One) - 1.0).abs() < 1e-9);
        assert!((best_utility(&g, Player::Two) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn xam1_bu() {
        let g = games::xam1();
        assert!((best_utility(&g, Player::One) - 3.0).abs() < 1e-9);
        assert!((best_utility(&g, Player::Two) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn coordination_bu_is_best_coordinated_payoff() {
        let g = games::coordination(2.0, 0.5).unwrap();
        assert!((best_utility(&g, Player::One) - 2.0).abs() < 1e-9);
        assert!((best_utility(&g, Player::Two) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn small_travelers_bu_interval() {
        // The same mixing argument as in the 2..100 game applies at 2..30.
        let g = games::travelers(2, 30, 2.0).unwrap();
        let bu = best_utility(&g, Player::One);
        assert!(bu <= 29.0 + 1e-9, "bu = {bu}");
        assert!(bu >= 28.0 + 1.0 / 6.0 - 1e-9, "bu = {bu}");
    }

    #[test]
    fn bargaining_bu_is_total() {
        let g = games::bargaining(100, 25).unwrap();
        assert!((best_utility(&g, Player::One) - 100.0).abs() < 1e-9);
        assert!((best_utility(&g, Player::Two) - 100.0).abs() < 1e-9);
    }
}
