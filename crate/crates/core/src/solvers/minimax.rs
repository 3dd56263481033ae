//! Minimax values: the payoff a player is held to when the opponent
//! minimizes that player's maximum payoff.
//!
//! For player 1, one linear program per own row i: minimize player 1's
//! payoff for row i over the opponent's mixed strategies, subject to row i
//! being a best response for player 1. The minimum over feasible rows is
//! mm_1; rows that are never best responses are infeasible and skipped.

use crate::game::{Game, Player};
use crate::linprog::{solve_lp, LpProblem};

pub fn minimax_value(g: &Game, player: Player) -> f64 {
    match player {
        Player::One => mm_rows(g, |g, i, j| g.u1(i, j), g.rows(), g.cols()),
        Player::Two => mm_rows(g, |g, j, i| g.u2(i, j), g.cols(), g.rows()),
    }
}

/// `mine(g, own, opp)` is the player's payoff at own action `own` against
/// opponent action `opp`.
fn mm_rows(
    g: &Game,
    mine: impl Fn(&Game, usize, usize) -> f64,
    own_actions: usize,
    opp_actions: usize,
) -> f64 {
    let mut worst = f64::INFINITY;
    for own in 0..own_actions {
        // Minimize mine(own, ·)·t over opponent mixes t, i.e. maximize the
        // negation.
        let objective: Vec<f64> = (0..opp_actions).map(|o| -mine(g, own, o)).collect();
        let mut lp = LpProblem::maximize(objective).eq(vec![1.0; opp_actions], 1.0);
        for other in 0..own_actions {
            if other == own {
                continue;
            }
            let row: Vec<f64> = (0..opp_actions)
                .map(|o| mine(g, own, o) - mine(g, other, o))
                .collect();
            lp = lp.ge(row, 0.0);
        }
        let sol = solve_lp(&lp).expect("constructed program is well formed");
        if sol.is_optimal() && -sol.value < worst {
            worst = -sol.value;
        }
    }
    debug_assert!(worst.is_finite(), "some own action is a best response");
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Game;
    use crate::games;

    #[test]
    fn xam1_minimax_values() {
        let g = games::xam1();
        assert!((minimax_value(&g, Player::One) - 1.0).abs() < 1e-9);
        assert!((minimax_value(&g, Player::Two) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn constant_team_game() {
        let k = 3.25;
        let p = vec![vec![k; 3]; 2];
        let g = Game::new(p.clone(), p).unwrap();
        assert!((minimax_value(&g, Player::One) - k).abs() < 1e-9);
        assert!((minimax_value(&g, Player::Two) - k).abs() < 1e-9);
    }

    #[test]
    fn bargaining_minimax_is_zero() {
        let g = games::bargaining(100, 25).unwrap();
        assert!(minimax_value(&g, Player::One).abs() < 1e-9);
        assert!(minimax_value(&g, Player::Two).abs() < 1e-9);
    }

    #[test]
    fn matching_pennies_value() {
        let g = Game::new(
            vec![vec![1.0, -1.0], vec![-1.0, 1.0]],
            vec![vec![-1.0, 1.0], vec![1.0, -1.0]],
        )
        .unwrap();
        assert!(minimax_value(&g, Player::One).abs() < 1e-9);
        assert!(minimax_value(&g, Player::Two).abs() < 1e-9);
    }
}
