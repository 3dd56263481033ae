//! Membership checks and construction for perfect cooperative equilibria:
//! profiles giving each player at least their best-response utility.

use crate::bilinear::{solve_bilinear_2x2, BilinearProblem2x2};
use crate::game::{Game, GameError, Player, StrategyProfile};
use crate::solvers::{best_utility, expand_profile, submatrix, support_pairs};

/// True iff both players get at least their best-response utility, within
/// `eps`.
pub fn is_pce(g: &Game, s: &StrategyProfile, eps: f64) -> Result<bool, GameError> {
    let bu = (best_utility(g, Player::One), best_utility(g, Player::Two));
    is_pce_with_bu(g, s, bu, eps)
}

/// Same as [`is_pce`] with precomputed best-response utilities, for callers
/// checking many profiles of one game.
pub fn is_pce_with_bu(
    g: &Game,
    s: &StrategyProfile,
    (bu1, bu2): (f64, f64),
    eps: f64,
) -> Result<bool, GameError> {
    let u = g.expected_utilities(s)?;
    Ok(u.v1 >= bu1 - eps && u.v2 >= bu2 - eps)
}

/// The largest alpha for which `s` clears both thresholds:
/// min(U_1(s) − BU_1, U_2(s) − BU_2).
pub fn alpha_of(g: &Game, s: &StrategyProfile) -> Result<f64, GameError> {
    let u = g.expected_utilities(s)?;
    let bu1 = best_utility(g, Player::One);
    let bu2 = best_utility(g, Player::Two);
    Ok((u.v1 - bu1).min(u.v2 - bu2))
}

/// Searches for a perfect cooperative equilibrium, returning one supported
/// on at most two actions per player, or `None` when no profile clears both
/// thresholds. One bilinear program per support tuple maximizes player 1's
/// payoff subject to player 2 reaching BU_2; the first tuple (in
/// lexicographic order) whose optimum reaches BU_1 − eps wins. Restricting
/// to supports of size two is lossless: any profile is Pareto-dominated by
/// one with such supports, and Pareto domination preserves membership.
pub fn find_pce(g: &Game, eps: f64) -> Option<StrategyProfile> {
    let bu1 = best_utility(g, Player::One);
    let bu2 = best_utility(g, Player::Two);
    for &(i1, i2) in &support_pairs(g.rows()) {
        for &(j1, j2) in &support_pairs(g.cols()) {
            let problem = BilinearProblem2x2::probability(
                submatrix(g, Game::u1, i1, i2, j1, j2),
                submatrix(g, Game::u2, i1, i2, j1, j2),
                bu2,
            );
            let sol = solve_bilinear_2x2(&problem);
            if sol.is_optimal() && sol.value >= bu1 - eps {
                return Some(expand_profile(g, (i1, i2, j1, j2), sol.x, sol.y, eps));
            }
        }
    }
    None
}
