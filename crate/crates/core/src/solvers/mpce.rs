//! Max-alpha profiles: maximize f(s) = min(U_1(s) − BU_1, U_2(s) − BU_2)
//! over all strategy profiles, and improve the result to a Pareto-optimal
//! profile with the same alpha.
//!
//! Per support tuple, the min objective splits into two simple bilinear
//! programs: maximize d_1 subject to d_1 <= d_2, and the mirror image. The
//! larger of the two optima is the tuple's best alpha; the best tuple (ties
//! to the lexicographically first) is a global max-alpha profile, again
//! because supports of size two suffice.

use crate::bilinear::{solve_bilinear_2x2, BilinearProblem2x2, BilinearSolution};
use crate::game::{Game, GameError, MixedStrategy, Player, StrategyProfile, ValuePair};
use crate::linprog::{solve_lp, LpProblem};
use crate::solvers::{best_utility, expand_profile, submatrix, support_pairs, AlphaResult};

type SupportTuple = (usize, usize, usize, usize);
type CellPayoff = fn(&Game, usize, usize) -> f64;

pub fn find_mpce(g: &Game) -> AlphaResult {
    let bu1 = best_utility(g, Player::One);
    let bu2 = best_utility(g, Player::Two);
    let mut best: Option<(f64, SupportTuple, BilinearSolution)> = None;
    for &(i1, i2) in &support_pairs(g.rows()) {
        for &(j1, j2) in &support_pairs(g.cols()) {
            let a = submatrix(g, Game::u1, i1, i2, j1, j2);
            let b = submatrix(g, Game::u2, i1, i2, j1, j2);
            let diff = |m: [[f64; 2]; 2], n: [[f64; 2]; 2]| {
                [
                    [m[0][0] - n[0][0], m[0][1] - n[0][1]],
                    [m[1][0] - n[1][0], m[1][1] - n[1][1]],
                ]
            };
            // Q': maximize U_1 − BU_1 where it is the smaller of the two.
            let q1 = solve_bilinear_2x2(&BilinearProblem2x2::probability(a, diff(b, a), bu2 - bu1));
            // Q'': the mirror image.
            let q2 = solve_bilinear_2x2(&BilinearProblem2x2::probability(b, diff(a, b), bu1 - bu2));
            let mut tuple_best: Option<(f64, BilinearSolution)> = None;
            if q1.is_optimal() {
                tuple_best = Some((q1.value - bu1, q1));
            }
            if q2.is_optimal() {
                let alpha2 = q2.value - bu2;
                if tuple_best.is_none_or(|(a1, _)| alpha2 > a1) {
                    tuple_best = Some((alpha2, q2));
                }
            }
            if let Some((alpha, sol)) = tuple_best {
                if best.as_ref().is_none_or(|(ba, _, _)| alpha > *ba) {
                    best = Some((alpha, (i1, i2, j1, j2), sol));
                }
            }
        }
    }
    let (_, tuple, sol) =
        best.expect("every tuple admits at least one feasible split of the min objective");
    let profile = expand_profile(g, tuple, sol.x, sol.y, crate::game::DEFAULT_EPS);
    let u = g
        .expected_utilities(&profile)
        .expect("profile built for this game");
    AlphaResult {
        alpha: (u.v1 - bu1).min(u.v2 - bu2),
        profile,
    }
}

/// Pareto-improves `s` to a profile with supports of size at most two,
/// via two linear programs: first improve player 1's payoff over the
/// opponent's simplex while pinning player 2's payoff, then swap roles.
/// Basic optimal solutions have at most two nonzero entries because both
/// programs have exactly two equality rows.
pub fn pareto_improve_support2(
    g: &Game,
    s: &StrategyProfile,
) -> Result<StrategyProfile, GameError> {
    let u = g.expected_utilities(s)?;

    // Improve player 2's side: maximize s1ᵀ·A·y holding s1ᵀ·B·y at U_2(s).
    let a_row: Vec<f64> = (0..g.cols())
        .map(|j| (0..g.rows()).map(|i| s.s1.get(i) * g.u1(i, j)).sum())
        .collect();
    let b_row: Vec<f64> = (0..g.cols())
        .map(|j| (0..g.rows()).map(|i| s.s1.get(i) * g.u2(i, j)).sum())
        .collect();
    let lp1 = LpProblem::maximize(a_row)
        .eq(b_row, u.v2)
        .eq(vec![1.0; g.cols()], 1.0);
    let sol1 = solve_lp(&lp1).expect("constructed program is well formed");
    debug_assert!(sol1.is_optimal(), "s2 itself is feasible");
    let s2 = MixedStrategy::new(sol1.x, 1e-6)?;

    // Improve player 1's side against the new s2, pinning player 1's payoff.
    let r1 = {
        let tmp = StrategyProfile::new(s.s1.clone(), s2.clone());
        g.expected_utilities(&tmp)?.v1
    };
    let b_col: Vec<f64> = (0..g.rows())
        .map(|i| (0..g.cols()).map(|j| g.u2(i, j) * s2.get(j)).sum())
        .collect();
    let a_col: Vec<f64> = (0..g.rows())
        .map(|i| (0..g.cols()).map(|j| g.u1(i, j) * s2.get(j)).sum())
        .collect();
    let lp2 = LpProblem::maximize(b_col)
        .eq(a_col, r1)
        .eq(vec![1.0; g.rows()], 1.0);
    let sol2 = solve_lp(&lp2).expect("constructed program is well formed");
    debug_assert!(sol2.is_optimal(), "s1 itself is feasible");
    let s1 = MixedStrategy::new(sol2.x, 1e-6)?;

    Ok(StrategyProfile::new(s1, s2))
}

/// A Pareto-optimal max-alpha profile. Starting from [`find_mpce`], one
/// bilinear sweep maximizes player 1's payoff holding player 2 at least at
/// the current level, a second sweep does the mirror image, and whichever
/// result is not Pareto-dominated by the other is returned (the first on
/// ties or incomparability; both are Pareto-optimal then). The result keeps
/// the maximal alpha, so by the punishment argument it is also a
/// cooperative equilibrium.
pub fn find_pareto_optimal_mpce(g: &Game) -> AlphaResult {
    let base = find_mpce(g);
    let u = g
        .expected_utilities(&base.profile)
        .expect("profile built for this game");
    let eps = crate::game::DEFAULT_EPS;

    let cand1 = maximize_one_side(g, Player::One, u).unwrap_or_else(|| base.profile.clone());
    let cand2 = maximize_one_side(g, Player::Two, u).unwrap_or_else(|| base.profile.clone());
    let rel = g
        .pareto_relation(&cand1, &cand2, eps)
        .expect("profiles built for this game");
    let profile = match rel {
        crate::game::ParetoRelation::Dominated | crate::game::ParetoRelation::StronglyDominated => {
            cand2
        }
        _ => cand1,
    };
    let bu1 = best_utility(g, Player::One);
    let bu2 = best_utility(g, Player::Two);
    let u = g
        .expected_utilities(&profile)
        .expect("profile built for this game");
    AlphaResult {
        alpha: (u.v1 - bu1).min(u.v2 - bu2),
        profile,
    }
}

/// Maximizes `player`'s payoff over all support-2 profiles holding the
/// other player at no less than their payoff in `floor`.
fn maximize_one_side(g: &Game, player: Player, floor: ValuePair) -> Option<StrategyProfile> {
    let (obj, con): (CellPayoff, CellPayoff) = match player {
        Player::One => (Game::u1, Game::u2),
        Player::Two => (Game::u2, Game::u1),
    };
    let threshold = floor.get(player.other());
    let mut best: Option<(f64, StrategyProfile)> = None;
    for &(i1, i2) in &support_pairs(g.rows()) {
        for &(j1, j2) in &support_pairs(g.cols()) {
            let problem = BilinearProblem2x2::probability(
                submatrix(g, obj, i1, i2, j1, j2),
                submatrix(g, con, i1, i2, j1, j2),
                threshold,
            );
            let sol = solve_bilinear_2x2(&problem);
            if sol.is_optimal() && best.as_ref().is_none_or(|(bv, _)| sol.value > *bv) {
                let profile =
                    expand_profile(g, (i1, i2, j1, j2), sol.x, sol.y, crate::game::DEFAULT_EPS);
                best = Some((sol.value, profile));
            }
        }
    }
    best.map(|(_, p)| p)
}
