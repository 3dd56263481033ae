//! Falsifier for the punishment-based cooperative-equilibrium conditions.
//!
//! A profile s survives a deviation s_i' when either (1) the deviator gains
//! nothing even if the opponent best-responds, or (2) every opponent reply
//! leaves the opponent strictly worse off than at s and some reply pushes
//! the deviator back to at most their payoff at s. The falsifier checks
//! every pure deviation and every two-action grid mixture; for each fixed
//! deviation the opponent-side quantities are exact maxima/minima over pure
//! replies, which suffices by linearity. An empty result is evidence, not
//! proof, of membership: mixtures off the grid are not examined.

use crate::game::{Game, GameError, MixedStrategy, Player, StrategyProfile};

/// A deviation witnessing that the checked profile fails both conditions.
#[derive(Debug, Clone)]
pub struct CeViolation {
    pub player: Player,
    pub deviation: MixedStrategy,
    /// What the deviator can get when the opponent best-responds.
    pub best_case: f64,
}

pub fn ce_falsify(
    g: &Game,
    s: &StrategyProfile,
    grid_k: usize,
    eps: f64,
) -> Result<Option<CeViolation>, GameError> {
    assert!(grid_k >= 1, "grid_k must be at least 1");
    let u = g.expected_utilities(s)?;
    for player in [Player::One, Player::Two] {
        let own = g.actions(player);
        let (u_i, u_j) = match player {
            Player::One => (u.v1, u.v2),
            Player::Two => (u.v2, u.v1),
        };
        let check = |a1: usize, a2: usize, w: f64| -> Option<CeViolation> {
            let (viol, best_case) = deviation_violates(g, player, (a1, a2, w), u_i, u_j, eps);
            viol.then(|| CeViolation {
                player,
                deviation: MixedStrategy::two_point(own, a1, a2, w),
                best_case,
            })
        };
        for a in 0..own {
            if let Some(v) = check(a, a, 1.0) {
                return Ok(Some(v));
            }
        }
        for a1 in 0..own {
            for a2 in a1 + 1..own {
                for t in 1..grid_k {
                    let w = t as f64 / grid_k as f64;
                    if let Some(v) = check(a1, a2, w) {
                        return Ok(Some(v));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Evaluates one deviation, returning whether it violates both conditions
/// and the deviator's best payoff under opponent best response.
fn deviation_violates(
    g: &Game,
    player: Player,
    (a1, a2, w): (usize, usize, f64),
    u_i: f64,
    u_j: f64,
    eps: f64,
) -> (bool, f64) {
    let opp = g.actions(player.other());
    // Deviator's and opponent's payoffs against each pure opponent reply.
    let pay = |p: Player, own: usize, other: usize| match p {
        Player::One => g.payoff(Player::One, own, other),
        Player::Two => g.payoff(Player::Two, other, own),
    };
    let opp_pay = |p: Player, own: usize, other: usize| match p {
        Player::One => g.payoff(Player::Two, own, other),
        Player::Two => g.payoff(Player::One, other, own),
    };
    let mut opp_best = f64::NEG_INFINITY;
    for t in 0..opp {
        let v = w * opp_pay(player, a1, t) + (1.0 - w) * opp_pay(player, a2, t);
        if v > opp_best {
            opp_best = v;
        }
    }
    let mut best_case = f64::NEG_INFINITY;
    let mut worst_case = f64::INFINITY;
    for t in 0..opp {
        let mine = w * pay(player, a1, t) + (1.0 - w) * pay(player, a2, t);
        let theirs = w * opp_pay(player, a1, t) + (1.0 - w) * opp_pay(player, a2, t);
        if theirs >= opp_best - eps && mine > best_case {
            best_case = mine;
        }
        if mine < worst_case {
            worst_case = mine;
        }
    }
    // Condition (1): no gain under best response.
    if u_i >= best_case - eps {
        return (false, best_case);
    }
    // Condition (2): opponent strictly hurt by every reply, and able to
    // punish the deviator back to u_i. Margins lean toward not reporting,
    // so boundary noise never produces a spurious counterexample.
    let opponent_hurt = opp_best < u_j + eps;
    let punishable = worst_case <= u_i + eps;
    (!(opponent_hurt && punishable), best_case)
}
