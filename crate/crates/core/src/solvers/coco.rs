//! The coco value: split the game into its team and zero-sum parts, take
//! the best team payoff a, the zero-sum minimax value z for player 1, and
//! return (a + z, a − z).

use crate::game::{Game, Player, ValuePair};
use crate::solvers::minimax_value;

pub fn coco_value(g: &Game) -> ValuePair {
    let d = g.decompose();
    let (a, _) = d.team_max();
    let gz = d.zero_sum_game();
    let z = minimax_value(&gz, Player::One);

    // Agreement with the closed form (MSW ± (mm_1(G_z) − mm_2(G_z)))/2
    // reduces to the team maximum being half the maximum social welfare
    // (zero-sum duality, mm_2(G_z) = −mm_1(G_z), is property-tested with
    // its own LP runs).
    let tol = 1e-9 * g.payoff_scale().max(1.0);
    debug_assert!(
        (2.0 * a - g.msw().value).abs() <= tol,
        "team maximum must be half the maximum social welfare"
    );
    ValuePair::new(a + z, a - z)
}
