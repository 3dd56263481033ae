//! The unique max-alpha value once side payments (deal actions with
//! transfers) are added to a game, and a deal profile attaining it.
//!
//! Adding deal actions changes neither the maximum social welfare nor the
//! minimax values, so the value has the closed form
//! ((MSW + mm_1 − mm_2)/2, (MSW − mm_1 + mm_2)/2) in terms of the base
//! game alone, and the extended game never has to be materialized.

use crate::game::{Game, Player, ValuePair};
use crate::solvers::{minimax_value, DealProfile};

pub fn sidepay_mpce_value(g: &Game) -> ValuePair {
    let msw = g.msw().value;
    let mm1 = minimax_value(g, Player::One);
    let mm2 = minimax_value(g, Player::Two);
    ValuePair::new((msw + mm1 - mm2) / 2.0, (msw - mm1 + mm2) / 2.0)
}

/// The same formula for the side-payment variant where a rejected deal
/// falls back to fixed default payoffs (d1, d2) instead of backup actions.
pub fn sidepay_value_with_defaults(g: &Game, defaults: ValuePair) -> ValuePair {
    let msw = g.msw().value;
    ValuePair::new(
        (msw + defaults.v1 - defaults.v2) / 2.0,
        (msw - defaults.v1 + defaults.v2) / 2.0,
    )
}

/// A deal profile attaining [`sidepay_mpce_value`]: both players agree on a
/// welfare-maximizing pure profile and player 1 pays the difference between
/// their payoff there and their share of the value. Backup actions never
/// execute when both players propose the same deal, so they are set to the
/// agreed actions.
pub fn sidepay_mpce_profile(g: &Game) -> DealProfile {
    let msw = g.msw();
    let value = sidepay_mpce_value(g);
    let (i, j) = msw.profile;
    DealProfile {
        agreed_profile: (i, j),
        transfer: g.u1(i, j) - value.v1,
        backup1: i,
        backup2: j,
    }
}
