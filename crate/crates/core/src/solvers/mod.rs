//! Equilibrium computations: best-response utilities, minimax values,
//! perfect cooperative equilibria (existence, construction, membership),
//! max-alpha profiles, Pareto-optimal max-alpha profiles, the coco value,
//! side-payment values and deal profiles, and a falsifier for the
//! punishment-based equilibrium conditions.

mod bu;
mod ce;
mod coco;
mod minimax;
mod mpce;
mod pce;
mod sidepay;

pub use bu::best_utility;
pub use ce::{ce_falsify, CeViolation};
pub use coco::coco_value;
pub use minimax::minimax_value;
pub use mpce::{find_mpce, find_pareto_optimal_mpce, pareto_improve_support2};
pub use pce::{alpha_of, find_pce, is_pce, is_pce_with_bu};
pub use sidepay::{sidepay_mpce_profile, sidepay_mpce_value, sidepay_value_with_defaults};

use crate::game::{Game, MixedStrategy, StrategyProfile};

/// A strategy profile together with the largest `alpha` for which it clears
/// both players' best-response utilities by at least `alpha`.
#[derive(Debug, Clone)]
pub struct AlphaResult {
    pub profile: StrategyProfile,
    pub alpha: f64,
}

/// A symbolic side-payment agreement: both players propose playing
/// `agreed_profile` with player 1 paying `transfer` to player 2 (negative
/// means the money flows the other way); if the proposals were to differ,
/// the backup actions would be played instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DealProfile {
    pub agreed_profile: (usize, usize),
    pub transfer: f64,
    pub backup1: usize,
    pub backup2: usize,
}

/// Index pairs (i1 <= i2) used as candidate supports of size two. For a
/// single-action player the one degenerate pair (0, 0) is produced so that
/// 1×m and n×1 games enumerate correctly; for two or more actions the
/// distinct pairs subsume pure strategies as boundary points.
pub(crate) fn support_pairs(count: usize) -> Vec<(usize, usize)> {
    if count == 1 {
        return vec![(0, 0)];
    }
    let mut pairs = Vec::with_capacity(count * (count - 1) / 2);
    for i in 0..count - 1 {
        for j in i + 1..count {
            pairs.push((i, j));
        }
    }
    pairs
}

/// The 2×2 restriction of a payoff matrix to a support tuple.
#[inline]
pub(crate) fn submatrix(
    g: &Game,
    payoff: impl Fn(&Game, usize, usize) -> f64,
    i1: usize,
    i2: usize,
    j1: usize,
    j2: usize,
) -> [[f64; 2]; 2] {
    [
        [payoff(g, i1, j1), payoff(g, i1, j2)],
        [payoff(g, i2, j1), payoff(g, i2, j2)],
    ]
}

/// Expands a 2×2 solution back to full-length strategies on the tuple's
/// support. Degenerate tuples (i1 == i2) accumulate onto one action.
pub(crate) fn expand_profile(
    g: &Game,
    (i1, i2, j1, j2): (usize, usize, usize, usize),
    x: [f64; 2],
    y: [f64; 2],
    eps: f64,
) -> StrategyProfile {
    let mut p1 = vec![0.0; g.rows()];
    p1[i1] += x[0];
    p1[i2] += x[1];
    let mut p2 = vec![0.0; g.cols()];
    p2[j1] += y[0];
    p2[j2] += y[1];
    let s1 = MixedStrategy::new(p1, eps.max(1e-6))
        .expect("bilinear solutions are valid probability vectors");
    let s2 = MixedStrategy::new(p2, eps.max(1e-6))
        .expect("bilinear solutions are valid probability vectors");
    StrategyProfile::new(s1, s2)
}
