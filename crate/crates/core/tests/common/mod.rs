//! Helpers shared by the integration suites.

use coopeq::game::{Game, MixedStrategy, StrategyProfile, DEFAULT_EPS};
use rand::rngs::SmallRng;
use rand::Rng;

pub fn random_matrix(rng: &mut SmallRng, n: usize, m: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..m).map(|_| rng.gen_range(lo..hi)).collect())
        .collect()
}

pub fn random_game(rng: &mut SmallRng, n: usize, m: usize) -> Game {
    Game::new(
        random_matrix(rng, n, m, -10.0, 10.0),
        random_matrix(rng, n, m, -10.0, 10.0),
    )
    .unwrap()
}

/// A random game with 1 to 6 actions per player.
pub fn random_sized_game(rng: &mut SmallRng) -> Game {
    let n = rng.gen_range(1..=6);
    let m = rng.gen_range(1..=6);
    random_game(rng, n, m)
}

pub fn random_strategy(rng: &mut SmallRng, len: usize) -> MixedStrategy {
    let raw: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..1.0_f64)).collect();
    let sum: f64 = raw.iter().sum();
    let probs = if sum == 0.0 {
        let mut p = vec![0.0; len];
        p[0] = 1.0;
        p
    } else {
        raw.iter().map(|v| v / sum).collect()
    };
    MixedStrategy::new(probs, DEFAULT_EPS).unwrap()
}

pub fn random_profile(rng: &mut SmallRng, g: &Game) -> StrategyProfile {
    StrategyProfile::new(
        random_strategy(rng, g.rows()),
        random_strategy(rng, g.cols()),
    )
}
