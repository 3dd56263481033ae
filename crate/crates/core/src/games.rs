//! Canonical game generators used by the CLI, the test suites, and anyone
//! wanting a quick fixture.

use crate::game::Game;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("unknown game name: {0}")]
    UnknownGame(String),
    #[error("unknown parameter {0}")]
    UnknownParam(String),
    #[error("invalid value for parameter {name}: {reason}")]
    BadParam { name: String, reason: String },
    #[error("missing required parameter {0}")]
    MissingParam(String),
}

/// The 2×2 Prisoner's Dilemma with payoffs 3/0/5/1.
pub fn prisoners() -> Game {
    Game::with_labels(
        vec![vec![3.0, 0.0], vec![5.0, 1.0]],
        vec![vec![3.0, 5.0], vec![0.0, 1.0]],
        vec!["Cooperate".into(), "Defect".into()],
        vec!["Cooperate".into(), "Defect".into()],
    )
    .expect("fixed payoff table")
}

/// Both travelers claim an integer amount in `lo..=hi`. Equal claims are
/// paid as asked; otherwise the lower claim m is paid m + bonus and the
/// higher claim m − bonus.
pub fn travelers(lo: i64, hi: i64, bonus: f64) -> Result<Game, GenError> {
    if lo >= hi {
        return Err(GenError::BadParam {
            name: "lo".into(),
            reason: format!("lo ({lo}) must be below hi ({hi})"),
        });
    }
    if !bonus.is_finite() || bonus < 0.0 {
        return Err(GenError::BadParam {
            name: "bonus".into(),
            reason: "bonus must be a nonnegative number".into(),
        });
    }
    let count = (hi - lo + 1) as usize;
    let claim = |k: usize| (lo + k as i64) as f64;
    let g = Game::from_fn(count, count, |i, j| {
        let (a, b) = (claim(i), claim(j));
        if a == b {
            (a, a)
        } else if a < b {
            (a + bonus, a - bonus)
        } else {
            (b - bonus, b + bonus)
        }
    })
    .expect("square matrix");
    relabel(g, |k| claim(k).to_string())
}

/// Both players request a number of cents in 0..=total (in `step` units);
/// requests are honored when they sum to at most `total`, otherwise both
/// get nothing.
pub fn bargaining(total: i64, step: i64) -> Result<Game, GenError> {
    if total <= 0 {
        return Err(GenError::BadParam {
            name: "total".into(),
            reason: "total must be positive".into(),
        });
    }
    if step <= 0 || total % step != 0 {
        return Err(GenError::BadParam {
            name: "step".into(),
            reason: format!("step must be positive and divide total ({total})"),
        });
    }
    let count = (total / step + 1) as usize;
    let ask = |k: usize| (k as i64 * step) as f64;
    let g = Game::from_fn(count, count, |i, j| {
        if ask(i) + ask(j) <= total as f64 {
            (ask(i), ask(j))
        } else {
            (0.0, 0.0)
        }
    })
    .expect("square matrix");
    relabel(g, |k| ask(k).to_string())
}

/// Coordinating on the first action pays (k1, k2), on the second (1, 1),
/// and miscoordination pays nothing.
pub fn coordination(k1: f64, k2: f64) -> Result<Game, GenError> {
    for (name, v) in [("k1", k1), ("k2", k2)] {
        if !v.is_finite() {
            return Err(GenError::BadParam {
                name: name.into(),
                reason: "must be finite".into(),
            });
        }
    }
    Ok(Game::with_labels(
        vec![vec![k1, 0.0], vec![0.0, 1.0]],
        vec![vec![k2, 0.0], vec![0.0, 1.0]],
        vec!["a".into(), "b".into()],
        vec!["a".into(), "b".into()],
    )
    .expect("fixed payoff table"))
}

/// The centipede game with horizon `turns` (even), in reduced normal form.
/// Player 1 moves at odd turns, player 2 at even turns; stopping after an
/// odd turn t pays (2^t + 1, 2^(t−1)), after an even turn (2^(t−1), 2^t + 1),
/// and the game always ends at the final turn. Each player's strategies are
/// "quit at own turn j" for each own turn, plus "always continue".
pub fn centipede(turns: u32) -> Result<Game, GenError> {
    if turns < 2 || !turns.is_multiple_of(2) {
        return Err(GenError::BadParam {
            name: "T".into(),
            reason: "horizon must be an even number of turns, at least 2".into(),
        });
    }
    let half = (turns / 2) as usize;
    // Quit turns per strategy index; the last index means "continue", which
    // is outcome-equivalent to quitting at the horizon.
    let quit1 = |i: usize| {
        if i < half {
            2 * i as u32 + 1
        } else {
            turns + 1
        }
    };
    let quit2 = |j: usize| {
        if j < half {
            2 * j as u32 + 2
        } else {
            turns + 1
        }
    };
    let payout = |t: u32| -> (f64, f64) {
        let pow = |e: u32| (2.0_f64).powi(e as i32);
        if t % 2 == 1 {
            (pow(t) + 1.0, pow(t - 1))
        } else {
            (pow(t - 1), pow(t) + 1.0)
        }
    };
    let g = Game::from_fn(half + 1, half + 1, |i, j| {
        let end = quit1(i).min(quit2(j)).min(turns);
        payout(end)
    })
    .expect("square matrix");
    let l1: Vec<String> = (0..=half)
        .map(|i| {
            if i < half {
                format!("q{}", 2 * i + 1)
            } else {
                "C".into()
            }
        })
        .collect();
    let l2: Vec<String> = (0..=half)
        .map(|j| {
            if j < half {
                format!("q{}", 2 * j + 2)
            } else {
                "C".into()
            }
        })
        .collect();
    relabel_with(g, l1, l2)
}

/// The 1×2 game with payoff cells (3, 2) and (1, 0).
pub fn xam1() -> Game {
    Game::with_labels(
        vec![vec![3.0, 1.0]],
        vec![vec![2.0, 0.0]],
        vec!["c".into()],
        vec!["a".into(), "b".into()],
    )
    .expect("fixed payoff table")
}

fn relabel(g: Game, f: impl Fn(usize) -> String) -> Result<Game, GenError> {
    let l1 = (0..g.rows()).map(&f).collect();
    let l2 = (0..g.cols()).map(&f).collect();
    relabel_with(g, l1, l2)
}

fn relabel_with(g: Game, l1: Vec<String>, l2: Vec<String>) -> Result<Game, GenError> {
    let p1 = (0..g.rows())
        .map(|i| (0..g.cols()).map(|j| g.u1(i, j)).collect())
        .collect();
    let p2 = (0..g.rows())
        .map(|i| (0..g.cols()).map(|j| g.u2(i, j)).collect())
        .collect();
    Game::with_labels(p1, p2, l1, l2).map_err(|e| GenError::BadParam {
        name: "labels".into(),
        reason: e.to_string(),
    })
}

/// Dispatch by name with `key=value` parameters, as exposed on the CLI.
/// Defaults follow the canonical versions of each game: travelers 2..100
/// with bonus 2, bargaining over 100 cents in steps of 1, centipede with
/// 20 turns. Coordination requires k1 and k2.
pub fn generate(name: &str, params: &[(String, String)]) -> Result<Game, GenError> {
    let lookup = |allowed: &[&str]| -> Result<Vec<(String, f64)>, GenError> {
        let mut out = Vec::new();
        for (k, v) in params {
            if !allowed.contains(&k.as_str()) {
                return Err(GenError::UnknownParam(k.clone()));
            }
            let parsed: f64 = v.parse().map_err(|_| GenError::BadParam {
                name: k.clone(),
                reason: format!("cannot parse {v:?} as a number"),
            })?;
            out.push((k.clone(), parsed));
        }
        Ok(out)
    };
    let get = |vals: &[(String, f64)], key: &str| -> Option<f64> {
        vals.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    };
    let as_int = |name: &str, v: f64| -> Result<i64, GenError> {
        if v.fract() == 0.0 && v.abs() < 1e15 {
            Ok(v as i64)
        } else {
            Err(GenError::BadParam {
                name: name.into(),
                reason: format!("{v} is not an integer"),
            })
        }
    };
    match name {
        "prisoners" => {
            lookup(&[])?;
            Ok(prisoners())
        }
        "travelers" => {
            let vals = lookup(&["lo", "hi", "bonus"])?;
            travelers(
                as_int("lo", get(&vals, "lo").unwrap_or(2.0))?,
                as_int("hi", get(&vals, "hi").unwrap_or(100.0))?,
                get(&vals, "bonus").unwrap_or(2.0),
            )
        }
        "bargaining" => {
            let vals = lookup(&["total", "step"])?;
            bargaining(
                as_int("total", get(&vals, "total").unwrap_or(100.0))?,
                as_int("step", get(&vals, "step").unwrap_or(1.0))?,
            )
        }
        "coordination" => {
            let vals = lookup(&["k1", "k2"])?;
            let k1 = get(&vals, "k1").ok_or_else(|| GenError::MissingParam("k1".into()))?;
            let k2 = get(&vals, "k2").ok_or_else(|| GenError::MissingParam("k2".into()))?;
            coordination(k1, k2)
        }
        "centipede" => {
            let vals = lookup(&["T"])?;
            let t = as_int("T", get(&vals, "T").unwrap_or(20.0))?;
            if !(2..=62).contains(&t) {
                return Err(GenError::BadParam {
                    name: "T".into(),
                    reason: "horizon must be between 2 and 62".into(),
                });
            }
            centipede(t as u32)
        }
        "xam1" => {
            lookup(&[])?;
            Ok(xam1())
        }
        other => Err(GenError::UnknownGame(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;

    #[test]
    fn travelers_cells_follow_the_claim_rule() {
        let g = travelers(2, 100, 2.0).unwrap();
        assert_eq!(g.rows(), 99);
        assert_eq!(g.cols(), 99);
        // claims 10 and 30: lower claim gets 12, higher gets 8.
        assert_eq!(g.cell(8, 28), (12.0, 8.0));
        assert_eq!(g.cell(28, 8), (8.0, 12.0));
        assert_eq!(g.cell(50, 50), (52.0, 52.0));
    }

    #[test]
    fn xam1_matches_its_table() {
        let g = xam1();
        assert_eq!((g.rows(), g.cols()), (1, 2));
        assert_eq!(g.cell(0, 0), (3.0, 2.0));
        assert_eq!(g.cell(0, 1), (1.0, 0.0));
    }

    #[test]
    fn prisoners_matches_its_table() {
        let g = prisoners();
        assert_eq!(g.cell(0, 0), (3.0, 3.0));
        assert_eq!(g.cell(0, 1), (0.0, 5.0));
        assert_eq!(g.cell(1, 0), (5.0, 0.0));
        assert_eq!(g.cell(1, 1), (1.0, 1.0));
    }

    #[test]
    fn coordination_matches_its_table() {
        let g = coordination(1.5, 0.25).unwrap();
        assert_eq!(g.cell(0, 0), (1.5, 0.25));
        assert_eq!(g.cell(0, 1), (0.0, 0.0));
        assert_eq!(g.cell(1, 1), (1.0, 1.0));
    }

    #[test]
    fn centipede_early_quit_payoffs() {
        let g = centipede(20).unwrap();
        assert_eq!((g.rows(), g.cols()), (11, 11));
        // Player 1 quitting at turn 1 ends the game regardless of player 2.
        for j in 0..11 {
            assert_eq!(g.cell(0, j), (3.0, 1.0));
        }
        // Player 2 quitting at turn 4 against a later player 1 quit.
        assert_eq!(g.cell(2, 1), (8.0, 17.0));
        // Both continue to the end.
        assert_eq!(
            g.cell(10, 10),
            ((1u64 << 19) as f64, (1u64 << 20) as f64 + 1.0)
        );
        assert_eq!(g.label(Player::One, 0), "q1");
        assert_eq!(g.label(Player::Two, 10), "C");
    }

    #[test]
    fn bargaining_grid_and_step() {
        let g = bargaining(100, 25).unwrap();
        assert_eq!(g.rows(), 5);
        assert_eq!(g.cell(1, 2), (25.0, 50.0));
        assert_eq!(g.cell(3, 3), (0.0, 0.0));
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            travelers(10, 2, 2.0),
            Err(GenError::BadParam { .. })
        ));
        assert!(matches!(centipede(7), Err(GenError::BadParam { .. })));
        assert!(matches!(bargaining(100, 7), Err(GenError::BadParam { .. })));
        assert!(matches!(
            generate("nonesuch", &[]),
            Err(GenError::UnknownGame(_))
        ));
        assert!(matches!(
            generate("travelers", &[("speed".into(), "3".into())]),
            Err(GenError::UnknownParam(_))
        ));
        assert!(matches!(
            generate("coordination", &[]),
            Err(GenError::MissingParam(_))
        ));
    }

    #[test]
    fn generate_dispatch_defaults() {
        let g = generate("travelers", &[("hi".into(), "30".into())]).unwrap();
        assert_eq!(g.rows(), 29);
        let g = generate("centipede", &[]).unwrap();
        assert_eq!(g.rows(), 11);
    }
}
