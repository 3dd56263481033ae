//! The on-disk game format: a JSON object with the player count, one label
//! list per player, and an n×m matrix of `[u1, u2]` payoff pairs. Payoffs
//! may be plain numbers or rational strings like `"1/3"`, which are
//! evaluated exactly and stored as the nearest double.
//!
//! ```json
//! {
//!   "players": 2,
//!   "actions": [["Cooperate", "Defect"], ["Cooperate", "Defect"]],
//!   "payoffs": [[[3, 3], [0, 5]], [[5, 0], [1, 1]]]
//! }
//! ```

use crate::game::{Game, Player};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed game document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported player count: {0}")]
    PlayerCount(u32),
    #[error("expected one action list per player, found {0}")]
    ActionLists(usize),
    #[error("payoff matrix has {found} rows, expected {expected} (one per player-1 action)")]
    RowCount { expected: usize, found: usize },
    #[error("payoff row {row} has {found} cells, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("payoff cell ({row}, {col}): {reason}")]
    BadCell {
        row: usize,
        col: usize,
        reason: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameDocument {
    pub players: u32,
    pub actions: Vec<Vec<String>>,
    pub payoffs: Vec<Vec<[PayoffValue; 2]>>,
}

/// A payoff entry: a JSON number, or a rational written as `"p/q"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PayoffValue {
    Number(f64),
    Rational(String),
}

impl PayoffValue {
    fn evaluate(&self) -> Result<f64, String> {
        match self {
            PayoffValue::Number(v) if v.is_finite() => Ok(*v),
            PayoffValue::Number(v) => Err(format!("{v} is not finite")),
            PayoffValue::Rational(s) => {
                let (p, q) = s
                    .split_once('/')
                    .ok_or_else(|| format!("{s:?} is not of the form p/q"))?;
                let p: i64 = p
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad numerator in {s:?}"))?;
                let q: i64 = q
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad denominator in {s:?}"))?;
                if q == 0 {
                    return Err(format!("zero denominator in {s:?}"));
                }
                Ok(p as f64 / q as f64)
            }
        }
    }
}

/// Parses a document into a [`Game`]. JSON syntax errors carry serde_json's
/// line/column diagnostics; structural problems name the offending row or
/// cell.
pub fn parse_game(text: &str) -> Result<Game, FormatError> {
    let doc: GameDocument = serde_json::from_str(text)?;
    game_from_document(&doc)
}

pub fn game_from_document(doc: &GameDocument) -> Result<Game, FormatError> {
    if doc.players != 2 {
        return Err(FormatError::PlayerCount(doc.players));
    }
    if doc.actions.len() != 2 {
        return Err(FormatError::ActionLists(doc.actions.len()));
    }
    let n = doc.actions[0].len();
    let m = doc.actions[1].len();
    if doc.payoffs.len() != n {
        return Err(FormatError::RowCount {
            expected: n,
            found: doc.payoffs.len(),
        });
    }
    let mut p1 = vec![vec![0.0; m]; n];
    let mut p2 = vec![vec![0.0; m]; n];
    for (i, row) in doc.payoffs.iter().enumerate() {
        if row.len() != m {
            return Err(FormatError::Ragged {
                row: i,
                found: row.len(),
                expected: m,
            });
        }
        for (j, cell) in row.iter().enumerate() {
            p1[i][j] = cell[0].evaluate().map_err(|reason| FormatError::BadCell {
                row: i,
                col: j,
                reason,
            })?;
            p2[i][j] = cell[1].evaluate().map_err(|reason| FormatError::BadCell {
                row: i,
                col: j,
                reason,
            })?;
        }
    }
    Game::with_labels(p1, p2, doc.actions[0].clone(), doc.actions[1].clone()).map_err(|e| {
        FormatError::BadCell {
            row: 0,
            col: 0,
            reason: e.to_string(),
        }
    })
}

pub fn document_from_game(g: &Game) -> GameDocument {
    let labels = |p: Player| -> Vec<String> { (0..g.actions(p)).map(|a| g.label(p, a)).collect() };
    let payoffs = (0..g.rows())
        .map(|i| {
            (0..g.cols())
                .map(|j| {
                    [
                        PayoffValue::Number(g.u1(i, j)),
                        PayoffValue::Number(g.u2(i, j)),
                    ]
                })
                .collect()
        })
        .collect();
    GameDocument {
        players: 2,
        actions: vec![labels(Player::One), labels(Player::Two)],
        payoffs,
    }
}

/// Serializes a game; [`parse_game`] reproduces the payoffs bit-exactly.
pub fn write_game(g: &Game) -> String {
    serde_json::to_string_pretty(&document_from_game(g)).expect("document serialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games;

    const PD_DOC: &str = r#"{
        "players": 2,
        "actions": [["Cooperate", "Defect"], ["Cooperate", "Defect"]],
        "payoffs": [[[3, 3], [0, 5]], [[5, 0], [1, 1]]]
    }"#;

    #[test]
    fn parses_prisoners_dilemma() {
        let g = parse_game(PD_DOC).unwrap();
        assert_eq!((g.rows(), g.cols()), (2, 2));
        assert_eq!(g.u1(0, 0), 3.0);
        assert_eq!(g.u2(0, 1), 5.0);
        assert_eq!(g.label(Player::One, 1), "Defect");
    }

    #[test]
    fn rational_strings_evaluate_to_nearest_double() {
        let doc = r#"{
            "players": 2,
            "actions": [["x"], ["y"]],
            "payoffs": [[["1/3", "-2/7"]]]
        }"#;
        let g = parse_game(doc).unwrap();
        assert_eq!(g.u1(0, 0), 1.0 / 3.0);
        assert_eq!(g.u2(0, 0), -2.0 / 7.0);
    }

    #[test]
    fn rejects_wrong_player_count() {
        let doc = r#"{"players": 3, "actions": [["a"], ["b"]], "payoffs": [[[1, 2]]]}"#;
        assert!(matches!(parse_game(doc), Err(FormatError::PlayerCount(3))));
    }

    #[test]
    fn rejects_ragged_matrix() {
        let doc = r#"{
            "players": 2,
            "actions": [["a", "b"], ["c", "d"]],
            "payoffs": [[[1, 2], [3, 4]], [[5, 6]]]
        }"#;
        assert!(matches!(parse_game(doc), Err(FormatError::Ragged { .. })));
    }

    #[test]
    fn rejects_zero_denominator() {
        let doc = r#"{"players": 2, "actions": [["a"], ["b"]], "payoffs": [[["1/0", 2]]]}"#;
        assert!(matches!(parse_game(doc), Err(FormatError::BadCell { .. })));
    }

    #[test]
    fn json_errors_carry_position() {
        let err = parse_game("{ nope").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "diagnostic was: {msg}");
    }

    #[test]
    fn round_trip_reproduces_payoffs_exactly() {
        let g = games::travelers(2, 10, 2.0).unwrap();
        let text = write_game(&g);
        let back = parse_game(&text).unwrap();
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                assert_eq!(g.u1(i, j).to_bits(), back.u1(i, j).to_bits());
                assert_eq!(g.u2(i, j).to_bits(), back.u2(i, j).to_bits());
            }
        }
    }
}
