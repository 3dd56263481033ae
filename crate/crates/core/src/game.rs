//! Two-player normal-form games: payoff matrices, mixed strategies,
//! expected utilities, Pareto comparisons, and the team/zero-sum split.
//!
//! Player 1 is the row player, player 2 the column player. All types are
//! immutable after construction and the operations here are pure functions,
//! so values can be shared freely across threads.

use thiserror::Error;

/// Default comparison tolerance for domain decisions.
pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum GameError {
    #[error("payoff matrix must have at least one row and one column")]
    Empty,
    #[error("payoff row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("payoff matrices have different shapes")]
    ShapeMismatch,
    #[error("payoff entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("strategy has {found} entries, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("probability {0} is negative beyond tolerance")]
    NegativeProbability(f64),
    #[error("probabilities sum to {0}, expected 1")]
    BadProbabilitySum(f64),
    #[error("label list has {found} entries, expected {expected}")]
    LabelMismatch { expected: usize, found: usize },
}

/// One of the two players.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    /// Zero-based index, handy for arrays of per-player data.
    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }
}

/// A finite two-player game in normal form.
#[derive(Debug, Clone)]
pub struct Game {
    n: usize,
    m: usize,
    payoff1: Vec<f64>,
    payoff2: Vec<f64>,
    labels: Option<[Vec<String>; 2]>,
}

impl Game {
    pub fn new(payoff1: Vec<Vec<f64>>, payoff2: Vec<Vec<f64>>) -> Result<Game, GameError> {
        let (n, m, p1) = flatten(&payoff1)?;
        let (n2, m2, p2) = flatten(&payoff2)?;
        if (n, m) != (n2, m2) {
            return Err(GameError::ShapeMismatch);
        }
        Ok(Game {
            n,
            m,
            payoff1: p1,
            payoff2: p2,
            labels: None,
        })
    }

    pub fn with_labels(
        payoff1: Vec<Vec<f64>>,
        payoff2: Vec<Vec<f64>>,
        labels1: Vec<String>,
        labels2: Vec<String>,
    ) -> Result<Game, GameError> {
        let mut g = Game::new(payoff1, payoff2)?;
        if labels1.len() != g.n {
            return Err(GameError::LabelMismatch {
                expected: g.n,
                found: labels1.len(),
            });
        }
        if labels2.len() != g.m {
            return Err(GameError::LabelMismatch {
                expected: g.m,
                found: labels2.len(),
            });
        }
        g.labels = Some([labels1, labels2]);
        Ok(g)
    }

    /// Builds an n×m game from a per-cell payoff function.
    pub fn from_fn(
        n: usize,
        m: usize,
        mut cell: impl FnMut(usize, usize) -> (f64, f64),
    ) -> Result<Game, GameError> {
        let mut p1 = vec![vec![0.0; m]; n];
        let mut p2 = vec![vec![0.0; m]; n];
        for i in 0..n {
            for j in 0..m {
                let (a, b) = cell(i, j);
                p1[i][j] = a;
                p2[i][j] = b;
            }
        }
        Game::new(p1, p2)
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    /// Action count of the given player.
    pub fn actions(&self, player: Player) -> usize {
        match player {
            Player::One => self.n,
            Player::Two => self.m,
        }
    }

    pub fn u1(&self, i: usize, j: usize) -> f64 {
        self.payoff1[i * self.m + j]
    }

    pub fn u2(&self, i: usize, j: usize) -> f64 {
        self.payoff2[i * self.m + j]
    }

    pub fn cell(&self, i: usize, j: usize) -> (f64, f64) {
        (self.u1(i, j), self.u2(i, j))
    }

    /// Payoff of `player` at the pure profile (i, j).
    pub fn payoff(&self, player: Player, i: usize, j: usize) -> f64 {
        match player {
            Player::One => self.u1(i, j),
            Player::Two => self.u2(i, j),
        }
    }

    pub fn labels(&self, player: Player) -> Option<&[String]> {
        self.labels.as_ref().map(|l| l[player.index()].as_slice())
    }

    pub fn label(&self, player: Player, action: usize) -> String {
        match self.labels(player) {
            Some(l) => l[action].clone(),
            None => action.to_string(),
        }
    }

    /// Largest payoff magnitude over both matrices; used to scale tolerances.
    pub fn payoff_scale(&self) -> f64 {
        self.payoff1
            .iter()
            .chain(self.payoff2.iter())
            .fold(1.0_f64, |acc, v| acc.max(v.abs()))
    }

    fn check_profile(&self, s: &StrategyProfile) -> Result<(), GameError> {
        if s.s1.len() != self.n {
            return Err(GameError::DimensionMismatch {
                expected: self.n,
                found: s.s1.len(),
            });
        }
        if s.s2.len() != self.m {
            return Err(GameError::DimensionMismatch {
                expected: self.m,
                found: s.s2.len(),
            });
        }
        Ok(())
    }

    /// Expected utilities (U_1(s), U_2(s)) of a mixed profile: the bilinear
    /// forms s1ᵀ·A·s2 and s1ᵀ·B·s2.
    pub fn expected_utilities(&self, s: &StrategyProfile) -> Result<ValuePair, GameError> {
        self.check_profile(s)?;
        let mut v1 = 0.0;
        let mut v2 = 0.0;
        for (i, &p) in s.s1.probs().iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let mut r1 = 0.0;
            let mut r2 = 0.0;
            for (j, &q) in s.s2.probs().iter().enumerate() {
                r1 += self.u1(i, j) * q;
                r2 += self.u2(i, j) * q;
            }
            v1 += p * r1;
            v2 += p * r2;
        }
        Ok(ValuePair { v1, v2 })
    }

    /// Maximum social welfare: the pure profile maximizing u1 + u2.
    /// Ties go to the lowest row-major index.
    pub fn msw(&self) -> Msw {
        let mut best = f64::NEG_INFINITY;
        let mut at = (0, 0);
        for i in 0..self.n {
            for j in 0..self.m {
                let w = self.u1(i, j) + self.u2(i, j);
                if w > best {
                    best = w;
                    at = (i, j);
                }
            }
        }
        Msw {
            value: best,
            profile: at,
        }
    }

    /// Splits the game into its team part C = (A+B)/2 and zero-sum part
    /// D = (A−B)/2, so that A = C+D and B = C−D.
    pub fn decompose(&self) -> Decomposition {
        let mut team = vec![vec![0.0; self.m]; self.n];
        let mut zerosum = vec![vec![0.0; self.m]; self.n];
        for i in 0..self.n {
            for j in 0..self.m {
                team[i][j] = (self.u1(i, j) + self.u2(i, j)) / 2.0;
                zerosum[i][j] = (self.u1(i, j) - self.u2(i, j)) / 2.0;
            }
        }
        Decomposition { team, zerosum }
    }

    /// Compares two profiles by their utility pairs.
    pub fn pareto_relation(
        &self,
        s: &StrategyProfile,
        t: &StrategyProfile,
        eps: f64,
    ) -> Result<ParetoRelation, GameError> {
        let us = self.expected_utilities(s)?;
        let ut = self.expected_utilities(t)?;
        let d1 = us.v1 - ut.v1;
        let d2 = us.v2 - ut.v2;
        let rel = if d1.abs() <= eps && d2.abs() <= eps {
            ParetoRelation::Equal
        } else if d1 >= -eps && d2 >= -eps {
            if d1 > eps || d2 > eps {
                ParetoRelation::StronglyDominates
            } else {
                ParetoRelation::Dominates
            }
        } else if d1 <= eps && d2 <= eps {
            if d1 < -eps || d2 < -eps {
                ParetoRelation::StronglyDominated
            } else {
                ParetoRelation::Dominated
            }
        } else {
            ParetoRelation::Incomparable
        };
        Ok(rel)
    }
}

fn flatten(rows: &[Vec<f64>]) -> Result<(usize, usize, Vec<f64>), GameError> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(GameError::Empty);
    }
    let m = rows[0].len();
    let mut flat = Vec::with_capacity(rows.len() * m);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(GameError::Ragged {
                row: i,
                found: row.len(),
                expected: m,
            });
        }
        for (j, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(GameError::NonFinite { row: i, col: j });
            }
            flat.push(v);
        }
    }
    Ok((rows.len(), m, flat))
}

/// A probability distribution over one player's actions.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy {
    probs: Vec<f64>,
}

impl MixedStrategy {
    /// Validates and normalizes a probability vector. Entries in (−eps, 0)
    /// are clamped to 0 and the vector renormalized; larger negatives and
    /// sums off 1 by more than `eps` are errors.
    pub fn new(probs: Vec<f64>, eps: f64) -> Result<MixedStrategy, GameError> {
        let mut probs = probs;
        if probs.is_empty() {
            return Err(GameError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for p in probs.iter_mut() {
            if !p.is_finite() || *p < -eps {
                return Err(GameError::NegativeProbability(*p));
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > eps {
            return Err(GameError::BadProbabilitySum(sum));
        }
        for p in probs.iter_mut() {
            *p /= sum;
        }
        Ok(MixedStrategy { probs })
    }

    /// Point mass on `action` out of `len` actions.
    pub fn pure(len: usize, action: usize) -> MixedStrategy {
        let mut probs = vec![0.0; len];
        probs[action] = 1.0;
        MixedStrategy { probs }
    }

    /// Weight `w` on `a1` and `1 − w` on `a2`.
    pub fn two_point(len: usize, a1: usize, a2: usize, w: f64) -> MixedStrategy {
        let mut probs = vec![0.0; len];
        probs[a1] += w;
        probs[a2] += 1.0 - w;
        MixedStrategy { probs }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }

    /// Indices with probability above `eps`.
    pub fn support(&self, eps: f64) -> Vec<usize> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > eps)
            .map(|(i, _)| i)
            .collect()
    }
}

/// A mixed strategy for each player.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile {
    pub s1: MixedStrategy,
    pub s2: MixedStrategy,
}

impl StrategyProfile {
    pub fn new(s1: MixedStrategy, s2: MixedStrategy) -> StrategyProfile {
        StrategyProfile { s1, s2 }
    }

    pub fn pure(n: usize, m: usize, i: usize, j: usize) -> StrategyProfile {
        StrategyProfile {
            s1: MixedStrategy::pure(n, i),
            s2: MixedStrategy::pure(m, j),
        }
    }
}

/// A per-player pair of real values (utilities, minimax values, the coco
/// value, ...).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValuePair {
    pub v1: f64,
    pub v2: f64,
}

impl ValuePair {
    pub fn new(v1: f64, v2: f64) -> ValuePair {
        ValuePair { v1, v2 }
    }

    pub fn get(&self, player: Player) -> f64 {
        match player {
            Player::One => self.v1,
            Player::Two => self.v2,
        }
    }

    pub fn min(&self) -> f64 {
        self.v1.min(self.v2)
    }

    pub fn sum(&self) -> f64 {
        self.v1 + self.v2
    }
}

/// Maximum social welfare and a pure profile attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Msw {
    pub value: f64,
    pub profile: (usize, usize),
}

/// Team/zero-sum split of a game.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub team: Vec<Vec<f64>>,
    pub zerosum: Vec<Vec<f64>>,
}

impl Decomposition {
    /// The zero-sum component as a game (D, −D).
    pub fn zero_sum_game(&self) -> Game {
        let neg: Vec<Vec<f64>> = self
            .zerosum
            .iter()
            .map(|row| row.iter().map(|v| -v).collect())
            .collect();
        Game::new(self.zerosum.clone(), neg).expect("decomposition matrices are well formed")
    }

    /// The team component as a game (C, C).
    pub fn team_game(&self) -> Game {
        Game::new(self.team.clone(), self.team.clone())
            .expect("decomposition matrices are well formed")
    }

    /// Largest entry of the team matrix (ties: lowest row-major index).
    pub fn team_max(&self) -> (f64, (usize, usize)) {
        let mut best = f64::NEG_INFINITY;
        let mut at = (0, 0);
        for (i, row) in self.team.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v > best {
                    best = v;
                    at = (i, j);
                }
            }
        }
        (best, at)
    }
}

/// Outcome of comparing two strategy profiles by Pareto dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParetoRelation {
    Equal,
    Dominates,
    StronglyDominates,
    Dominated,
    StronglyDominated,
    Incomparable,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn prisoners_dilemma() -> Game {
        Game::new(
            vec![vec![3.0, 0.0], vec![5.0, 1.0]],
            vec![vec![3.0, 5.0], vec![0.0, 1.0]],
        )
        .unwrap()
    }

    fn xam1() -> Game {
        Game::new(vec![vec![3.0, 1.0]], vec![vec![2.0, 0.0]]).unwrap()
    }

    #[test]
    fn pd_pure_cooperate_utilities() {
        let g = prisoners_dilemma();
        let s = StrategyProfile::pure(2, 2, 0, 0);
        let u = g.expected_utilities(&s).unwrap();
        assert_eq!((u.v1, u.v2), (3.0, 3.0));
    }

    #[test]
    fn point_mass_profile_reads_cell() {
        let g = Game::new(
            vec![vec![7.0, -1.0], vec![0.5, 2.0]],
            vec![vec![4.0, 0.0], vec![1.0, 3.0]],
        )
        .unwrap();
        let s = StrategyProfile::pure(2, 2, 0, 0);
        let u = g.expected_utilities(&s).unwrap();
        assert_eq!((u.v1, u.v2), (7.0, 4.0));
    }

    #[test]
    fn pd_uniform_profile() {
        let g = prisoners_dilemma();
        let half = MixedStrategy::new(vec![0.5, 0.5], DEFAULT_EPS).unwrap();
        let s = StrategyProfile::new(half.clone(), half);
        let u = g.expected_utilities(&s).unwrap();
        assert!((u.v1 - 2.25).abs() < 1e-12);
        assert!((u.v2 - 2.25).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let g = prisoners_dilemma();
        let s = StrategyProfile::pure(3, 2, 0, 0);
        assert!(matches!(
            g.expected_utilities(&s),
            Err(GameError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn msw_of_pd() {
        let msw = prisoners_dilemma().msw();
        assert_eq!(msw.value, 6.0);
        assert_eq!(msw.profile, (0, 0));
    }

    #[test]
    fn msw_of_xam1() {
        assert_eq!(xam1().msw().value, 5.0);
    }

    #[test]
    fn msw_of_single_cell() {
        let g = Game::new(vec![vec![2.5]], vec![vec![-1.0]]).unwrap();
        assert_eq!(g.msw().value, 1.5);
        assert_eq!(g.msw().profile, (0, 0));
    }

    #[test]
    fn decompose_pd() {
        let d = prisoners_dilemma().decompose();
        assert_eq!(d.team, vec![vec![3.0, 2.5], vec![2.5, 1.0]]);
        assert_eq!(d.zerosum, vec![vec![0.0, -2.5], vec![2.5, 0.0]]);
    }

    #[test]
    fn decompose_team_game_has_zero_zerosum() {
        let p = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        let g = Game::new(p.clone(), p).unwrap();
        let d = g.decompose();
        assert!(d.zerosum.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn decompose_xam1() {
        let d = xam1().decompose();
        assert_eq!(d.team, vec![vec![2.5, 0.5]]);
        assert_eq!(d.zerosum, vec![vec![0.5, 0.5]]);
    }

    #[test]
    fn pareto_relations_in_pd() {
        let g = prisoners_dilemma();
        let cc = StrategyProfile::pure(2, 2, 0, 0);
        let dd = StrategyProfile::pure(2, 2, 1, 1);
        let cd = StrategyProfile::pure(2, 2, 0, 1);
        let dc = StrategyProfile::pure(2, 2, 1, 0);
        assert_eq!(
            g.pareto_relation(&cc, &dd, DEFAULT_EPS).unwrap(),
            ParetoRelation::StronglyDominates
        );
        assert_eq!(
            g.pareto_relation(&dd, &cc, DEFAULT_EPS).unwrap(),
            ParetoRelation::StronglyDominated
        );
        assert_eq!(
            g.pareto_relation(&cc, &cc, DEFAULT_EPS).unwrap(),
            ParetoRelation::Equal
        );
        assert_eq!(
            g.pareto_relation(&cd, &dc, DEFAULT_EPS).unwrap(),
            ParetoRelation::Incomparable
        );
    }

    #[test]
    fn mixed_strategy_clamps_small_negatives() {
        let s = MixedStrategy::new(vec![1.0 + 5e-10, -5e-10], 1e-9).unwrap();
        assert_eq!(s.get(1), 0.0);
        assert!((s.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mixed_strategy_rejects_large_negatives_and_bad_sums() {
        assert!(matches!(
            MixedStrategy::new(vec![1.1, -0.1], 1e-9),
            Err(GameError::NegativeProbability(_))
        ));
        assert!(matches!(
            MixedStrategy::new(vec![0.6, 0.6], 1e-9),
            Err(GameError::BadProbabilitySum(_))
        ));
    }

    #[test]
    fn game_construction_errors() {
        assert!(matches!(Game::new(vec![], vec![]), Err(GameError::Empty)));
        assert!(matches!(
            Game::new(vec![vec![1.0], vec![1.0, 2.0]], vec![vec![1.0], vec![1.0]]),
            Err(GameError::Ragged { .. })
        ));
        assert!(matches!(
            Game::new(vec![vec![1.0, 2.0]], vec![vec![1.0]]),
            Err(GameError::ShapeMismatch)
        ));
        assert!(matches!(
            Game::new(vec![vec![f64::NAN]], vec![vec![1.0]]),
            Err(GameError::NonFinite { .. })
        ));
    }

    #[test]
    fn support_reports_nonzero_entries() {
        let s = MixedStrategy::new(vec![0.3, 0.0, 0.7], DEFAULT_EPS).unwrap();
        assert_eq!(s.support(DEFAULT_EPS), vec![0, 2]);
    }
}
