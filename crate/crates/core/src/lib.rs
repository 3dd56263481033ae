//! Solver library for two-player normal-form games built around cooperative
//! solution concepts: best-response utilities, minimax values, perfect
//! cooperative equilibria and their max-alpha and Pareto-optimal variants,
//! the coco value, and side-payment values. Production solvers run on a
//! dense simplex LP core and a constant-time 2×2 bilinear-program solver;
//! the `oracle` module holds independent brute-force references used by the
//! test suites.
//!
//! ```
//! use coopeq::{games, solvers, Player};
//!
//! let g = games::prisoners();
//! assert_eq!(solvers::best_utility(&g, Player::One), 1.0);
//!
//! // Mutual cooperation clears both thresholds by 2 and is the unique
//! // profile doing so maximally.
//! let r = solvers::find_mpce(&g);
//! assert!((r.alpha - 2.0).abs() < 1e-9);
//!
//! let coco = solvers::coco_value(&g);
//! assert_eq!((coco.v1, coco.v2), (3.0, 3.0));
//! ```

// Index-based loops mirror the matrix notation throughout the numeric code.
#![allow(clippy::needless_range_loop)]

pub mod bilinear;
pub mod format;
pub mod game;
pub mod games;
pub mod linprog;
pub mod oracle;
pub mod solvers;

pub use game::{
    Decomposition, Game, GameError, MixedStrategy, Msw, ParetoRelation, Player, StrategyProfile,
    ValuePair, DEFAULT_EPS,
};
pub use solvers::{AlphaResult, CeViolation, DealProfile};
