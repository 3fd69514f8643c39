//! Extensive-form game model with exact rational arithmetic.
//!
//! A [`Game`] is built with six primitives (`new_tree`, `append_move`,
//! `add_outcome`, `set_outcome`, `set_chance_probs`, `set_infoset`),
//! validated with [`validate_structure`], summarized with
//! [`compute_features`] and written to Gambit's `.efg` format with
//! [`write_efg`]. The [`script`] module is a small line-oriented language
//! driving the same primitives.
//!
//! ```
//! use gameforge_core::{compute_features, write_efg, Game, Player, Rational};
//!
//! let mut g = Game::new_tree(&["Buyer", "Seller"], "trust").unwrap();
//! let root = g.root();
//! g.append_move(&[root], Player::Personal(1), &["Trust", "Not trust"]).unwrap();
//! let trust = g.child(root, 0).unwrap();
//! g.append_move(&[trust], Player::Personal(2), &["Honor", "Abuse"]).unwrap();
//! for (path, pay) in [("root.0.0", [1, 1]), ("root.0.1", [-1, 2]), ("root.1", [0, 0])] {
//!     let o = g.add_outcome(pay.iter().map(|&x| Rational::from(x)).collect(), "").unwrap();
//!     let leaf = g.resolve(&path.parse().unwrap()).unwrap();
//!     g.set_outcome(leaf, Some(o)).unwrap();
//! }
//! let f = compute_features(&g).unwrap();
//! assert_eq!((f.n_decision_nodes, f.n_leaves, f.max_depth), (2, 3, 2));
//! assert!(write_efg(&g).unwrap().starts_with("EFG 2 R \"trust\""));
//! ```

pub mod compare;
mod error;
pub mod features;
pub mod format;
mod game;
#[cfg(feature = "random")]
pub mod random;
mod rational;
pub mod script;
pub mod validate;

pub use compare::structural_diff;
pub use error::GameError;
pub use features::{compute_features, has_perfect_recall, GameFeatures};
pub use format::{parse_efg, write_dot, write_efg, ParseError};
pub use game::{FrozenGame, Game, Infoset, InfosetId, NodeId, NodePath, Outcome, OutcomeId, ParsePathError, Player};
pub use rational::{ParseRationalError, Rational};
pub use script::{execute_script, parse_script, ExecError, Script, ScriptSyntaxError};
pub use validate::{fatal_violations, validate_structure, Severity, Violation};
