//! Evaluation harness: the game corpus, hand-built reference games,
//! feature-based consistency checks and pass@k sweeps over the pipeline.
//!
//! ```
//! use gameforge_harness::{consistency_check, reference_game, ExpectedFeatures};
//!
//! let game = reference_game("market_entry").unwrap();
//! let expected = ExpectedFeatures {
//!     perfect_info: true,
//!     zero_sum: false,
//!     max_depth: 2,
//!     n_players: 2,
//!     n_decision_nodes: 2,
//!     n_leaves: 3,
//!     perfect_recall: None,
//! };
//! assert!(consistency_check(&game, &expected).structural_pass);
//!
//! let wrong = ExpectedFeatures { n_leaves: 4, ..expected };
//! let report = consistency_check(&game, &wrong);
//! assert_eq!(report.feature_diff[0].field, "nLeaves");
//! ```

pub mod check;
mod corpus;
pub mod eval;
pub mod metrics;
mod reference;

pub use check::{consistency_check, feature_diff, worksheet, ConsistencyReport, FeatureDiff};
pub use corpus::{load_corpus, CorpusEntry, CorpusError, ExpectedFeatures};
pub use eval::{render_markdown, run_eval, sample_sessions, write_csv, EvalConfig, EvalReport, GameRow, SampleKey};
pub use metrics::{compute_pass_metrics, Cell, MetricsError, PassMetrics, ReviewMode, SampleOutcome, Verdict};
pub use reference::{reference_game, REFERENCE_IDS};
