use std::fmt;
use std::str::FromStr;

use gameforge_core::Game;
use gameforge_pipeline::TranslationRun;
use serde::{Deserialize, Serialize};

use crate::check::{consistency_check, FeatureDiff};
use crate::ExpectedFeatures;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[default]
    Unreviewed,
    Pass,
    Fail,
}

/// How unreviewed samples count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ReviewMode {
    /// Only a human `Pass` counts.
    Strict,
    /// The automated checks decide unless a reviewer said `Fail`.
    #[default]
    NecessaryOnly,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleOutcome {
    /// 1-based.
    pub sample_index: usize,
    pub run: TranslationRun,
    /// True only if the run succeeded and every checked feature matched.
    pub structural_pass: bool,
    pub feature_diff: Vec<FeatureDiff>,
    pub semantic_verdict: Verdict,
}

impl SampleOutcome {
    pub fn evaluate(sample_index: usize, run: TranslationRun, expected: &ExpectedFeatures) -> Self {
        let (structural_pass, feature_diff) = match &run.game {
            Some(game) => check(game, expected),
            None => (false, Vec::new()),
        };
        SampleOutcome { sample_index, run, structural_pass, feature_diff, semantic_verdict: Verdict::Unreviewed }
    }

    pub fn passes(&self, mode: ReviewMode) -> bool {
        self.structural_pass
            && match mode {
                ReviewMode::Strict => self.semantic_verdict == Verdict::Pass,
                ReviewMode::NecessaryOnly => self.semantic_verdict != Verdict::Fail,
            }
    }
}

fn check(game: &Game, expected: &ExpectedFeatures) -> (bool, Vec<FeatureDiff>) {
    let r = consistency_check(game, expected);
    (r.structural_pass, r.feature_diff)
}

/// A results-table cell: no sample passed, some passed (count shown), all
/// passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Cell {
    Cross,
    Grey(usize),
    Green,
}

impl Cell {
    pub fn new(s: usize, k: usize) -> Self {
        match s {
            0 => Cell::Cross,
            s if s >= k => Cell::Green,
            s => Cell::Grey(s),
        }
    }

    /// Plain-text tag: `cross`, `grey[s]` or `green`.
    pub fn tag(&self) -> String {
        match self {
            Cell::Cross => "cross".into(),
            Cell::Grey(s) => format!("grey[{s}]"),
            Cell::Green => "green".into(),
        }
    }

    /// Passing samples out of `k`.
    pub fn successes(&self, k: usize) -> usize {
        match *self {
            Cell::Cross => 0,
            Cell::Grey(s) => s,
            Cell::Green => k,
        }
    }
}

/// Markdown form: `✗`, `✓[s]`, `✓`.
impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Cross => f.write_str("✗"),
            Cell::Grey(s) => write!(f, "✓[{s}]"),
            Cell::Green => f.write_str("✓"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a result cell: `{0}`")]
pub struct ParseCellError(pub String);

/// Reads either the markdown form or the tag form.
impl FromStr for Cell {
    type Err = ParseCellError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let grey = |inner: &str| inner.parse::<usize>().ok().filter(|&n| n > 0).map(Cell::Grey);
        let cell = match t {
            "✗" | "cross" => Some(Cell::Cross),
            "✓" | "green" => Some(Cell::Green),
            _ => t
                .strip_prefix("✓[")
                .or_else(|| t.strip_prefix("grey["))
                .and_then(|r| r.strip_suffix(']'))
                .and_then(grey),
        };
        cell.ok_or_else(|| ParseCellError(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PassMetrics {
    pub k: usize,
    pub samples_run: usize,
    /// Passing samples.
    pub s: usize,
    pub pass_at_k: bool,
    pub pass_all_k: bool,
    pub cell: Cell,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("expected {k} samples, got {got}")]
    ArityMismatch { k: usize, got: usize },
}

/// Counts passing samples. Normally there are exactly `k`; fewer are
/// accepted only when sampling stopped at the first pass, that is, when the
/// last sample is the only passing one.
pub fn compute_pass_metrics(outcomes: &[SampleOutcome], k: usize, mode: ReviewMode) -> Result<PassMetrics, MetricsError> {
    let passing: Vec<bool> = outcomes.iter().map(|o| o.passes(mode)).collect();
    let stopped_early =
        passing.len() < k && passing.last() == Some(&true) && passing.iter().filter(|&&p| p).count() == 1;
    if k == 0 || (passing.len() != k && !stopped_early) {
        return Err(MetricsError::ArityMismatch { k, got: outcomes.len() });
    }
    let s = passing.iter().filter(|&&p| p).count();
    Ok(PassMetrics {
        k,
        samples_run: outcomes.len(),
        s,
        pass_at_k: s >= 1,
        pass_all_k: s == k,
        cell: Cell::new(s, k),
    })
}
