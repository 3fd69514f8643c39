use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use gameforge_llm::{open_session, LiveConfig, LlmError, SamplingParams, Session, SessionMode};
use gameforge_pipeline::{write_artifacts, Final, PromptTemplates, Setting, TranslationRun, Translator};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::worksheet;
use crate::metrics::{compute_pass_metrics, PassMetrics, ReviewMode, SampleOutcome};
use crate::CorpusEntry;

#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub setting: Setting,
    pub k: usize,
    /// Stop sampling a game at its first passing sample.
    pub stop_on_success: bool,
    pub workers: usize,
    pub max_debug_attempts: usize,
    pub params: SamplingParams,
    pub mode: ReviewMode,
    /// Where per-sample artifacts go: `<out>/<setting>/<game>/sample-<n>/`.
    pub out_dir: Option<PathBuf>,
}

impl EvalConfig {
    pub fn new(setting: Setting, params: SamplingParams) -> Self {
        EvalConfig {
            setting,
            k: 5,
            stop_on_success: false,
            workers: 4,
            max_debug_attempts: gameforge_pipeline::DEFAULT_MAX_DEBUG_ATTEMPTS,
            params,
            mode: ReviewMode::default(),
            out_dir: None,
        }
    }
}

/// Identifies one sample, for choosing its session.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleKey<'a> {
    pub game: &'a str,
    pub setting: Setting,
    /// 1-based.
    pub sample: usize,
}

impl SampleKey<'_> {
    /// `<setting>/<game>/sample-<n>.json`
    pub fn session_file(&self) -> PathBuf {
        Path::new(&self.setting.to_string()).join(self.game).join(format!("sample-{}.json", self.sample))
    }
}

/// Session per sample. Record and replay paths name a directory holding
/// one session file per sample, laid out as [`SampleKey::session_file`].
pub fn sample_sessions(
    mode: SessionMode,
    live: LiveConfig,
    strict: bool,
) -> impl Fn(&SampleKey) -> Result<Session, LlmError> + Sync {
    move |key| match &mode {
        SessionMode::Live => open_session(&SessionMode::Live, &live, strict),
        SessionMode::Record(dir) => {
            let file = dir.join(key.session_file());
            if let Some(parent) = file.parent() {
                fs::create_dir_all(parent)
                    .map_err(|e| LlmError::SessionFile { path: parent.to_path_buf(), message: e.to_string() })?;
            }
            open_session(&SessionMode::Record(file), &live, strict)
        }
        SessionMode::Replay(dir) => open_session(&SessionMode::Replay(dir.join(key.session_file())), &live, strict),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameRow {
    pub game: String,
    pub metrics: PassMetrics,
    pub samples: Vec<SampleOutcome>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvalReport {
    pub setting: Setting,
    pub k: usize,
    pub rows: Vec<GameRow>,
}

impl EvalReport {
    pub fn pass_at_k_count(&self) -> usize {
        self.rows.iter().filter(|r| r.metrics.pass_at_k).count()
    }

    pub fn pass_all_k_count(&self) -> usize {
        self.rows.iter().filter(|r| r.metrics.pass_all_k).count()
    }

    pub fn row(&self, game: &str) -> Option<&GameRow> {
        self.rows.iter().find(|r| r.game == game)
    }
}

fn failed_run(setting: Setting, description: &str, max_debug_attempts: usize, reason: String) -> TranslationRun {
    TranslationRun {
        setting,
        description: description.to_string(),
        max_debug_attempts,
        stage_one: None,
        attempts: Vec::new(),
        outcome: Final::Failure { reason },
        game: None,
    }
}

/// Runs `k` samples per game (fewer with `stop_on_success`), games in
/// parallel on up to `workers` threads. A sample that cannot even open its
/// session counts as failed; nothing aborts the sweep.
pub fn run_eval<F>(corpus: &[CorpusEntry], config: &EvalConfig, templates: &PromptTemplates, sessions: &F) -> io::Result<EvalReport>
where
    F: Fn(&SampleKey) -> Result<Session, LlmError> + Sync,
{
    let translator =
        Translator { templates, params: config.params.clone(), max_debug_attempts: config.max_debug_attempts };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(io::Error::other)?;
    let rows: io::Result<Vec<GameRow>> = pool.install(|| {
        corpus.par_iter().map(|entry| eval_game(entry, config, &translator, sessions)).collect()
    });
    Ok(EvalReport { setting: config.setting, k: config.k, rows: rows? })
}

fn eval_game<F>(entry: &CorpusEntry, config: &EvalConfig, translator: &Translator, sessions: &F) -> io::Result<GameRow>
where
    F: Fn(&SampleKey) -> Result<Session, LlmError> + Sync,
{
    let mut samples = Vec::new();
    for n in 1..=config.k {
        let key = SampleKey { game: &entry.id, setting: config.setting, sample: n };
        let (run, transcript) = match sessions(&key) {
            Ok(session) => {
                let run = translator.translate(&entry.description, config.setting, &session);
                let transcript = session.transcript();
                let closed = session.close();
                match closed {
                    Ok(_) => (run, transcript),
                    Err(e) => (failed_run(config.setting, &entry.description, config.max_debug_attempts, e.to_string()), transcript),
                }
            }
            Err(e) => (failed_run(config.setting, &entry.description, config.max_debug_attempts, e.to_string()), Default::default()),
        };
        let outcome = SampleOutcome::evaluate(n, run, &entry.expected);
        if let Some(out) = &config.out_dir {
            let dir = out.join(config.setting.to_string()).join(&entry.id).join(format!("sample-{n}"));
            write_artifacts(&dir, &outcome.run, &transcript, &format!("{}-{}-sample-{n}", entry.id, config.setting))?;
            if let Some(game) = &outcome.run.game {
                fs::write(dir.join("worksheet.md"), worksheet(game))?;
            }
            let check = serde_json::json!({
                "structuralPass": outcome.structural_pass,
                "featureDiff": outcome.feature_diff,
                "semanticVerdict": outcome.semantic_verdict,
            });
            fs::write(dir.join("check.json"), format!("{}\n", serde_json::to_string_pretty(&check).unwrap()))?;
        }
        let passed = outcome.passes(config.mode);
        samples.push(outcome);
        if passed && config.stop_on_success {
            break;
        }
    }
    let metrics = compute_pass_metrics(&samples, config.k, config.mode).expect("sample count follows the protocol");
    Ok(GameRow { game: entry.id.clone(), metrics, samples })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    setting: String,
    game: &'a str,
    k: usize,
    samples_run: usize,
    s: usize,
    pass_at_k: bool,
    pass_all_k: bool,
    cell: String,
}

/// One CSV row per game and setting.
pub fn write_csv<W: io::Write>(reports: &[EvalReport], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for report in reports {
        for row in &report.rows {
            w.serialize(CsvRow {
                setting: report.setting.to_string(),
                game: &row.game,
                k: row.metrics.k,
                samples_run: row.metrics.samples_run,
                s: row.metrics.s,
                pass_at_k: row.metrics.pass_at_k,
                pass_all_k: row.metrics.pass_all_k,
                cell: row.metrics.cell.tag(),
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Games down, settings across, with `✗`, `✓[s]` and `✓` cells and
/// per-setting totals at the bottom.
pub fn render_markdown(reports: &[EvalReport]) -> String {
    let mut games: Vec<&str> = reports.iter().flat_map(|r| r.rows.iter().map(|row| row.game.as_str())).collect();
    games.sort();
    games.dedup();
    let mut out = String::from("| game |");
    for r in reports {
        out.push_str(&format!(" {} |", r.setting));
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(reports.len()));
    out.push('\n');
    for game in &games {
        out.push_str(&format!("| {game} |"));
        for r in reports {
            let cell = r.row(game).map(|row| row.metrics.cell.to_string()).unwrap_or_else(|| "-".into());
            out.push_str(&format!(" {cell} |"));
        }
        out.push('\n');
    }
    for (label, count) in [
        ("pass@k", EvalReport::pass_at_k_count as fn(&EvalReport) -> usize),
        ("pass-all-k", EvalReport::pass_all_k_count),
    ] {
        out.push_str(&format!("| {label} |"));
        for r in reports {
            out.push_str(&format!(" {} |", count(r)));
        }
        out.push('\n');
    }
    out
}
