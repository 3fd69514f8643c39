use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use gameforge_core::{compute_features, write_efg};
use gameforge_harness::{
    load_corpus, reference_game, render_markdown, run_eval, sample_sessions, write_csv, Cell, CorpusEntry, EvalConfig,
    ExpectedFeatures, SampleKey,
};
use gameforge_llm::{Canned, LiveConfig, SamplingParams, Session, SessionMode};
use gameforge_pipeline::{PromptTemplates, Setting};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn market_entry() -> Vec<CorpusEntry> {
    load_corpus(&root().join("corpus")).unwrap().into_iter().filter(|e| e.id == "market_entry").collect()
}

fn fixture_params() -> SamplingParams {
    SamplingParams::new("fixture-model", 0.0, 1.0)
}

#[test]
fn four_of_five_is_a_grey_cell() {
    let templates = PromptTemplates::default();
    let out = tempfile::tempdir().unwrap();
    let mut config = EvalConfig::new(Setting::A, fixture_params());
    config.out_dir = Some(out.path().to_path_buf());
    let sessions = sample_sessions(SessionMode::Replay(root().join("fixtures/eval")), LiveConfig::default(), true);
    let report = run_eval(&market_entry(), &config, &templates, &sessions).unwrap();
    let m = report.row("market_entry").unwrap().metrics;
    assert_eq!((m.samples_run, m.s, m.pass_at_k, m.pass_all_k), (5, 4, true, false));
    assert_eq!(m.cell, Cell::Grey(4));
    assert_eq!(m.cell.tag(), "grey[4]");
    assert!(render_markdown(std::slice::from_ref(&report)).contains("| market_entry | ✓[4] |"));

    let mut csv = Vec::new();
    write_csv(&[report], &mut csv).unwrap();
    let csv = String::from_utf8(csv).unwrap();
    assert_eq!(csv.lines().nth(1), Some("A,market_entry,5,5,4,true,false,grey[4]"));

    let sample = out.path().join("A/market_entry/sample-1");
    for f in ["run.json", "transcript.json", "script.gs", "output.efg", "worksheet.md", "check.json"] {
        assert!(sample.join(f).is_file(), "{f}");
    }
    assert!(!out.path().join("A/market_entry/sample-5/output.efg").exists());
}

#[test]
fn stop_on_success_runs_one_sample() {
    let templates = PromptTemplates::default();
    let mut config = EvalConfig::new(Setting::D, fixture_params());
    config.stop_on_success = true;
    let opened = AtomicUsize::new(0);
    let inner = sample_sessions(SessionMode::Replay(root().join("fixtures/eval")), LiveConfig::default(), true);
    let sessions = |key: &SampleKey| {
        opened.fetch_add(1, Ordering::SeqCst);
        inner(key)
    };
    let report = run_eval(&market_entry(), &config, &templates, &sessions).unwrap();
    assert_eq!(opened.load(Ordering::SeqCst), 1);
    let m = report.row("market_entry").unwrap().metrics;
    assert_eq!((m.samples_run, m.s, m.pass_at_k, m.pass_all_k), (1, 1, true, false));
}

#[test]
fn missing_session_files_fail_the_sample_without_aborting() {
    let templates = PromptTemplates::default();
    let config = EvalConfig::new(Setting::B, fixture_params());
    let sessions = sample_sessions(SessionMode::Replay(root().join("fixtures/eval")), LiveConfig::default(), true);
    let report = run_eval(&market_entry(), &config, &templates, &sessions).unwrap();
    let m = report.row("market_entry").unwrap().metrics;
    assert_eq!((m.samples_run, m.s, m.cell), (5, 0, Cell::Cross));
}

/// Every game answered with its own reference file under the Basic setting,
/// checked against features computed from that same file.
#[test]
fn saturated_sweep_passes_everything() {
    let mut corpus = load_corpus(&root().join("corpus")).unwrap();
    for entry in &mut corpus {
        let f = compute_features(&reference_game(&entry.id).unwrap()).unwrap();
        entry.expected = ExpectedFeatures {
            perfect_info: f.perfect_info,
            zero_sum: f.zero_sum,
            max_depth: f.max_depth,
            n_players: f.n_players,
            n_decision_nodes: f.n_decision_nodes,
            n_leaves: f.n_leaves,
            perfect_recall: Some(f.perfect_recall),
        };
    }
    let templates = PromptTemplates::default();
    let mut config = EvalConfig::new(Setting::Basic, fixture_params());
    config.workers = 8;
    let sessions = |key: &SampleKey| {
        let efg = write_efg(&reference_game(key.game).unwrap()).unwrap();
        Ok(Session::with_backend(Box::new(Canned::new([format!("```\n{efg}```\n")]))))
    };
    let report = run_eval(&corpus, &config, &templates, &sessions).unwrap();
    assert_eq!(report.rows.len(), 18);
    assert_eq!(report.pass_all_k_count(), 18);
    assert!(report.rows.iter().all(|r| r.metrics.cell == Cell::Green));
}
