//! The pipeline against the recorded sessions in `fixtures/`. Replays are
//! strict: every request must hash to the recorded one.

use std::path::{Path, PathBuf};

use gameforge_core::{compute_features, parse_efg};
use gameforge_llm::{load_session_file, Canned, ChatMessage, Role, SamplingParams, Session};
use gameforge_pipeline::{
    write_artifacts, AttemptResult, FailureKind, PipelineError, PromptTemplates, Setting, TranslationRun, Translator,
};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn description(game: &str) -> String {
    std::fs::read_to_string(root().join("corpus").join(game).join("description.txt")).unwrap().trim_end().to_string()
}

fn params() -> SamplingParams {
    SamplingParams::new("fixture-model", 0.0, 1.0)
}

fn replay(fixture: &str, game: &str, setting: Setting) -> (TranslationRun, Session) {
    let templates = PromptTemplates::default();
    let session = Session::replay_file(&root().join("fixtures").join(fixture), true).unwrap();
    let run = Translator::new(&templates, params()).translate(&description(game), setting, &session);
    assert_eq!(session.pending(), 0, "{fixture}: unread exchanges");
    (run, session)
}

fn user_text(messages: &[ChatMessage]) -> &str {
    &messages.iter().rev().find(|m| m.role == Role::User).unwrap().content
}

#[test]
fn bagwell_stage_one_groups_player_two() {
    let (run, _) = replay("stage_one/bagwell.json", "bagwell", Setting::D);
    let s1 = run.stage_one.as_ref().unwrap();
    assert_eq!(s1.infoset_commands, ["set_infoset node=root.0.0 like=root.1.0", "set_infoset node=root.0.1 like=root.1.1"]);
    assert!(!s1.concluded_perfect_info);
    assert!(s1.reasoning.contains("Player 2's decision nodes will be based on what they believe Player 1 chose."));
    assert!(user_text(&run.attempts[0].messages).contains(&s1.code_block));
    assert!(run.succeeded());
}

#[test]
fn market_entry_stage_one_concludes_perfect_information() {
    let (run, _) = replay("stage_one/market_entry.json", "market_entry", Setting::D);
    let s1 = run.stage_one.as_ref().unwrap();
    assert!(s1.infoset_commands.is_empty());
    assert!(s1.concluded_perfect_info);
    assert!(s1.reasoning.contains("there is no need to set any information sets"));
    assert!(user_text(&run.attempts[0].messages).contains(&s1.code_block));
}

#[test]
fn kuhn_recovers_after_one_error() {
    let (run, session) = replay("kuhn.json", "kuhn_poker", Setting::D);
    assert!(run.succeeded(), "{:?}", run.outcome);
    assert_eq!(run.attempts.len(), 2);
    let first_error = run.attempts[0].error().unwrap().lines().next().unwrap().to_string();
    assert!(first_error.contains("set_infoset"), "{first_error}");
    assert!(user_text(&run.attempts[1].messages).contains(&first_error));
    assert_eq!(run.attempts[1].error_fed_forward.as_deref(), run.attempts[0].error());

    let f = compute_features(run.game.as_ref().unwrap()).unwrap();
    assert_eq!((f.perfect_info, f.zero_sum, f.max_depth, f.n_players, f.n_decision_nodes, f.n_leaves), (false, true, 4, 2, 25, 30));
    assert_eq!(session.transcript().len(), 3);
}

#[test]
fn replay_is_deterministic() {
    let (a, sa) = replay("kuhn.json", "kuhn_poker", Setting::D);
    let (b, sb) = replay("kuhn.json", "kuhn_poker", Setting::D);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(sa.transcript(), sb.transcript());

    let (da, db) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    write_artifacts(da.path(), &a, &sa.transcript(), "kuhn-1").unwrap();
    write_artifacts(db.path(), &b, &sb.transcript(), "kuhn-1").unwrap();
    for file in ["run.json", "transcript.json", "script.gs", "output.efg", "responses/stage-one.txt", "responses/attempt-2.txt"] {
        let x = std::fs::read(da.path().join(file)).unwrap();
        assert_eq!(x, std::fs::read(db.path().join(file)).unwrap(), "{file}");
    }
    let meta: serde_json::Value = serde_json::from_slice(&std::fs::read(da.path().join("run.json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], "kuhn-1");
    assert_eq!(meta["final"]["status"], "success");
}

#[test]
fn basic_setting_parses_efg_directly() {
    let (run, session) = replay("protocol/basic_success.json", "market_entry", Setting::Basic);
    assert!(run.stage_one.is_none());
    assert!(run.succeeded());
    let transcript = session.transcript();
    let sent = &transcript.entries()[0].messages;
    assert_eq!(sent.len(), 1);
    assert!(sent[0].content.contains(".efg format"));
    assert!(!sent[0].content.contains("GameScript"));
    let efg = run.efg().unwrap();
    assert_eq!(compute_features(&parse_efg(efg).unwrap()).unwrap().n_leaves, 3);
}

/// Each `*_fail` fixture holds four failing answers (after a stage-one
/// answer for C and D).
#[test]
fn settings_drive_prompt_composition() {
    for setting in Setting::ALL {
        let name = format!("protocol/{}_fail.json", setting.to_string().to_lowercase());
        let (run, session) = replay(&name, "market_entry", setting);
        assert!(!run.succeeded(), "{name}");
        assert_eq!(run.attempts.len(), 4, "{name}");
        assert_eq!(run.stage_one.is_some(), setting.stage_one(), "{name}");

        let transcript = session.transcript();
        let iir = "please infer the imperfect information structure";
        let with_iir = transcript.entries().iter().filter(|e| e.messages.iter().any(|m| m.content.contains(iir))).count();
        assert_eq!(with_iir, usize::from(setting.stage_one()), "{name}");

        for pair in run.attempts.windows(2) {
            let (prev, next) = (&pair[0], &pair[1]);
            let prompt = user_text(&next.messages);
            let err = prev.error().unwrap();
            if setting.self_debug() {
                assert!(prompt.starts_with("Your code contains an error."), "{name}");
                assert!(prompt.contains(err), "{name}");
            } else {
                assert_eq!(prompt, PromptTemplates::default().get("bland_retry").unwrap(), "{name}");
                assert!(next.error_fed_forward.is_none());
            }
            assert_eq!(next.messages[..prev.messages.len()], prev.messages[..], "{name}: history kept");
        }

        // Byte-exact against the recording.
        let recorded = load_session_file(&root().join("fixtures").join(&name)).unwrap();
        let sent: Vec<_> = transcript.entries().iter().map(|e| e.messages.clone()).collect();
        let expected: Vec<_> = recorded.iter().map(|x| x.request.messages.clone()).collect();
        assert_eq!(sent, expected, "{name}");
    }
}

#[test]
fn failure_kinds_are_recorded() {
    let (run, _) = replay("protocol/b_fail.json", "market_entry", Setting::B);
    let kinds: Vec<FailureKind> = run
        .attempts
        .iter()
        .map(|a| match a.result {
            AttemptResult::Error { kind, .. } => kind,
            AttemptResult::Ok { .. } => panic!("unexpected success"),
        })
        .collect();
    assert_eq!(kinds, [FailureKind::Extraction, FailureKind::Syntax, FailureKind::Execution, FailureKind::Execution]);
}

#[test]
fn attempt_cap_follows_max_debug_attempts() {
    let templates = PromptTemplates::default();
    for cap in 0..=3 {
        let session = Session::replay_file(&root().join("fixtures/protocol/b_fail.json"), false).unwrap();
        let translator = Translator { max_debug_attempts: cap, ..Translator::new(&templates, params()) };
        let run = translator.translate(&description("market_entry"), Setting::B, &session);
        assert_eq!(run.attempts.len(), cap + 1);
        assert_eq!(session.pending(), 3 - cap);
    }
}

#[test]
fn stage_one_without_code_block_fails_the_run() {
    let templates = PromptTemplates::default();
    let translator = Translator::new(&templates, params());
    let session = Session::with_backend(Box::new(Canned::new(["No imperfect information here."])));
    let err = translator.run_stage_one("d", &session).unwrap_err();
    assert!(matches!(err, PipelineError::Extraction(_)));

    let session = Session::with_backend(Box::new(Canned::new(["No imperfect information here."])));
    let run = translator.translate("d", Setting::C, &session);
    assert!(run.attempts.is_empty());
    assert!(!run.succeeded());
}

#[test]
fn exhausted_backend_ends_the_run() {
    let templates = PromptTemplates::default();
    let session = Session::with_backend(Box::new(Canned::new(["```\nbogus\n```"])));
    let run = Translator::new(&templates, params()).translate("d", Setting::B, &session);
    assert_eq!(run.attempts.len(), 1);
    match &run.outcome {
        gameforge_pipeline::Final::Failure { reason } => assert!(reason.contains("replay exhausted"), "{reason}"),
        other => panic!("{other:?}"),
    }
}
