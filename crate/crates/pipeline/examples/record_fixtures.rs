//! Re-records the replay fixtures under `fixtures/` from the canned model
//! answers in `fixtures/responses/`. Each case runs the real pipeline with
//! the default templates, so the recorded requests always match them.
//!
//! Usage: cargo run -p gameforge-pipeline --example record_fixtures

use std::fs;
use std::path::{Path, PathBuf};

use gameforge_llm::{Canned, SamplingParams, Session};
use gameforge_pipeline::{PromptTemplates, Setting, Translator};

const FAILING: [&str; 4] =
    ["failing/1_no_fence.md", "failing/2_syntax.md", "failing/3_exec.md", "failing/4_exec.md"];

struct Case {
    file: String,
    game: &'static str,
    setting: Setting,
    responses: Vec<&'static str>,
    succeeds: bool,
}

fn cases() -> Vec<Case> {
    let case = |file: &str, game, setting, responses: Vec<&'static str>, succeeds| Case {
        file: file.to_string(),
        game,
        setting,
        responses,
        succeeds,
    };
    let mut out = vec![
        case("kuhn.json", "kuhn_poker", Setting::D, vec!["kuhn/stage_one.md", "kuhn/attempt_1.md", "kuhn/attempt_2.md"], true),
        case("stage_one/bagwell.json", "bagwell", Setting::D, vec!["bagwell/stage_one.md", "bagwell/attempt_1.md"], true),
        case(
            "stage_one/market_entry.json",
            "market_entry",
            Setting::D,
            vec!["market_entry/stage_one.md", "market_entry/attempt_1.md"],
            true,
        ),
        case("protocol/basic_success.json", "market_entry", Setting::Basic, vec!["market_entry/direct.md"], true),
        case(
            "eval/D/market_entry/sample-1.json",
            "market_entry",
            Setting::D,
            vec!["market_entry/stage_one.md", "market_entry/attempt_1.md"],
            true,
        ),
        case("eval/A/market_entry/sample-5.json", "market_entry", Setting::A, FAILING.to_vec(), false),
    ];
    for setting in Setting::ALL {
        let mut responses = if setting.stage_one() { vec!["market_entry/stage_one.md"] } else { vec![] };
        responses.extend(FAILING);
        let file = format!("protocol/{}_fail.json", setting.to_string().to_lowercase());
        out.push(case(&file, "market_entry", setting, responses, false));
    }
    for n in 1..=4 {
        let file = format!("eval/A/market_entry/sample-{n}.json");
        out.push(case(&file, "market_entry", Setting::A, vec!["market_entry/attempt_1.md"], true));
    }
    out
}

/// The sampling values every fixture is recorded with.
fn params() -> SamplingParams {
    SamplingParams::new("fixture-model", 0.0, 1.0)
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let fixtures = root.join("fixtures");
    let templates = PromptTemplates::default();
    let translator = Translator::new(&templates, params());
    for case in cases() {
        let description = fs::read_to_string(root.join("corpus").join(case.game).join("description.txt"))
            .expect("corpus description");
        let responses: Vec<String> = case
            .responses
            .iter()
            .map(|r| fs::read_to_string(fixtures.join("responses").join(r)).expect("canned response"))
            .collect();
        let path: PathBuf = fixtures.join(&case.file);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        let session = Session::recording(Box::new(Canned::new(responses)), path.clone());
        let run = translator.translate(description.trim_end(), case.setting, &session);
        assert_eq!(session.pending(), case.responses.len(), "{}: not every response was used", case.file);
        assert_eq!(run.succeeded(), case.succeeds, "{}: {:?}", case.file, run.outcome);
        session.close().unwrap();
        println!("{} ({} exchanges)", case.file, case.responses.len());
    }
}
