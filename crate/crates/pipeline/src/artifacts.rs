use std::fs;
use std::io;
use std::path::Path;

use gameforge_llm::Transcript;
use serde::Serialize;

use crate::TranslationRun;

#[derive(Serialize)]
struct RunMetadata<'a> {
    seed: &'a str,
    #[serde(flatten)]
    run: &'a TranslationRun,
}

/// Writes one sample's files into `dir`:
///
/// ```text
/// transcript.json          every request and response, in order
/// responses/stage-one.txt  raw stage-one answer, when there was one
/// responses/attempt-N.txt  raw answer of each generation attempt
/// script.gs | payload.efg  payload extracted from the last attempt
/// output.efg               the final game, on success
/// run.json                 the run record, labeled with `seed`
/// ```
pub fn write_artifacts(dir: &Path, run: &TranslationRun, transcript: &Transcript, seed: &str) -> io::Result<()> {
    let responses = dir.join("responses");
    fs::create_dir_all(&responses)?;
    fs::write(dir.join("transcript.json"), json(transcript))?;
    if let Some(s) = &run.stage_one {
        fs::write(responses.join("stage-one.txt"), &s.raw_response)?;
    }
    for a in &run.attempts {
        fs::write(responses.join(format!("attempt-{}.txt", a.index)), &a.response)?;
    }
    if let Some(payload) = run.attempts.last().and_then(|a| a.payload.as_ref()) {
        let name = if run.setting.uses_dsl() { "script.gs" } else { "payload.efg" };
        fs::write(dir.join(name), format!("{payload}\n"))?;
    }
    if let Some(efg) = run.efg() {
        fs::write(dir.join("output.efg"), efg)?;
    }
    fs::write(dir.join("run.json"), json(&RunMetadata { seed, run }))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("run records serialize");
    s.push('\n');
    s
}
