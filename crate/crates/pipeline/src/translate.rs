use gameforge_core::script::parse_fragment;
use gameforge_core::{compute_features, execute_script, parse_efg, parse_script, write_efg, Game, GameFeatures};
use gameforge_llm::{ChatMessage, LlmError, SamplingParams, Session};
use serde::{Deserialize, Serialize};

use crate::extract::{last_code_block, ExtractionError};
use crate::templates::{PromptTemplates, TemplateError};
use crate::Setting;

pub const DEFAULT_MAX_DEBUG_ATTEMPTS: usize = 3;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Llm(#[from] LlmError),
    #[error("stage one: {0}")]
    Extraction(#[from] ExtractionError),
    #[error(transparent)]
    Template(#[from] TemplateError),
}

/// What the information-set stage produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StageOneOutput {
    pub raw_response: String,
    /// The extracted code block, passed verbatim to stage two.
    pub code_block: String,
    /// `set_infoset` commands found in the block, in canonical form.
    pub infoset_commands: Vec<String>,
    /// Comment text from the block, one line per comment.
    pub reasoning: String,
    /// True exactly when `infoset_commands` is empty.
    pub concluded_perfect_info: bool,
}

impl StageOneOutput {
    /// Splits a stage-one response into commands and reasoning. Lines that
    /// are neither comments nor valid `set_infoset` commands are ignored.
    pub fn from_response(raw_response: &str) -> Result<Self, ExtractionError> {
        let code_block = last_code_block(raw_response)?;
        let mut infoset_commands = Vec::new();
        let mut reasoning = Vec::new();
        for line in code_block.lines().map(str::trim) {
            if let Some(comment) = line.strip_prefix('#') {
                reasoning.push(comment.trim());
                continue;
            }
            if let Ok(script) = parse_fragment(line) {
                for cmd in script.commands().filter(|c| c.verb() == "set_infoset") {
                    infoset_commands.push(cmd.to_string());
                }
            }
        }
        Ok(StageOneOutput {
            raw_response: raw_response.to_string(),
            concluded_perfect_info: infoset_commands.is_empty(),
            infoset_commands,
            reasoning: reasoning.join("\n"),
            code_block,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FailureKind {
    Extraction,
    Syntax,
    Execution,
    Format,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum AttemptResult {
    Ok { efg: String },
    Error { kind: FailureKind, message: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TranslationAttempt {
    /// 1-based.
    pub index: usize,
    pub messages: Vec<ChatMessage>,
    pub response: String,
    /// Script text, or raw `.efg` text in the Basic setting.
    pub payload: Option<String>,
    pub result: AttemptResult,
    /// The previous attempt's error, when this attempt's prompt carries it.
    pub error_fed_forward: Option<String>,
    #[serde(skip)]
    pub game: Option<Game>,
}

impl TranslationAttempt {
    pub fn error(&self) -> Option<&str> {
        match &self.result {
            AttemptResult::Ok { .. } => None,
            AttemptResult::Error { message, .. } => Some(message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum Final {
    #[serde(rename_all = "camelCase")]
    Success { attempt: usize, efg: String, features: GameFeatures },
    Failure { reason: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TranslationRun {
    pub setting: Setting,
    pub description: String,
    pub max_debug_attempts: usize,
    pub stage_one: Option<StageOneOutput>,
    pub attempts: Vec<TranslationAttempt>,
    #[serde(rename = "final")]
    pub outcome: Final,
    #[serde(skip)]
    pub game: Option<Game>,
}

impl TranslationRun {
    pub fn succeeded(&self) -> bool {
        matches!(self.outcome, Final::Success { .. })
    }

    pub fn efg(&self) -> Option<&str> {
        match &self.outcome {
            Final::Success { efg, .. } => Some(efg),
            Final::Failure { .. } => None,
        }
    }
}

/// Runs translations with one template set and one set of sampling values.
#[derive(Debug, Clone)]
pub struct Translator<'a> {
    pub templates: &'a PromptTemplates,
    pub params: SamplingParams,
    pub max_debug_attempts: usize,
}

impl<'a> Translator<'a> {
    pub fn new(templates: &'a PromptTemplates, params: SamplingParams) -> Self {
        Translator { templates, params, max_debug_attempts: DEFAULT_MAX_DEBUG_ATTEMPTS }
    }

    pub fn stage_one_messages(&self, description: &str) -> Result<Vec<ChatMessage>, TemplateError> {
        let t = self.templates;
        let user = format!(
            "{}\n\n{}",
            t.render("iir_init", &[])?,
            t.render("iir_request", &[("GAME DESCRIPTION", description)])?
        );
        Ok(vec![ChatMessage::system(t.render("code_gen_init", &[])?), ChatMessage::user(user)])
    }

    /// First generation request of a run.
    pub fn generation_messages(
        &self,
        setting: Setting,
        description: &str,
        stage_one: Option<&StageOneOutput>,
    ) -> Result<Vec<ChatMessage>, TemplateError> {
        let t = self.templates;
        if !setting.uses_dsl() {
            return Ok(vec![ChatMessage::user(t.render("direct_efg", &[("GAME DESCRIPTION", description)])?)]);
        }
        let user = match stage_one {
            Some(s) => {
                let code = format!("```\n{}\n```", s.code_block);
                t.render("efg_generation", &[("GAME DESCRIPTION", description), ("CODE FOR IMPERFECT INFORMATION", &code)])?
            }
            None => t.render("efg_generation_minimal", &[("GAME DESCRIPTION", description)])?,
        };
        Ok(vec![ChatMessage::system(t.render("code_gen_init", &[])?), ChatMessage::user(user)])
    }

    /// The follow-up request after a failed attempt: the conversation so far,
    /// the failed answer, then either the error (self-debug) or a bland
    /// request for a new answer.
    pub fn retry_messages(&self, setting: Setting, prior: &TranslationAttempt) -> Result<Vec<ChatMessage>, TemplateError> {
        let mut messages = prior.messages.clone();
        messages.push(ChatMessage::assistant(prior.response.clone()));
        let follow_up = match prior.error() {
            Some(err) if setting.self_debug() => self.templates.render("error_message", &[("ERROR MESSAGE", err)])?,
            _ => self.templates.render("bland_retry", &[])?,
        };
        messages.push(ChatMessage::user(follow_up));
        Ok(messages)
    }

    pub fn run_stage_one(&self, description: &str, session: &Session) -> Result<StageOneOutput, PipelineError> {
        let messages = self.stage_one_messages(description)?;
        let response = session.complete(&messages, &self.params)?;
        Ok(StageOneOutput::from_response(&response)?)
    }

    /// One request and the evaluation of its answer. A missing code block is
    /// recorded as a failed attempt like any other error.
    pub fn run_generation_attempt(
        &self,
        setting: Setting,
        description: &str,
        stage_one: Option<&StageOneOutput>,
        prior: Option<&TranslationAttempt>,
        session: &Session,
    ) -> Result<TranslationAttempt, PipelineError> {
        let (messages, index) = match prior {
            None => (self.generation_messages(setting, description, stage_one)?, 1),
            Some(p) => (self.retry_messages(setting, p)?, p.index + 1),
        };
        let error_fed_forward = prior.filter(|_| setting.self_debug()).and_then(|p| p.error().map(str::to_string));
        let response = session.complete(&messages, &self.params)?;
        let payload = last_code_block(&response).ok();
        let (result, game) = match &payload {
            None => (AttemptResult::Error { kind: FailureKind::Extraction, message: ExtractionError.to_string() }, None),
            Some(p) => match evaluate(setting, p) {
                Ok((game, efg)) => (AttemptResult::Ok { efg }, Some(game)),
                Err((kind, message)) => (AttemptResult::Error { kind, message }, None),
            },
        };
        Ok(TranslationAttempt { index, messages, response, payload, result, error_fed_forward, game })
    }

    /// Stage one when the setting has it, then up to `1 + max_debug_attempts`
    /// generation attempts, stopping at the first success. Errors from the
    /// model or the templates end the run as a failure.
    pub fn translate(&self, description: &str, setting: Setting, session: &Session) -> TranslationRun {
        let mut run = TranslationRun {
            setting,
            description: description.to_string(),
            max_debug_attempts: self.max_debug_attempts,
            stage_one: None,
            attempts: Vec::new(),
            outcome: Final::Failure { reason: String::new() },
            game: None,
        };
        if setting.stage_one() {
            match self.run_stage_one(description, session) {
                Ok(s) => run.stage_one = Some(s),
                Err(e) => {
                    run.outcome = Final::Failure { reason: e.to_string() };
                    return run;
                }
            }
        }
        for _ in 0..=self.max_debug_attempts {
            let attempt = match self.run_generation_attempt(
                setting,
                description,
                run.stage_one.as_ref(),
                run.attempts.last(),
                session,
            ) {
                Ok(a) => a,
                Err(e) => {
                    run.outcome = Final::Failure { reason: e.to_string() };
                    return run;
                }
            };
            if let (AttemptResult::Ok { efg }, Some(game)) = (&attempt.result, &attempt.game) {
                let features = compute_features(game).expect("a game that serialized is valid");
                run.outcome = Final::Success { attempt: attempt.index, efg: efg.clone(), features };
                run.game = Some(game.clone());
                run.attempts.push(attempt);
                return run;
            }
            run.attempts.push(attempt);
        }
        run.outcome = Final::Failure { reason: format!("all {} attempts failed", run.attempts.len()) };
        run
    }
}

/// Runs a payload: GameScript for the DSL settings, strict `.efg` parsing
/// for Basic. The error text names the line and quotes it.
fn evaluate(setting: Setting, payload: &str) -> Result<(Game, String), (FailureKind, String)> {
    let game = if setting.uses_dsl() {
        let script = parse_script(payload).map_err(|e| (FailureKind::Syntax, with_source(payload, e.line, &e)))?;
        execute_script(&script).map_err(|e| (FailureKind::Execution, with_source(payload, e.line, &e)))?
    } else {
        parse_efg(payload).map_err(|e| (FailureKind::Syntax, e.to_string()))?
    };
    let efg = write_efg(&game).map_err(|e| (FailureKind::Format, e.to_string()))?;
    Ok((game, efg))
}

fn with_source(payload: &str, line: usize, err: &dyn std::fmt::Display) -> String {
    match payload.lines().nth(line.wrapping_sub(1)).map(str::trim).filter(|l| !l.is_empty()) {
        Some(text) => format!("{err}\n    {text}"),
        None => err.to_string(),
    }
}

/// Free-function form of [`Translator::translate`].
pub fn translate(
    description: &str,
    setting: Setting,
    templates: &PromptTemplates,
    session: &Session,
    params: SamplingParams,
    max_debug_attempts: usize,
) -> TranslationRun {
    Translator { templates, params, max_debug_attempts }.translate(description, setting, session)
}
