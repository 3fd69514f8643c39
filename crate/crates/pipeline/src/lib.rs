//! Turns a natural-language game description into a game by prompting a
//! chat model, in one of five [`Setting`]s.
//!
//! The DSL settings ask for a GameScript program and execute it; setting
//! Basic asks for `.efg` text directly. Settings C and D first ask only for
//! the information sets, then pass that answer to the generation prompt.
//! Settings B and D send a failed attempt's error back to the model.
//!
//! ```
//! use gameforge_llm::{Canned, SamplingParams, Session};
//! use gameforge_pipeline::{PromptTemplates, Setting, Translator};
//!
//! let answer = "```\nnew_tree players=[\"Alone\"]\n```";
//! let session = Session::with_backend(Box::new(Canned::new([answer])));
//! let templates = PromptTemplates::default();
//! let translator = Translator::new(&templates, SamplingParams::new("m", 0.0, 1.0));
//! let run = translator.translate("A game with one player and no moves.", Setting::A, &session);
//! assert!(run.succeeded());
//! assert_eq!(run.attempts.len(), 1);
//! ```

mod artifacts;
mod extract;
mod setting;
pub mod templates;
mod translate;

pub use artifacts::write_artifacts;
pub use extract::{last_code_block, ExtractionError};
pub use setting::{ParseSettingError, Setting};
pub use templates::{PromptTemplates, TemplateError};
pub use translate::{
    translate, AttemptResult, FailureKind, Final, PipelineError, StageOneOutput, TranslationAttempt, TranslationRun,
    Translator, DEFAULT_MAX_DEBUG_ATTEMPTS,
};
