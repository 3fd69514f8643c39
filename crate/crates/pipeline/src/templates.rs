//! Prompt templates with `{UPPER CASE}` placeholders.
//!
//! A template directory holds one `.txt` file per prompt and one per
//! demonstration slot. A slot file named `code_example_one.txt` binds the
//! placeholder `{CODE EXAMPLE ONE}`; the remaining placeholders
//! (`{GAME DESCRIPTION}`, `{CODE FOR IMPERFECT INFORMATION}`,
//! `{ERROR MESSAGE}`) are bound per request.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use regex::{Captures, Regex};

/// Names of the prompt templates.
pub const PROMPTS: [&str; 8] = [
    "code_gen_init",
    "iir_init",
    "iir_request",
    "efg_generation",
    "efg_generation_minimal",
    "error_message",
    "bland_retry",
    "direct_efg",
];

/// Names of the demonstration slots.
pub const SLOTS: [&str; 8] = [
    "code_example_one",
    "code_example_two",
    "api_documentation",
    "imperfect_info_example_one",
    "imperfect_info_example_two",
    "imperfect_info_example_three",
    "guidance_on_code",
    "general_guidance_on_errors",
];

/// Placeholders bound per request rather than from a slot file.
pub const RUNTIME: [&str; 3] = ["GAME DESCRIPTION", "CODE FOR IMPERFECT INFORMATION", "ERROR MESSAGE"];

const DEFAULTS: [(&str, &str); 16] = [
    ("code_gen_init", include_str!("../templates/code_gen_init.txt")),
    ("iir_init", include_str!("../templates/iir_init.txt")),
    ("iir_request", include_str!("../templates/iir_request.txt")),
    ("efg_generation", include_str!("../templates/efg_generation.txt")),
    ("efg_generation_minimal", include_str!("../templates/efg_generation_minimal.txt")),
    ("error_message", include_str!("../templates/error_message.txt")),
    ("bland_retry", include_str!("../templates/bland_retry.txt")),
    ("direct_efg", include_str!("../templates/direct_efg.txt")),
    ("code_example_one", include_str!("../templates/code_example_one.txt")),
    ("code_example_two", include_str!("../templates/code_example_two.txt")),
    ("api_documentation", include_str!("../templates/api_documentation.txt")),
    ("imperfect_info_example_one", include_str!("../templates/imperfect_info_example_one.txt")),
    ("imperfect_info_example_two", include_str!("../templates/imperfect_info_example_two.txt")),
    ("imperfect_info_example_three", include_str!("../templates/imperfect_info_example_three.txt")),
    ("guidance_on_code", include_str!("../templates/guidance_on_code.txt")),
    ("general_guidance_on_errors", include_str!("../templates/general_guidance_on_errors.txt")),
];

#[derive(Debug, thiserror::Error)]
pub enum TemplateError {
    #[error("template {template} uses {{{placeholder}}}, which is neither a slot file nor a per-request value")]
    UnknownPlaceholder { template: String, placeholder: String },
    #[error("template {template}: {{{placeholder}}} is not bound")]
    Unbound { template: String, placeholder: String },
    #[error("no template named {0}")]
    NoSuchTemplate(String),
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

fn placeholder_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\{([A-Z][A-Z ]*[A-Z])\}").unwrap())
}

/// Placeholder names referenced by `text`, without braces, in order of first use.
pub fn placeholders(text: &str) -> Vec<String> {
    let mut seen = BTreeSet::new();
    placeholder_re()
        .captures_iter(text)
        .map(|c| c[1].to_string())
        .filter(|p| seen.insert(p.clone()))
        .collect()
}

fn slot_for(placeholder: &str) -> String {
    placeholder.to_ascii_lowercase().replace(' ', "_")
}

/// The full template set. Texts are trimmed of trailing whitespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplates {
    texts: BTreeMap<String, String>,
}

impl Default for PromptTemplates {
    fn default() -> Self {
        let texts = DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.trim_end().to_string())).collect();
        PromptTemplates { texts }
    }
}

impl PromptTemplates {
    /// The defaults, with every `<name>.txt` found in `dir` replacing the
    /// template or slot of that name. Unrelated files are ignored.
    pub fn load_from_dir(dir: &Path) -> Result<Self, TemplateError> {
        let mut out = Self::default();
        for name in PROMPTS.iter().chain(SLOTS.iter()) {
            let path = dir.join(format!("{name}.txt"));
            match std::fs::read_to_string(&path) {
                Ok(text) => {
                    out.texts.insert(name.to_string(), text.trim_end().to_string());
                }
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                Err(source) => return Err(TemplateError::Io { path, source }),
            }
        }
        out.check()?;
        Ok(out)
    }

    /// Writes every template and slot to `dir` as `<name>.txt`.
    pub fn write_to_dir(&self, dir: &Path) -> Result<(), TemplateError> {
        std::fs::create_dir_all(dir).map_err(|source| TemplateError::Io { path: dir.to_path_buf(), source })?;
        for (name, text) in &self.texts {
            let path = dir.join(format!("{name}.txt"));
            std::fs::write(&path, format!("{text}\n")).map_err(|source| TemplateError::Io { path, source })?;
        }
        Ok(())
    }

    /// Every placeholder in every prompt must be a slot or a per-request value.
    pub fn check(&self) -> Result<(), TemplateError> {
        for name in PROMPTS {
            for p in placeholders(self.get(name)?) {
                if !RUNTIME.contains(&p.as_str()) && !self.texts.contains_key(&slot_for(&p)) {
                    return Err(TemplateError::UnknownPlaceholder { template: name.into(), placeholder: p });
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&str, TemplateError> {
        self.texts.get(name).map(String::as_str).ok_or_else(|| TemplateError::NoSuchTemplate(name.into()))
    }

    pub fn set(&mut self, name: &str, text: impl Into<String>) {
        self.texts.insert(name.to_string(), text.into());
    }

    /// Substitutes every placeholder in one pass; inserted text is not
    /// scanned again. Slots bind automatically, `bindings` supplies the rest,
    /// and a placeholder bound by neither is an error.
    pub fn render(&self, name: &str, bindings: &[(&str, &str)]) -> Result<String, TemplateError> {
        let template = self.get(name)?;
        let mut unbound = None;
        let out = placeholder_re().replace_all(template, |c: &Captures| {
            let key = &c[1];
            if let Some((_, v)) = bindings.iter().find(|(k, _)| *k == key) {
                return v.to_string();
            }
            if !RUNTIME.contains(&key) {
                if let Some(v) = self.texts.get(&slot_for(key)) {
                    return v.clone();
                }
            }
            unbound.get_or_insert_with(|| key.to_string());
            String::new()
        });
        match unbound {
            Some(placeholder) => Err(TemplateError::Unbound { template: name.into(), placeholder }),
            None => Ok(out.into_owned()),
        }
    }
}
