//! `gameforge`: translate game descriptions into .efg files and evaluate
//! the translations.
//!
//! Exit codes: 0 success, 1 domain failure (invalid game, failed
//! translation, feature mismatch), 2 usage or configuration error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gameforge_core::{
    compute_features, execute_script, parse_efg, parse_script, structural_diff, validate_structure, write_dot,
    write_efg, Game,
};
use gameforge_harness::{
    feature_diff, load_corpus, render_markdown, run_eval, sample_sessions, write_csv, EvalConfig, ExpectedFeatures,
    ReviewMode,
};
use gameforge_llm::{open_session, LiveConfig, SessionMode};
use gameforge_pipeline::{write_artifacts, PromptTemplates, Setting, Translator, DEFAULT_MAX_DEBUG_ATTEMPTS};

#[derive(Parser)]
#[command(name = "gameforge", version, about = "Natural-language game descriptions to Gambit .efg files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate a description file into an .efg game.
    Translate(TranslateArgs),
    /// Run a GameScript file and write the resulting .efg.
    Exec {
        script: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Report structural violations of a .efg or .gs file.
    Validate { input: PathBuf },
    /// Print the features of a .efg or .gs file as JSON.
    Features {
        input: PathBuf,
        /// Expected features (an expected.json); any difference exits 1.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Write a Graphviz DOT rendering.
    Render {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Parse, re-write and re-parse a .efg file, checking nothing changes.
    Roundtrip {
        input: PathBuf,
        /// Where to write the re-serialized file.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run pass@k over a corpus directory.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Script,
    DirectEfg,
}

#[derive(Args)]
struct ModelArgs {
    /// Basic, A, B, C or D.
    #[arg(long)]
    setting: Option<Setting>,
    /// What the model writes: GameScript (settings A to D) or .efg text (Basic).
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// live, record:<path> or replay:<path>.
    #[arg(long, default_value = "live")]
    session: String,
    /// Require every replayed request to hash to the recorded one.
    #[arg(long)]
    strict_replay: bool,
    /// Directory of template overrides, one `<name>.txt` per template.
    #[arg(long)]
    templates: Option<PathBuf>,
    /// TOML with base_url, model, temperature, top_p, timeout_secs,
    /// transport_retries and backoff_ms. The API key is read from
    /// GAMEFORGE_API_KEY only.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_DEBUG_ATTEMPTS)]
    max_debug_attempts: usize,
}

#[derive(Args)]
struct TranslateArgs {
    description: PathBuf,
    #[command(flatten)]
    model: ModelArgs,
    /// Where to write the .efg; standard output when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Directory for the transcript, raw responses and run metadata.
    #[arg(long)]
    artifacts: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Directory of `<game>/{description.txt, expected.json}` entries.
    corpus: PathBuf,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Stop sampling a game once one sample passes.
    #[arg(long)]
    stop_on_success: bool,
    /// Only these games (repeatable).
    #[arg(long = "game")]
    games: Vec<String>,
    #[arg(long, default_value_t = 4)]
    workers: usize,
    /// Count unreviewed samples as failures.
    #[arg(long)]
    strict_review: bool,
    /// Per-sample artifact directory.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Results table: .csv, .json, or markdown for anything else.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// An error with its exit code.
enum Failure {
    Domain(anyhow::Error),
    Usage(anyhow::Error),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn domain(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Domain(e.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display())).map_err(usage)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())).map_err(usage),
        None => io::stdout().write_all(text.as_bytes()).map_err(usage),
    }
}

/// Loads a game from a `.gs` script or a `.efg` file.
fn load_game(path: &Path) -> Result<Game, Failure> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "gs") {
        let script = parse_script(&text).map_err(|e| domain(anyhow!("{}: {e}", path.display())))?;
        execute_script(&script).map_err(|e| domain(anyhow!("{}: {e}", path.display())))
    } else {
        parse_efg(&text).map_err(|e| domain(anyhow!("{}: {e}", path.display())))
    }
}

fn parse_session(arg: &str) -> anyhow::Result<SessionMode> {
    match arg.split_once(':') {
        None if arg == "live" => Ok(SessionMode::Live),
        Some(("record", p)) if !p.is_empty() => Ok(SessionMode::Record(p.into())),
        Some(("replay", p)) if !p.is_empty() => Ok(SessionMode::Replay(p.into())),
        _ => bail!("--session must be live, record:<path> or replay:<path>, not `{arg}`"),
    }
}

struct ModelSetup {
    setting: Setting,
    session: SessionMode,
    live: LiveConfig,
    templates: PromptTemplates,
}

impl ModelArgs {
    fn setup(&self) -> Result<ModelSetup, Failure> {
        let setting = match (self.setting, self.mode) {
            (None, Some(Mode::DirectEfg)) => Setting::Basic,
            (None, _) => Setting::D,
            (Some(s), Some(m)) if s.uses_dsl() != (m == Mode::Script) => {
                return Err(usage(anyhow!("setting {s} does not produce {}", if s.uses_dsl() { "direct .efg" } else { "scripts" })))
            }
            (Some(s), _) => s,
        };
        let live = match &self.config {
            Some(path) => toml::from_str(&read(path)?).with_context(|| format!("{}", path.display())).map_err(usage)?,
            None => LiveConfig::default(),
        };
        let templates = match &self.templates {
            Some(dir) => PromptTemplates::load_from_dir(dir).map_err(usage)?,
            None => PromptTemplates::default(),
        };
        Ok(ModelSetup { setting, session: parse_session(&self.session).map_err(usage)?, live, templates })
    }
}

fn translate(args: TranslateArgs) -> Outcome {
    let description = read(&args.description)?;
    let setup = args.model.setup()?;
    let session = open_session(&setup.session, &setup.live, args.model.strict_replay).map_err(usage)?;
    let translator = Translator {
        templates: &setup.templates,
        params: setup.live.sampling_params(),
        max_debug_attempts: args.model.max_debug_attempts,
    };
    let run = translator.translate(description.trim_end(), setup.setting, &session);
    let transcript = session.transcript();
    let closed = session.close();
    if let Some(dir) = &args.artifacts {
        let seed = args.description.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        write_artifacts(dir, &run, &transcript, &seed).map_err(usage)?;
    }
    closed.map_err(domain)?;
    for attempt in &run.attempts {
        if let Some(err) = attempt.error() {
            eprintln!("attempt {}: {}", attempt.index, err.lines().next().unwrap_or(""));
        }
    }
    match run.efg() {
        Some(efg) => emit(args.out.as_deref(), efg),
        None => Err(domain(anyhow!("translation failed: {:?}", run.outcome))),
    }
}

fn features(input: &Path, expect: Option<&Path>) -> Outcome {
    let game = load_game(input)?;
    let f = compute_features(&game).map_err(domain)?;
    println!("{}", serde_json::to_string_pretty(&f).map_err(usage)?);
    let Some(path) = expect else { return Ok(()) };
    let expected: ExpectedFeatures =
        serde_json::from_str(&read(path)?).with_context(|| format!("{}", path.display())).map_err(usage)?;
    let diff = feature_diff(&f, &expected);
    if diff.is_empty() {
        return Ok(());
    }
    for d in &diff {
        eprintln!("{}: expected {}, got {}", d.field, d.expected, d.actual);
    }
    Err(domain(anyhow!("{} feature(s) differ from {}", diff.len(), path.display())))
}

fn validate(input: &Path) -> Outcome {
    let game = load_game(input)?;
    let violations = validate_structure(&game);
    for v in &violations {
        eprintln!("{:?}: {v}", v.severity());
    }
    let fatal = violations.iter().filter(|v| v.is_fatal()).count();
    if fatal > 0 {
        return Err(domain(anyhow!("{fatal} structural error(s)")));
    }
    println!("valid ({} warning(s))", violations.len());
    Ok(())
}

fn roundtrip(input: &Path, out: Option<&Path>) -> Outcome {
    let game = load_game(input)?;
    let text = write_efg(&game).map_err(domain)?;
    let back = parse_efg(&text).map_err(domain)?;
    if let Some(d) = structural_diff(&game, &back) {
        return Err(domain(anyhow!("roundtrip changed the game: {d}")));
    }
    if write_efg(&back).map_err(domain)? != text {
        return Err(domain(anyhow!("second write differs from the first")));
    }
    match out {
        Some(path) => emit(Some(path), &text),
        None => {
            println!("roundtrip ok");
            Ok(())
        }
    }
}

fn eval(args: EvalArgs) -> Outcome {
    let setup = args.model.setup()?;
    if args.k == 0 {
        return Err(usage(anyhow!("--k must be at least 1")));
    }
    let mut corpus = load_corpus(&args.corpus).map_err(usage)?;
    if !args.games.is_empty() {
        if let Some(g) = args.games.iter().find(|g| !corpus.iter().any(|e| &e.id == *g)) {
            return Err(usage(anyhow!("no game `{g}` in {}", args.corpus.display())));
        }
        corpus.retain(|e| args.games.contains(&e.id));
    }
    let mut config = EvalConfig::new(setup.setting, setup.live.sampling_params());
    config.k = args.k;
    config.stop_on_success = args.stop_on_success;
    config.workers = args.workers;
    config.max_debug_attempts = args.model.max_debug_attempts;
    config.mode = if args.strict_review { ReviewMode::Strict } else { ReviewMode::NecessaryOnly };
    config.out_dir = args.out.clone();
    let sessions = sample_sessions(setup.session, setup.live, args.model.strict_replay);
    let report = run_eval(&corpus, &config, &setup.templates, &sessions).map_err(usage)?;
    let reports = [report];
    let table = render_markdown(&reports);
    match &args.report {
        Some(path) if path.extension().is_some_and(|e| e == "csv") => {
            let file = fs::File::create(path).with_context(|| format!("cannot write {}", path.display())).map_err(usage)?;
            write_csv(&reports, file).map_err(usage)?;
        }
        Some(path) if path.extension().is_some_and(|e| e == "json") => {
            emit(Some(path), &(serde_json::to_string_pretty(&reports).map_err(usage)? + "\n"))?;
        }
        Some(path) => emit(Some(path), &table)?,
        None => {}
    }
    print!("{table}");
    Ok(())
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Translate(args) => translate(args),
        Command::Exec { script, out } => {
            let game = load_game(&script)?;
            emit(out.as_deref(), &write_efg(&game).map_err(domain)?)
        }
        Command::Validate { input } => validate(&input),
        Command::Features { input, expect } => features(&input, expect.as_deref()),
        Command::Render { input, out } => emit(out.as_deref(), &write_dot(&load_game(&input)?)),
        Command::Roundtrip { input, out } => roundtrip(&input, out.as_deref()),
        Command::Eval(args) => eval(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
