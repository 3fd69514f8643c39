//! GameScript: a line-oriented language whose six verbs drive the builder
//! primitives of [`Game`](crate::Game).
//!
//! ```text
//! # one-shot trust game
//! new_tree players=["Buyer", "Seller"] title="One-shot trust game"
//! append_move node=root player="Buyer" actions=["Trust", "Not trust"]
//! append_move node=root.0 player="Seller" actions=["Honor", "Abuse"]
//! add_outcome id=trustworthy payoffs=[1, 1] label="Trustworthy"
//! set_outcome node=root.0.0 outcome=trustworthy
//! ```
//!
//! Every command is `<verb> key=value ...` on one line. Values are quoted
//! strings, bracketed lists, rationals (`2`, `-1/3`, `0.25`), node paths
//! (`root`, `root.0.1`), outcome ids, `none` and the `chance` keyword.
//! `#` starts a comment. There are no loops, variables or expressions.
//!
//! | verb | keys |
//! |------|------|
//! | `new_tree` | `players=[..]`, optional `title=".."` |
//! | `append_move` | `node=<path>` or `nodes=[<path>, ..]`, `player="<name>"` or `player=chance`, `actions=[..]` |
//! | `add_outcome` | `id=<name>`, `payoffs=[..]`, optional `label=".."` |
//! | `set_outcome` | `node=<path>`, `outcome=<id>` or `outcome=none` |
//! | `set_chance_probs` | `node=<path>` (a chance node), `probs=[..]` |
//! | `set_infoset` | `node=<path>`, `like=<path>`: move `node` into the information set of `like` |

mod exec;
mod parse;

use std::fmt;

use crate::game::NodePath;
use crate::rational::Rational;

pub use exec::{execute_script, ExecError};
pub use parse::{parse_fragment, parse_script, ScriptSyntaxError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlayerRef {
    Chance,
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    NewTree { players: Vec<String>, title: String },
    AppendMove { nodes: Vec<NodePath>, player: PlayerRef, actions: Vec<String> },
    AddOutcome { id: String, payoffs: Vec<Rational>, label: String },
    SetOutcome { node: NodePath, outcome: Option<String> },
    SetChanceProbs { node: NodePath, probs: Vec<Rational> },
    SetInfoset { node: NodePath, like: NodePath },
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::NewTree { .. } => "new_tree",
            Command::AppendMove { .. } => "append_move",
            Command::AddOutcome { .. } => "add_outcome",
            Command::SetOutcome { .. } => "set_outcome",
            Command::SetChanceProbs { .. } => "set_chance_probs",
            Command::SetInfoset { .. } => "set_infoset",
        }
    }
}

/// A command with the 1-based source line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub line: usize,
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
    pub source: String,
}

impl Script {
    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.statements.iter().map(|s| &s.command)
    }

    /// Canonical text: one command per line, comments and blank lines
    /// dropped. Parsing it gives back the same commands.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for s in &self.statements {
            out.push_str(&s.command.to_string());
            out.push('\n');
        }
        out
    }
}

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    let parts: Vec<String> = items.iter().map(f).collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.verb())?;
        match self {
            Command::NewTree { players, title } => {
                write!(f, " players={} title={}", list(players, |p| quote(p)), quote(title))
            }
            Command::AppendMove { nodes, player, actions } => {
                match nodes.as_slice() {
                    [one] => write!(f, " node={one}")?,
                    many => write!(f, " nodes={}", list(many, ToString::to_string))?,
                }
                match player {
                    PlayerRef::Chance => f.write_str(" player=chance")?,
                    PlayerRef::Named(name) => write!(f, " player={}", quote(name))?,
                }
                write!(f, " actions={}", list(actions, |a| quote(a)))
            }
            Command::AddOutcome { id, payoffs, label } => {
                write!(f, " id={id} payoffs={}", list(payoffs, ToString::to_string))?;
                if !label.is_empty() {
                    write!(f, " label={}", quote(label))?;
                }
                Ok(())
            }
            Command::SetOutcome { node, outcome } => {
                write!(f, " node={node} outcome={}", outcome.as_deref().unwrap_or("none"))
            }
            Command::SetChanceProbs { node, probs } => {
                write!(f, " node={node} probs={}", list(probs, ToString::to_string))
            }
            Command::SetInfoset { node, like } => write!(f, " node={node} like={like}"),
        }
    }
}
