use std::collections::HashMap;

use super::{Command, PlayerRef, Script};
use crate::game::{Game, NodeId, NodePath, OutcomeId, Player};

/// The first command that failed. `message` is the builder's own error text
/// where one applies.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ExecError {
    pub line: usize,
    pub verb: String,
    pub message: String,
}

struct Exec {
    game: Game,
    outcomes: HashMap<String, OutcomeId>,
}

impl Exec {
    fn node(&self, path: &NodePath) -> Result<NodeId, String> {
        self.game.resolve(path).map_err(|e| e.to_string())
    }

    fn apply(&mut self, command: &Command) -> Result<(), String> {
        match command {
            Command::NewTree { .. } => Err("new_tree may appear only once".into()),
            Command::AppendMove { nodes, player, actions } => {
                let player = match player {
                    PlayerRef::Chance => Player::Chance,
                    PlayerRef::Named(name) => self.game.player_named(name).map_err(|e| e.to_string())?,
                };
                let ids = nodes.iter().map(|p| self.node(p)).collect::<Result<Vec<_>, _>>()?;
                self.game.append_move(&ids, player, actions).map_err(|e| e.to_string())?;
                Ok(())
            }
            Command::AddOutcome { id, payoffs, label } => {
                if self.outcomes.contains_key(id) {
                    return Err(format!("add_outcome: outcome id `{id}` is already defined"));
                }
                let o = self.game.add_outcome(payoffs.clone(), label).map_err(|e| e.to_string())?;
                self.outcomes.insert(id.clone(), o);
                Ok(())
            }
            Command::SetOutcome { node, outcome } => {
                let n = self.node(node)?;
                let o = match outcome {
                    None => None,
                    Some(id) => Some(*self.outcomes.get(id).ok_or_else(|| {
                        format!("set_outcome: unknown outcome id `{id}`; declare it with add_outcome first")
                    })?),
                };
                self.game.set_outcome(n, o).map_err(|e| e.to_string())
            }
            Command::SetChanceProbs { node, probs } => {
                let n = self.node(node)?;
                let iset = self.game.infoset_of(n).ok_or_else(|| {
                    format!("set_chance_probs: {node} has no move yet; call append_move with player=chance first")
                })?;
                self.game.set_chance_probs(iset, probs.clone()).map_err(|e| e.to_string())
            }
            Command::SetInfoset { node, like } => {
                let n = self.node(node)?;
                let target = self.node(like)?;
                let iset = self.game.infoset_of(target).ok_or_else(|| {
                    format!("set_infoset: `like` node {like} is terminal; call append_move on it before grouping")
                })?;
                self.game.set_infoset(n, iset).map_err(|e| e.to_string())
            }
        }
    }
}

/// Runs the commands in order on a fresh game and stops at the first
/// failure.
pub fn execute_script(script: &Script) -> Result<Game, ExecError> {
    let mut statements = script.statements.iter();
    let Some(first) = statements.next() else {
        return Err(ExecError { line: 1, verb: String::new(), message: "script is empty".into() });
    };
    let fail = |line: usize, verb: &str, message: String| ExecError { line, verb: verb.to_string(), message };
    let Command::NewTree { players, title } = &first.command else {
        return Err(fail(first.line, first.command.verb(), "first command must be new_tree".into()));
    };
    let game = Game::new_tree(players, title).map_err(|e| fail(first.line, "new_tree", e.to_string()))?;
    let mut exec = Exec { game, outcomes: HashMap::new() };
    for s in statements {
        exec.apply(&s.command).map_err(|m| fail(s.line, s.command.verb(), m))?;
    }
    Ok(exec.game)
}
