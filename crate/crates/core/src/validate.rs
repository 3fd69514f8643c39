//! Structural validation of a game against the extensive-form invariants.

use std::fmt;

use serde::Serialize;

use crate::game::{Game, NodePath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Violation {
    /// A node that cannot be reached from the root, or is reached twice.
    NotATree { node: usize },
    /// A child whose parent link does not point back at the node listing it.
    BrokenParentLink { path: NodePath },
    /// A decision node whose child count differs from its infoset's action count.
    ChildCountMismatch { path: NodePath, children: usize, actions: usize },
    /// A terminal node still registered as an infoset member.
    TerminalInInfoset { path: NodePath },
    /// An infoset member whose own infoset link disagrees.
    MembershipMismatch { path: NodePath },
    EmptyInfoset { infoset: usize },
    MissingChanceProbs { infoset: usize },
    ProbsNotNormalized { infoset: usize, sum: String },
    NegativeProbability { infoset: usize },
    PayoffArity { outcome: usize, expected: usize, got: usize },
    DanglingOutcome { path: NodePath },
    /// A terminal node with no outcome (warning).
    MissingLeafOutcome { path: NodePath },
    /// An outcome attached to a decision node (warning).
    InternalOutcome { path: NodePath },
}

impl Violation {
    pub fn severity(&self) -> Severity {
        match self {
            Violation::MissingLeafOutcome { .. } | Violation::InternalOutcome { .. } => Severity::Warning,
            _ => Severity::Error,
        }
    }

    pub fn is_fatal(&self) -> bool {
        self.severity() == Severity::Error
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree { node } => write!(f, "node #{node} is unreachable or has several parents"),
            Violation::BrokenParentLink { path } => write!(f, "{path}: parent link is inconsistent"),
            Violation::ChildCountMismatch { path, children, actions } => {
                write!(f, "{path}: {children} children but its information set has {actions} actions")
            }
            Violation::TerminalInInfoset { path } => write!(f, "{path}: terminal node belongs to an information set"),
            Violation::MembershipMismatch { path } => write!(f, "{path}: information set membership is inconsistent"),
            Violation::EmptyInfoset { infoset } => write!(f, "information set #{infoset} has no members"),
            Violation::MissingChanceProbs { infoset } => {
                write!(f, "chance information set #{infoset} has no probabilities")
            }
            Violation::ProbsNotNormalized { infoset, sum } => {
                write!(f, "chance information set #{infoset}: probabilities sum to {sum}, not 1")
            }
            Violation::NegativeProbability { infoset } => {
                write!(f, "chance information set #{infoset} has a negative probability")
            }
            Violation::PayoffArity { outcome, expected, got } => {
                write!(f, "outcome {outcome} has {got} payoffs, expected {expected}")
            }
            Violation::DanglingOutcome { path } => write!(f, "{path}: refers to an outcome that does not exist"),
            Violation::MissingLeafOutcome { path } => write!(f, "{path}: terminal node has no outcome"),
            Violation::InternalOutcome { path } => write!(f, "{path}: outcome attached to a decision node"),
        }
    }
}

/// Checks every tree, information-set, probability and outcome invariant.
/// The list is empty only for a complete, well-formed game; warnings mark
/// outcome-less leaves and outcomes on decision nodes.
pub fn validate_structure(game: &Game) -> Vec<Violation> {
    let mut out = Vec::new();

    // Tree: each node reached exactly once from the root.
    let mut seen = vec![0usize; game.nodes.len()];
    let mut stack = vec![game.root()];
    while let Some(n) = stack.pop() {
        seen[n.0] += 1;
        if seen[n.0] > 1 {
            continue;
        }
        for &c in &game.nodes[n.0].children {
            if game.nodes[c.0].parent != Some(n) {
                out.push(Violation::BrokenParentLink { path: game.path_of(n).child(0) });
            }
            stack.push(c);
        }
    }
    for (i, &count) in seen.iter().enumerate() {
        if count != 1 {
            out.push(Violation::NotATree { node: i });
        }
    }
    if out.iter().any(|v| matches!(v, Violation::NotATree { .. })) {
        // Paths are meaningless on a broken tree.
        return out;
    }

    for n in game.preorder() {
        let data = &game.nodes[n.0];
        let path = || game.path_of(n);
        match data.infoset {
            Some(iset) => match game.infosets.get(iset.0).and_then(Option::as_ref) {
                Some(set) => {
                    if data.children.is_empty() {
                        out.push(Violation::TerminalInInfoset { path: path() });
                    } else if data.children.len() != set.actions.len() {
                        out.push(Violation::ChildCountMismatch {
                            path: path(),
                            children: data.children.len(),
                            actions: set.actions.len(),
                        });
                    }
                    if !set.members.contains(&n) {
                        out.push(Violation::MembershipMismatch { path: path() });
                    }
                }
                None => out.push(Violation::MembershipMismatch { path: path() }),
            },
            None if !data.children.is_empty() => out.push(Violation::MembershipMismatch { path: path() }),
            None => {}
        }
        match data.outcome {
            Some(o) if o.0 >= game.outcomes.len() => out.push(Violation::DanglingOutcome { path: path() }),
            Some(_) if !data.children.is_empty() => out.push(Violation::InternalOutcome { path: path() }),
            None if data.children.is_empty() => out.push(Violation::MissingLeafOutcome { path: path() }),
            _ => {}
        }
    }

    for (id, set) in game.infosets() {
        let number = id.0 + 1;
        if set.members.is_empty() {
            out.push(Violation::EmptyInfoset { infoset: number });
        }
        for &m in &set.members {
            if game.nodes.get(m.0).and_then(|d| d.infoset) != Some(id) {
                out.push(Violation::MembershipMismatch { path: game.path_of(m) });
            }
        }
        if set.owner.is_chance() {
            match &set.probs {
                None => out.push(Violation::MissingChanceProbs { infoset: number }),
                Some(p) => {
                    if p.iter().any(|x| x.is_negative()) {
                        out.push(Violation::NegativeProbability { infoset: number });
                    }
                    let sum: crate::Rational = p.iter().sum();
                    if !sum.is_one() || p.len() != set.actions.len() {
                        out.push(Violation::ProbsNotNormalized { infoset: number, sum: sum.to_string() });
                    }
                }
            }
        }
    }

    for (id, o) in game.outcomes() {
        if o.payoffs.len() != game.num_players() {
            out.push(Violation::PayoffArity {
                outcome: id.number(),
                expected: game.num_players(),
                got: o.payoffs.len(),
            });
        }
    }
    out
}

/// Only the fatal entries of [`validate_structure`].
pub fn fatal_violations(game: &Game) -> Vec<Violation> {
    validate_structure(game).into_iter().filter(Violation::is_fatal).collect()
}

pub(crate) fn ensure_valid(game: &Game) -> Result<(), crate::GameError> {
    let fatal = fatal_violations(game);
    if fatal.is_empty() {
        Ok(())
    } else {
        let msgs: Vec<String> = fatal.iter().map(ToString::to_string).collect();
        Err(crate::GameError::InvalidGame(msgs.join("; ")))
    }
}
