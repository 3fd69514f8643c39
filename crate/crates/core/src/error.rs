use crate::rational::Rational;

/// Errors raised by the builder primitives. The display strings are stable:
/// the script interpreter forwards them verbatim as repair hints.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("new_tree: the player list is empty")]
    EmptyPlayerList,
    #[error("new_tree: duplicate player name \"{0}\"")]
    DuplicatePlayerName(String),
    #[error("append_move: node is not terminal")]
    NodeNotTerminal,
    #[error("append_move: the action list is empty")]
    EmptyActionList,
    #[error("append_move: no nodes given")]
    EmptyNodeList,
    #[error("append_move: the same node is listed more than once")]
    DuplicateNode,
    #[error("unknown player \"{0}\"")]
    UnknownPlayer(String),
    #[error("add_outcome: expected {expected} payoffs (one per player), got {got}")]
    PayoffArityMismatch { expected: usize, got: usize },
    #[error("unknown node")]
    UnknownNode,
    #[error("unknown outcome")]
    UnknownOutcome,
    #[error("unknown information set")]
    UnknownInfoset,
    #[error("set_chance_probs: the information set does not belong to chance")]
    NotChanceInfoset,
    #[error("set_chance_probs: expected {expected} probabilities (one per action), got {got}")]
    ProbArityMismatch { expected: usize, got: usize },
    #[error("set_chance_probs: probability {0} is negative")]
    NegativeProbability(Rational),
    #[error("set_chance_probs: probabilities sum to {0}, not 1")]
    ProbsNotNormalized(Rational),
    #[error("set_infoset: node must have the same number of descendants as infoset has actions")]
    ChildCountMismatch,
    #[error("set_infoset: node and infoset belong to different players")]
    OwnerMismatch,
    #[error("set_infoset: node is terminal; call append_move on it before grouping it")]
    NodeNotInternal,
    #[error("unresolved path {path} at segment {segment}")]
    UnresolvedPath { path: String, segment: usize },
    #[error("invalid game: {0}")]
    InvalidGame(String),
}
