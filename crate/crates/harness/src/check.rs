//! Automated consistency checking. Matching features is a necessary
//! condition for a generated game to fit its description, not a sufficient
//! one; the worksheet is for the human half of the review.

use std::fmt::Write;

use gameforge_core::{compute_features, Game, GameFeatures, NodeId, Player};
use serde::{Deserialize, Serialize};

use crate::ExpectedFeatures;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureDiff {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConsistencyReport {
    pub structural_pass: bool,
    pub feature_diff: Vec<FeatureDiff>,
    pub features: Option<GameFeatures>,
    /// Markdown review sheet: tree, information sets, payoffs.
    pub worksheet: String,
}

/// Compares only player-order-insensitive fields, so a simultaneous-move
/// game passes whichever player is drawn first.
pub fn feature_diff(actual: &GameFeatures, expected: &ExpectedFeatures) -> Vec<FeatureDiff> {
    let mut diff = Vec::new();
    let mut cmp = |field: &str, e: String, a: String| {
        if e != a {
            diff.push(FeatureDiff { field: field.into(), expected: e, actual: a });
        }
    };
    cmp("perfectInfo", expected.perfect_info.to_string(), actual.perfect_info.to_string());
    cmp("zeroSum", expected.zero_sum.to_string(), actual.zero_sum.to_string());
    cmp("maxDepth", expected.max_depth.to_string(), actual.max_depth.to_string());
    cmp("nPlayers", expected.n_players.to_string(), actual.n_players.to_string());
    cmp("nDecisionNodes", expected.n_decision_nodes.to_string(), actual.n_decision_nodes.to_string());
    cmp("nLeaves", expected.n_leaves.to_string(), actual.n_leaves.to_string());
    if let Some(recall) = expected.perfect_recall {
        cmp("perfectRecall", recall.to_string(), actual.perfect_recall.to_string());
    }
    diff
}

pub fn consistency_check(game: &Game, expected: &ExpectedFeatures) -> ConsistencyReport {
    let worksheet = worksheet(game);
    match compute_features(game) {
        Ok(f) => {
            let feature_diff = feature_diff(&f, expected);
            ConsistencyReport { structural_pass: feature_diff.is_empty(), feature_diff, features: Some(f), worksheet }
        }
        Err(e) => ConsistencyReport {
            structural_pass: false,
            feature_diff: vec![FeatureDiff { field: "structure".into(), expected: "valid".into(), actual: e.to_string() }],
            features: None,
            worksheet,
        },
    }
}

fn owner_name(game: &Game, node: NodeId) -> String {
    match game.owner_of(node) {
        Some(Player::Chance) => "Chance".into(),
        Some(p) => game.player_name(p).to_string(),
        None => String::new(),
    }
}

fn payoffs(game: &Game, node: NodeId) -> String {
    match game.outcome_of(node) {
        Some(o) => {
            let parts: Vec<String> = game.outcome(o).payoffs().iter().map(ToString::to_string).collect();
            format!("({})", parts.join(", "))
        }
        None => "no outcome".into(),
    }
}

/// A review sheet for one game. Feature checks passing says nothing about
/// whether moves, information and payoffs match the description.
pub fn worksheet(game: &Game) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Review worksheet: {}\n", if game.title().is_empty() { "(untitled)" } else { game.title() });
    let _ = writeln!(out, "Automated feature checks are necessary, not sufficient. Confirm each item against the description.\n");
    let _ = writeln!(out, "Players: {}\n", game.players().join(", "));

    let _ = writeln!(out, "## Tree\n");
    let mut stack = vec![(game.root(), 0usize, String::new())];
    while let Some((node, depth, via)) = stack.pop() {
        let indent = "  ".repeat(depth);
        let path = game.path_of(node);
        let what = if game.is_terminal(node) { payoffs(game, node) } else { owner_name(game, node) };
        let _ = writeln!(out, "{indent}- {via}`{path}` {what}");
        let actions = game.actions_at(node);
        let probs = game.infoset_of(node).and_then(|i| game.infoset(i).chance_probs());
        for (i, &child) in game.children(node).iter().enumerate().rev() {
            let label = match probs {
                Some(p) => format!("{} [{}] → ", actions[i], p[i]),
                None => format!("{} → ", actions[i]),
            };
            stack.push((child, depth + 1, label));
        }
    }

    let _ = writeln!(out, "\n## Information sets\n");
    for (_, set) in game.infosets() {
        if set.owner().is_chance() {
            continue;
        }
        let members: Vec<String> = set.members().iter().map(|&m| format!("`{}`", game.path_of(m))).collect();
        let _ = writeln!(
            out,
            "- {}: {} (actions: {})",
            game.player_name(set.owner()),
            members.join(", "),
            set.actions().join(", ")
        );
    }

    let _ = writeln!(out, "\n## Payoffs\n");
    let _ = writeln!(out, "| leaf | {} |", game.players().join(" | "));
    let _ = writeln!(out, "|---|{}", "---|".repeat(game.num_players()));
    for node in game.preorder().into_iter().filter(|&n| game.is_terminal(n)) {
        let cells: Vec<String> = match game.outcome_of(node) {
            Some(o) => game.outcome(o).payoffs().iter().map(ToString::to_string).collect(),
            None => vec!["?".into(); game.num_players()],
        };
        let _ = writeln!(out, "| `{}` | {} |", game.path_of(node), cells.join(" | "));
    }
    out
}
