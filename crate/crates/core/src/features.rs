//! Structural features of a game: information, payoff and size summaries.

use serde::{Deserialize, Serialize};

use crate::game::{Game, InfosetId, NodeId, Player};
use crate::rational::Rational;
use crate::validate::ensure_valid;
use crate::GameError;

/// Summary statistics of a game tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameFeatures {
    /// Every information set is a singleton.
    pub perfect_info: bool,
    /// Every terminal payoff vector sums to zero. False whenever a leaf has
    /// no outcome.
    pub zero_sum: bool,
    /// Edges on the longest root-to-leaf path.
    pub max_depth: usize,
    /// Declared players, chance excluded.
    pub n_players: usize,
    /// Non-terminal nodes, chance nodes included.
    pub n_decision_nodes: usize,
    pub n_leaves: usize,
    /// No player ever forgets their own earlier moves.
    pub perfect_recall: bool,
    /// Number of leaves without an outcome; non-zero means the payoff
    /// features describe an incomplete game.
    pub leaves_without_outcome: usize,
}

/// Computes [`GameFeatures`]. Fails with [`GameError::InvalidGame`] when the
/// game has fatal structural violations.
pub fn compute_features(game: &Game) -> Result<GameFeatures, GameError> {
    ensure_valid(game)?;

    let order = game.preorder();
    let mut depth = vec![0usize; game.node_count()];
    let mut max_depth = 0;
    let mut n_leaves = 0;
    let mut missing = 0;
    let mut zero_sum = true;
    // Accumulated payoffs along the path; outcomes on decision nodes add to
    // everything below them.
    let mut acc: Vec<Option<Vec<Rational>>> = vec![None; game.node_count()];

    for &n in &order {
        let own = game.outcome_of(n).map(|o| game.outcome(o).payoffs().to_vec());
        let inherited = game.parent(n).and_then(|p| acc[p.0].clone());
        acc[n.0] = match (inherited, own) {
            (Some(a), Some(b)) => Some(a.into_iter().zip(b).map(|(x, y)| x + y).collect()),
            (a, b) => a.or(b),
        };
        if let Some(p) = game.parent(n) {
            depth[n.0] = depth[p.0] + 1;
        }
        if game.is_terminal(n) {
            n_leaves += 1;
            max_depth = max_depth.max(depth[n.0]);
            if game.outcome_of(n).is_none() {
                missing += 1;
                zero_sum = false;
            } else if let Some(payoffs) = &acc[n.0] {
                if !payoffs.iter().sum::<Rational>().is_zero() {
                    zero_sum = false;
                }
            }
        }
    }

    let perfect_info = game.infosets().all(|(_, s)| s.members().len() == 1);

    Ok(GameFeatures {
        perfect_info,
        zero_sum,
        max_depth,
        n_players: game.num_players(),
        n_decision_nodes: order.len() - n_leaves,
        n_leaves,
        perfect_recall: has_perfect_recall(game),
        leaves_without_outcome: missing,
    })
}

/// The sequence of (information set, action index) pairs a player passed
/// through on the way to `node`.
fn own_history(game: &Game, node: NodeId, player: Player) -> Vec<(InfosetId, usize)> {
    let mut hist = Vec::new();
    let mut cur = node;
    while let Some(parent) = game.parent(cur) {
        if game.owner_of(parent) == Some(player) {
            let action = game.children(parent).iter().position(|&c| c == cur).unwrap();
            hist.push((game.infoset_of(parent).unwrap(), action));
        }
        cur = parent;
    }
    hist.reverse();
    hist
}

/// Perfect recall holds when, for every personal information set, all
/// members share the same own-move history.
pub fn has_perfect_recall(game: &Game) -> bool {
    game.infosets().filter(|(_, s)| !s.owner().is_chance()).all(|(_, s)| {
        let mut members = s.members().iter();
        let Some(&first) = members.next() else { return true };
        let reference = own_history(game, first, s.owner());
        members.all(|&m| own_history(game, m, s.owner()) == reference)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pay(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    fn trust_game() -> Game {
        let mut g = Game::new_tree(&["Buyer", "Seller"], "One-shot trust game").unwrap();
        let root = g.root();
        g.append_move(&[root], Player::Personal(1), &["Trust", "Not trust"]).unwrap();
        let trust = g.child(root, 0).unwrap();
        g.append_move(&[trust], Player::Personal(2), &["Honor", "Abuse"]).unwrap();
        let o1 = g.add_outcome(pay(&[1, 1]), "Trustworthy").unwrap();
        let o2 = g.add_outcome(pay(&[-1, 2]), "Untrustworthy").unwrap();
        let o3 = g.add_outcome(pay(&[0, 0]), "Opt-out").unwrap();
        g.set_outcome(g.child(trust, 0).unwrap(), Some(o1)).unwrap();
        g.set_outcome(g.child(trust, 1).unwrap(), Some(o2)).unwrap();
        g.set_outcome(g.child(root, 1).unwrap(), Some(o3)).unwrap();
        g
    }

    #[test]
    fn trust_game_features() {
        let f = compute_features(&trust_game()).unwrap();
        assert_eq!(f.n_decision_nodes, 2);
        assert_eq!(f.n_leaves, 3);
        assert_eq!(f.max_depth, 2);
        assert!(!f.zero_sum);
        assert!(f.perfect_info);
        assert!(f.perfect_recall);
        assert_eq!(f.leaves_without_outcome, 0);
    }

    #[test]
    fn missing_outcome_forces_non_zero_sum() {
        let mut g = Game::new_tree(&["A", "B"], "").unwrap();
        let root = g.root();
        g.append_move(&[root], Player::Personal(1), &["x", "y"]).unwrap();
        let o = g.add_outcome(pay(&[1, -1]), "").unwrap();
        g.set_outcome(g.child(root, 0).unwrap(), Some(o)).unwrap();
        let f = compute_features(&g).unwrap();
        assert!(!f.zero_sum);
        assert_eq!(f.leaves_without_outcome, 1);
        g.set_outcome(g.child(root, 1).unwrap(), Some(o)).unwrap();
        assert!(compute_features(&g).unwrap().zero_sum);
    }

    #[test]
    fn internal_outcomes_accumulate() {
        let mut g = Game::new_tree(&["A", "B"], "").unwrap();
        let root = g.root();
        g.append_move(&[root], Player::Personal(1), &["x"]).unwrap();
        let fee = g.add_outcome(pay(&[1, 0]), "fee").unwrap();
        let leaf = g.add_outcome(pay(&[-1, 0]), "").unwrap();
        g.set_outcome(root, Some(fee)).unwrap();
        g.set_outcome(g.child(root, 0).unwrap(), Some(leaf)).unwrap();
        assert!(compute_features(&g).unwrap().zero_sum);
    }

    #[test]
    fn absent_minded_driver_has_imperfect_recall() {
        let mut g = Game::new_tree(&["Driver"], "").unwrap();
        let root = g.root();
        let iset = g.append_move(&[root], Player::Personal(1), &["EXIT", "CONTINUE"]).unwrap();
        let y = g.child(root, 1).unwrap();
        g.append_move(&[y], Player::Personal(1), &["EXIT", "CONTINUE"]).unwrap();
        assert!(has_perfect_recall(&g));
        g.set_infoset(y, iset).unwrap();
        assert!(!has_perfect_recall(&g));
        let f = compute_features(&g).unwrap();
        assert!(!f.perfect_info);
        assert_eq!((f.n_decision_nodes, f.n_leaves, f.max_depth, f.n_players), (2, 3, 2, 1));
    }

    #[test]
    fn forgetting_nature_keeps_perfect_recall() {
        // Player 2 does not see the chance move but never forgets their own moves.
        let mut g = Game::new_tree(&["A", "B"], "").unwrap();
        let root = g.root();
        g.append_move(&[root], Player::Chance, &["H", "T"]).unwrap();
        let kids = g.children(root).to_vec();
        g.append_move(&kids, Player::Personal(2), &["l", "r"]).unwrap();
        assert!(has_perfect_recall(&g));
        assert!(!compute_features(&g).unwrap().perfect_info);
    }

    #[test]
    fn features_are_pure() {
        let g = trust_game();
        assert_eq!(compute_features(&g).unwrap(), compute_features(&g).unwrap());
    }
}
