//! Structural comparison of two games, independent of serialization.

use std::collections::HashMap;

use crate::game::{Game, InfosetId, NodeId};

/// Compares players, tree shape, owners, action labels, chance
/// probabilities, payoffs at every node and the information-set partition.
/// Titles, node labels and outcome labels are ignored. Returns the first
/// difference found, in pre-order.
pub fn structural_diff(a: &Game, b: &Game) -> Option<String> {
    if a.players() != b.players() {
        return Some(format!("players differ: {:?} vs {:?}", a.players(), b.players()));
    }
    let mut forward: HashMap<InfosetId, InfosetId> = HashMap::new();
    let mut backward: HashMap<InfosetId, InfosetId> = HashMap::new();
    let mut stack: Vec<(NodeId, NodeId)> = vec![(a.root(), b.root())];
    while let Some((na, nb)) = stack.pop() {
        let path = a.path_of(na);
        let (ca, cb) = (a.children(na), b.children(nb));
        if ca.len() != cb.len() {
            return Some(format!("{path}: {} children vs {}", ca.len(), cb.len()));
        }
        if a.owner_of(na) != b.owner_of(nb) {
            return Some(format!("{path}: owner {:?} vs {:?}", a.owner_of(na), b.owner_of(nb)));
        }
        if a.actions_at(na) != b.actions_at(nb) {
            return Some(format!("{path}: actions {:?} vs {:?}", a.actions_at(na), b.actions_at(nb)));
        }
        let pa = a.outcome_of(na).map(|o| a.outcome(o).payoffs());
        let pb = b.outcome_of(nb).map(|o| b.outcome(o).payoffs());
        if pa != pb {
            return Some(format!("{path}: payoffs {pa:?} vs {pb:?}"));
        }
        if let (Some(ia), Some(ib)) = (a.infoset_of(na), b.infoset_of(nb)) {
            if a.infoset(ia).chance_probs() != b.infoset(ib).chance_probs() {
                return Some(format!(
                    "{path}: chance probabilities {:?} vs {:?}",
                    a.infoset(ia).chance_probs(),
                    b.infoset(ib).chance_probs()
                ));
            }
            let fa = *forward.entry(ia).or_insert(ib);
            let fb = *backward.entry(ib).or_insert(ia);
            if fa != ib || fb != ia {
                return Some(format!("{path}: information set partition differs"));
            }
        }
        stack.extend(ca.iter().copied().zip(cb.iter().copied()).rev());
    }
    None
}
