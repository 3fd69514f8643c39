//! Graphviz rendering of a game tree.

use std::fmt::Write as _;

use crate::game::{Game, Player};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the tree as a `digraph`. Decision nodes are labelled with their
/// owner, edges with action labels (and probabilities for chance), leaves
/// with their payoffs (`?` when absent). Members of a non-singleton
/// information set are chained by dashed, undirected, non-constraining edges.
pub fn write_dot(game: &Game) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(game.title()));
    out.push_str("  node [fontname=\"Helvetica\"];\n");
    let order = game.preorder();
    for &n in &order {
        let id = n.0;
        match game.owner_of(n) {
            Some(owner) => {
                let shape = if owner == Player::Chance { "diamond" } else { "ellipse" };
                let name = match owner {
                    Player::Chance => "Chance".to_string(),
                    Player::Personal(_) => game.player_name(owner).to_string(),
                };
                let _ = writeln!(out, "  n{id} [label=\"{}\", shape={shape}];", escape(&name));
            }
            None => {
                let label = match game.outcome_of(n) {
                    Some(o) => {
                        let p: Vec<String> = game.outcome(o).payoffs().iter().map(ToString::to_string).collect();
                        format!("({})", p.join(", "))
                    }
                    None => "?".to_string(),
                };
                let _ = writeln!(out, "  n{id} [label=\"{label}\", shape=box];");
            }
        }
    }
    for &n in &order {
        let Some(iset) = game.infoset_of(n) else { continue };
        let set = game.infoset(iset);
        for (i, &c) in game.children(n).iter().enumerate() {
            let mut label = escape(&set.actions()[i]);
            if let Some(probs) = set.chance_probs() {
                let _ = write!(label, " ({})", probs[i]);
            }
            let _ = writeln!(out, "  n{} -> n{} [label=\"{label}\"];", n.0, c.0);
        }
    }
    for (_, set) in game.infosets() {
        let mut members: Vec<_> = set.members().to_vec();
        if members.len() < 2 {
            continue;
        }
        members.sort_by_key(|m| game.path_of(*m));
        for pair in members.windows(2) {
            let _ = writeln!(
                out,
                "  n{} -> n{} [style=dashed, dir=none, constraint=false];",
                pair[0].0, pair[1].0
            );
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn count(dot: &str) -> (usize, usize, usize) {
        let vertices = dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
        let edges = dot.lines().filter(|l| l.contains("->") && !l.contains("dashed")).count();
        let links = dot.lines().filter(|l| l.contains("dashed")).count();
        (vertices, edges, links)
    }

    #[test]
    fn single_node_game() {
        let g = Game::new_tree(&["A"], "").unwrap();
        let dot = write_dot(&g);
        assert_eq!(count(&dot), (1, 0, 0));
        assert!(dot.contains("label=\"?\""));
    }

    #[test]
    fn trust_game_shape() {
        let mut g = Game::new_tree(&["Buyer", "Seller"], "trust").unwrap();
        let root = g.root();
        g.append_move(&[root], Player::Personal(1), &["Trust", "Not trust"]).unwrap();
        let t = g.child(root, 0).unwrap();
        g.append_move(&[t], Player::Personal(2), &["Honor", "Abuse"]).unwrap();
        let o = g.add_outcome(vec![Rational::from(1), Rational::from(1)], "").unwrap();
        g.set_outcome(g.child(t, 0).unwrap(), Some(o)).unwrap();
        let dot = write_dot(&g);
        assert_eq!(count(&dot), (5, 4, 0));
        assert!(dot.contains("label=\"(1, 1)\""));
        assert!(dot.contains("label=\"Not trust\""));
    }

    #[test]
    fn infoset_link() {
        let mut g = Game::new_tree(&["A", "B"], "").unwrap();
        let root = g.root();
        g.append_move(&[root], Player::Chance, &["K", "Q"]).unwrap();
        let kids = g.children(root).to_vec();
        g.append_move(&kids, Player::Personal(2), &["x", "y"]).unwrap();
        let dot = write_dot(&g);
        assert_eq!(count(&dot).2, 1);
        assert!(dot.contains("K (1/2)"));
    }
}
