//! The trust game and one-card poker, written in GameScript, against
//! hand-built constructions and Gambit's own output.

use std::path::PathBuf;

use gameforge_core::{
    compute_features, execute_script, parse_efg, parse_script, structural_diff, validate_structure, write_efg, Game,
    Player, Rational,
};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(name: &str) -> Game {
    let text = std::fs::read_to_string(fixtures().join("scripts").join(name)).unwrap();
    execute_script(&parse_script(&text).unwrap()).unwrap()
}

fn pay(v: [i64; 2]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

fn hand_built_poker() -> Game {
    let mut g = Game::new_tree(&["Alice", "Bob"], "One card poker game").unwrap();
    let root = g.root();
    g.append_move(&[root], Player::Chance, &["King", "Queen"]).unwrap();
    for c in g.children(root).to_vec() {
        g.append_move(&[c], Player::Personal(1), &["Raise", "Fold"]).unwrap();
    }
    let at = |g: &Game, p: &str| g.resolve(&p.parse().unwrap()).unwrap();
    let (k, q) = (at(&g, "root.0.0"), at(&g, "root.1.0"));
    g.append_move(&[k], Player::Personal(2), &["Meet", "Pass"]).unwrap();
    g.append_move(&[q], Player::Personal(2), &["Meet", "Pass"]).unwrap();
    g.set_infoset(k, g.infoset_of(q).unwrap()).unwrap();
    let big = g.add_outcome(pay([2, -2]), "Alice wins big").unwrap();
    let win = g.add_outcome(pay([1, -1]), "Alice wins").unwrap();
    let bob_big = g.add_outcome(pay([-2, 2]), "Bob wins big").unwrap();
    let bob = g.add_outcome(pay([-1, 1]), "Bob wins").unwrap();
    for (p, o) in [
        ("root.0.0.0", big),
        ("root.0.0.1", win),
        ("root.0.1", bob),
        ("root.1.0.0", bob_big),
        ("root.1.0.1", win),
        ("root.1.1", bob),
    ] {
        let n = at(&g, p);
        g.set_outcome(n, Some(o)).unwrap();
    }
    g
}

#[test]
fn trust_game_counts() {
    let g = run("trust.gs");
    assert!(validate_structure(&g).is_empty());
    let f = compute_features(&g).unwrap();
    assert_eq!((f.n_decision_nodes, f.n_leaves), (2, 3));
}

#[test]
fn one_card_poker_counts() {
    let g = run("one_card_poker.gs");
    assert!(validate_structure(&g).is_empty());
    let f = compute_features(&g).unwrap();
    assert_eq!((f.n_decision_nodes, f.n_leaves), (5, 6));
    let sizes: Vec<usize> = g.infosets().map(|(_, s)| s.members().len()).filter(|&n| n > 1).collect();
    assert_eq!(sizes, vec![2]);
}

#[test]
fn script_matches_hand_built_text() {
    let scripted = run("one_card_poker.gs");
    let hand = hand_built_poker();
    assert_eq!(structural_diff(&scripted, &hand), None);
    assert_eq!(write_efg(&scripted).unwrap(), write_efg(&hand).unwrap());
}

fn normalize(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

#[test]
fn output_matches_gambit_oracle() {
    for (script, oracle) in [("trust.gs", "trust.efg"), ("one_card_poker.gs", "one_card_poker.efg")] {
        let ours = write_efg(&run(script)).unwrap();
        let gambit = std::fs::read_to_string(fixtures().join("oracle").join(oracle)).unwrap();
        assert_eq!(structural_diff(&parse_efg(&gambit).unwrap(), &parse_efg(&ours).unwrap()), None);
        assert_eq!(normalize(&ours), normalize(&gambit), "{script}");
    }
}
