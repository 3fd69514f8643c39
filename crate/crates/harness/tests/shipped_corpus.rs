use std::path::{Path, PathBuf};

use gameforge_core::{parse_efg, structural_diff, write_efg, Game, Player};
use gameforge_harness::{consistency_check, load_corpus, reference_game, FeatureDiff, REFERENCE_IDS};

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn eighteen_entries_seven_with_perfect_information() {
    let corpus = load_corpus(&corpus_dir()).unwrap();
    let ids: Vec<&str> = corpus.iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids, REFERENCE_IDS);
    assert_eq!(corpus.iter().filter(|e| e.expected.perfect_info).count(), 7);
    let kuhn = corpus.iter().find(|e| e.id == "kuhn_poker").unwrap();
    let e = kuhn.expected;
    assert_eq!((e.max_depth, e.n_decision_nodes, e.n_leaves, e.zero_sum), (4, 25, 30, true));
    assert!(corpus.iter().all(|e| e.reference_efg.is_some() && !e.description.is_empty()));
}

#[test]
fn golden_files_are_the_reference_builds() {
    for entry in load_corpus(&corpus_dir()).unwrap() {
        let built = reference_game(&entry.id).unwrap();
        let text = std::fs::read_to_string(entry.reference_efg.as_ref().unwrap()).unwrap();
        assert_eq!(write_efg(&built).unwrap(), text, "{}: regenerate with the write_references example", entry.id);
        assert_eq!(structural_diff(&built, &parse_efg(&text).unwrap()), None, "{}", entry.id);
    }
}

/// Gives every personal decision node its own information set.
fn split_all_infosets(text: &str) -> Game {
    let mut next = std::collections::HashMap::new();
    let lines: Vec<String> = text
        .lines()
        .map(|line| {
            if !line.starts_with("p ") {
                return line.to_string();
            }
            let mut parts: Vec<&str> = line.splitn(5, ' ').collect();
            let n = next.entry(parts[2].to_string()).or_insert(0);
            *n += 1;
            let number = n.to_string();
            parts[3] = &number;
            parts.join(" ")
        })
        .collect();
    parse_efg(&(lines.join("\n") + "\n")).unwrap()
}

#[test]
fn splitting_information_sets_is_flagged() {
    let corpus = load_corpus(&corpus_dir()).unwrap();
    for id in ["kuhn_poker", "bach_or_stravinsky"] {
        let entry = corpus.iter().find(|e| e.id == id).unwrap();
        assert!(consistency_check(&reference_game(id).unwrap(), &entry.expected).structural_pass);
        let g = split_all_infosets(&write_efg(&reference_game(id).unwrap()).unwrap());
        let r = consistency_check(&g, &entry.expected);
        assert!(!r.structural_pass, "{id}");
        assert_eq!(
            r.feature_diff,
            [FeatureDiff { field: "perfectInfo".into(), expected: "false".into(), actual: "true".into() }],
            "{id}"
        );
    }
}

#[test]
fn market_entry_with_an_extra_leaf() {
    let corpus = load_corpus(&corpus_dir()).unwrap();
    let entry = corpus.iter().find(|e| e.id == "market_entry").unwrap();
    let mut g = Game::new_tree(&["Firm 1", "Firm 2"], "").unwrap();
    let root = g.root();
    g.append_move(&[root], Player::Personal(2), &["Enter", "Out"]).unwrap();
    let enter = g.child(root, 0).unwrap();
    g.append_move(&[enter], Player::Personal(1), &["Fight", "Accommodate", "Share"]).unwrap();
    let leaves: Vec<_> = g.preorder().into_iter().filter(|&n| g.is_terminal(n)).collect();
    for (i, node) in leaves.into_iter().enumerate() {
        let o = g.add_outcome(vec![(i as i64).into(), 1.into()], "").unwrap();
        g.set_outcome(node, Some(o)).unwrap();
    }
    let r = consistency_check(&g, &entry.expected);
    assert!(!r.structural_pass);
    assert_eq!(r.feature_diff, [FeatureDiff { field: "nLeaves".into(), expected: "3".into(), actual: "4".into() }]);
}
