//! Hand-built reference games for the shipped corpus.
//!
//! Each builder follows its description; where a description leaves payoffs
//! open, values respecting the stated ordering were picked.

use gameforge_core::{Game, InfosetId, NodeId, Player, Rational};

/// Ids of the shipped corpus, in corpus order.
pub const REFERENCE_IDS: [&str; 18] = [
    "absent_minded_driver",
    "bach_or_stravinsky",
    "bagwell",
    "centipede",
    "colonial_control",
    "extra_game_one",
    "extra_game_three",
    "extra_game_two",
    "imperfect_recall",
    "kuhn_poker",
    "market_entry",
    "market_signalling",
    "nim_five",
    "nuclear_crisis",
    "rock_paper_scissors",
    "simple_bargaining",
    "three_player",
    "tic_tac_toe",
];

/// The reference construction for a corpus id.
pub fn reference_game(id: &str) -> Option<Game> {
    Some(match id {
        "absent_minded_driver" => absent_minded_driver(),
        "bach_or_stravinsky" => bach_or_stravinsky(),
        "bagwell" => bagwell(),
        "centipede" => centipede(),
        "colonial_control" => colonial_control(),
        "extra_game_one" => extra_game_one(),
        "extra_game_three" => extra_game_three(),
        "extra_game_two" => extra_game_two(),
        "imperfect_recall" => imperfect_recall(),
        "kuhn_poker" => kuhn_poker(),
        "market_entry" => market_entry(),
        "market_signalling" => market_signalling(),
        "nim_five" => nim_five(),
        "nuclear_crisis" => nuclear_crisis(),
        "rock_paper_scissors" => rock_paper_scissors(),
        "simple_bargaining" => simple_bargaining(),
        "three_player" => three_player(),
        "tic_tac_toe" => tic_tac_toe(),
        _ => return None,
    })
}

/// Path-addressed wrapper over the builder; every call here is on a
/// well-formed tree, so errors are bugs.
struct B(Game);

impl B {
    fn new(players: &[&str], title: &str) -> Self {
        B(Game::new_tree(players, title).unwrap())
    }

    fn at(&self, path: &str) -> NodeId {
        self.0.resolve(&path.parse().unwrap()).unwrap()
    }

    fn mv(&mut self, paths: &[&str], player: usize, actions: &[&str]) -> InfosetId {
        let nodes: Vec<NodeId> = paths.iter().map(|p| self.at(p)).collect();
        let who = if player == 0 { Player::Chance } else { Player::Personal(player) };
        self.0.append_move(&nodes, who, actions).unwrap()
    }

    fn probs(&mut self, iset: InfosetId, probs: &[&str]) {
        self.0.set_chance_probs(iset, probs.iter().map(|p| p.parse().unwrap()).collect()).unwrap();
    }

    fn pay(&mut self, path: &str, payoffs: &[i64], label: &str) {
        let o = self.0.add_outcome(payoffs.iter().map(|&x| Rational::from(x)).collect(), label).unwrap();
        let node = self.at(path);
        self.0.set_outcome(node, Some(o)).unwrap();
    }

    fn done(self) -> Game {
        self.0
    }
}

fn absent_minded_driver() -> Game {
    let mut b = B::new(&["Driver"], "Absent-minded driver");
    b.mv(&["root"], 1, &["EXIT", "CONTINUE"]);
    // X and Y are the same information set: the driver cannot tell them apart.
    let x = b.0.infoset_of(b.at("root")).unwrap();
    b.mv(&["root.1"], 1, &["EXIT", "CONTINUE"]);
    let y = b.at("root.1");
    b.0.set_infoset(y, x).unwrap();
    b.pay("root.0", &[0], "A");
    b.pay("root.1.0", &[4], "B");
    b.pay("root.1.1", &[1], "C");
    b.done()
}

fn bach_or_stravinsky() -> Game {
    let mut b = B::new(&["Alexis", "Beverley"], "Bach or Stravinsky");
    b.mv(&["root"], 1, &["Bach", "Stravinsky"]);
    b.mv(&["root.0", "root.1"], 2, &["Bach", "Stravinsky"]);
    b.pay("root.0.0", &[2, 1], "Both Bach");
    b.pay("root.0.1", &[0, 0], "Alexis Bach, Beverley Stravinsky");
    b.pay("root.1.0", &[0, 0], "Alexis Stravinsky, Beverley Bach");
    b.pay("root.1.1", &[1, 2], "Both Stravinsky");
    b.done()
}

fn bagwell() -> Game {
    let mut b = B::new(&["Player 1", "Player 2"], "Bagwell");
    b.mv(&["root"], 1, &["S", "C"]);
    let s = b.mv(&["root.0"], 0, &["Perceive S", "Perceive C"]);
    b.probs(s, &["99/100", "1/100"]);
    let c = b.mv(&["root.1"], 0, &["Perceive S", "Perceive C"]);
    b.probs(c, &["1/100", "99/100"]);
    // Player 2 acts on the perceived choice only.
    b.mv(&["root.0.0", "root.1.0"], 2, &["S", "C"]);
    b.mv(&["root.0.1", "root.1.1"], 2, &["S", "C"]);
    // E > A > F > W > B > D
    let (e, a, f, w, bb, d) = (5, 4, 3, 2, 1, 0);
    for perceived in 0..2 {
        b.pay(&format!("root.0.{perceived}.0"), &[a, bb], "");
        b.pay(&format!("root.0.{perceived}.1"), &[w, d], "");
        b.pay(&format!("root.1.{perceived}.0"), &[e, w], "");
        b.pay(&format!("root.1.{perceived}.1"), &[f, f], "");
    }
    b.done()
}

fn centipede() -> Game {
    let mut b = B::new(&["Alice", "Bob"], "Centipede");
    let mut path = String::from("root");
    // (Alice, Bob) if the mover takes at each of the four moves.
    let takes = [[4, 1], [2, 8], [16, 4], [8, 32]];
    for (i, take) in takes.iter().enumerate() {
        b.mv(&[&path], 1 + i % 2, &["Take", "Push"]);
        b.pay(&format!("{path}.0"), take, "");
        path.push_str(".1");
    }
    b.pay(&path, &[64, 16], "");
    b.done()
}

fn colonial_control() -> Game {
    let mut b = B::new(&["Country A", "Country B"], "Colonial control");
    b.mv(&["root"], 2, &["Accept", "Rebel"]);
    b.mv(&["root.0"], 1, &["Tax", "Drop Taxes"]);
    b.mv(&["root.1"], 1, &["Grant Independence", "Suppress"]);
    let war = b.mv(&["root.1.1"], 0, &["B wins", "B loses"]);
    b.probs(war, &["3/10", "7/10"]);
    b.pay("root.0.0", &[6, -2], "");
    b.pay("root.0.1", &[4, 0], "");
    b.pay("root.1.0", &[0, 3], "");
    b.pay("root.1.1.0", &[-1, -3], "");
    b.pay("root.1.1.1", &[-1, -5], "");
    b.done()
}

fn extra_game_one() -> Game {
    let mut b = B::new(&["Player 1", "Player 2"], "Extra game one");
    b.mv(&["root"], 1, &["A", "B", "C"]);
    b.mv(&["root.0"], 2, &["D", "E", "F"]);
    b.mv(&["root.1", "root.2"], 2, &["D", "E", "F"]);
    for first in 0..3 {
        let p2 = format!("root.{first}");
        b.pay(&format!("{p2}.2"), &[0, 0], "");
        for second in 0..2 {
            let p1 = format!("{p2}.{second}");
            b.mv(&[&p1], 1, &["G", "H"]);
            b.pay(&format!("{p1}.1"), &[2, -1], "");
            b.mv(&[&format!("{p1}.0")], 2, &["Q", "W"]);
            b.pay(&format!("{p1}.0.0"), &[3, 3], "");
            b.pay(&format!("{p1}.0.1"), &[0, 0], "");
        }
    }
    b.done()
}

fn extra_game_two() -> Game {
    let mut b = B::new(&["Player 1", "Player 2", "Player 3"], "Extra game two");
    b.mv(&["root"], 1, &["A", "B", "C"]);
    b.mv(&["root.0", "root.1", "root.2"], 2, &["D", "E"]);
    for first in 0..3 {
        for second in 0..2 {
            let p1 = format!("root.{first}.{second}");
            b.mv(&[&p1], 1, &["F", "G"]);
            for third in 0..2 {
                let p3 = format!("{p1}.{third}");
                b.mv(&[&p3], 3, &["Q", "W"]);
                b.pay(&format!("{p3}.0"), &[3, 3, 3], "");
                b.pay(&format!("{p3}.1"), &[2, 2, 3], "");
            }
        }
    }
    b.done()
}

fn extra_game_three() -> Game {
    let mut b = B::new(&["Player 1", "Player 2"], "Extra game three");
    b.mv(&["root"], 0, &["A", "B", "C", "D"]);
    let payoffs = [[1, 2], [3, -3], [0, -1], [4, -4]];
    for (draw, [q, w]) in payoffs.iter().enumerate() {
        let p1 = format!("root.{draw}");
        b.mv(&[&p1], 1, &["E", "F", "G"]);
        for action in 0..3 {
            let p2 = format!("{p1}.{action}");
            b.mv(&[&p2], 2, &["Q", "W"]);
            b.pay(&format!("{p2}.0"), &[*q, -q], "");
            b.pay(&format!("{p2}.1"), &[*w, -w], "");
        }
    }
    b.done()
}

fn imperfect_recall() -> Game {
    let mut b = B::new(&["Player 1"], "Imperfect recall");
    b.mv(&["root"], 0, &["L", "R"]);
    b.mv(&["root.0"], 1, &["l", "r"]);
    b.mv(&["root.1"], 1, &["l", "r"]);
    // Only the own earlier choice is remembered.
    b.mv(&["root.0.0", "root.1.0"], 1, &["A", "B"]);
    b.mv(&["root.0.1", "root.1.1"], 1, &["A", "B"]);
    for leaf in ["0.0.0", "0.0.1", "0.1.0", "0.1.1", "1.0.0", "1.0.1", "1.1.0", "1.1.1"] {
        b.pay(&format!("root.{leaf}"), &[0], "");
    }
    b.done()
}

fn kuhn_poker() -> Game {
    const DEALS: [&str; 6] = ["JQ", "JK", "QJ", "QK", "KJ", "KQ"];
    let rank = |c: u8| b"JQK".iter().position(|&x| x == c).unwrap();
    let mut b = B::new(&["Alice", "Bob"], "Kuhn poker");
    b.mv(&["root"], 0, &DEALS);
    let deal = |i: usize| format!("root.{i}");
    let alice_holds = |card: u8| -> Vec<String> {
        (0..6).filter(|&i| DEALS[i].as_bytes()[0] == card).map(deal).collect()
    };
    let bob_holds = |card: u8| -> Vec<String> {
        (0..6).filter(|&i| DEALS[i].as_bytes()[1] == card).map(deal).collect()
    };
    let refs = |v: &[String], suffix: &str| -> Vec<String> { v.iter().map(|p| format!("{p}{suffix}")).collect() };
    for card in *b"JQK" {
        let own = alice_holds(card);
        b.mv(&as_strs(&own), 1, &["Check", "Bet"]);
    }
    for card in *b"JQK" {
        let own = bob_holds(card);
        b.mv(&as_strs(&refs(&own, ".0")), 2, &["Check", "Bet"]);
        b.mv(&as_strs(&refs(&own, ".1")), 2, &["Fold", "Call"]);
    }
    for card in *b"JQK" {
        let own = alice_holds(card);
        b.mv(&as_strs(&refs(&own, ".0.1")), 1, &["Fold", "Call"]);
    }
    for (i, d) in DEALS.iter().enumerate() {
        let d = d.as_bytes();
        let sign = if rank(d[0]) > rank(d[1]) { 1 } else { -1 };
        let p = deal(i);
        b.pay(&format!("{p}.0.0"), &[sign, -sign], "");
        b.pay(&format!("{p}.0.1.0"), &[-1, 1], "");
        b.pay(&format!("{p}.0.1.1"), &[2 * sign, -2 * sign], "");
        b.pay(&format!("{p}.1.0"), &[1, -1], "");
        b.pay(&format!("{p}.1.1"), &[2 * sign, -2 * sign], "");
    }
    b.done()
}

fn as_strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn market_entry() -> Game {
    let mut b = B::new(&["Firm 1", "Firm 2"], "Market entry");
    b.mv(&["root"], 2, &["Enter", "Out"]);
    b.mv(&["root.0"], 1, &["Fight", "Accommodate"]);
    b.pay("root.0.0", &[0, 1], "Fight");
    b.pay("root.0.1", &[2, 2], "Accommodate");
    b.pay("root.1", &[4, 0], "Out");
    b.done()
}

fn market_signalling() -> Game {
    let mut b = B::new(&["New manufacturer", "Existing manufacturer"], "Market signalling");
    let strength = b.mv(&["root"], 0, &["Strong", "Weak"]);
    b.probs(strength, &["2/3", "1/3"]);
    b.mv(&["root.0"], 1, &["S", "W"]);
    b.mv(&["root.1"], 1, &["S", "W"]);
    // The existing manufacturer sees the signal, not the strength.
    b.mv(&["root.0.0", "root.1.0"], 2, &["F", "A"]);
    b.mv(&["root.0.1", "root.1.1"], 2, &["F", "A"]);
    let table = [("0.0", [1, 0], [3, 1]), ("0.1", [0, 0], [2, 1]), ("1.0", [0, 2], [2, 1]), ("1.1", [1, 2], [3, 1])];
    for (p, fight, adapt) in table {
        b.pay(&format!("root.{p}.0"), &fight, "");
        b.pay(&format!("root.{p}.1"), &adapt, "");
    }
    b.done()
}

fn nim_five() -> Game {
    // Misère play: whoever takes the last stone loses. A player facing one
    // stone still has a (single-action) move.
    let mut b = B::new(&["Alice", "Bob"], "Nim with five in one pile");
    let mut stack = vec![("root".to_string(), 5u32, 1usize)];
    while let Some((path, stones, mover)) = stack.pop() {
        let actions: &[&str] = if stones >= 2 { &["Take one", "Take two"] } else { &["Take one"] };
        b.mv(&[&path], mover, actions);
        for (i, take) in (1..=actions.len() as u32).enumerate() {
            let child = format!("{path}.{i}");
            let left = stones - take;
            if left == 0 {
                let loser_pays = if mover == 1 { [-1, 1] } else { [1, -1] };
                b.pay(&child, &loser_pays, "");
            } else {
                stack.push((child, left, 3 - mover));
            }
        }
    }
    b.done()
}

fn nuclear_crisis() -> Game {
    let mut b = B::new(&["Country A", "Country B"], "Nuclear crisis");
    b.mv(&["root"], 1, &["E", "I"]);
    b.mv(&["root.0"], 2, &["B", "E"]);
    b.mv(&["root.0.1"], 1, &["R", "D"]);
    b.mv(&["root.0.1.0", "root.0.1.1"], 2, &["R", "D"]);
    b.pay("root.1", &[1, 1], "");
    b.pay("root.0.0", &[1, -1], "");
    b.pay("root.0.1.0.0", &[-1, -1], "");
    b.pay("root.0.1.0.1", &[-10, 10], "");
    b.pay("root.0.1.1.0", &[10, -10], "");
    b.pay("root.0.1.1.1", &[-100, -100], "");
    b.done()
}

fn rock_paper_scissors() -> Game {
    const SYMBOLS: [&str; 3] = ["Rock", "Paper", "Scissors"];
    let mut b = B::new(&["Player 1", "Player 2"], "Rock, paper, scissors");
    b.mv(&["root"], 1, &SYMBOLS);
    b.mv(&["root.0", "root.1", "root.2"], 2, &SYMBOLS);
    for i in 0..3 {
        for j in 0..3 {
            // i beats j when i is one step after j.
            let win: i64 = match (3 + i - j) % 3 {
                0 => 0,
                1 => 1,
                _ => -1,
            };
            b.pay(&format!("root.{i}.{j}"), &[win, -win], "");
        }
    }
    b.done()
}

fn simple_bargaining() -> Game {
    // Proposals are single-action moves; B's final acceptance is forced and
    // so is not a decision.
    let mut b = B::new(&["A", "B"], "Simple bargaining");
    b.mv(&["root"], 1, &["Propose 5500/4500"]);
    b.mv(&["root.0"], 2, &["Accept", "Reject"]);
    b.mv(&["root.0.1"], 2, &["Propose 5000/5000"]);
    b.mv(&["root.0.1.0"], 1, &["Accept", "Reject"]);
    b.mv(&["root.0.1.0.1"], 1, &["Propose 5200/4800"]);
    b.pay("root.0.0", &[5500, 4500], "");
    b.pay("root.0.1.0.0", &[4750, 4750], "");
    b.pay("root.0.1.0.1.0", &[4693, 4332], "");
    b.done()
}

fn three_player() -> Game {
    let mut b = B::new(&["Player 1", "Player 2", "Player 3"], "A three-player game");
    b.mv(&["root"], 0, &["A", "B"]);
    b.mv(&["root.0", "root.1"], 1, &["L", "R"]);
    b.mv(&["root.0.0", "root.1.0"], 2, &["l", "r"]);
    b.mv(&["root.0.0.0", "root.1.0.0"], 3, &["a", "b"]);
    for c in 0..2 {
        b.pay(&format!("root.{c}.1"), &[1, 1, 1], "");
        b.pay(&format!("root.{c}.0.1"), &[2, 2, 2], "");
        b.pay(&format!("root.{c}.0.0.0"), &[3, 3, 3], "");
        b.pay(&format!("root.{c}.0.0.1"), &[3, 3, 3], "");
    }
    b.done()
}

fn tic_tac_toe() -> Game {
    let mut b = B::new(&["x", "o"], "Tic-tac-toe");
    b.mv(&["root"], 1, &["(0, 0)", "(0, 2)", "(1, 0)"]);
    b.mv(&["root.0"], 2, &["(0, 2)", "(1, 0)"]);
    b.mv(&["root.0.1"], 1, &["(0, 2)"]);
    b.mv(&["root.2"], 2, &["(0, 0)", "(0, 2)"]);
    b.mv(&["root.2.0"], 1, &["(0, 2)"]);
    let (x_wins, o_wins) = ([1, -1], [-1, 1]);
    b.pay("root.0.0", &o_wins, "");
    b.pay("root.0.1.0", &x_wins, "");
    b.pay("root.1", &x_wins, "");
    b.pay("root.2.0.0", &x_wins, "");
    b.pay("root.2.1", &o_wins, "");
    b.done()
}
