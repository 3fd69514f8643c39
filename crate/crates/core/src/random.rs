//! Random games and random builder-call sequences for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::game::{Game, NodeId, Player};
use crate::rational::Rational;

const LABEL_CHARS: &[char] = &['a', 'b', 'Z', ' ', '"', '-', '1', '\'', '#'];

/// Labels Gambit itself accepts: printable ASCII, no backslash, single
/// inner spaces only. Non-empty labels are made unique with a counter
/// since Gambit rejects duplicate node, infoset and outcome labels.
fn label<R: Rng>(rng: &mut R, next: &mut usize) -> String {
    let len = rng.gen_range(0..5);
    let raw: String = (0..len).map(|_| *LABEL_CHARS.choose(rng).unwrap()).collect();
    let raw = raw.split_whitespace().collect::<Vec<_>>().join(" ");
    if raw.is_empty() {
        raw
    } else {
        *next += 1;
        format!("{raw}{next}")
    }
}

fn distribution<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..6)).collect();
    let total: i64 = weights.iter().sum();
    weights.into_iter().map(|w| Rational::new(w, total)).collect()
}

fn payoff<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-6..7), rng.gen_range(1..4))
}

fn leaves(game: &Game) -> Vec<NodeId> {
    game.preorder().into_iter().filter(|&n| game.is_terminal(n)).collect()
}

/// A structurally valid game with at most `max_nodes` nodes (at least 1).
/// Personal nodes of equal owner and arity are sometimes merged into one
/// information set; most leaves carry an outcome, a few do not.
pub fn random_game<R: Rng>(rng: &mut R, max_nodes: usize) -> Game {
    let mut next = 0;
    let n_players = rng.gen_range(1..=3);
    let names: Vec<String> = (1..=n_players).map(|i| format!("P{i}{}", label(rng, &mut next))).collect();
    let mut game = Game::new_tree(&names, &label(rng, &mut next)).unwrap();
    game.set_comment(&label(rng, &mut next));

    let target = rng.gen_range(1..=max_nodes.max(1));
    loop {
        let arity = rng.gen_range(1..=3);
        if game.node_count() + arity > target {
            break;
        }
        let leaf = *leaves(&game).choose(rng).unwrap();
        let player = if rng.gen_bool(0.2) { Player::Chance } else { Player::Personal(rng.gen_range(1..=n_players)) };
        let actions: Vec<String> = (0..arity).map(|i| format!("{}{}", label(rng, &mut next), i)).collect();
        let iset = game.append_move(&[leaf], player, &actions).unwrap();
        if rng.gen_bool(0.5) {
            game.set_infoset_label(iset, &label(rng, &mut next)).unwrap();
        }
        if player.is_chance() {
            game.set_chance_probs(iset, distribution(rng, arity)).unwrap();
        }
        if rng.gen_bool(0.3) {
            game.set_node_label(leaf, &label(rng, &mut next)).unwrap();
        }
    }

    let internal: Vec<NodeId> = game.preorder().into_iter().filter(|&n| !game.is_terminal(n)).collect();
    for &a in &internal {
        if !rng.gen_bool(0.3) {
            continue;
        }
        let Some(&b) = internal.choose(rng) else { continue };
        let owner = game.owner_of(a).unwrap();
        if owner.is_chance() || game.owner_of(b) != Some(owner) {
            continue;
        }
        // Arity mismatches are rejected by the builder; that is fine here.
        let _ = game.set_infoset(a, game.infoset_of(b).unwrap());
    }

    let n_outcomes = rng.gen_range(1..=4);
    let outcomes: Vec<_> = (0..n_outcomes)
        .map(|_| {
            let payoffs = (0..n_players).map(|_| payoff(rng)).collect();
            game.add_outcome(payoffs, &label(rng, &mut next)).unwrap()
        })
        .collect();
    for leaf in leaves(&game) {
        if rng.gen_bool(0.9) {
            game.set_outcome(leaf, Some(*outcomes.choose(rng).unwrap())).unwrap();
        }
    }
    game
}

/// Applies `steps` randomly chosen builder calls to `game`, with arguments
/// that are often invalid. Returns how many calls succeeded.
pub fn random_builder_calls<R: Rng>(rng: &mut R, game: &mut Game, steps: usize) -> usize {
    let mut ok = 0;
    for _ in 0..steps {
        let nodes = game.preorder();
        let pick = |rng: &mut R| *nodes.choose(rng).unwrap();
        let result = match rng.gen_range(0..5) {
            0 => {
                let count = rng.gen_range(1..=3);
                let targets: Vec<NodeId> = (0..count).map(|_| pick(rng)).collect();
                let player = if rng.gen_bool(0.25) {
                    Player::Chance
                } else {
                    Player::Personal(rng.gen_range(1..=game.num_players() + 1))
                };
                let actions: Vec<String> = (0..rng.gen_range(0..=3)).map(|i| format!("m{i}")).collect();
                game.append_move(&targets, player, &actions).map(|_| ())
            }
            1 => {
                let arity = if rng.gen_bool(0.8) { game.num_players() } else { rng.gen_range(0..4) };
                let payoffs = (0..arity).map(|_| payoff(rng)).collect();
                game.add_outcome(payoffs, "").map(|_| ())
            }
            2 => {
                let outcome = game.outcomes().map(|(id, _)| id).collect::<Vec<_>>().choose(rng).copied();
                game.set_outcome(pick(rng), outcome)
            }
            3 => match game.infoset_of(pick(rng)) {
                Some(iset) => {
                    let n = game.infoset(iset).actions().len();
                    let probs = if rng.gen_bool(0.7) {
                        distribution(rng, n)
                    } else {
                        (0..rng.gen_range(0..4)).map(|_| payoff(rng)).collect()
                    };
                    game.set_chance_probs(iset, probs)
                }
                None => Ok(()),
            },
            _ => {
                let (a, b) = (pick(rng), pick(rng));
                match game.infoset_of(b) {
                    Some(iset) => game.set_infoset(a, iset),
                    None => Ok(()),
                }
            }
        };
        if result.is_ok() {
            ok += 1;
        }
    }
    ok
}
