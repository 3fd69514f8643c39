use gameforge_core::random::random_builder_calls;
use gameforge_core::{fatal_violations, Game, Player, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Owner uniformity, arity uniformity and normalized chance distributions,
/// checked directly rather than through the validator.
fn infoset_invariants_hold(g: &Game) -> Result<(), String> {
    for (id, set) in g.infosets() {
        if set.members().is_empty() {
            return Err(format!("{id:?} is empty"));
        }
        for &m in set.members() {
            if g.infoset_of(m) != Some(id) || g.owner_of(m) != Some(set.owner()) {
                return Err(format!("{id:?}: member {} disagrees on owner", g.path_of(m)));
            }
            if g.children(m).len() != set.actions().len() {
                return Err(format!("{id:?}: member {} has the wrong arity", g.path_of(m)));
            }
        }
        match (set.owner(), set.chance_probs()) {
            (Player::Chance, Some(p)) => {
                let sum: Rational = p.iter().sum();
                if !sum.is_one() || p.iter().any(Rational::is_negative) || p.len() != set.actions().len() {
                    return Err(format!("{id:?}: bad distribution {p:?}"));
                }
            }
            (Player::Chance, None) => return Err(format!("{id:?}: chance without probabilities")),
            (Player::Personal(_), Some(_)) => return Err(format!("{id:?}: personal with probabilities")),
            (Player::Personal(_), None) => {}
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn builder_never_breaks_infosets(seed in any::<u64>(), players in 1usize..=3, steps in 1usize..=25) {
        let names: Vec<String> = (0..players).map(|i| format!("P{i}")).collect();
        let mut g = Game::new_tree(&names, "").unwrap();
        random_builder_calls(&mut ChaCha8Rng::seed_from_u64(seed), &mut g, steps);
        prop_assert_eq!(infoset_invariants_hold(&g), Ok(()));
        prop_assert_eq!(fatal_violations(&g), vec![]);
    }
}
