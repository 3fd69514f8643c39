use gameforge_harness::{compute_pass_metrics, Cell, MetricsError, ReviewMode, SampleOutcome, Verdict};
use gameforge_pipeline::{Final, Setting, TranslationRun};
use proptest::prelude::*;

fn outcome(index: usize, structural_pass: bool, semantic_verdict: Verdict) -> SampleOutcome {
    let run = TranslationRun {
        setting: Setting::D,
        description: String::new(),
        max_debug_attempts: 3,
        stage_one: None,
        attempts: Vec::new(),
        outcome: Final::Failure { reason: "synthetic".into() },
        game: None,
    };
    SampleOutcome { sample_index: index, run, structural_pass, feature_diff: Vec::new(), semantic_verdict }
}

fn verdict() -> impl Strategy<Value = Verdict> {
    prop_oneof![Just(Verdict::Unreviewed), Just(Verdict::Pass), Just(Verdict::Fail)]
}

fn mode() -> impl Strategy<Value = ReviewMode> {
    prop_oneof![Just(ReviewMode::Strict), Just(ReviewMode::NecessaryOnly)]
}

proptest! {
    #[test]
    fn metrics_agree_with_a_recount(
        samples in (1usize..=8).prop_flat_map(|k| proptest::collection::vec((any::<bool>(), verdict()), k)),
        mode in mode(),
    ) {
        let k = samples.len();
        let outcomes: Vec<_> = samples.iter().enumerate().map(|(i, &(p, v))| outcome(i + 1, p, v)).collect();
        let m = compute_pass_metrics(&outcomes, k, mode).unwrap();
        let recount = samples
            .iter()
            .filter(|&&(p, v)| p && match mode {
                ReviewMode::Strict => v == Verdict::Pass,
                ReviewMode::NecessaryOnly => v != Verdict::Fail,
            })
            .count();
        prop_assert_eq!(m.s, recount);
        prop_assert!(!m.pass_all_k || m.pass_at_k);
        prop_assert_eq!(m.pass_at_k, recount > 0);
        prop_assert_eq!(m.pass_all_k, recount == k);
        prop_assert_eq!(m.cell.successes(k), recount);
        prop_assert_eq!(m.cell.to_string().parse::<Cell>().unwrap(), m.cell);
        prop_assert_eq!(m.cell.tag().parse::<Cell>().unwrap(), m.cell);
    }

    #[test]
    fn cells_round_trip(s in 0usize..20, extra in 0usize..20) {
        let k = (s + extra).max(1);
        let c = Cell::new(s, k);
        prop_assert_eq!(c.successes(k), s.min(k));
        prop_assert_eq!(c.to_string().parse::<Cell>().unwrap(), c);
        prop_assert_eq!(c.tag().parse::<Cell>().unwrap(), c);
    }

    #[test]
    fn short_runs_need_a_single_final_pass(k in 2usize..8, run in 1usize..8, pass_at in 0usize..8) {
        prop_assume!(run < k);
        let outcomes: Vec<_> = (0..run).map(|i| outcome(i + 1, i == pass_at, Verdict::Unreviewed)).collect();
        let r = compute_pass_metrics(&outcomes, k, ReviewMode::NecessaryOnly);
        if pass_at == run - 1 {
            let m = r.unwrap();
            prop_assert_eq!((m.s, m.samples_run, m.pass_at_k, m.pass_all_k), (1, run, true, false));
        } else {
            prop_assert_eq!(r.unwrap_err(), MetricsError::ArityMismatch { k, got: run });
        }
    }
}

#[test]
fn verdicts_gate_by_mode() {
    let o = outcome(1, true, Verdict::Unreviewed);
    assert!(o.passes(ReviewMode::NecessaryOnly));
    assert!(!o.passes(ReviewMode::Strict));
    assert!(!outcome(1, true, Verdict::Fail).passes(ReviewMode::NecessaryOnly));
    assert!(!outcome(1, false, Verdict::Pass).passes(ReviewMode::Strict));
}
