mod common;

use common::*;
use groupcent::measures::{Direction, Measure};
use groupcent::optimizer::{
    evaluate, optimumset, optimumset_decision, scores_tie, OptimizerConfig, DEFAULT_TOLERANCE,
};
use groupcent::{Error, Graph, VertexSet};
use proptest::prelude::*;

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0.0f64..1.0, any::<u64>())
        .prop_map(|(n, density, seed)| random_connected(n, density, false, seed))
}

fn arb_measure() -> impl Strategy<Value = Measure> {
    prop::sample::select(Measure::ALL.to_vec())
}

fn members(sets: &[VertexSet]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.members().to_vec()).collect()
}

fn valid_k(m: Measure, n: usize, k: usize) -> bool {
    k >= 1 && k < n && (m != Measure::Betweenness || k + 2 <= n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn optimum_matches_naive_enumerator(g in arb_graph(2, 8), m in arb_measure(), k in 1usize..4) {
        prop_assume!(valid_k(m, g.n(), k));
        let r = optimumset(&g, k, m, &OptimizerConfig::with_workers(3)).unwrap();
        prop_assert_eq!(members(&r.optimal_sets), naive_optimum(&g, k, m, DEFAULT_TOLERANCE));
    }

    #[test]
    fn non_optimal_sets_are_strictly_worse(g in arb_graph(3, 8), m in arb_measure(), k in 1usize..4) {
        prop_assume!(valid_k(m, g.n(), k));
        let r = optimumset(&g, k, m, &OptimizerConfig::with_workers(2)).unwrap();
        prop_assert!(r.optimal_sets.windows(2).all(|w| w[0] < w[1]));
        for s in subsets(g.n(), k) {
            let set = VertexSet::new(g.n(), s).unwrap();
            let score = evaluate(&g, &set, m).unwrap();
            if r.optimal_sets.contains(&set) {
                prop_assert!(scores_tie(m, &score, &r.best_value, DEFAULT_TOLERANCE));
                continue;
            }
            let slack = DEFAULT_TOLERANCE * score.value.abs().max(r.best_value.value.abs()).max(1.0);
            match m.direction() {
                Direction::Maximize => prop_assert!(score.value < r.best_value.value - slack || m.is_exact() && score.value < r.best_value.value),
                Direction::Minimize => prop_assert!(score.value > r.best_value.value + slack || m.is_exact() && score.value > r.best_value.value),
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_results(g in arb_graph(3, 9), m in arb_measure(), k in 1usize..4) {
        prop_assume!(valid_k(m, g.n(), k));
        let prints: Vec<String> = [1, 2, 8]
            .iter()
            .map(|&w| optimumset(&g, k, m, &OptimizerConfig::with_workers(w)).unwrap().fingerprint())
            .collect();
        prop_assert_eq!(&prints[0], &prints[1]);
        prop_assert_eq!(&prints[0], &prints[2]);
    }

    #[test]
    fn decision_matches_domination_and_cover(g in arb_graph(3, 10), k in 1usize..4) {
        prop_assume!(k + 2 <= g.n());
        let cfg = OptimizerConfig::with_workers(2);
        let sets = subsets(g.n(), k);
        let has_dominating = sets.iter().any(|s| is_dominating(&g, s));
        let has_cover = sets.iter().any(|s| is_vertex_cover(&g, s));
        let closeness = optimumset_decision(&g, k, Measure::Closeness, 1.0, &cfg).unwrap();
        prop_assert_eq!(closeness.witness.is_some(), has_dominating);
        if let Some(w) = &closeness.witness {
            prop_assert!(is_dominating(&g, w.members()));
        }
        for m in [Measure::Betweenness, Measure::RandomWalk] {
            let d = optimumset_decision(&g, k, m, 1.0, &cfg).unwrap();
            prop_assert_eq!(d.witness.is_some(), has_cover, "{}", m);
            if let Some(w) = &d.witness {
                prop_assert!(is_vertex_cover(&g, w.members()));
            }
        }
    }
}

#[test]
fn budget_refusal_reports_binomial() {
    let g = random_connected(60, 0.1, false, 1);
    match optimumset(&g, 10, Measure::Degree, &OptimizerConfig::default()) {
        Err(Error::BudgetExceeded { n: 60, k: 10, count, .. }) => assert_eq!(count, 75_394_027_566),
        other => panic!("{other:?}"),
    }
}

#[test]
fn group_size_out_of_range() {
    let g = random_connected(5, 0.3, false, 2);
    for k in [0, 5, 6] {
        assert!(matches!(
            optimumset(&g, k, Measure::Degree, &OptimizerConfig::default()),
            Err(Error::InvalidGroupSize { .. })
        ));
    }
}
