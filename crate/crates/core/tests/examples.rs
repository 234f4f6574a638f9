//! Worked examples checked against independent closed forms or enumeration.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use secretary_core::algorithms::{
    greedy, online_with_sample_size, simulate, simulate_sbvm, ArrivalOrder, Pruner,
};
use secretary_core::analysis::{brute_force_opt, brute_force_opt_matching, survival_probability};
use secretary_core::matroid::{enumerate_independent_sets, maximum_matching, rank};
use secretary_core::process::{
    estimate_balance, exact_expectations_default, g_p, g_p_enumerated, ConstantSchedule,
    GeometricSchedule, PresetCoins, ScriptedCoins,
};
use secretary_core::valuation::{lift_to_edges, verify_monotone_submodular};
use secretary_core::{
    BipartiteGraph, CoverageValuation, ElementSet, IndependenceSystem, Instance, LaminarMatroid,
    LinearValuation, SetFunction, TableValuation, UniformMatroid,
};

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn set(n: usize, xs: &[usize]) -> ElementSet {
    ElementSet::from_elements(n, xs.iter().copied())
}

#[test]
fn small_ranks_match_enumeration() {
    let lam =
        LaminarMatroid::from_lists(4, &[(&[0, 1], 1), (&[2, 3], 1), (&[0, 1, 2, 3], 3)]).unwrap();
    let sys = IndependenceSystem::from(lam);
    let largest = enumerate_independent_sets(&sys, 20)
        .unwrap()
        .map(|s| s.len())
        .max()
        .unwrap();
    assert_eq!(largest, 2);
    assert_eq!(rank(&sys).unwrap(), 2);

    let g = BipartiteGraph::new(3, 1, vec![(0, 0), (1, 0), (2, 0)]).unwrap();
    assert_eq!(maximum_matching(&g, &ElementSet::full(3)), 1);

    let u = IndependenceSystem::from(UniformMatroid::new(4, 2));
    let count = enumerate_independent_sets(&u, 20).unwrap().count() as f64;
    assert_eq!(count, binomial(4, 0) + binomial(4, 1) + binomial(4, 2));
}

#[test]
fn squared_cardinality_is_caught() {
    let f = TableValuation::from_fn(3, |s| (s.len() * s.len()) as f64).unwrap();
    let cex = verify_monotone_submodular(&f).unwrap().unwrap_err();
    let text = format!("{cex:?}");
    assert!(text.contains('1') && text.contains('3'), "{text}");
}

#[test]
fn lifting_collapses_shared_left_nodes() {
    let base = LinearValuation::new(vec![3.0, 7.0]).unwrap();
    let g = BipartiteGraph::new(2, 2, vec![(1, 0), (1, 1), (0, 0)]).unwrap();
    let f = lift_to_edges(base.into(), g).unwrap();
    assert_eq!(f.value(&set(3, &[0, 1])), 7.0);
    assert_eq!(f.value(&set(3, &[0, 1, 2])), 10.0);
}

#[test]
fn greedy_skips_zero_marginal_duplicates() {
    let f =
        CoverageValuation::new(vec![1.0, 1.0, 1.0], vec![vec![0, 1], vec![0, 1], vec![2]]).unwrap();
    let u = IndependenceSystem::from(UniformMatroid::new(3, 2));
    assert_eq!(greedy(&u, &f, &ElementSet::full(3)).to_vec(), vec![0, 2]);
}

#[test]
fn optimum_by_hand_enumeration() {
    let f = CoverageValuation::new(vec![5.0, 2.0], vec![vec![0], vec![0], vec![1]]).unwrap();
    let opt = brute_force_opt(&IndependenceSystem::from(UniformMatroid::new(3, 2)), &f).unwrap();
    assert_eq!(opt.value, 7.0);
    assert_eq!(opt.witness.to_vec(), vec![0, 2]);

    // edges: (0,0)=4, (0,1)=1, (1,0)=1, (1,1)=4
    let g = BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
    let f = TableValuation::from_fn(4, |s| {
        let w = [4.0, 1.0, 1.0, 4.0];
        s.iter().map(|e| w[e]).sum()
    })
    .unwrap();
    let opt = brute_force_opt_matching(&g, &f).unwrap();
    assert_eq!(opt.value, 8.0);
    assert_eq!(opt.witness.to_vec(), vec![0, 3]);
}

#[test]
fn online_hand_trace() {
    let u = IndependenceSystem::from(UniformMatroid::new(2, 1));
    let f = LinearValuation::new(vec![1.0, 2.0]).unwrap();
    let run = online_with_sample_size(&u, &f, &ArrivalOrder::identity(2), 1, None).unwrap();
    assert_eq!(run.sample.to_vec(), vec![0]);
    assert_eq!(run.sample_greedy.to_vec(), vec![0]);
    assert_eq!(run.accepted.to_vec(), vec![1]);
}

#[test]
fn simulate_all_tails_prunes_the_root() {
    let u = IndependenceSystem::from(UniformMatroid::new(2, 1));
    let f = LinearValuation::new(vec![3.0, 1.0]).unwrap();
    let pruner = Pruner::for_system(&u).unwrap();
    let run = simulate(&u, &f, &mut PresetCoins::new(ElementSet::empty(2)), &pruner);
    assert_eq!(run.candidates.to_vec(), vec![0, 1]);
    assert!(run.pruned.is_empty());
}

#[test]
fn sbvm_star_hand_trace() {
    let g = BipartiteGraph::new(2, 1, vec![(0, 0), (1, 0)]).unwrap();
    let f = lift_to_edges(
        LinearValuation::new(vec![5.0, 3.0]).unwrap().into(),
        g.clone(),
    )
    .unwrap();
    let run = simulate_sbvm(&g, &f, &mut ScriptedCoins::new(vec![false, false])).unwrap();
    assert_eq!(run.candidates.to_vec(), vec![0, 1]);
    assert!(run.pruned.is_empty());
}

/// Survival of the heavier element in uniform(2, 1) with weights (2, 1):
/// it survives iff its own coin is tails and the lighter one is heads.
#[test]
fn survival_matches_coin_enumeration() {
    let p: f64 = 0.842;
    let u = IndependenceSystem::from(UniformMatroid::new(2, 1));
    let f = LinearValuation::new(vec![2.0, 1.0]).unwrap();
    let pruner = Pruner::for_system(&u).unwrap();
    let mut exact = [0.0; 2];
    for bits in 0u64..4 {
        let heads = ElementSet::from_bits(2, bits);
        let prob = p.powi(heads.len() as i32) * (1.0 - p).powi(2 - heads.len() as i32);
        let run = simulate(&u, &f, &mut PresetCoins::new(heads), &pruner);
        for e in &run.pruned {
            exact[e] += prob;
        }
    }
    assert!((exact[0] - (1.0 - p) * p).abs() < 1e-15);

    let inst = Instance::new(u, f.into()).unwrap();
    let est = survival_probability(&inst, p, 100_000, 17).unwrap();
    let heavy = est.iter().find(|s| s.element == 0).unwrap();
    assert!(
        (heavy.estimate - exact[0]).abs() <= 4.0 * heavy.std_error,
        "{heavy:?}"
    );
}

#[test]
fn single_element_survives_with_tails_probability() {
    let u = IndependenceSystem::from(UniformMatroid::new(1, 1));
    let f = LinearValuation::new(vec![1.0]).unwrap();
    let inst = Instance::new(u, f.into()).unwrap();
    let est = survival_probability(&inst, 0.3, 50_000, 5).unwrap();
    assert!((est[0].estimate - 0.7).abs() <= 4.0 * est[0].std_error);
}

#[test]
fn constant_schedule_expectations_are_negative_binomial() {
    let (p, mu) = (0.7, 3usize);
    let ex = exact_expectations_default(p, mu, &ConstantSchedule(1.0)).unwrap();
    assert!((ex.heads_weight - mu as f64).abs() < 1e-9);
    assert!((ex.tails_weight - mu as f64 * (1.0 - p) / p).abs() < 1e-9);
    // |N| = j with probability C(μ-1+j, j) p^μ (1-p)^j; S = N iff j <= μ
    let pruned: f64 = (0..=mu as u64)
        .map(|j| {
            j as f64 * binomial(mu as u64 - 1 + j, j) * p.powi(mu as i32) * (1.0 - p).powi(j as i32)
        })
        .sum();
    assert!((ex.pruned_weight - pruned).abs() < 1e-9);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let est = estimate_balance(p, mu, &ConstantSchedule(1.0), 100_000, &mut rng).unwrap();
    assert!(
        (est.ratio - 7.0 / 3.0).abs() <= 3.0 * est.se_ratio,
        "{est:?}"
    );
}

#[test]
fn halving_schedule_balances() {
    let (p, mu) = (0.6, 2usize);
    let schedule = GeometricSchedule {
        first: 0.5,
        ratio: 0.5,
    };
    let ex = exact_expectations_default(p, mu, &schedule).unwrap();
    // timestamp t is processed iff fewer than μ heads among the first t-1 flips
    let mut tails = 0.0;
    for t in 1..200u64 {
        let alive: f64 = (0..mu as u64)
            .filter(|&h| h < t)
            .map(|h| binomial(t - 1, h) * p.powi(h as i32) * (1.0 - p).powi((t - 1 - h) as i32))
            .sum();
        tails += (1.0 - p) * 0.5f64.powi(t as i32) * alive;
    }
    assert!((ex.tails_weight - tails).abs() < 1e-10);
    assert!((ex.heads_weight / ex.tails_weight - 1.5).abs() < 1e-9);

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let est = estimate_balance(p, mu, &schedule, 100_000, &mut rng).unwrap();
    assert!((est.ratio - 1.5).abs() <= 3.0 * est.se_ratio, "{est:?}");
}

#[test]
fn head_tail_index_small_cases() {
    for p in [0.3, 0.5, 0.842] {
        assert!((g_p(1, 1, p).unwrap() - (1.0 - p)).abs() < 1e-15);
        assert!((g_p_enumerated(1, 2, p).unwrap() - (1.0 - p).powi(2)).abs() < 1e-12);
    }
    // second tail before second head, over the 8 length-3 prefixes
    let by_hand = (0u32..8)
        .filter(|b| {
            let (mut h, mut t) = (0, 0);
            for i in 0..3 {
                if b >> i & 1 == 1 {
                    h += 1;
                    if h == 2 {
                        return false;
                    }
                } else {
                    t += 1;
                    if t == 2 {
                        return true;
                    }
                }
            }
            false
        })
        .count();
    assert_eq!(by_hand, 4);
    assert!((g_p(2, 2, 0.5).unwrap() - 0.5).abs() < 1e-12);
}
