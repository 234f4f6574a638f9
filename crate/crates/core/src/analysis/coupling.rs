use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::algorithms::{online_inner, simulate_with_tie_break, ArrivalOrder, Pruner, TieBreak};
use crate::error::{check_cap, check_probability, Result};
use crate::limits::MAX_COUPLING_N;
use crate::matroid::Independence;
use crate::process::PresetCoins;
use crate::set::{Element, ElementSet};
use crate::valuation::SetFunction;

/// Outcome key: the sample, its greedy solution, and the candidates.
type Triple = (Vec<Element>, Vec<Element>, Vec<Element>);

/// Compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

#[derive(Default)]
struct Distribution(BTreeMap<Triple, KahanSum>);

impl Distribution {
    fn add(&mut self, h: &ElementSet, m: &ElementSet, n: &ElementSet, weight: f64) {
        self.0
            .entry((h.to_vec(), m.to_vec(), n.to_vec()))
            .or_default()
            .add(weight);
    }

    fn mass(&self) -> f64 {
        let mut total = KahanSum::default();
        for v in self.0.values() {
            total.add(v.sum);
        }
        total.sum
    }

    fn get(&self, key: &Triple) -> f64 {
        self.0.get(key).map_or(0.0, |k| k.sum)
    }
}

/// Comparison of the exact `(H, M, N)` distributions of the online and the
/// simulated algorithm.
#[derive(Clone, Debug, Serialize)]
pub struct CouplingReport {
    pub n: usize,
    pub p: f64,
    pub total_variation: f64,
    pub online_support: usize,
    pub simulate_support: usize,
    pub online_mass: f64,
    pub simulate_mass: f64,
    /// Probability mass not enumerated; zero for matroid runs.
    pub truncated_mass: f64,
}

/// Exact total-variation distance between the online and simulated
/// `(H, M, N)` distributions.
///
/// The online side is enumerated over every arrival order and sample size,
/// the simulated side over every head set.
pub fn verify_coupling<I, F>(system: &I, f: &F, p: f64) -> Result<CouplingReport>
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
{
    coupling_with_tie_breaks(system, f, p, TieBreak::LowestIndex, TieBreak::LowestIndex)
}

/// As [`verify_coupling`], with the simulated side using `simulate_tie`
/// while the online side keeps the lowest-index rule. A mismatched rule is
/// the negative control for the verifier.
pub fn verify_coupling_with_tie_break<I, F>(
    system: &I,
    f: &F,
    p: f64,
    simulate_tie: TieBreak,
) -> Result<CouplingReport>
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
{
    coupling_with_tie_breaks(system, f, p, TieBreak::LowestIndex, simulate_tie)
}

fn coupling_with_tie_breaks<I, F>(
    system: &I,
    f: &F,
    p: f64,
    online_tie: TieBreak,
    simulate_tie: TieBreak,
) -> Result<CouplingReport>
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
{
    check_probability(p)?;
    let n = system.ground_size();
    check_cap("ground set for coupling enumeration", n, MAX_COUPLING_N)?;

    let orders: f64 = (1..=n).map(|i| i as f64).product();
    let mut online = Distribution::default();
    for perm in (0..n).permutations(n) {
        let order = ArrivalOrder::new(perm)?;
        for m in 0..=n {
            let weight =
                binomial(n, m) * p.powi(m as i32) * (1.0 - p).powi((n - m) as i32) / orders;
            let trace = online_inner(system, f, &order, m, None, online_tie)?;
            online.add(
                &trace.sample,
                &trace.sample_greedy,
                &trace.candidates,
                weight,
            );
        }
    }

    let keep_all = Pruner::from_constraints(Vec::new());
    let mut simulated = Distribution::default();
    for bits in 0..(1u64 << n) {
        let heads = ElementSet::from_bits(n, bits);
        let k = heads.len();
        let weight = p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
        let mut coins = PresetCoins::new(heads);
        let trace = simulate_with_tie_break(system, f, &mut coins, &keep_all, simulate_tie);
        simulated.add(
            &trace.sample,
            &trace.sample_greedy,
            &trace.candidates,
            weight,
        );
    }

    let mut tv = KahanSum::default();
    let keys: std::collections::BTreeSet<&Triple> =
        online.0.keys().chain(simulated.0.keys()).collect();
    for key in keys {
        tv.add((online.get(key) - simulated.get(key)).abs());
    }
    Ok(CouplingReport {
        n,
        p,
        total_variation: 0.5 * tv.sum,
        online_support: online.0.len(),
        simulate_support: simulated.0.len(),
        online_mass: online.mass(),
        simulate_mass: simulated.mass(),
        truncated_mass: 0.0,
    })
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{IndependenceSystem, LaminarMatroid, UniformMatroid};
    use crate::valuation::LinearValuation;

    #[test]
    fn single_element_has_zero_distance() {
        let sys: IndependenceSystem = UniformMatroid::new(1, 1).into();
        let f = LinearValuation::new(vec![1.0]).unwrap();
        for p in [0.2, 0.7] {
            let r = verify_coupling(&sys, &f, p).unwrap();
            assert!(r.total_variation < 1e-12);
            assert!((r.online_mass - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn laminar_four_elements() {
        let sys: IndependenceSystem =
            LaminarMatroid::from_lists(4, &[(&[0, 1], 1), (&[0, 1, 2, 3], 2)])
                .unwrap()
                .into();
        let f = LinearValuation::new(vec![4.0, 3.0, 2.0, 1.0]).unwrap();
        let r = verify_coupling(&sys, &f, 0.5).unwrap();
        assert!(r.total_variation < 1e-9, "{r:?}");
        assert!((r.simulate_mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_tie_break_is_detected() {
        let sys: IndependenceSystem = UniformMatroid::new(4, 1).into();
        let f = LinearValuation::new(vec![1.0; 4]).unwrap();
        let r = verify_coupling_with_tie_break(&sys, &f, 0.5, TieBreak::HighestIndex).unwrap();
        assert!(r.total_variation > 1e-3);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(6, 0), 1.0);
        assert_eq!(binomial(6, 6), 1.0);
    }
}
