//! Greedy, online and simulated secretary algorithms with run tracing.

mod greedy;
mod online;
mod prune;
mod sbvm;
mod simulate;
mod trace;

pub use greedy::{best_extension, greedy, greedy_with_tie_break, TieBreak};
pub(crate) use online::online_inner;
pub use online::{online, online_with_sample_size, sample_size};
pub use prune::{prune_by_constraints, prune_laminar, prune_transversal, Pruner};
pub use sbvm::{online_sbvm, online_sbvm_with_sample_size, simulate_sbvm};
pub use simulate::{simulate, simulate_with_tie_break};
pub use trace::RunTrace;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::matroid::{Independence, IndependenceSystem};
use crate::process::CoinStream;
use crate::set::Element;
use crate::valuation::{lift_to_edges, SetFunction, ValuationOracle};

/// A permutation of `[0, n)` giving the arrival order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrivalOrder(Vec<Element>);

impl ArrivalOrder {
    pub fn new(order: Vec<Element>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &e in &order {
            if e >= order.len() || seen[e] {
                return Err(Error::InvalidParameter(format!(
                    "arrival order is not a permutation of 0..{}",
                    order.len()
                )));
            }
            seen[e] = true;
        }
        Ok(ArrivalOrder(order))
    }

    pub fn identity(n: usize) -> Self {
        ArrivalOrder((0..n).collect())
    }

    /// Uniformly random order.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut order: Vec<Element> = (0..n).collect();
        order.shuffle(rng);
        ArrivalOrder(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.0
    }
}

/// Algorithm selector used by the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Online,
    Simulate,
    OnlineSbvm,
    SimulateSbvm,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Online,
        Algorithm::Simulate,
        Algorithm::OnlineSbvm,
        Algorithm::SimulateSbvm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Online => "online",
            Algorithm::Simulate => "simulate",
            Algorithm::OnlineSbvm => "online-sbvm",
            Algorithm::SimulateSbvm => "simulate-sbvm",
        }
    }

    pub fn is_sbvm(self) -> bool {
        matches!(self, Algorithm::OnlineSbvm | Algorithm::SimulateSbvm)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

/// One trial's trace plus the values of the interesting sets.
///
/// For matching algorithms the trace is over edge ids and the values come
/// from the edge-lifted valuation.
#[derive(Clone, Debug)]
pub struct TrialOutcome {
    pub trace: RunTrace,
    pub f_alg: f64,
    pub f_s: f64,
    pub f_m: f64,
}

fn outcome<F: SetFunction + ?Sized>(trace: RunTrace, f: &F) -> TrialOutcome {
    TrialOutcome {
        f_alg: f.value(&trace.accepted),
        f_s: f.value(&trace.pruned),
        f_m: f.value(&trace.sample_greedy),
        trace,
    }
}

/// Runs one trial of `algorithm` on `instance`, drawing all randomness from `rng`.
///
/// Online runs prune their candidates too whenever the system has a pruning
/// rule, so `S` is reported alongside `ALG`.
pub fn run_algorithm<R: Rng + ?Sized>(
    instance: &Instance,
    algorithm: Algorithm,
    p: f64,
    rng: &mut R,
) -> Result<TrialOutcome> {
    crate::error::check_probability(p)?;
    let system = instance.system();
    let f = instance.valuation();
    match algorithm {
        Algorithm::Online => {
            let pruner = Pruner::for_system(system).ok();
            let order = ArrivalOrder::random(system.ground_size(), rng);
            let trace = online(system, f, &order, p, rng, pruner.as_ref())?;
            Ok(outcome(trace, f))
        }
        Algorithm::Simulate => {
            let pruner = Pruner::for_system(system)?;
            let mut coins = CoinStream::new(p, &mut *rng)?;
            let trace = simulate(system, f, &mut coins, &pruner);
            Ok(outcome(trace, f))
        }
        Algorithm::OnlineSbvm | Algorithm::SimulateSbvm => {
            let edges = edge_valuation(instance)?;
            let graph = edges.graph();
            let trace = if algorithm == Algorithm::OnlineSbvm {
                let order = ArrivalOrder::random(graph.n_left(), rng);
                online_sbvm(graph, &edges, &order, p, rng)?
            } else {
                let mut coins = CoinStream::new(p, &mut *rng)?;
                simulate_sbvm(graph, &edges, &mut coins)?
            };
            Ok(outcome(trace, &edges))
        }
    }
}

/// Lifts a transversal instance's valuation on left nodes to its edges.
pub fn edge_valuation(instance: &Instance) -> Result<crate::valuation::EdgeLiftedValuation> {
    match instance.system() {
        IndependenceSystem::Transversal(t) => {
            let base: ValuationOracle = instance.valuation().clone();
            lift_to_edges(base, t.graph().clone())
        }
        other => Err(Error::Unsupported(format!(
            "matching algorithms need a transversal system, got {}",
            other.kind()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn arrival_order_validation() {
        assert!(ArrivalOrder::new(vec![1, 0, 2]).is_ok());
        assert!(ArrivalOrder::new(vec![0, 0]).is_err());
        assert!(ArrivalOrder::new(vec![2]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = ArrivalOrder::random(7, &mut rng);
        let mut sorted = r.as_slice().to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("greedy".parse::<Algorithm>().is_err());
    }
}
