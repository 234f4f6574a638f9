use super::greedy::{best_extension, TieBreak};
use super::prune::Pruner;
use super::trace::RunTrace;
use crate::matroid::Independence;
use crate::process::CoinSource;
use crate::set::ElementSet;
use crate::valuation::SetFunction;

/// Offline simulated greedy.
///
/// Runs greedy over the whole ground set with marginals and feasibility
/// taken against `M` only. Each selected element gets a coin keyed by its
/// index: heads joins `M`, tails joins `N` and never returns. Elements the
/// greedy never reaches get their coins afterwards, in index order, so the
/// sample `H` is the full set of head coins. `N` is then pruned into `S`.
pub fn simulate<I, F, C>(system: &I, f: &F, coins: &mut C, pruner: &Pruner) -> RunTrace
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
    C: CoinSource + ?Sized,
{
    simulate_with_tie_break(system, f, coins, pruner, TieBreak::LowestIndex)
}

pub fn simulate_with_tie_break<I, F, C>(
    system: &I,
    f: &F,
    coins: &mut C,
    pruner: &Pruner,
    tie: TieBreak,
) -> RunTrace
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
    C: CoinSource + ?Sized,
{
    let n = system.ground_size();
    let mut trace = RunTrace::new(n);
    trace.sample_gain = vec![0.0; n];
    trace.candidate_gain = vec![0.0; n];
    let mut remaining = ElementSet::full(n);
    while let Some((e, gain)) = best_extension(system, f, &trace.sample_greedy, &remaining, tie) {
        remaining.remove(e);
        trace.sample_gain[e] = gain;
        trace.candidate_gain[e] = f.marginal(&trace.candidates, e);
        let head = coins.flip(e);
        trace.greedy_order.push(e);
        trace.coins.push(head);
        if head {
            trace.sample_greedy.insert(e);
        } else {
            trace.candidates.insert(e);
        }
    }
    trace.sample = trace.sample_greedy.clone();
    for e in &remaining {
        if coins.flip(e) {
            trace.sample.insert(e);
        }
    }
    trace.pruned = pruner.prune(&trace.candidates);
    trace.accepted = trace.pruned.clone();
    trace
}
