//! Vertex-at-a-time bipartite matching with a submodular value on edges.
//!
//! Left nodes arrive online and reveal their edge star; each arrival gets at
//! most one irrevocable edge to a free right node.

use rand::Rng;

use super::greedy::{best_extension, greedy, TieBreak};
use super::online::sample_size;
use super::prune::prune_transversal;
use super::trace::RunTrace;
use super::ArrivalOrder;
use crate::error::{Error, Result};
use crate::matroid::{BipartiteGraph, EdgeMatchings};
use crate::process::CoinSource;
use crate::set::ElementSet;
use crate::valuation::{SeenView, SetFunction};

fn check_edge_oracle<F: SetFunction + ?Sized>(graph: &BipartiteGraph, f: &F) -> Result<()> {
    if f.ground_size() != graph.edge_count() {
        return Err(Error::SizeMismatch {
            expected: graph.edge_count(),
            found: f.ground_size(),
        });
    }
    Ok(())
}

/// Offline matching simulation.
///
/// Greedy over edges with marginals against `M`, subject to `M ∪ {e}` being
/// a matching. Selecting `(ℓ, r)` removes ℓ's whole star from consideration
/// and flips ℓ's coin: heads to `M`, tails to `N`. `S` keeps the edges of
/// `N` whose right node no other edge of `N` uses.
pub fn simulate_sbvm<F, C>(graph: &BipartiteGraph, f: &F, coins: &mut C) -> Result<RunTrace>
where
    F: SetFunction + ?Sized,
    C: CoinSource + ?Sized,
{
    check_edge_oracle(graph, f)?;
    let n = graph.edge_count();
    let matchings = EdgeMatchings { graph };
    let mut trace = RunTrace::new(n);
    trace.sample_gain = vec![0.0; n];
    trace.candidate_gain = vec![0.0; n];
    let mut remaining = ElementSet::full(n);
    let mut processed_left = ElementSet::empty(graph.n_left());
    while let Some((e, gain)) = best_extension(
        &matchings,
        f,
        &trace.sample_greedy,
        &remaining,
        TieBreak::LowestIndex,
    ) {
        let (left, _) = graph.edge(e);
        processed_left.insert(left);
        for &(_, id) in graph.neighbors(left) {
            remaining.remove(id);
        }
        trace.sample_gain[e] = gain;
        trace.candidate_gain[e] = f.marginal(&trace.candidates, e);
        let head = coins.flip(left);
        trace.greedy_order.push(e);
        trace.coins.push(head);
        if head {
            trace.sample_greedy.insert(e);
        } else {
            trace.candidates.insert(e);
        }
    }
    let mut heads = graph.left_endpoints(&trace.sample_greedy);
    for l in (0..graph.n_left()).filter(|&l| !processed_left.contains(l)) {
        if coins.flip(l) {
            heads.insert(l);
        }
    }
    trace.sample = graph.star(&heads);
    trace.pruned = prune_transversal(graph, &trace.candidates)?;
    trace.accepted = trace.pruned.clone();
    Ok(trace)
}

/// Online matching with a random sample size `m ~ Binomial(|L|, p)`.
pub fn online_sbvm<F, R>(
    graph: &BipartiteGraph,
    f: &F,
    order: &ArrivalOrder,
    p: f64,
    rng: &mut R,
) -> Result<RunTrace>
where
    F: SetFunction + ?Sized,
    R: Rng + ?Sized,
{
    let m = sample_size(graph.n_left(), p, rng)?;
    online_sbvm_with_sample_size(graph, f, order, m)
}

/// Online matching after observing the first `m` left arrivals.
///
/// For each later arrival ℓ, greedy is recomputed on the sampled stars plus
/// ℓ's star. If it uses an edge `(ℓ, r)`, that edge becomes a candidate and
/// is accepted when `r` is still free; otherwise ℓ is dropped.
pub fn online_sbvm_with_sample_size<F>(
    graph: &BipartiteGraph,
    f: &F,
    order: &ArrivalOrder,
    m: usize,
) -> Result<RunTrace>
where
    F: SetFunction + ?Sized,
{
    check_edge_oracle(graph, f)?;
    if order.len() != graph.n_left() {
        return Err(Error::SizeMismatch {
            expected: graph.n_left(),
            found: order.len(),
        });
    }
    if m > order.len() {
        return Err(Error::InvalidParameter(format!(
            "sample size {m} exceeds {} left nodes",
            order.len()
        )));
    }
    let matchings = EdgeMatchings { graph };
    let n = graph.edge_count();
    let mut trace = RunTrace::new(n);
    let mut view = SeenView::new(f);
    let (head, tail) = order.as_slice().split_at(m);
    let sampled_left = ElementSet::from_elements(graph.n_left(), head.iter().copied());
    trace.sample = graph.star(&sampled_left);
    view.reveal_all(&trace.sample);
    trace.sample_greedy = greedy(&matchings, &view, &trace.sample);
    let mut right_taken = vec![false; graph.n_right()];
    for &left in tail {
        let star = graph.star(&ElementSet::from_elements(graph.n_left(), [left]));
        view.reveal_all(&star);
        let chosen = greedy(&matchings, &view, &trace.sample.union(&star));
        if let Some(e) = chosen.iter().find(|&e| star.contains(e)) {
            trace.candidates.insert(e);
            let (_, r) = graph.edge(e);
            if !right_taken[r] {
                right_taken[r] = true;
                trace.accepted.insert(e);
            }
        }
    }
    trace.pruned = prune_transversal(graph, &trace.candidates)?;
    Ok(trace)
}
