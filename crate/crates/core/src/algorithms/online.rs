use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::greedy::{greedy_with_tie_break, TieBreak};
use super::prune::Pruner;
use super::trace::RunTrace;
use super::ArrivalOrder;
use crate::error::{check_probability, Error, Result};
use crate::matroid::Independence;
use crate::valuation::{SeenView, SetFunction};

/// Draws the sample size `m ~ Binomial(n, p)`.
pub fn sample_size<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<usize> {
    check_probability(p)?;
    let dist = Binomial::new(n as u64, p).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(dist.sample(rng) as usize)
}

/// Online simulated greedy with a random sample size.
pub fn online<I, F, R>(
    system: &I,
    f: &F,
    order: &ArrivalOrder,
    p: f64,
    rng: &mut R,
    pruner: Option<&Pruner>,
) -> Result<RunTrace>
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
    R: Rng + ?Sized,
{
    let m = sample_size(order.len(), p, rng)?;
    online_with_sample_size(system, f, order, m, pruner)
}

/// Online simulated greedy after observing the first `m` arrivals.
///
/// Each later arrival `e` is a candidate when `greedy(H ∪ {e})` differs from
/// `greedy(H)`; a candidate is accepted if it keeps the accepted set
/// independent. The valuation is only queried on arrived elements. When a
/// pruner is given, the candidates are also pruned into `S`.
pub fn online_with_sample_size<I, F>(
    system: &I,
    f: &F,
    order: &ArrivalOrder,
    m: usize,
    pruner: Option<&Pruner>,
) -> Result<RunTrace>
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
{
    online_inner(system, f, order, m, pruner, TieBreak::LowestIndex)
}

pub(crate) fn online_inner<I, F>(
    system: &I,
    f: &F,
    order: &ArrivalOrder,
    m: usize,
    pruner: Option<&Pruner>,
    tie: TieBreak,
) -> Result<RunTrace>
where
    I: Independence + ?Sized,
    F: SetFunction + ?Sized,
{
    let n = system.ground_size();
    if order.len() != n || f.ground_size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: if order.len() != n {
                order.len()
            } else {
                f.ground_size()
            },
        });
    }
    if m > n {
        return Err(Error::InvalidParameter(format!(
            "sample size {m} exceeds n = {n}"
        )));
    }
    let mut trace = RunTrace::new(n);
    let mut view = SeenView::new(f);
    let (head, tail) = order.as_slice().split_at(m);
    for &e in head {
        view.reveal(e);
        trace.sample.insert(e);
    }
    trace.sample_greedy = greedy_with_tie_break(system, &view, &trace.sample, tie);
    for &e in tail {
        view.reveal(e);
        let with_e = trace.sample.with(e);
        if greedy_with_tie_break(system, &view, &with_e, tie) != trace.sample_greedy {
            trace.candidates.insert(e);
            if system.can_extend(&trace.accepted, e) {
                trace.accepted.insert(e);
            }
        }
    }
    if let Some(pruner) = pruner {
        trace.pruned = pruner.prune(&trace.candidates);
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{IndependenceSystem, UniformMatroid};
    use crate::valuation::LinearValuation;

    #[test]
    fn full_sample_accepts_nothing() {
        let sys: IndependenceSystem = UniformMatroid::new(3, 2).into();
        let f = LinearValuation::new(vec![1.0, 2.0, 3.0]).unwrap();
        let t = online_with_sample_size(&sys, &f, &ArrivalOrder::identity(3), 3, None).unwrap();
        assert!(t.candidates.is_empty() && t.accepted.is_empty());
    }

    #[test]
    fn hand_trace_two_elements() {
        let sys: IndependenceSystem = UniformMatroid::new(2, 1).into();
        let f = LinearValuation::new(vec![1.0, 2.0]).unwrap();
        let t = online_with_sample_size(&sys, &f, &ArrivalOrder::identity(2), 1, None).unwrap();
        assert_eq!(t.sample.to_vec(), vec![0]);
        assert_eq!(t.sample_greedy.to_vec(), vec![0]);
        assert_eq!(t.accepted.to_vec(), vec![1]);
    }

    #[test]
    fn empty_sample_single_element() {
        let sys: IndependenceSystem = UniformMatroid::new(1, 1).into();
        let f = LinearValuation::new(vec![4.0]).unwrap();
        let t = online_with_sample_size(&sys, &f, &ArrivalOrder::identity(1), 0, None).unwrap();
        assert_eq!(t.accepted.to_vec(), vec![0]);
    }

    #[test]
    fn sample_size_extremes() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        assert!(sample_size(5, 0.0, &mut rng).is_err());
        let m = sample_size(10, 0.5, &mut rng).unwrap();
        assert!(m <= 10);
    }

    #[test]
    fn rejects_mismatched_order() {
        let sys: IndependenceSystem = UniformMatroid::new(3, 1).into();
        let f = LinearValuation::new(vec![1.0; 3]).unwrap();
        assert!(online_with_sample_size(&sys, &f, &ArrivalOrder::identity(2), 0, None).is_err());
    }
}
