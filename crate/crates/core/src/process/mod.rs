//! The head/tail stochastic process underlying the simulated greedy
//! analysis, its pruning rule, and the Bernoulli index probability `G_p`.
//!
//! A stream of Bernoulli(p) coins is read one timestamp at a time. Heads go
//! to the sample side, tails to the candidate side, and the process stops
//! right after the `μ`-th head. Each timestamp carries a weight that may
//! depend on the earlier coins.

mod coins;
mod gp;
mod schedule;

pub use coins::{CoinSource, CoinStream, ConstantCoins, PresetCoins, ScriptedCoins};
pub use gp::{g_p, g_p_enumerated, g_p_upper_bound, pruning_loss_bound};
pub use schedule::{
    spot_check_decreasing, ConstantSchedule, DecreasingViolation, FnSchedule, GeometricSchedule,
    HeadDiscountSchedule, Truncated, WeightSchedule,
};

use rand::Rng;

use crate::error::{check_probability, Error, Result};
use crate::limits::ENUMERATION_CUTOFF;

/// A processed timestamp and its weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stamp {
    pub t: usize,
    pub weight: f64,
}

fn total(stamps: &[Stamp]) -> f64 {
    stamps.iter().fold(0.0, |acc, s| acc + s.weight)
}

/// One run of the process.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessOutcome {
    /// Timestamps with heads (`M`); exactly `μ` of them.
    pub heads: Vec<Stamp>,
    /// Timestamps with tails (`N`).
    pub tails: Vec<Stamp>,
    /// Cardinality-pruned tails (`S`).
    pub pruned: Vec<Stamp>,
    pub coins: Vec<bool>,
}

impl ProcessOutcome {
    pub fn heads_weight(&self) -> f64 {
        total(&self.heads)
    }

    pub fn tails_weight(&self) -> f64 {
        total(&self.tails)
    }

    pub fn pruned_weight(&self) -> f64 {
        total(&self.pruned)
    }
}

fn checked_weight<S: WeightSchedule + ?Sized>(
    schedule: &S,
    t: usize,
    history: &[bool],
) -> Result<f64> {
    let w = schedule.weight(t, history);
    if w >= 0.0 && w.is_finite() {
        Ok(w)
    } else {
        Err(Error::ContractViolation(format!(
            "schedule returned weight {w} at timestamp {t}"
        )))
    }
}

/// Runs the process until `μ` heads have been seen.
pub fn run_simple_process<S, C>(mu: usize, schedule: &S, coins: &mut C) -> Result<ProcessOutcome>
where
    S: WeightSchedule + ?Sized,
    C: CoinSource + ?Sized,
{
    if mu == 0 {
        return Err(Error::InvalidParameter("process needs μ >= 1".into()));
    }
    let mut history = Vec::new();
    let (mut heads, mut tails) = (Vec::with_capacity(mu), Vec::new());
    while heads.len() < mu {
        let t = history.len() + 1;
        let weight = checked_weight(schedule, t, &history)?;
        let head = coins.flip(t);
        history.push(head);
        if head {
            heads.push(Stamp { t, weight });
        } else {
            tails.push(Stamp { t, weight });
        }
    }
    let pruned = prune_cardinality(&tails, mu).to_vec();
    Ok(ProcessOutcome {
        heads,
        tails,
        pruned,
        coins: history,
    })
}

/// `S = N` when `|N| <= μ`, otherwise empty.
pub fn prune_cardinality<T>(candidates: &[T], mu: usize) -> &[T] {
    if candidates.len() <= mu {
        candidates
    } else {
        &[]
    }
}

/// Expectations of the process computed by walking the coin tree.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessExpectations {
    /// `E[w(M)]`.
    pub heads_weight: f64,
    /// `E[w(N)]`.
    pub tails_weight: f64,
    /// `E[w(S)]`.
    pub pruned_weight: f64,
    /// Probability of the paths cut off below the cutoff.
    pub truncated_mass: f64,
    /// Number of terminated paths visited.
    pub leaves: usize,
}

/// Exact expectations by depth-first walk over coin prefixes.
///
/// A path is cut when its probability drops below `cutoff`; its mass is
/// reported. Weights of every expanded timestamp are credited to both
/// children, so `E[w(M)] = p/(1-p) E[w(N)]` also holds for the truncated
/// sums. Pruned weight is credited only on terminated paths.
pub fn exact_expectations<S: WeightSchedule + ?Sized>(
    p: f64,
    mu: usize,
    schedule: &S,
    cutoff: f64,
) -> Result<ProcessExpectations> {
    check_probability(p)?;
    if mu == 0 {
        return Err(Error::InvalidParameter("process needs μ >= 1".into()));
    }
    let mut walk = Walk {
        p,
        mu,
        schedule,
        cutoff,
        history: Vec::new(),
        out: ProcessExpectations {
            heads_weight: 0.0,
            tails_weight: 0.0,
            pruned_weight: 0.0,
            truncated_mass: 0.0,
            leaves: 0,
        },
    };
    walk.visit(1.0, 0, 0, 0.0)?;
    Ok(walk.out)
}

/// Same as [`exact_expectations`] with the default `1e-12` cutoff.
pub fn exact_expectations_default<S: WeightSchedule + ?Sized>(
    p: f64,
    mu: usize,
    schedule: &S,
) -> Result<ProcessExpectations> {
    exact_expectations(p, mu, schedule, ENUMERATION_CUTOFF)
}

struct Walk<'a, S: ?Sized> {
    p: f64,
    mu: usize,
    schedule: &'a S,
    cutoff: f64,
    history: Vec<bool>,
    out: ProcessExpectations,
}

impl<S: WeightSchedule + ?Sized> Walk<'_, S> {
    fn visit(&mut self, prob: f64, heads: usize, tails: usize, tails_weight: f64) -> Result<()> {
        if heads == self.mu {
            self.out.leaves += 1;
            if tails <= self.mu {
                self.out.pruned_weight += prob * tails_weight;
            }
            return Ok(());
        }
        if prob < self.cutoff {
            self.out.truncated_mass += prob;
            return Ok(());
        }
        let t = self.history.len() + 1;
        let w = checked_weight(self.schedule, t, &self.history)?;
        let (ph, pt) = (prob * self.p, prob * (1.0 - self.p));
        self.out.heads_weight += ph * w;
        self.out.tails_weight += pt * w;

        self.history.push(true);
        self.visit(ph, heads + 1, tails, tails_weight)?;
        self.history.pop();

        self.history.push(false);
        self.visit(pt, heads, tails + 1, tails_weight + w)?;
        self.history.pop();
        Ok(())
    }
}

/// Monte Carlo estimate of the head/tail weight balance.
#[derive(Clone, Debug, PartialEq)]
pub struct BalanceEstimate {
    pub trials: usize,
    pub mean_heads: f64,
    pub se_heads: f64,
    pub mean_tails: f64,
    pub se_tails: f64,
    /// `mean_heads / mean_tails`; converges to `p / (1 - p)`.
    pub ratio: f64,
    /// Delta-method standard error of `ratio`.
    pub se_ratio: f64,
}

/// Runs the process `trials` times and compares `E[w(M)]` with `E[w(N)]`.
pub fn estimate_balance<S, R>(
    p: f64,
    mu: usize,
    schedule: &S,
    trials: usize,
    rng: &mut R,
) -> Result<BalanceEstimate>
where
    S: WeightSchedule + ?Sized,
    R: Rng,
{
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut coins = CoinStream::new(p, rng)?;
    let mut samples = Vec::with_capacity(trials);
    for _ in 0..trials {
        let run = run_simple_process(mu, schedule, &mut coins)?;
        samples.push((run.heads_weight(), run.tails_weight()));
    }
    let k = trials as f64;
    let mean_h = samples.iter().map(|s| s.0).sum::<f64>() / k;
    let mean_t = samples.iter().map(|s| s.1).sum::<f64>() / k;
    let var = |f: &dyn Fn(&(f64, f64)) -> f64, mean: f64| {
        if trials < 2 {
            0.0
        } else {
            samples.iter().map(|s| (f(s) - mean).powi(2)).sum::<f64>() / (k - 1.0)
        }
    };
    let ratio = mean_h / mean_t;
    let var_h = var(&|s| s.0, mean_h);
    let var_t = var(&|s| s.1, mean_t);
    let var_lin = var(&|s| s.0 - ratio * s.1, 0.0);
    Ok(BalanceEstimate {
        trials,
        mean_heads: mean_h,
        se_heads: (var_h / k).sqrt(),
        mean_tails: mean_t,
        se_tails: (var_t / k).sqrt(),
        ratio,
        se_ratio: (var_lin / k).sqrt() / mean_t.abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn stamps(ts: &[usize]) -> Vec<usize> {
        ts.to_vec()
    }

    #[test]
    fn scripted_runs() {
        let run = run_simple_process(
            2,
            &ConstantSchedule(1.0),
            &mut ScriptedCoins::from_str_bits("11"),
        )
        .unwrap();
        assert_eq!(
            run.heads.iter().map(|s| s.t).collect::<Vec<_>>(),
            stamps(&[1, 2])
        );
        assert!(run.tails.is_empty());
        assert_eq!(run.heads_weight(), 2.0);

        let run = run_simple_process(
            1,
            &ConstantSchedule(1.0),
            &mut ScriptedCoins::from_str_bits("001"),
        )
        .unwrap();
        assert_eq!(
            run.tails.iter().map(|s| s.t).collect::<Vec<_>>(),
            stamps(&[1, 2])
        );
        assert_eq!(
            run.heads.iter().map(|s| s.t).collect::<Vec<_>>(),
            stamps(&[3])
        );
        assert_eq!(run.tails_weight(), 2.0);
        assert!(run.pruned.is_empty());
    }

    #[test]
    fn negative_weight_is_rejected() {
        let bad = FnSchedule::new(|_, _: &[bool]| -1.0, false);
        let err = run_simple_process(1, &bad, &mut ConstantCoins(true)).unwrap_err();
        assert!(matches!(err, Error::ContractViolation(_)));
        assert!(run_simple_process(0, &ConstantSchedule(1.0), &mut ConstantCoins(true)).is_err());
    }

    #[test]
    fn pruning_boundary() {
        assert_eq!(prune_cardinality(&[1, 2], 3), &[1, 2]);
        assert!(prune_cardinality(&[1, 2, 3, 4, 5], 3).is_empty());
        assert_eq!(prune_cardinality(&[1, 2, 3], 3), &[1, 2, 3]);
    }

    #[test]
    fn geometric_expectations_for_single_head() {
        // μ = 1, unit weights: |N| is geometric, E[w(N)] = (1-p)/p.
        for p in [0.3, 0.5, 0.8] {
            let ex = exact_expectations_default(p, 1, &ConstantSchedule(1.0)).unwrap();
            assert!((ex.heads_weight - 1.0).abs() < 1e-9);
            assert!((ex.tails_weight - (1.0 - p) / p).abs() < 1e-9);
            assert!(ex.truncated_mass < 1e-9);
        }
    }

    #[test]
    fn seeded_runs_are_identical() {
        let schedule = HeadDiscountSchedule {
            first: 1.0,
            ratio: 0.9,
            head_factor: 0.7,
        };
        let run = |seed| {
            let rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut coins = CoinStream::new(0.4, rng).unwrap();
            run_simple_process(3, &schedule, &mut coins).unwrap()
        };
        assert_eq!(run(9), run(9));
    }

    #[test]
    fn balance_estimates() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        let cases: [(f64, usize, Box<dyn WeightSchedule>, f64); 3] = [
            (0.5, 1, Box::new(ConstantSchedule(1.0)), 1.0),
            (0.7, 3, Box::new(ConstantSchedule(1.0)), 7.0 / 3.0),
            (
                0.6,
                2,
                Box::new(GeometricSchedule {
                    first: 0.5,
                    ratio: 0.5,
                }),
                1.5,
            ),
        ];
        for (p, mu, schedule, expected) in cases {
            let est = estimate_balance(p, mu, schedule.as_ref(), 100_000, &mut rng).unwrap();
            assert!(
                (est.ratio - expected).abs() <= 3.0 * est.se_ratio,
                "p={p} mu={mu}: {} vs {expected} (se {})",
                est.ratio,
                est.se_ratio
            );
        }
    }
}
