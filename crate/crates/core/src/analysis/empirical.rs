use rayon::prelude::*;
use serde::Serialize;

use super::opt::{brute_force_opt, brute_force_opt_matching, Optimum};
use crate::algorithms::{edge_valuation, run_algorithm, simulate, Algorithm, Pruner};
use crate::error::{check_probability, Error, Result};
use crate::instance::Instance;
use crate::matroid::IndependenceSystem;
use crate::process::CoinStream;
use crate::seed::trial_rng;
use crate::valuation::ValuationOracle;

/// Exact optimum of an instance for the given algorithm's feasibility notion:
/// matchings for the matching algorithms, independent sets otherwise.
pub fn instance_opt(instance: &Instance, algorithm: Algorithm) -> Result<Optimum> {
    if algorithm.is_sbvm() {
        let edges = edge_valuation(instance)?;
        brute_force_opt_matching(edges.graph(), &edges)
    } else {
        brute_force_opt(instance.system(), instance.valuation())
    }
}

/// Summary of `f(ALG)/OPT` over seeded trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioEstimate {
    pub trials: usize,
    pub opt: f64,
    pub mean: f64,
    pub std_error: f64,
    pub min: f64,
    pub max: f64,
}

/// Mean, standard error, minimum and maximum of a sample.
pub fn summarize(values: &[f64]) -> (f64, f64, f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (mean, (var / n).sqrt(), min, max)
}

/// Runs `trials` independent trials and divides `f(ALG)` by the exact optimum.
///
/// Trial `i` draws its arrival order, sample size and coins from the stream
/// derived from `(seed, i)`.
pub fn empirical_ratio(
    instance: &Instance,
    algorithm: Algorithm,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<RatioEstimate> {
    check_probability(p)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let opt = instance_opt(instance, algorithm)?.value;
    if opt <= 0.0 {
        return Err(Error::UndefinedRatio);
    }
    let ratios = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            run_algorithm(instance, algorithm, p, &mut rng).map(|o| o.f_alg / opt)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (mean, std_error, min, max) = summarize(&ratios);
    Ok(RatioEstimate {
        trials,
        opt,
        mean,
        std_error,
        min,
        max,
    })
}

/// Estimated probability that one optimal element ends up in `S`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurvivalEstimate {
    pub element: usize,
    pub hits: usize,
    pub trials: usize,
    pub estimate: f64,
    pub std_error: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

/// Wilson score interval for `hits` successes out of `trials` at `z` standard deviations.
pub fn wilson_interval(hits: usize, trials: usize, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let phat = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Monte Carlo estimate of `Pr[e ∈ S]` for every element `e` of the optimum,
/// under the simulated algorithm with laminar pruning.
///
/// Requires a linear valuation on a uniform, partition or laminar matroid.
/// Intervals are Wilson intervals at three standard deviations.
pub fn survival_probability(
    instance: &Instance,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<SurvivalEstimate>> {
    check_probability(p)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if !matches!(instance.valuation(), ValuationOracle::Linear(_)) {
        return Err(Error::Unsupported(
            "survival needs a linear valuation".into(),
        ));
    }
    let system = instance.system();
    if !matches!(
        system,
        IndependenceSystem::Uniform(_)
            | IndependenceSystem::Partition(_)
            | IndependenceSystem::Laminar(_)
    ) {
        return Err(Error::Unsupported(format!(
            "survival needs a laminar matroid, got {}",
            system.kind()
        )));
    }
    let pruner = Pruner::for_system(system)?;
    let witness = brute_force_opt(system, instance.valuation())?
        .witness
        .to_vec();
    let counts = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut coins = CoinStream::new(p, trial_rng(seed, i as u64))?;
            let trace = simulate(system, instance.valuation(), &mut coins, &pruner);
            Ok(witness
                .iter()
                .map(|&e| usize::from(trace.pruned.contains(e)))
                .collect::<Vec<_>>())
        })
        .try_reduce(
            || vec![0usize; witness.len()],
            |mut acc, hits| {
                acc.iter_mut().zip(hits).for_each(|(a, h)| *a += h);
                Ok(acc)
            },
        )?;
    let n = trials as f64;
    Ok(witness
        .iter()
        .zip(counts)
        .map(|(&element, hits)| {
            let estimate = hits as f64 / n;
            let (wilson_low, wilson_high) = wilson_interval(hits, trials, 3.0);
            SurvivalEstimate {
                element,
                hits,
                trials,
                estimate,
                std_error: (estimate * (1.0 - estimate) / n).sqrt(),
                wilson_low,
                wilson_high,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::UniformMatroid;
    use crate::valuation::LinearValuation;

    fn uniform_linear(k: usize, weights: Vec<f64>) -> Instance {
        let n = weights.len();
        Instance::new(
            UniformMatroid::new(n, k).into(),
            LinearValuation::new(weights).unwrap().into(),
        )
        .unwrap()
    }

    #[test]
    fn single_element_survives_on_tails() {
        let inst = uniform_linear(1, vec![1.0]);
        let est = survival_probability(&inst, 0.3, 20_000, 5).unwrap();
        assert_eq!(est.len(), 1);
        assert!((est[0].estimate - 0.7).abs() < 4.0 * est[0].std_error);
        assert!(est[0].wilson_low < 0.7 && 0.7 < est[0].wilson_high);
    }

    #[test]
    fn ratio_is_deterministic_and_bounded() {
        let inst = uniform_linear(2, vec![5.0, 3.0, 1.0, 4.0]);
        let a = empirical_ratio(&inst, Algorithm::Online, 0.5, 500, 11).unwrap();
        let b = empirical_ratio(&inst, Algorithm::Online, 0.5, 500, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.min >= 0.0 && a.max <= 1.0 + 1e-12);
        assert_eq!(a.opt, 9.0);
    }

    #[test]
    fn zero_optimum_is_an_error() {
        let inst = uniform_linear(1, vec![0.0, 0.0]);
        assert!(matches!(
            empirical_ratio(&inst, Algorithm::Online, 0.5, 10, 1),
            Err(Error::UndefinedRatio)
        ));
    }

    #[test]
    fn wilson_contains_estimate() {
        let (lo, hi) = wilson_interval(30, 100, 3.0);
        assert!(lo < 0.3 && 0.3 < hi);
        let (lo, hi) = wilson_interval(0, 50, 3.0);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0);
    }
}
