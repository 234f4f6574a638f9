use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algorithms::{run_algorithm, Algorithm, TrialOutcome};
use crate::analysis::{instance_opt, summarize};
use crate::error::{check_probability, Error, Result};
use crate::instance::Instance;
use crate::limits::{MAX_BRUTE_FORCE_N, MAX_MATCHING_EDGES};
use crate::seed::{trial_rng, trial_seed};

/// Trials are computed in blocks of this many and written in order.
const BLOCK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub format: OutputFormat,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Fill the `ms` column with wall time; off by default so output is reproducible.
    pub timing: bool,
    /// Write per-trial rows, not just the summary.
    pub per_trial: bool,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, p: f64, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            algorithm,
            p,
            trials,
            seed,
            format: OutputFormat::Csv,
            workers: None,
            timing: false,
            per_trial: true,
        }
    }

    fn check(&self) -> Result<()> {
        check_probability(self.p)?;
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidParameter("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// One output row. Column order is fixed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    /// Trial index, or -1 for the summary row.
    pub trial: i64,
    pub seed: u64,
    pub f_alg: f64,
    pub f_s: f64,
    pub f_m: f64,
    pub opt: Option<f64>,
    pub ratio: Option<f64>,
    pub ms: f64,
}

/// Aggregate over all trials. In the summary row `f_alg`, `f_s`, `f_m` and
/// `ratio` are means and `seed` is the master seed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    #[serde(flatten)]
    pub row: ResultRecord,
    pub ratio_se: Option<f64>,
    pub ratio_min: Option<f64>,
    pub ratio_max: Option<f64>,
}

pub const CSV_HEADER: &str = "trial,seed,f_alg,f_s,f_m,opt,ratio,ms,ratio_se,ratio_min,ratio_max";

fn cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl ResultRecord {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.trial,
            self.seed,
            self.f_alg,
            self.f_s,
            self.f_m,
            cell(self.opt),
            cell(self.ratio),
            self.ms
        )
    }
}

/// The optimum used for ratios, when the instance is small enough to compute it.
pub fn experiment_opt(instance: &Instance, algorithm: Algorithm) -> Result<Option<f64>> {
    let size = if algorithm.is_sbvm() {
        crate::algorithms::edge_valuation(instance)?
            .graph()
            .edge_count()
    } else {
        instance.ground_size()
    };
    let cap = if algorithm.is_sbvm() {
        MAX_MATCHING_EDGES
    } else {
        MAX_BRUTE_FORCE_N
    };
    if size > cap {
        return Ok(None);
    }
    let opt = instance_opt(instance, algorithm)?.value;
    if opt <= 0.0 {
        return Err(Error::UndefinedRatio);
    }
    Ok(Some(opt))
}

fn run_trial(
    instance: &Instance,
    config: &ExperimentConfig,
    opt: Option<f64>,
    trial: usize,
) -> Result<ResultRecord> {
    let seed = trial_seed(config.seed, trial as u64);
    let start = config.timing.then(Instant::now);
    let mut rng = trial_rng(config.seed, trial as u64);
    let TrialOutcome {
        f_alg, f_s, f_m, ..
    } = run_algorithm(instance, config.algorithm, config.p, &mut rng).map_err(|e| match e {
        Error::ContractViolation(msg) => {
            Error::ContractViolation(format!("trial {trial} (seed {seed}): {msg}"))
        }
        other => other,
    })?;
    Ok(ResultRecord {
        trial: trial as i64,
        seed,
        f_alg,
        f_s,
        f_m,
        opt,
        ratio: opt.map(|o| f_alg / o),
        ms: start.map_or(0.0, |s| s.elapsed().as_secs_f64() * 1e3),
    })
}

/// Runs the configured trials and writes rows in trial order, followed by
/// the summary row. Output depends only on the instance and the
/// configuration, never on the worker count (unless timing is enabled).
pub fn run_experiment<W: Write>(
    instance: &Instance,
    config: &ExperimentConfig,
    out: &mut W,
) -> Result<ExperimentSummary> {
    config.check()?;
    let pool = config
        .workers
        .map(|w| rayon::ThreadPoolBuilder::new().num_threads(w).build())
        .transpose()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    run_blocks(instance, config, pool.as_ref(), out)
}

fn write_err(e: std::io::Error) -> Error {
    Error::Io {
        path: "<output>".into(),
        source: e,
    }
}

fn run_blocks<W: Write>(
    instance: &Instance,
    config: &ExperimentConfig,
    pool: Option<&rayon::ThreadPool>,
    out: &mut W,
) -> Result<ExperimentSummary> {
    let opt = experiment_opt(instance, config.algorithm)?;
    if config.format == OutputFormat::Csv {
        writeln!(out, "{CSV_HEADER}").map_err(write_err)?;
    }
    let (mut alg, mut s, mut m, mut ratios) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut total_ms = 0.0;
    for start in (0..config.trials).step_by(BLOCK) {
        let end = (start + BLOCK).min(config.trials);
        let block = || {
            (start..end)
                .into_par_iter()
                .map(|i| run_trial(instance, config, opt, i))
                .collect::<Result<Vec<_>>>()
        };
        let rows = match pool {
            Some(pool) => pool.install(block)?,
            None => block()?,
        };
        for row in rows {
            if config.per_trial {
                match config.format {
                    OutputFormat::Csv => writeln!(out, "{},,,", row.csv()),
                    OutputFormat::Jsonl => writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&row).expect("rows serialize")
                    ),
                }
                .map_err(write_err)?;
            }
            alg.push(row.f_alg);
            s.push(row.f_s);
            m.push(row.f_m);
            ratios.extend(row.ratio);
            total_ms += row.ms;
        }
    }
    let mean = |v: &[f64]| summarize(v).0;
    let ratio_stats = (!ratios.is_empty()).then(|| summarize(&ratios));
    let summary = ExperimentSummary {
        row: ResultRecord {
            trial: -1,
            seed: config.seed,
            f_alg: mean(&alg),
            f_s: mean(&s),
            f_m: mean(&m),
            opt,
            ratio: ratio_stats.map(|r| r.0),
            ms: total_ms,
        },
        ratio_se: ratio_stats.map(|r| r.1),
        ratio_min: ratio_stats.map(|r| r.2),
        ratio_max: ratio_stats.map(|r| r.3),
    };
    match config.format {
        OutputFormat::Csv => writeln!(
            out,
            "{},{},{},{}",
            summary.row.csv(),
            cell(summary.ratio_se),
            cell(summary.ratio_min),
            cell(summary.ratio_max)
        ),
        OutputFormat::Jsonl => writeln!(
            out,
            "{}",
            serde_json::to_string(&summary).expect("summary serializes")
        ),
    }
    .map_err(write_err)?;
    Ok(summary)
}

/// Writes one JSON trace per trial, with the trial index and seed.
pub fn emit_traces<W: Write>(
    instance: &Instance,
    algorithm: Algorithm,
    p: f64,
    trials: usize,
    seed: u64,
    out: &mut W,
) -> Result<()> {
    check_probability(p)?;
    for start in (0..trials).step_by(BLOCK) {
        let end = (start + BLOCK).min(trials);
        let lines = (start..end)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(seed, i as u64);
                let outcome = run_algorithm(instance, algorithm, p, &mut rng)?;
                let mut record = if algorithm.is_sbvm() {
                    outcome
                        .trace
                        .to_json(&crate::algorithms::edge_valuation(instance)?)
                } else {
                    outcome.trace.to_json(instance.valuation())
                };
                record["trial"] = i.into();
                record["seed"] = trial_seed(seed, i as u64).into();
                Ok(serde_json::to_string(&record).expect("traces serialize"))
            })
            .collect::<Result<Vec<_>>>()?;
        for line in lines {
            writeln!(out, "{line}").map_err(write_err)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::UniformMatroid;
    use crate::valuation::LinearValuation;

    fn instance() -> Instance {
        Instance::new(
            UniformMatroid::new(5, 2).into(),
            LinearValuation::new(vec![5.0, 4.0, 3.0, 2.0, 1.0])
                .unwrap()
                .into(),
        )
        .unwrap()
    }

    fn output(config: &ExperimentConfig) -> String {
        let mut buf = Vec::new();
        run_experiment(&instance(), config, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_shape() {
        let config = ExperimentConfig::new(Algorithm::Online, 0.5, 3, 9);
        let text = output(&config);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[4].starts_with("-1,9,"));
        assert!(lines.iter().all(|l| l.split(',').count() == 11));
    }

    #[test]
    fn output_independent_of_workers() {
        let mut config = ExperimentConfig::new(Algorithm::Simulate, 0.6, 200, 4);
        config.format = OutputFormat::Jsonl;
        config.workers = Some(1);
        let one = output(&config);
        config.workers = Some(4);
        assert_eq!(one, output(&config));
    }

    #[test]
    fn single_trial_is_deterministic() {
        let config = ExperimentConfig::new(Algorithm::Online, 0.5, 1, 77);
        assert_eq!(output(&config), output(&config));
    }

    #[test]
    fn traces_have_all_sets() {
        let mut buf = Vec::new();
        emit_traces(&instance(), Algorithm::Simulate, 0.5, 2, 1, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        for key in ["H", "M", "N", "S", "ALG", "f_values", "trial", "seed"] {
            assert!(first.get(key).is_some(), "missing {key}");
        }
    }
}
