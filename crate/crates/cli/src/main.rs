use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use secretary_core::analysis::{
    intersection_bound, laminar_bound, linear_laminar_bound, transversal_bound, verify_coupling,
    BoundReport,
};
use secretary_core::harness::{
    emit_traces, experiment_opt, generate_instance, load_instance, run_experiment, save_spec,
    validate_file, ExperimentConfig, GeneratorParams, OutputFormat, SystemKind, ValuationKind,
};
use secretary_core::process::{g_p, g_p_enumerated, g_p_upper_bound};
use secretary_core::Algorithm;

const WORKERS_ENV: &str = "SECRETARY_LAB_WORKERS";

#[derive(Parser)]
#[command(
    name = "secretary-lab",
    version,
    about = "Matroid secretary experiments with simulated greedy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check instance files for structural and valuation problems.
    Validate(ValidateArgs),
    /// Write a random instance file.
    Generate(GenerateArgs),
    /// Run seeded trials of an algorithm on an instance.
    Simulate(SimulateArgs),
    /// Estimate E[f(ALG)]/OPT on an instance.
    Ratio(RatioArgs),
    /// Evaluate a guarantee calculator.
    Bounds(BoundsArgs),
    /// Compare the exact online and simulated distributions of (H, M, N).
    Coupling(CouplingArgs),
    /// Print closed-form and enumerated head/tail index probabilities as CSV.
    Gp(GpArgs),
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// Print reports as JSON lines.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    Uniform,
    Partition,
    Laminar,
    Transversal,
    LaminarIntersection,
}

#[derive(Clone, Copy, ValueEnum)]
enum ValuationArg {
    Linear,
    Coverage,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: SystemArg,
    #[arg(long, value_enum, default_value = "coverage")]
    valuation: ValuationArg,
    /// Ground size (left nodes for transversal).
    #[arg(long)]
    n: usize,
    /// Levels below the root of each laminar tree.
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Matroids in a laminar intersection.
    #[arg(long, default_value_t = 2)]
    copies: usize,
    #[arg(long)]
    n_right: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long)]
    items: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    name: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Online,
    Simulate,
    SimulateSbvm,
    OnlineSbvm,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Online => Algorithm::Online,
            AlgoArg::Simulate => Algorithm::Simulate,
            AlgoArg::SimulateSbvm => Algorithm::SimulateSbvm,
            AlgoArg::OnlineSbvm => Algorithm::OnlineSbvm,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitArg {
    /// Only the summary row.
    Summary,
    /// Every trial row and the summary row.
    Records,
    /// One JSON trace per trial.
    Trace,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "online")]
    algo: AlgoArg,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, value_enum, default_value = "summary")]
    emit: EmitArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
    /// Record wall time per trial in the `ms` column.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct RatioArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "online")]
    algo: AlgoArg,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Laminar,
    Transversal,
    LinearLaminar,
    Intersection,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, value_enum)]
    case: CaseArg,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0.02)]
    c: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CouplingArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GpArgs {
    #[arg(long, default_value_t = 4)]
    m_max: usize,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.5,0.842")]
    p: Vec<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            eprintln!("error: usage: {first}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|code| {
        out.flush().context("writing to stdout")?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let kind = e
                .chain()
                .find_map(|c| c.downcast_ref::<secretary_core::Error>())
                .map_or("io", |c| c.kind());
            let message = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {kind}: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<ExitCode> {
    match command {
        Command::Validate(args) => validate(args, out),
        Command::Generate(args) => generate(args, out).map(|()| ExitCode::SUCCESS),
        Command::Simulate(args) => simulate(args, out).map(|()| ExitCode::SUCCESS),
        Command::Ratio(args) => ratio(args, out).map(|()| ExitCode::SUCCESS),
        Command::Bounds(args) => bounds(args, out).map(|()| ExitCode::SUCCESS),
        Command::Coupling(args) => coupling(args, out).map(|()| ExitCode::SUCCESS),
        Command::Gp(args) => gp(args, out).map(|()| ExitCode::SUCCESS),
    }
}

/// Exits 1 when any file fails a check.
fn validate(args: ValidateArgs, out: &mut impl Write) -> Result<ExitCode> {
    let mut all_passed = true;
    for path in &args.paths {
        let report = validate_file(path)?;
        all_passed &= report.passed();
        if args.json {
            writeln!(out, "{}", serde_json::to_string(&report)?)?;
        } else {
            write!(out, "{report}")?;
        }
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn generate(args: GenerateArgs, out: &mut impl Write) -> Result<()> {
    let system = match args.kind {
        SystemArg::Uniform => SystemKind::Uniform,
        SystemArg::Partition => SystemKind::Partition,
        SystemArg::Laminar => SystemKind::Laminar,
        SystemArg::Transversal => SystemKind::Transversal,
        SystemArg::LaminarIntersection => SystemKind::LaminarIntersection,
    };
    let valuation = match args.valuation {
        ValuationArg::Linear => ValuationKind::Linear,
        ValuationArg::Coverage => ValuationKind::Coverage,
    };
    let mut params = GeneratorParams::new(system, valuation, args.n);
    params.depth = args.depth;
    params.copies = args.copies;
    params.density = args.density;
    if let Some(r) = args.n_right {
        params.n_right = r;
    }
    if let Some(items) = args.items {
        params.items = items;
    }
    let name = args.name.unwrap_or_else(|| format!("random-{}", args.seed));
    let spec = generate_instance(&params, args.seed, &name)?;
    match args.out {
        Some(path) => save_spec(&path, &spec)?,
        None => out.write_all(spec.to_canonical_json().as_bytes())?,
    }
    Ok(())
}

fn simulate(args: SimulateArgs, out: &mut impl Write) -> Result<()> {
    let (_, instance) = load_instance(&args.instance)?;
    let algorithm = Algorithm::from(args.algo);
    if args.emit == EmitArg::Trace {
        emit_traces(&instance, algorithm, args.p, args.trials, args.seed, out)?;
        return Ok(());
    }
    let mut config = ExperimentConfig::new(algorithm, args.p, args.trials, args.seed);
    config.format = match args.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Jsonl => OutputFormat::Jsonl,
    };
    config.workers = args.workers;
    config.timing = args.timing;
    config.per_trial = args.emit == EmitArg::Records;
    run_experiment(&instance, &config, out)?;
    Ok(())
}

fn ratio(args: RatioArgs, out: &mut impl Write) -> Result<()> {
    let (spec, instance) = load_instance(&args.instance)?;
    let algorithm = Algorithm::from(args.algo);
    let opt = experiment_opt(&instance, algorithm)?.ok_or_else(|| {
        secretary_core::Error::Unsupported(format!(
            "instance {} is too large for an exact optimum",
            args.instance.display()
        ))
    })?;
    let mut config = ExperimentConfig::new(algorithm, args.p, args.trials, args.seed);
    config.workers = args.workers;
    config.per_trial = false;
    let summary = run_experiment(&instance, &config, &mut io::sink())?;
    let fields = [
        ("instance", spec.metadata.name.clone()),
        ("algorithm", config.algorithm.to_string()),
        ("p", args.p.to_string()),
        ("trials", args.trials.to_string()),
        ("seed", args.seed.to_string()),
        ("opt", opt.to_string()),
        (
            "mean_ratio",
            summary.row.ratio.unwrap_or_default().to_string(),
        ),
        (
            "std_error",
            summary.ratio_se.unwrap_or_default().to_string(),
        ),
        (
            "min_ratio",
            summary.ratio_min.unwrap_or_default().to_string(),
        ),
        (
            "max_ratio",
            summary.ratio_max.unwrap_or_default().to_string(),
        ),
    ];
    write_fields(out, &fields, args.json)
}

fn write_fields(out: &mut impl Write, fields: &[(&str, String)], json: bool) -> Result<()> {
    if json {
        let map: serde_json::Map<String, serde_json::Value> = fields
            .iter()
            .map(|(k, v)| {
                let value = v
                    .parse::<f64>()
                    .ok()
                    .and_then(serde_json::Number::from_f64)
                    .map_or_else(
                        || serde_json::Value::String(v.clone()),
                        serde_json::Value::Number,
                    );
                (k.to_string(), value)
            })
            .collect();
        writeln!(out, "{}", serde_json::Value::Object(map))?;
    } else {
        let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in fields {
            writeln!(out, "{k:<width$}  {v}")?;
        }
    }
    Ok(())
}

fn bounds(args: BoundsArgs, out: &mut impl Write) -> Result<()> {
    let report: BoundReport = match args.case {
        CaseArg::Laminar => laminar_bound(args.p.unwrap_or(0.9794), args.t.unwrap_or(10.1415))?,
        CaseArg::Transversal => transversal_bound(args.p.unwrap_or(0.9), args.t.unwrap_or(5.29))?,
        CaseArg::LinearLaminar => linear_laminar_bound(args.p.unwrap_or(0.842))?,
        CaseArg::Intersection => intersection_bound(args.k, args.c)?,
    };
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&report)?)?;
    } else {
        write!(out, "{report}")?;
    }
    Ok(())
}

fn coupling(args: CouplingArgs, out: &mut impl Write) -> Result<()> {
    let (_, instance) = load_instance(&args.instance)?;
    let report = verify_coupling(instance.system(), instance.valuation(), args.p)?;
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&report)?)?;
        return Ok(());
    }
    let fields = [
        ("instance", display_path(&args.instance)),
        ("n", report.n.to_string()),
        ("p", report.p.to_string()),
        ("total_variation", report.total_variation.to_string()),
        ("online_support", report.online_support.to_string()),
        ("simulate_support", report.simulate_support.to_string()),
        ("online_mass", report.online_mass.to_string()),
        ("simulate_mass", report.simulate_mass.to_string()),
        ("truncated_mass", report.truncated_mass.to_string()),
    ];
    write_fields(out, &fields, false)
}

fn display_path(path: &Path) -> String {
    path.display().to_string()
}

fn gp(args: GpArgs, out: &mut impl Write) -> Result<()> {
    writeln!(out, "m,n,p,gp_closed,gp_enum,gp_bound")?;
    for &p in &args.p {
        for m in 1..=args.m_max {
            for n in 1..=args.n_max {
                let closed = g_p(m, n, p)?;
                let enumerated = g_p_enumerated(m, n, p).map_or(String::new(), |v| v.to_string());
                let bound = g_p_upper_bound(m, n, p)?;
                writeln!(out, "{m},{n},{p},{closed},{enumerated},{bound}")?;
            }
        }
    }
    Ok(())
}
